//! Slope norms and two-sided complexity bounds for even Dehn fillings of a
//! manifold with one torus boundary component.
//!
//! A manifold is described by its boundary data ([`ManifoldData`]): the
//! number of tetrahedra of a triangulation with two-triangle torus boundary,
//! the isotopy class of that boundary as a Farey triangle, the even class,
//! and the boundary slopes and Euler characteristics of its fundamental
//! normal surfaces. Everything else is computed by walking the dual tree of
//! the Farey tessellation with exact integers.

// Errors carry the offending slopes; they are cold and small enough.
#![allow(clippy::result_large_err)]

pub mod bounds;
pub mod constants;
pub mod datasets;
pub mod error;
pub mod farey;
pub mod manifold;
pub mod oracle;
pub mod render;
pub mod slope;

pub use bounds::{BoundsReport, FamilyEntry, FamilyReport, GapBound, LayeringPlan};
pub use error::{Error, Result};
pub use farey::{canonical_triangle, completions, even_distance, FareyTriangle, GeodesicStep};
pub use manifold::{slope_from_pattern, ManifoldData, NormResult, SurfaceRecord, Violation};
pub use slope::{farey_sum, EvenClass, SignedPair, Slope};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}
