use thiserror::Error;

use crate::farey::FareyTriangle;
use crate::manifold::Violation;
use crate::slope::Slope;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse slope {0:?}: expected \"p/q\"")]
    SlopeSyntax(String),
    #[error("{p}/{q} is not a slope: coefficients must be coprime and not both zero")]
    NotPrimitive { p: String, q: String },
    #[error("even class must be one of (0,1), (1,0), (1,1); got ({0},{1})")]
    InvalidEvenClass(i64, i64),
    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbors(Slope, Slope),
    #[error("{0}, {1}, {2} do not span a Farey triangle")]
    NotATriangle(Slope, Slope, Slope),
    #[error("{slope} is not a vertex of {triangle}")]
    NotAVertex {
        slope: Slope,
        triangle: FareyTriangle,
    },
    #[error("{slope} is already a vertex of {triangle}")]
    AlreadyAVertex {
        slope: Slope,
        triangle: FareyTriangle,
    },
    #[error("{0} is an odd slope")]
    OddSlope(Slope),
    #[error("depth {requested} exceeds the cap of {cap}")]
    DepthCap { requested: usize, cap: usize },
    #[error("no slope realises the boundary pattern ({0}, {1}, {2})")]
    PatternInfeasible(u64, u64, u64),
    #[error("boundary pattern ({0}, {1}, {2}) is realised by more than one slope")]
    PatternAmbiguous(u64, u64, u64),
    #[error("no surface record carries a boundary slope")]
    NoBoundedSurfaces,
    #[error("slope norm of {0} is zero; capping off yields no admissible surface")]
    CappingDegenerates(Slope),
    #[error("family seed {0} is odd")]
    OddSeed(Slope),
    #[error("path is not a walk in the dual tree starting at the base triangle (node {0})")]
    InvalidPath(usize),
    #[error("even labels along the path do not change at every second node (node {0})")]
    PathNotAlternating(usize),
    #[error("path does not clear the surface slopes: {0}")]
    PathDoesNotClear(String),
    #[error("crossing number must be at least 2, got {0}")]
    CrossingNumberTooSmall(u64),
    #[error("bounds only hold for k > n0")]
    BelowThreshold,
    #[error("unknown bundled dataset {0:?}")]
    UnknownDataset(String),
    #[error("dataset is invalid: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
