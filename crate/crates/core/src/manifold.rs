//! Boundary data of a one-cusped manifold and the slope norm it induces.

use std::fmt;
use std::path::Path;

use ibig::ops::Abs;
use ibig::IBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{even_distance, FareyTriangle};
use crate::slope::{EvenClass, Slope};

/// One fundamental normal surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    /// `None` for closed surfaces and for patterns not yet resolved.
    pub slope: Option<Slope>,
    pub euler: i64,
    pub orientable: bool,
    /// Normal-arc counts against the base edges, in `base_triangle` order.
    #[serde(default)]
    pub pattern: Option<[u64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldData {
    pub name: String,
    /// Number of tetrahedra.
    pub size: u64,
    pub even_class: EvenClass,
    /// Vertices of the boundary isotopy class, in pattern order.
    pub base_triangle: [Slope; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isosig: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub surfaces: Vec<SurfaceRecord>,
}

/// A failed dataset invariant. `record` is `None` for dataset-level checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub record: Option<usize>,
    pub message: String,
}

impl Violation {
    fn dataset(message: impl Into<String>) -> Violation {
        Violation {
            record: None,
            message: message.into(),
        }
    }

    fn record(i: usize, message: impl Into<String>) -> Violation {
        Violation {
            record: Some(i),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.record {
            Some(i) => write!(f, "surface {i}: {}", self.message),
            None => write!(f, "dataset: {}", self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormResult {
    pub slope: Slope,
    pub norm: u64,
    /// Index of the minimising surface record.
    pub witness: usize,
    /// Norm of the dual class after filling; `None` when `norm` is zero.
    pub dual_norm: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub bound: u64,
    /// Always set: the bound assumes the filling is not a balanced lens
    /// space, which is not checked.
    pub caveat: bool,
}

fn pattern_of(slope: &Slope, base: &[Slope; 3]) -> [u64; 3] {
    base.each_ref()
        .map(|s| u64::try_from(slope.det(s).abs()).expect("pattern entries fit in u64"))
}

/// The slope meeting the ordered base edges `pattern` times.
pub fn slope_from_pattern(base: &[Slope; 3], pattern: [u64; 3]) -> Result<Slope> {
    let infeasible = || Error::PatternInfeasible(pattern[0], pattern[1], pattern[2]);
    let [s1, s2, s3] = base;
    let d = s1.det(s2);
    if d.clone().abs() != IBig::from(1) {
        return Err(Error::NotNeighbors(s1.clone(), s2.clone()));
    }
    let (n1, n2) = (IBig::from(pattern[0]), IBig::from(pattern[1]));
    let mut found: Vec<Slope> = Vec::new();
    for e1 in [1, -1] {
        for e2 in [1, -1] {
            let (r1, r2) = (&n1 * IBig::from(e1), &n2 * IBig::from(e2));
            // det(x, s_i) = p q_i - p_i q = r_i, a unimodular system in (p, q).
            let p = (s1.p() * &r2 - s2.p() * &r1) / &d;
            let q = (s1.q() * &r2 - s2.q() * &r1) / &d;
            let Ok(x) = Slope::new(p, q) else { continue };
            if x.det(s3).abs() == IBig::from(pattern[2]) && !found.contains(&x) {
                found.push(x);
            }
        }
    }
    match found.len() {
        0 => Err(infeasible()),
        1 => Ok(found.pop().expect("one solution")),
        _ => Err(Error::PatternAmbiguous(pattern[0], pattern[1], pattern[2])),
    }
}

impl ManifoldData {
    pub fn base_triangle(&self) -> Result<FareyTriangle> {
        let [a, b, c] = self.base_triangle.clone();
        FareyTriangle::new(a, b, c)
    }

    pub fn from_json(text: &str) -> Result<ManifoldData> {
        Ok(serde_json::from_str(text)?)
    }

    /// Reads, resolves and validates a dataset file.
    pub fn load(path: &Path) -> Result<ManifoldData> {
        let mut data = ManifoldData::from_json(&std::fs::read_to_string(path)?)?;
        data.resolve_slopes()?;
        data.check()?;
        Ok(data)
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        crate::canonical_json(self)
    }

    /// Fills in missing slopes from boundary patterns.
    pub fn resolve_slopes(&mut self) -> Result<()> {
        for record in &mut self.surfaces {
            if let (None, Some(pattern)) = (&record.slope, record.pattern) {
                record.slope = Some(slope_from_pattern(&self.base_triangle, pattern)?);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.size == 0 {
            out.push(Violation::dataset("size must be positive"));
        }
        let base_ok = self.base_triangle().is_ok();
        if !base_ok {
            out.push(Violation::dataset(format!(
                "base {}, {}, {} is not a Farey triangle",
                self.base_triangle[0], self.base_triangle[1], self.base_triangle[2]
            )));
        }
        if self.surfaces.is_empty() {
            out.push(Violation::dataset("no surface records"));
        } else if self.surfaces.iter().all(|r| r.slope.is_none()) {
            out.push(Violation::dataset("no surface record has a boundary slope"));
        }
        for (i, record) in self.surfaces.iter().enumerate() {
            if record.euler > 0 {
                out.push(Violation::record(
                    i,
                    format!("euler characteristic {} is positive", record.euler),
                ));
            }
            if record.pattern == Some([0, 0, 0]) {
                out.push(Violation::record(i, "pattern is identically zero"));
            }
            let Some(slope) = &record.slope else { continue };
            if !slope.is_even(self.even_class) {
                out.push(Violation::record(i, format!("slope {slope} is odd")));
            }
            if let (Some(pattern), true) = (record.pattern, base_ok) {
                let expected = pattern_of(slope, &self.base_triangle);
                if pattern != expected {
                    out.push(Violation::record(
                        i,
                        format!(
                            "pattern {pattern:?} does not match slope {slope}, which meets the base edges {expected:?} times"
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    fn require_even(&self, alpha: &Slope) -> Result<()> {
        if alpha.is_even(self.even_class) {
            Ok(())
        } else {
            Err(Error::OddSlope(alpha.clone()))
        }
    }

    /// Minimum of `-euler + d(slope, alpha)` over records with a slope.
    pub fn slope_norm(&self, alpha: &Slope) -> Result<NormResult> {
        self.require_even(alpha)?;
        let mut best: Option<(u64, usize)> = None;
        for (i, record) in self.surfaces.iter().enumerate() {
            let Some(slope) = &record.slope else { continue };
            let complexity =
                u64::try_from(-record.euler).map_err(|_| Error::Invalid(self.validate()))?;
            let value = complexity + even_distance(slope, alpha, self.even_class)? as u64;
            if best.is_none_or(|(b, _)| value < b) {
                best = Some((value, i));
            }
        }
        let (norm, witness) = best.ok_or(Error::NoBoundedSurfaces)?;
        Ok(NormResult {
            slope: alpha.clone(),
            norm,
            witness,
            dual_norm: norm.checked_sub(1),
        })
    }

    pub fn dual_class_norm(&self, alpha: &Slope) -> Result<u64> {
        self.slope_norm(alpha)?
            .dual_norm
            .ok_or_else(|| Error::CappingDegenerates(alpha.clone()))
    }

    pub fn lower_bound(&self, alpha: &Slope) -> Result<LowerBound> {
        Ok(LowerBound {
            bound: 2 * self.slope_norm(alpha)?.norm,
            caveat: true,
        })
    }
}
