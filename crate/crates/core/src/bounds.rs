//! Upper bounds from layering and folding, per-slope reports, family sweeps
//! along fans, and the constant gap bound for admissible paths.

use std::fmt;

use ibig::ops::Abs;
use ibig::IBig;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::{separates, FareyTriangle, GeodesicStep};
use crate::manifold::ManifoldData;
use crate::slope::{farey_sum, SignedPair, Slope};

/// Layerings on the boundary followed by a fold over the even edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayeringPlan {
    pub steps: Vec<GeodesicStep>,
    pub fold_triangle: FareyTriangle,
    pub filled_slope: Slope,
    pub tetrahedra: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub slope: Slope,
    /// The slope norm, `a`.
    pub norm: u64,
    /// Size of the smallest known triangulation with boundary in the
    /// nearest class labelled by the slope, `b`.
    pub labeled_size: u64,
    pub lower: u64,
    pub upper: u64,
    pub gap: i64,
    /// The lower bound excludes balanced lens spaces without checking.
    pub caveat: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyEntry {
    pub k: u64,
    pub slope: Slope,
    pub norm: u64,
    pub labeled_size: u64,
    pub lower: u64,
    pub upper: u64,
    pub gap: i64,
    /// `k = 0`, or the slope is the base label and needs the one-layering
    /// route; the generic bounds do not apply.
    pub seed: bool,
    /// The gap differs from the closed form.
    pub mismatch: bool,
}

/// Fillings `alpha + 2k beta` met while walking around the fan of `beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub alpha: Slope,
    pub beta: SignedPair,
    /// `{beta, alpha - beta, alpha}`, where the walk starts.
    pub start: FareyTriangle,
    pub start_labels: (u64, u64),
    /// `b - 2a - 1` of the start, present only when no surface slope and no
    /// base vertex lies ahead of the start on the fan.
    pub closed_form_gap: Option<i64>,
    pub entries: Vec<FamilyEntry>,
}

/// The constant gap of an admissible path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapBound {
    pub bound: u64,
    /// Index of the last node labelled by a surface slope.
    pub tau_prime: usize,
    /// Index of the first node after `tau_prime` with a new label.
    pub admissible_start: usize,
}

fn require_even(m: &ManifoldData, alpha: &Slope) -> Result<()> {
    if alpha.is_even(m.even_class) {
        Ok(())
    } else {
        Err(Error::OddSlope(alpha.clone()))
    }
}

/// Layer along the geodesic from the base toward the fan of `alpha`, stop
/// one step short, and fold. When `alpha` is the base label, layer once
/// over the even edge and fold back.
pub fn layering_plan(m: &ManifoldData, alpha: &Slope) -> Result<LayeringPlan> {
    require_even(m, alpha)?;
    let base = m.base_triangle()?;
    let mut steps = base.geodesic_to_fan(alpha);
    let fold_triangle = match steps.pop() {
        Some(last) => last.from,
        None => {
            let even = base.even_label(m.even_class).clone();
            let to = base.neighbor(&even)?;
            steps.push(GeodesicStep {
                from: base.clone(),
                layered_edge: even,
                to: to.clone(),
            });
            to
        }
    };
    let filled_slope = fold_triangle.fold_even(m.even_class);
    debug_assert_eq!(&filled_slope, alpha);
    Ok(LayeringPlan {
        tetrahedra: m.size + steps.len() as u64,
        steps,
        fold_triangle,
        filled_slope,
    })
}

pub fn upper_bound(m: &ManifoldData, alpha: &Slope) -> Result<u64> {
    Ok(layering_plan(m, alpha)?.tetrahedra)
}

/// `|T|` plus the distance from the base to the nearest triangle labelled
/// `alpha`.
pub fn labeled_size(m: &ManifoldData, alpha: &Slope) -> Result<u64> {
    require_even(m, alpha)?;
    let base = m.base_triangle()?;
    Ok(m.size + base.geodesic_to_fan(alpha).len() as u64)
}

/// The `(a, b)` annotation of a triangle: norm of its even label and
/// `|T|` plus its distance from the base.
pub fn triangle_labels(m: &ManifoldData, triangle: &FareyTriangle) -> Result<(u64, u64)> {
    let base = m.base_triangle()?;
    let norm = m.slope_norm(triangle.even_label(m.even_class))?.norm;
    Ok((norm, m.size + base.distance(triangle) as u64))
}

pub fn bounds_report(m: &ManifoldData, alpha: &Slope) -> Result<BoundsReport> {
    let norm = m.slope_norm(alpha)?.norm;
    let lower = 2 * norm;
    let upper = upper_bound(m, alpha)?;
    Ok(BoundsReport {
        slope: alpha.clone(),
        norm,
        labeled_size: labeled_size(m, alpha)?,
        lower,
        upper,
        gap: upper as i64 - lower as i64,
        caveat: true,
    })
}

/// True when `s` lies strictly inside the arc cut off by the chord
/// `{alpha, beta}` on the side away from `behind`.
fn ahead(alpha: &Slope, beta: &Slope, behind: &Slope, s: &Slope) -> bool {
    separates(alpha, beta, s, behind)
}

pub fn family_fan(
    m: &ManifoldData,
    alpha: &SignedPair,
    beta: &SignedPair,
    ks: std::ops::RangeInclusive<u64>,
) -> Result<FamilyReport> {
    let alpha_slope = alpha.slope()?;
    let beta_slope = beta.slope()?;
    if !alpha_slope.is_even(m.even_class) {
        return Err(Error::OddSeed(alpha_slope));
    }
    if alpha_slope.det(&beta_slope).abs() != IBig::from(1) {
        return Err(Error::NotNeighbors(alpha_slope, beta_slope));
    }
    let behind = farey_sum(alpha, &beta.neg(), 1)?;
    let start = FareyTriangle::new(beta_slope.clone(), behind.clone(), alpha_slope.clone())?;
    let start_labels = triangle_labels(m, &start)?;
    let base = m.base_triangle()?;
    let base_label = base.even_label(m.even_class).clone();
    let clear = m
        .surfaces
        .iter()
        .filter_map(|r| r.slope.as_ref())
        .chain(base.vertices())
        .all(|s| !ahead(&alpha_slope, &beta_slope, &behind, s));
    let closed_form_gap = clear.then(|| start_labels.1 as i64 - 2 * start_labels.0 as i64 - 1);
    let entries = ks
        .map(|k| {
            let slope = farey_sum(alpha, beta, 2 * k)?;
            let report = bounds_report(m, &slope)?;
            let seed = k == 0 || slope == base_label;
            let mismatch = closed_form_gap.is_some_and(|g| k >= 1 && g != report.gap);
            Ok(FamilyEntry {
                k,
                slope,
                norm: report.norm,
                labeled_size: report.labeled_size,
                lower: report.lower,
                upper: report.upper,
                gap: report.gap,
                seed,
                mismatch,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport {
        alpha: alpha_slope,
        beta: beta.clone(),
        start,
        start_labels,
        closed_form_gap,
        entries,
    })
}

/// The walk around the fan of `pivot`, starting at `start` and first
/// crossing the edge opposite `first`. Returns `steps + 1` triangles.
pub fn fan_walk(
    start: &FareyTriangle,
    pivot: &Slope,
    first: &Slope,
    steps: usize,
) -> Result<Vec<FareyTriangle>> {
    if !start.contains(pivot) {
        return Err(Error::NotAVertex {
            slope: pivot.clone(),
            triangle: start.clone(),
        });
    }
    if first == pivot || !start.contains(first) {
        return Err(Error::NotAVertex {
            slope: first.clone(),
            triangle: start.clone(),
        });
    }
    let mut path = vec![start.clone()];
    let mut replace = first.clone();
    for _ in 0..steps {
        let current = path.last().expect("nonempty");
        let next = current.neighbor(&replace)?;
        replace = current
            .vertices()
            .iter()
            .find(|v| *v != pivot && **v != replace)
            .expect("three vertices")
            .clone();
        path.push(next);
    }
    Ok(path)
}

/// The gap bound `|T| + d(base, tau') + 1` for slopes further along an
/// alternating path, where `tau'` is its last node labelled by a surface
/// slope.
pub fn admissible_gap_bound(m: &ManifoldData, path: &[FareyTriangle]) -> Result<GapBound> {
    let base = m.base_triangle()?;
    if path.first() != Some(&base) {
        return Err(Error::InvalidPath(0));
    }
    for i in 1..path.len() {
        if path[i - 1].distance(&path[i]) != 1 || (i >= 2 && path[i - 2] == path[i]) {
            return Err(Error::InvalidPath(i));
        }
    }
    let class = m.even_class;
    let labels: Vec<&Slope> = path.iter().map(|t| t.even_label(class)).collect();
    let changes: Vec<bool> = labels.windows(2).map(|w| w[0] != w[1]).collect();
    for i in 1..changes.len() {
        if changes[i] == changes[i - 1] {
            return Err(Error::PathNotAlternating(i + 1));
        }
    }
    let surface_slopes: Vec<&Slope> = m.surfaces.iter().filter_map(|r| r.slope.as_ref()).collect();
    let tau_prime = labels
        .iter()
        .rposition(|l| surface_slopes.contains(l))
        .unwrap_or(0);
    let admissible_start = (tau_prime + 1..path.len())
        .find(|&i| labels[i] != labels[tau_prime])
        .ok_or_else(|| {
            Error::PathDoesNotClear(format!(
                "no new label after the last surface-labelled node {tau_prime}"
            ))
        })?;
    let end = path.last().expect("nonempty");
    let tp = &path[tau_prime];
    let tail = tp.distance(end);
    for s in &surface_slopes {
        let near = end.project_to_fan(s);
        if near.distance(end) != near.distance(tp) + tail {
            return Err(Error::PathDoesNotClear(format!(
                "the path end is not beyond node {tau_prime} as seen from the fan of {s}"
            )));
        }
    }
    Ok(GapBound {
        bound: m.size + base.distance(tp) as u64 + 1,
        tau_prime,
        admissible_start,
    })
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} <= c(M({})) <= {}   gap {}   (a,b) = ({},{})",
            self.lower, self.slope, self.upper, self.gap, self.norm, self.labeled_size
        )
    }
}

impl fmt::Display for FamilyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha_k = {} + 2k ({})", self.alpha, self.beta)?;
        writeln!(
            f,
            "start {}   (a,b) = ({},{})   closed-form gap {}",
            self.start,
            self.start_labels.0,
            self.start_labels.1,
            self.closed_form_gap
                .map_or_else(|| "n/a".to_string(), |g| g.to_string())
        )?;
        let width = self
            .entries
            .iter()
            .map(|e| e.slope.to_string().len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(
            f,
            "{:>4}  {:>width$}  {:>5}  {:>5}  {:>4}  flags",
            "k", "slope", "lower", "upper", "gap"
        )?;
        for e in &self.entries {
            let mut flags = Vec::new();
            if e.seed {
                flags.push("seed");
            }
            if e.mismatch {
                flags.push("mismatch");
            }
            let row = format!(
                "{:>4}  {:>width$}  {:>5}  {:>5}  {:>4}  {}",
                e.k,
                e.slope.to_string(),
                e.lower,
                e.upper,
                e.gap,
                flags.join(",")
            );
            writeln!(f, "{}", row.trim_end())?;
        }
        Ok(())
    }
}
