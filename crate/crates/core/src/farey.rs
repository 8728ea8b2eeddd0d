//! Navigation of the dual tree of the Farey tessellation.
//!
//! Vertices of the tessellation are slopes, triangles are triples of
//! pairwise neighbouring slopes, and two triangles are adjacent when they
//! share an edge. Every decision is made with integer cross products on the
//! boundary circle `Q ∪ {∞}`.

use std::collections::BTreeSet;
use std::fmt;

use ibig::IBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::slope::{EvenClass, Slope};

/// An unordered triple of pairwise Farey neighbours, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyTriangle([Slope; 3]);

/// One layering: the boundary edge of slope `layered_edge` is flipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicStep {
    pub from: FareyTriangle,
    pub layered_edge: Slope,
    pub to: FareyTriangle,
}

/// Both third vertices of the triangles on the edge `{a, b}`: the mediant
/// and the difference, in normal form.
pub fn completions(a: &Slope, b: &Slope) -> Result<[Slope; 2]> {
    if !a.is_neighbor(b) {
        return Err(Error::NotNeighbors(a.clone(), b.clone()));
    }
    Ok(unchecked_completions(a, b))
}

fn unchecked_completions(a: &Slope, b: &Slope) -> [Slope; 2] {
    [
        Slope::normalized(a.p() + b.p(), a.q() + b.q()),
        Slope::normalized(a.p() - b.p(), a.q() - b.q()),
    ]
}

/// True when the chord `{x, y}` separates `a` from `b` on the boundary
/// circle. Points equal to `x` or `y` are on neither side.
pub(crate) fn separates(x: &Slope, y: &Slope, a: &Slope, b: &Slope) -> bool {
    let side = |s: &Slope| x.det_sign(s) * s.det_sign(y);
    let (sa, sb) = (side(a), side(b));
    sa != 0 && sb != 0 && sa != sb
}

impl FareyTriangle {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<FareyTriangle> {
        if !(a.is_neighbor(&b) && b.is_neighbor(&c) && a.is_neighbor(&c)) {
            return Err(Error::NotATriangle(a, b, c));
        }
        Ok(FareyTriangle::sorted([a, b, c]))
    }

    fn sorted(mut vertices: [Slope; 3]) -> FareyTriangle {
        vertices.sort();
        FareyTriangle(vertices)
    }

    /// `{0/1, 1/0, 1/1}`.
    pub fn reference() -> FareyTriangle {
        FareyTriangle::sorted([Slope::integer(0), Slope::infinity(), Slope::integer(1)])
    }

    /// Some triangle having `alpha` as a vertex.
    pub fn containing(alpha: &Slope) -> FareyTriangle {
        if alpha.is_infinity() {
            return FareyTriangle::reference();
        }
        let (r, s) = unimodular_partner(alpha.p(), alpha.q());
        let partner = Slope::normalized(r, s);
        let [third, _] = unchecked_completions(alpha, &partner);
        FareyTriangle::sorted([alpha.clone(), partner, third])
    }

    pub fn vertices(&self) -> &[Slope; 3] {
        &self.0
    }

    pub fn contains(&self, slope: &Slope) -> bool {
        self.0.contains(slope)
    }

    fn others(&self, v: &Slope) -> Result<(&Slope, &Slope)> {
        let [a, b, c] = &self.0;
        if v == a {
            Ok((b, c))
        } else if v == b {
            Ok((a, c))
        } else if v == c {
            Ok((a, b))
        } else {
            Err(Error::NotAVertex {
                slope: v.clone(),
                triangle: self.clone(),
            })
        }
    }

    /// The unique vertex in the even class.
    pub fn even_label(&self, class: EvenClass) -> &Slope {
        self.0
            .iter()
            .find(|v| v.is_even(class))
            .expect("a Farey triangle has one vertex in each nonzero class")
    }

    /// The triangle across the edge opposite `v`.
    pub fn neighbor(&self, v: &Slope) -> Result<FareyTriangle> {
        let (x, y) = self.others(v)?;
        Ok(FareyTriangle::sorted([
            x.clone(),
            y.clone(),
            other_completion(x, y, v),
        ]))
    }

    /// The slope killed by folding the two boundary triangles over the edge
    /// of slope `v`.
    pub fn fold_over(&self, v: &Slope) -> Result<Slope> {
        let (x, y) = self.others(v)?;
        Ok(other_completion(x, y, v))
    }

    pub fn fold_even(&self, class: EvenClass) -> Slope {
        let even = self.even_label(class);
        self.fold_over(even).expect("the even label is a vertex")
    }

    fn step(&self, v: &Slope) -> GeodesicStep {
        GeodesicStep {
            from: self.clone(),
            layered_edge: v.clone(),
            to: self.neighbor(v).expect("v is a vertex"),
        }
    }

    /// One step along the dual tree toward the fan of `alpha`.
    pub fn step_toward(&self, alpha: &Slope) -> Result<GeodesicStep> {
        if self.contains(alpha) {
            return Err(Error::AlreadyAVertex {
                slope: alpha.clone(),
                triangle: self.clone(),
            });
        }
        let v = self
            .0
            .iter()
            .find(|v| {
                let (x, y) = self.others(v).expect("own vertex");
                separates(x, y, v, alpha)
            })
            .expect("a non-vertex lies behind exactly one edge");
        Ok(self.step(v))
    }

    /// Steps toward the fan of `alpha` until `alpha` is a vertex. The last
    /// triangle reached is the triangle of that fan nearest to `self`.
    pub fn geodesic_to_fan(&self, alpha: &Slope) -> Vec<GeodesicStep> {
        let mut steps = Vec::new();
        let mut current = self.clone();
        while !current.contains(alpha) {
            let step = current.step_toward(alpha).expect("alpha is not a vertex");
            current = step.to.clone();
            steps.push(step);
        }
        steps
    }

    /// The triangle of the fan of `alpha` nearest to `self`.
    pub fn project_to_fan(&self, alpha: &Slope) -> FareyTriangle {
        let mut current = self.clone();
        while !current.contains(alpha) {
            current = current
                .step_toward(alpha)
                .expect("alpha is not a vertex")
                .to;
        }
        current
    }

    /// The step from `self` toward `target`, or `None` when they coincide.
    pub fn step_toward_triangle(&self, target: &FareyTriangle) -> Option<GeodesicStep> {
        if self == target {
            return None;
        }
        let v = self.0.iter().find(|v| {
            let (x, y) = self.others(v).expect("own vertex");
            target
                .0
                .iter()
                .any(|u| u != x && u != y && separates(x, y, v, u))
        })?;
        Some(self.step(v))
    }

    /// The dual-tree path from `self` to `target`, both ends included.
    pub fn path_to(&self, target: &FareyTriangle) -> Vec<FareyTriangle> {
        let mut path = vec![self.clone()];
        let mut current = self.clone();
        while let Some(step) = current.step_toward_triangle(target) {
            current = step.to;
            path.push(current.clone());
        }
        path
    }

    /// Dual-tree distance.
    pub fn distance(&self, target: &FareyTriangle) -> usize {
        let mut n = 0;
        let mut current = self.clone();
        while let Some(step) = current.step_toward_triangle(target) {
            current = step.to;
            n += 1;
        }
        n
    }
}

fn other_completion(x: &Slope, y: &Slope, v: &Slope) -> Slope {
    let [sum, diff] = unchecked_completions(x, y);
    if &sum == v {
        diff
    } else {
        sum
    }
}

/// `(r, s)` with `p s - r q = 1`, for coprime `p, q`.
fn unimodular_partner(p: &IBig, q: &IBig) -> (IBig, IBig) {
    // Extended Euclid on (p, q): keeps a·p + b·q = remainder.
    let zero = IBig::from(0);
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut a0, mut a1) = (IBig::from(1), IBig::from(0));
    let (mut b0, mut b1) = (IBig::from(0), IBig::from(1));
    while r1 != zero {
        let t = &r0 / &r1;
        let r2 = &r0 - &t * &r1;
        let a2 = &a0 - &t * &a1;
        let b2 = &b0 - &t * &b1;
        (r0, r1, a0, a1, b0, b1) = (r1, r2, a1, a2, b1, b2);
    }
    // a0·p + b0·q = ±1, so p·a0 - (-b0)·q = ±1.
    if r0 == IBig::from(1) {
        (-b0, a0)
    } else {
        (b0, -a0)
    }
}

/// The slope-norm distance between even slopes: distinct even labels on the
/// shortest path between their fans, minus one.
pub fn even_distance(alpha: &Slope, beta: &Slope, class: EvenClass) -> Result<usize> {
    for s in [alpha, beta] {
        if !s.is_even(class) {
            return Err(Error::OddSlope(s.clone()));
        }
    }
    if alpha == beta {
        return Ok(0);
    }
    let near = FareyTriangle::containing(beta).project_to_fan(alpha);
    let far = near.project_to_fan(beta);
    let distinct = near
        .path_to(&far)
        .iter()
        .map(|t| t.even_label(class).clone())
        .collect::<BTreeSet<Slope>>()
        .len();
    Ok(distinct - 1)
}

/// The triangle of the fan of `alpha` nearest to `reference`.
pub fn canonical_triangle(
    alpha: &Slope,
    class: EvenClass,
    reference: &FareyTriangle,
) -> Result<FareyTriangle> {
    if !alpha.is_even(class) {
        return Err(Error::OddSlope(alpha.clone()));
    }
    Ok(reference.project_to_fan(alpha))
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "{{{a}, {b}, {c}}}")
    }
}

impl Serialize for FareyTriangle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FareyTriangle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[Slope; 3]>::deserialize(deserializer)?;
        FareyTriangle::new(a, b, c).map_err(serde::de::Error::custom)
    }
}
