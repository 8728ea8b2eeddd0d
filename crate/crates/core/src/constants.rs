//! Explicit constants of the gap theorems, in exact arithmetic.

use std::fmt::Display;

use ibig::UBig;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn as_string<T: Display, S: Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Normal arcs per boundary arc type of a fundamental surface: `n 2^(7n+2)`.
pub fn hlp_arc_bound(n: u64) -> UBig {
    UBig::from(n) << (7 * n as usize + 2)
}

/// Intersections with each of the meridian and longitude: `n 2^(7n+3)`.
pub fn hlp_arc_bound_doubled(n: u64) -> UBig {
    UBig::from(n) << (7 * n as usize + 3)
}

/// `F_i` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(i: u64) -> UBig {
    let (mut a, mut b) = (UBig::from(0u8), UBig::from(1u8));
    for _ in 0..i {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Least `l` with `F_(l+1)` even and larger than `n 2^(7n+3)`.
pub fn fib_min_ell(n: u64) -> u64 {
    let threshold = hlp_arc_bound_doubled(n);
    let (mut a, mut b) = (UBig::from(0u8), UBig::from(1u8));
    let mut i = 0u64;
    loop {
        if i.is_multiple_of(3) && a > threshold {
            return i - 1;
        }
        let next = &a + &b;
        a = b;
        b = next;
        i += 1;
    }
}

/// The closed-form choice `12n + 8`, always at least `fib_min_ell(n)`.
pub fn ell_bound(n: u64) -> u64 {
    12 * n + 8
}

/// `(2k, 2k + 13n + 7)` for a triangulation of size `n`.
pub fn basic_bounds(n: u64, k: u64) -> (u64, u64) {
    (2 * k, 2 * k + basic_gap(n))
}

pub fn basic_gap(n: u64) -> u64 {
    13 * n + 7
}

/// Size bound for turning an ideal triangulation with `n` tetrahedra into
/// one with two-triangle torus boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InflationTerms {
    pub tetrahedra: u64,
    /// At most `2n + 1` edges.
    pub edges: u64,
    /// At most `floor((2n + 1) / 3)`.
    pub extra: u64,
    pub boundary: u64,
    /// `floor((11n + 10) / 3)`, the sum of the terms.
    pub size: u64,
}

pub fn inflation_terms(n: u64) -> InflationTerms {
    InflationTerms {
        tetrahedra: n,
        edges: 2 * n + 1,
        extra: (2 * n + 1) / 3,
        boundary: 2,
        size: inflation_size(n),
    }
}

pub fn inflation_size(n: u64) -> u64 {
    (11 * n + 10) / 3
}

/// Tetrahedra in an ideal triangulation of a knot exterior from an
/// `n`-crossing diagram.
pub fn weeks_size(n: u64) -> u64 {
    4 * n + 4
}

/// An integer gap next to the rational form stated for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapFormula {
    pub exact: u64,
    #[serde(serialize_with = "as_string")]
    pub stated: Ratio<u64>,
}

/// `13 floor((11n + 10) / 3) + 7` against `(143n + 151) / 3`.
pub fn ideal_gap(n: u64) -> GapFormula {
    GapFormula {
        exact: basic_gap(inflation_size(n)),
        stated: Ratio::new(143 * n + 151, 3),
    }
}

/// The ideal gap at `4n + 4` tetrahedra, against `(572n + 723) / 3`.
pub fn knotbasic_gap(n: u64) -> GapFormula {
    GapFormula {
        exact: basic_gap(inflation_size(weeks_size(n))),
        stated: Ratio::new(572 * n + 723, 3),
    }
}

/// Counts in the construction of a triangulation with two-triangle torus
/// boundary from an `n`-crossing diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofChain {
    pub prisms: u64,
    pub prism_tetrahedra: u64,
    pub prism_boundary_triangles: u64,
    pub sphere_tetrahedra: u64,
    pub sphere_bound: u64,
    pub exterior_tetrahedra: u64,
    pub boundary_triangles: u64,
    pub boundary_edges: u64,
    pub boundary_vertices: u64,
    pub reduction_tetrahedra: u64,
    /// `1408 (n - 1) - 4`.
    pub total: u64,
}

pub fn proof_chain(n: u64) -> Result<ProofChain> {
    if n < 2 {
        return Err(Error::CrossingNumberTooSmall(n));
    }
    let prisms = 4 * n - 5;
    let prism_tetrahedra = 14 * prisms;
    let prism_boundary_triangles = 2 * prisms + 12;
    let sphere_bound = 64 * (n - 1);
    let exterior_tetrahedra = 16 * sphere_bound;
    let boundary_triangles = 3 * sphere_bound;
    let boundary_vertices = boundary_triangles / 2;
    let reduction_tetrahedra = 4 * (boundary_vertices - 1);
    Ok(ProofChain {
        prisms,
        prism_tetrahedra,
        prism_boundary_triangles,
        sphere_tetrahedra: prism_tetrahedra + prism_boundary_triangles,
        sphere_bound,
        exterior_tetrahedra,
        boundary_triangles,
        boundary_edges: boundary_triangles * 3 / 2,
        boundary_vertices,
        reduction_tetrahedra,
        total: exterior_tetrahedra + reduction_tetrahedra,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum M0Variant {
    /// `1401 (n - 1)`, as stated.
    Statement,
    /// `1408 (n - 1)`, as derived.
    Proof,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantGapParams {
    pub n: u64,
    pub m0_statement: u64,
    pub m0_proof: u64,
    pub variant: M0Variant,
    pub m0: u64,
    #[serde(serialize_with = "as_string")]
    pub n0: UBig,
    /// `m0 + 2 n0 - 1`.
    #[serde(serialize_with = "as_string")]
    pub gap: UBig,
}

pub fn constantgap_params(n: u64, variant: M0Variant) -> Result<ConstantGapParams> {
    if n < 2 {
        return Err(Error::CrossingNumberTooSmall(n));
    }
    let m0_statement = 1401 * (n - 1);
    let m0_proof = 1408 * (n - 1);
    let m0 = match variant {
        M0Variant::Statement => m0_statement,
        M0Variant::Proof => m0_proof,
    };
    let n0 = UBig::from(m0) << (7 * m0 as usize + 2);
    let gap = UBig::from(m0) + UBig::from(2u8) * &n0 - UBig::from(1u8);
    Ok(ConstantGapParams {
        n,
        m0_statement,
        m0_proof,
        variant,
        m0,
        n0,
        gap,
    })
}

impl ConstantGapParams {
    /// `(2(k - n0), m0 + 2k - 1)`, for `k > n0` only.
    pub fn bounds(&self, k: &UBig) -> Result<(UBig, UBig)> {
        if k <= &self.n0 {
            return Err(Error::BelowThreshold);
        }
        let two = UBig::from(2u8);
        Ok((
            &two * (k - &self.n0),
            UBig::from(self.m0) + &two * k - UBig::from(1u8),
        ))
    }
}

/// Decimal digits of `m0 2^(7 m0 + 2)` by logarithms.
pub fn n0_digit_estimate(m0: u64) -> u64 {
    ((7 * m0 + 2) as f64 * std::f64::consts::LOG10_2 + (m0 as f64).log10()).floor() as u64 + 1
}
