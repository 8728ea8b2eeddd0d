//! Boundary slopes on a torus and their mod-2 classes.
//!
//! A slope `p/q` is a primitive class `p·m + q·l` in the first homology of
//! the boundary torus, where `m` is the meridian and `l` the longitude of the
//! chosen framing. Slopes are kept in a normal form (`q > 0`, or `1/0`), so
//! equality, hashing and ordering are projective.

use std::fmt;
use std::str::FromStr;

use ibig::ops::Abs;
use ibig::IBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: IBig,
    q: IBig,
}

impl Slope {
    /// Builds a slope from any representative pair, normalising the sign.
    pub fn new(p: impl Into<IBig>, q: impl Into<IBig>) -> Result<Slope> {
        let (p, q) = (p.into(), q.into());
        if gcd(&p, &q) != IBig::from(1) {
            return Err(Error::NotPrimitive {
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        Ok(Slope::normalized(p, q))
    }

    /// Caller guarantees `(p, q)` is primitive.
    pub(crate) fn normalized(p: IBig, q: IBig) -> Slope {
        let zero = IBig::from(0);
        if q < zero || (q == zero && p < zero) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn infinity() -> Slope {
        Slope {
            p: IBig::from(1),
            q: IBig::from(0),
        }
    }

    pub fn integer(n: impl Into<IBig>) -> Slope {
        Slope {
            p: n.into(),
            q: IBig::from(1),
        }
    }

    pub fn p(&self) -> &IBig {
        &self.p
    }

    pub fn q(&self) -> &IBig {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q == IBig::from(0)
    }

    /// `(p mod 2, q mod 2)` of the normal form.
    pub fn residue(&self) -> (u8, u8) {
        (parity(&self.p), parity(&self.q))
    }

    pub fn is_even(&self, class: EvenClass) -> bool {
        self.residue() == class.residue()
    }

    /// `p_a q_b - p_b q_a` on normal forms. Its absolute value is the
    /// geometric intersection number of the two slopes.
    pub fn det(&self, other: &Slope) -> IBig {
        &self.p * &other.q - &other.p * &self.q
    }

    pub(crate) fn det_sign(&self, other: &Slope) -> i8 {
        let lhs = &self.p * &other.q;
        let rhs = &other.p * &self.q;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    pub(crate) fn is_neighbor(&self, other: &Slope) -> bool {
        self.det(other).abs() == IBig::from(1)
    }

    pub fn as_pair(&self) -> SignedPair {
        SignedPair {
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }
}

fn parity(n: &IBig) -> u8 {
    if (n % IBig::from(2)) == IBig::from(0) {
        0
    } else {
        1
    }
}

pub(crate) fn gcd(a: &IBig, b: &IBig) -> IBig {
    let (mut a, mut b) = (a.clone().abs(), b.clone().abs());
    let zero = IBig::from(0);
    while b != zero {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

fn parse_pair(s: &str) -> Result<(IBig, IBig)> {
    let err = || Error::SlopeSyntax(s.to_string());
    let cleaned = s.trim().replace('\u{2212}', "-");
    let (p, q) = cleaned.split_once('/').ok_or_else(err)?;
    let p = IBig::from_str(p.trim()).map_err(|_| err())?;
    let q = IBig::from_str(q.trim()).map_err(|_| err())?;
    Ok((p, q))
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_pair(s)?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A primitive vector `(p, q)` with its sign kept. Families of fillings
/// `alpha + k beta` depend on the representatives, not just the slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPair {
    pub p: IBig,
    pub q: IBig,
}

impl SignedPair {
    pub fn new(p: impl Into<IBig>, q: impl Into<IBig>) -> SignedPair {
        SignedPair {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn slope(&self) -> Result<Slope> {
        Slope::new(self.p.clone(), self.q.clone())
    }

    pub fn neg(&self) -> SignedPair {
        SignedPair {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

impl fmt::Display for SignedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for SignedPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_pair(s)?;
        Ok(SignedPair { p, q })
    }
}

impl Serialize for SignedPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Farey addition of representatives: the normal form of `alpha + k beta`.
pub fn farey_sum(alpha: &SignedPair, beta: &SignedPair, k: u64) -> Result<Slope> {
    let k = IBig::from(k);
    Slope::new(&alpha.p + &k * &beta.p, &alpha.q + &k * &beta.q)
}

/// The nonzero mod-2 class of slopes that bound surfaces in the manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvenClass {
    p: u8,
    q: u8,
}

impl EvenClass {
    /// Even slopes have even meridian coefficient: the class of knot
    /// exteriors in their knot-theoretic framing.
    pub const KNOT: EvenClass = EvenClass { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<EvenClass> {
        match (p, q) {
            (0, 1) | (1, 0) | (1, 1) => Ok(EvenClass {
                p: p as u8,
                q: q as u8,
            }),
            _ => Err(Error::InvalidEvenClass(p, q)),
        }
    }

    pub fn residue(&self) -> (u8, u8) {
        (self.p, self.q)
    }
}

impl Serialize for EvenClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.p, self.q].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EvenClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[i64; 2]>::deserialize(deserializer)?;
        EvenClass::new(p, q).map_err(serde::de::Error::custom)
    }
}
