use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::{format_rational, Rational};

/// Point of `P^N(Q)` as coprime integers, first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPointQ {
    coords: Vec<BigInt>,
}

impl ProjPointQ {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return Err(Error::domain("projective point with all coordinates zero"));
        }
        let first_negative = coords
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(Signed::is_negative);
        let g = if first_negative { -g } else { g };
        Ok(ProjPointQ {
            coords: coords.iter().map(|x| x / &g).collect(),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Clears denominators of rational homogeneous coordinates.
    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        let l = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let lq = Rational::from_integer(l);
        Self::new(coords.iter().map(|c| (c * &lq).to_integer()).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// `N + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sum_of_squares(&self) -> BigInt {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.coords
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default()
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.coords.iter().any(Zero::is_zero)
    }
}

impl Serialize for ProjPointQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

/// Point of the torus `(Q^*)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePointQ {
    coords: Vec<Rational>,
}

impl AffinePointQ {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(Error::domain(format!(
                "coordinate {i} of a torus point is zero"
            )));
        }
        Ok(AffinePointQ { coords })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Every coordinate is `+1` or `-1`, i.e. a rational torsion point.
    pub fn is_torsion(&self) -> bool {
        self.coords.iter().all(|c| c.abs().is_one())
    }
}

impl Serialize for AffinePointQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

/// `(zeta_m^{k_1}, ..., zeta_m^{k_n})` with `zeta_m = exp(2 pi i / m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionPoint {
    order: u64,
    exponents: Vec<u64>,
}

impl TorsionPoint {
    pub fn new(order: u64, exponents: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("torsion order must be positive"));
        }
        let m = order as i128;
        Ok(TorsionPoint {
            order,
            exponents: exponents
                .iter()
                .map(|&k| (k as i128).rem_euclid(m) as u64)
                .collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        TorsionPoint {
            order: 1,
            exponents: vec![0; n],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent of `zeta_m` in `zeta^a`, reduced mod `m`.
    pub fn character(&self, a: &[i64]) -> u64 {
        let m = self.order as i128;
        let s: i128 = self
            .exponents
            .iter()
            .zip(a)
            .map(|(&k, &x)| k as i128 * x as i128)
            .sum();
        s.rem_euclid(m) as u64
    }
}

/// Image point whose coordinates are `zeta_m^{phase_j} * magnitude_j`.
///
/// Every absolute value of a root of unity is 1, so every local norm of this
/// point equals that of `magnitudes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhasedProjPoint {
    pub order: u64,
    pub phases: Vec<u64>,
    pub magnitudes: ProjPointQ,
}

/// `omega * xi` with `omega` torsion and `xi` rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedPoint {
    pub torsion: TorsionPoint,
    pub rational: AffinePointQ,
}

impl TwistedPoint {
    pub fn new(torsion: TorsionPoint, rational: AffinePointQ) -> Result<Self> {
        if torsion.dim() != rational.dim() {
            return Err(Error::domain(
                "torsion and rational parts differ in dimension",
            ));
        }
        Ok(TwistedPoint { torsion, rational })
    }
}
