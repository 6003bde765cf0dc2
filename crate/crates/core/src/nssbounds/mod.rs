//! Degree and height bounds for the sparse arithmetic Nullstellensatz and the
//! affine Koushnirenko height bound, as exact log-prime combinations.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::LaurentPolyQ;
use crate::numkernel::{ExactLog, Rational};
use crate::polytope::{normalized_volume, ExponentSet};
use crate::toric::ser_bigint;

/// Parameters of the Nullstellensatz bound; `vol` is `Vol(A)` for the
/// augmented support `A = Supp(1, x_1, ..., x_n, f_1, ..., f_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NssInput {
    pub n: u64,
    pub s: u64,
    pub d: u64,
    /// `max h_sup(f_i)`.
    pub h: ExactLog,
    #[serde(serialize_with = "ser_bigint")]
    pub vol: BigInt,
}

impl NssInput {
    pub fn new(n: u64, s: u64, d: u64, h: ExactLog, vol: BigInt) -> Result<Self> {
        for (field, v) in [("n", n), ("s", s), ("d", d)] {
            if v == 0 {
                return Err(Error::input(field, "must be at least 1"));
            }
        }
        if !vol.is_positive() {
            return Err(Error::input("vol", "must be positive"));
        }
        if h.cmp_rational(&Rational::zero()).is_lt() {
            return Err(Error::input("h", "must be nonnegative"));
        }
        Ok(NssInput { n, s, d, h, vol })
    }

    /// Reads `n`, `s`, `d`, `h` off integer polynomials and computes `Vol(A)`
    /// from [`nss_support`].
    pub fn from_polys(n: usize, polys: &[LaurentPolyQ]) -> Result<(Self, ExponentSet)> {
        let mut h = ExactLog::zero();
        let mut d = 0;
        for (i, f) in polys.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::input(format!("polys[{i}]"), "must be nonzero"));
            }
            if f.terms().values().any(|c| !c.is_integer()) {
                return Err(Error::domain(format!(
                    "polys[{i}] must have integer coefficients"
                )));
            }
            let max = f
                .terms()
                .values()
                .map(|c| c.to_integer().abs())
                .max()
                .expect("nonzero");
            h = h.max(ExactLog::of_integer(&max)?);
            d = d.max(f.total_degree());
        }
        let a = nss_support(
            n,
            &polys.iter().map(LaurentPolyQ::support).collect::<Vec<_>>(),
        )?;
        let vol = normalized_volume(&a);
        let input = NssInput::new(n as u64, polys.len() as u64, d.max(1) as u64, h, vol)?;
        Ok((input, a))
    }
}

/// `{0, e_1, ..., e_n}` together with every support, sorted lexicographically.
pub fn nss_support(n: usize, supports: &[Vec<Vec<i64>>]) -> Result<ExponentSet> {
    let mut pts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    for (i, sup) in supports.iter().enumerate() {
        for e in sup {
            if e.len() != n {
                return Err(Error::domain(format!(
                    "polys[{i}] has an exponent of length {}",
                    e.len()
                )));
            }
            if e.iter().any(|&k| k < 0) {
                return Err(Error::domain(format!(
                    "polys[{i}] has a negative exponent {e:?}"
                )));
            }
            pts.push(e.clone());
        }
    }
    Ok(ExponentSet::from_points_dedup(n, pts)?.sorted())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NssBounds {
    /// `2 n^2 d Vol(A)`.
    #[serde(serialize_with = "ser_bigint")]
    pub deg_bound: BigInt,
    /// `2 (n+1)^3 d Vol(A) (h + log s + 14 (n+1) d log(d+1))`.
    pub height_bound: ExactLog,
    pub warnings: Vec<String>,
}

fn log_u64(k: u64) -> ExactLog {
    ExactLog::of_u64(k).expect("positive argument")
}

pub fn nss_bounds(input: &NssInput) -> NssBounds {
    let (n, d) = (BigInt::from(input.n), BigInt::from(input.d));
    let deg_bound = BigInt::from(2) * &n * &n * &d * &input.vol;
    let inner = input
        .h
        .plus(&log_u64(input.s))
        .plus(&log_u64(input.d + 1).scale_int(14 * (input.n as i64 + 1) * input.d as i64));
    let outer = BigInt::from(2) * num_traits::pow(&n + 1, 3) * &d * &input.vol;
    let mut warnings = Vec::new();
    if input.n < 2 {
        warnings.push("n < 2: the bound is calibrated for n >= 2".to_string());
    }
    if input.d < 2 {
        warnings.push("d < 2: the bound is calibrated for d >= 2".to_string());
    }
    NssBounds {
        deg_bound,
        height_bound: inner.scale(&Rational::from_integer(outer)),
        warnings,
    }
}

pub const N_AT_LEAST_TWO: &str = "requires n >= 2";

/// `Vol(A) (n h + 5 n (n+1) log(d+1))`.
pub fn bk_afin_bound(n: u64, d: u64, h: &ExactLog, vol: &BigInt) -> Result<ExactLog> {
    if n < 2 {
        return Err(Error::precondition(N_AT_LEAST_TWO, format!("n = {n}")));
    }
    if d == 0 {
        return Err(Error::input("d", "must be at least 1"));
    }
    let n_i = n as i64;
    let inner = h
        .scale_int(n_i)
        .plus(&log_u64(d + 1).scale_int(5 * n_i * (n_i + 1)));
    Ok(inner.scale(&Rational::from_integer(vol.clone())))
}
