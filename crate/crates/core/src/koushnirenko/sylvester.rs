//! Symbolic expansion of the Sylvester resultant of two generic univariate
//! polynomials of degree `d`, the `n = 1` sparse resultant for `A = {0..d}`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkernel::ExactLog;
use crate::polytope::ExponentSet;
use crate::toric::{resultant_height_bound, ser_bigint};

/// Expansion cost grows like `binom(2d, d)` products of dense polynomials.
pub const MAX_SYLVESTER_DEGREE: usize = 4;

/// Integer polynomial in `a_0..a_d, b_0..b_d`; an exponent vector lists the
/// `a` exponents first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantPoly {
    pub d: usize,
    pub terms: BTreeMap<Vec<u8>, BigInt>,
}

impl ResultantPoly {
    pub fn coeff(&self, e: &[u8]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        assert_eq!(a.len(), self.d + 1);
        assert_eq!(b.len(), self.d + 1);
        let vars: Vec<&BigInt> = a.iter().chain(b).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(&vars).fold(c.clone(), |acc, (&k, v)| {
                    acc * num_traits::pow((*v).clone(), k as usize)
                })
            })
            .sum()
    }

    /// Exponent vector of `a_i^p b_j^q`.
    pub fn monomial(&self, ai: usize, p: u8, bj: usize, q: u8) -> Vec<u8> {
        let mut e = vec![0u8; 2 * (self.d + 1)];
        e[ai] += p;
        e[self.d + 1 + bj] += q;
        e
    }
}

type Poly = HashMap<Vec<u8>, BigInt>;

/// Variable index of the Sylvester entry at `(row, col)`; rows `0..d` carry
/// `f = sum a_j x^j` from the leading coefficient down, rows `d..2d` carry `g`.
fn entry(d: usize, row: usize, col: usize) -> Option<usize> {
    let (shift, offset) = if row < d { (row, 0) } else { (row - d, d + 1) };
    let k = col.checked_sub(shift)?;
    (k <= d).then(|| offset + d - k)
}

fn minor(d: usize, mask: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
    let m = 2 * d;
    let row = m - mask.count_ones() as usize;
    if row == m {
        let mut p = Poly::new();
        p.insert(vec![0u8; 2 * (d + 1)], BigInt::one());
        return p;
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut out = Poly::new();
    let mut position = 0;
    for col in 0..m {
        if mask & (1 << col) == 0 {
            continue;
        }
        let sign_negative = position % 2 == 1;
        position += 1;
        let Some(var) = entry(d, row, col) else {
            continue;
        };
        let sub = minor(d, mask & !(1 << col), memo);
        for (e, c) in sub {
            let mut e = e;
            e[var] += 1;
            let slot = out.entry(e).or_insert_with(BigInt::zero);
            if sign_negative {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    memo.insert(mask, out.clone());
    out
}

/// `det Syl(f, g) = a_d^d b_d^d prod (alpha_i - beta_j)` as an integer
/// polynomial in the coefficients.
pub fn sylvester_resultant(d: usize) -> Result<ResultantPoly> {
    if d == 0 {
        return Err(Error::domain("Sylvester resultant needs degree at least 1"));
    }
    if d > MAX_SYLVESTER_DEGREE {
        return Err(Error::precondition(
            "d <= 4",
            format!("symbolic expansion refused for d = {d}"),
        ));
    }
    let mut memo = HashMap::new();
    let full = (1u32 << (2 * d)) - 1;
    let terms = minor(d, full, &mut memo).into_iter().collect();
    Ok(ResultantPoly { d, terms })
}

/// The resultant's sup-height against the sparse-resultant bound at `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylvesterReport {
    pub d: usize,
    pub num_terms: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub max_abs_coeff: BigInt,
    pub h_sup: ExactLog,
    /// `(3/2)(n+1) log Card(A) Vol(A) = 3 d log(d+1)`.
    pub bound: ExactLog,
    /// Coefficients of `a_0^d b_d^d` and `a_d^d b_0^d`.
    pub extreme_coeffs: [i64; 2],
    pub extreme_ok: bool,
    pub ok: bool,
}

pub fn sylvester_resultant_check(d: usize) -> Result<SylvesterReport> {
    let res = sylvester_resultant(d)?;
    let max_abs_coeff = res
        .terms
        .values()
        .map(Signed::abs)
        .max()
        .expect("the resultant is nonzero");
    let h_sup = ExactLog::of_integer(&max_abs_coeff)?;
    let a = ExponentSet::new(1, (0..=d as i64).map(|k| vec![k]).collect())?;
    let bound = resultant_height_bound(&a)?;
    let dd = d as u8;
    let extremes = [
        res.coeff(&res.monomial(0, dd, d, dd)),
        res.coeff(&res.monomial(d, dd, 0, dd)),
    ];
    let extreme_ok = extremes.iter().all(|c| c.abs().is_one());
    let to_i64 = |c: &BigInt| i64::try_from(c).unwrap_or(i64::MAX);
    Ok(SylvesterReport {
        d,
        num_terms: res.terms.len(),
        ok: h_sup.try_cmp(&bound)?.is_le() && extreme_ok,
        max_abs_coeff,
        h_sup,
        bound,
        extreme_coeffs: [to_i64(&extremes[0]), to_i64(&extremes[1])],
        extreme_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn el(p: u64, c: i64) -> ExactLog {
        ExactLog::from_terms([(p.into(), crate::numkernel::rational_from_ints(c, 1))]).unwrap()
    }

    #[test]
    fn degree_one_by_hand() {
        let r = sylvester_resultant(1).unwrap();
        // a1 b0 - a0 b1
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.coeff(&r.monomial(1, 1, 0, 1)), BigInt::from(1));
        assert_eq!(r.coeff(&r.monomial(0, 1, 1, 1)), BigInt::from(-1));
        let rep = sylvester_resultant_check(1).unwrap();
        assert_eq!(rep.max_abs_coeff, BigInt::from(1));
        assert_eq!(rep.bound, el(2, 3));
        assert!(rep.ok);
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn degree_two_matches_the_bezout_formula() {
        // Res = (a2 b0 - a0 b2)^2 - (a2 b1 - a1 b2)(a1 b0 - a0 b1)
        let r = sylvester_resultant(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..=9)).collect();
            let b: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..=9)).collect();
            let x = a[2] * b[0] - a[0] * b[2];
            let expect = x * x - (a[2] * b[1] - a[1] * b[2]) * (a[1] * b[0] - a[0] * b[1]);
            assert_eq!(r.eval(&big(&a), &big(&b)), BigInt::from(expect));
        }
        let rep = sylvester_resultant_check(2).unwrap();
        assert_eq!(rep.max_abs_coeff, BigInt::from(2));
        assert_eq!(r.coeff(&[1, 0, 1, 1, 0, 1]), BigInt::from(-2));
        assert_eq!(rep.bound, el(3, 6));
        assert!(rep.extreme_ok && rep.ok);
    }

    #[test]
    fn planted_roots_give_the_root_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3usize {
            let r = sylvester_resultant(d).unwrap();
            for _ in 0..10 {
                let lead_f: i64 = rng.gen_range(1..=3);
                let lead_g: i64 = rng.gen_range(1..=3);
                let alpha: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
                let beta: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
                let expand = |lead: i64, roots: &[i64]| {
                    let mut c = vec![BigInt::from(lead)];
                    for &r in roots {
                        let mut next = vec![BigInt::zero(); c.len() + 1];
                        for (k, ck) in c.iter().enumerate() {
                            next[k + 1] += ck;
                            next[k] -= ck * r;
                        }
                        c = next;
                    }
                    c
                };
                let mut expect =
                    BigInt::from(lead_f).pow(d as u32) * BigInt::from(lead_g).pow(d as u32);
                for &x in &alpha {
                    for &y in &beta {
                        expect *= x - y;
                    }
                }
                assert_eq!(
                    r.eval(&expand(lead_f, &alpha), &expand(lead_g, &beta)),
                    expect
                );
            }
        }
    }

    #[test]
    fn degree_three_and_four_are_within_bound() {
        for d in [3, 4] {
            let rep = sylvester_resultant_check(d).unwrap();
            assert!(rep.ok, "d={d}: {rep:?}");
        }
        assert!(sylvester_resultant(5).is_err());
        assert!(sylvester_resultant(0).is_err());
    }
}
