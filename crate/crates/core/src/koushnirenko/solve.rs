//! Exact zero enumeration for the system shapes the checkers accept:
//! univariate, affine-linear and triangular monomial systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{monomial_value, AffinePointQ, LaurentPolyQ};
use crate::numkernel::{factorize, Rational};
use crate::toric::ser_rational;

/// A rational zero with its exact multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnivariateRoot {
    #[serde(serialize_with = "ser_rational")]
    pub root: Rational,
    pub multiplicity: u64,
}

/// Dense integer coefficients (constant first) of `x^{-m} f` scaled to be
/// primitive, where `m` is the least exponent of `f`.
fn shifted_integer_coeffs(f: &LaurentPolyQ) -> Vec<BigInt> {
    let lo = f.terms().keys().next().expect("nonzero")[0];
    let hi = f.terms().keys().next_back().expect("nonzero")[0];
    let lcm = f
        .terms()
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut g = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (e, c) in f.terms() {
        g[(e[0] - lo) as usize] = (c * Rational::from_integer(lcm.clone())).to_integer();
    }
    let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    g.iter().map(|c| c / &content).collect()
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `q^deg g(p/q)`.
fn eval_homogenized(g: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in g.iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc
}

/// Divides `g` by `q x - p` in `Z[x]`, returning `None` when it does not divide.
fn divide_linear(g: &[BigInt], p: &BigInt, q: &BigInt) -> Option<Vec<BigInt>> {
    let deg = g.len() - 1;
    if deg == 0 {
        return None;
    }
    // g_k = q h_{k-1} - p h_k
    let mut h = vec![BigInt::zero(); deg];
    let (quot, rem) = g[deg].div_rem(q);
    if !rem.is_zero() {
        return None;
    }
    h[deg - 1] = quot;
    for k in (1..deg).rev() {
        let (quot, rem) = (&g[k] + p * &h[k]).div_rem(q);
        if !rem.is_zero() {
            return None;
        }
        h[k - 1] = quot;
    }
    (g[0] == -(p * &h[0])).then_some(h)
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factorize(&n.abs())?
        .divisors()
        .into_iter()
        .map(BigInt::from)
        .collect())
}

/// Degree of `x^{-m} f`, the number of zeros in the torus counted with
/// multiplicity over an algebraic closure.
pub(crate) fn torus_degree(f: &LaurentPolyQ) -> u64 {
    let lo = f.terms().keys().next().expect("nonzero")[0];
    let hi = f.terms().keys().next_back().expect("nonzero")[0];
    (hi - lo) as u64
}

/// All zeros of a univariate Laurent polynomial in `Q^*`, with multiplicities,
/// sorted by value.
pub fn solve_univariate(f: &LaurentPolyQ) -> Result<Vec<UnivariateRoot>> {
    if f.nvars() != 1 {
        return Err(Error::domain(format!(
            "univariate solver given a polynomial in {} variables",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no isolated zeros"));
    }
    let mut g = shifted_integer_coeffs(f);
    if g.len() == 1 {
        return Ok(Vec::new());
    }
    // a rational zero p/q in lowest terms has p | g_0 and q | g_deg (g_0 != 0 after the shift)
    let nums = positive_divisors(&g[0])?;
    let dens = positive_divisors(g.last().expect("nonempty"))?;
    let mut roots = Vec::new();
    for q in &dens {
        for p0 in &nums {
            if !p0.gcd(q).is_one() {
                continue;
            }
            for p in [p0.clone(), -p0] {
                if g.len() == 1 {
                    break;
                }
                // (q x - p) | g forces (q - p) | g(1) and (q + p) | g(-1)
                let g1 = eval_int(&g, &BigInt::one());
                let gm1 = eval_int(&g, &-BigInt::one());
                let (a, b) = (q - &p, q + &p);
                if (a.is_zero() && !g1.is_zero()) || (!a.is_zero() && !(&g1 % &a).is_zero()) {
                    continue;
                }
                if (b.is_zero() && !gm1.is_zero()) || (!b.is_zero() && !(&gm1 % &b).is_zero()) {
                    continue;
                }
                if !eval_homogenized(&g, &p, q).is_zero() {
                    continue;
                }
                let mut mult = 0;
                while let Some(h) = divide_linear(&g, &p, q) {
                    g = h;
                    mult += 1;
                }
                debug_assert!(mult > 0);
                roots.push(UnivariateRoot {
                    root: Rational::new(p.clone(), q.clone()),
                    multiplicity: mult,
                });
            }
        }
    }
    roots.sort_by(|a, b| a.root.cmp(&b.root));
    Ok(roots)
}

fn is_constant(e: &[i64]) -> bool {
    e.iter().all(|&k| k == 0)
}

/// True when every polynomial is `m_i(x_1..x_{i-1}) x_i^{+-1} - c_i`.
pub(crate) fn is_triangular(polys: &[LaurentPolyQ]) -> bool {
    triangular_shape(polys).is_ok()
}

fn triangular_shape(polys: &[LaurentPolyQ]) -> Result<Vec<(Vec<i64>, Rational)>> {
    let n = polys.len();
    let mut out = Vec::with_capacity(n);
    for (i, f) in polys.iter().enumerate() {
        let bad = || {
            Error::domain(format!(
                "polys[{i}] is not of the form m(x_1..x_{i}) x_{}^(+-1) - c",
                i + 1
            ))
        };
        if f.nvars() != n || f.num_terms() != 2 {
            return Err(bad());
        }
        let mut it = f.terms().iter();
        let (e0, c0) = it.next().expect("two terms");
        let (e1, c1) = it.next().expect("two terms");
        let ((e, a), b) = if is_constant(e0) {
            ((e1, c1), c0)
        } else if is_constant(e1) {
            ((e0, c0), c1)
        } else {
            return Err(bad());
        };
        if e[i].abs() != 1 || e[i + 1..].iter().any(|&k| k != 0) {
            return Err(bad());
        }
        // m x_i^{+-1} = -b/a
        out.push((e.clone(), -b / a));
    }
    Ok(out)
}

/// Back-substitution for a triangular monomial system; the zero is unique.
pub fn solve_triangular(polys: &[LaurentPolyQ]) -> Result<AffinePointQ> {
    let shape = triangular_shape(polys)?;
    let mut x: Vec<Rational> = Vec::with_capacity(shape.len());
    for (i, (e, c)) in shape.iter().enumerate() {
        let m = monomial_value(&e[..i], &x)?;
        let v = c / m;
        x.push(if e[i] == 1 { v } else { v.recip() });
    }
    AffinePointQ::new(x)
}

fn is_affine_linear(f: &LaurentPolyQ) -> bool {
    f.terms()
        .keys()
        .all(|e| e.iter().all(|&k| k == 0 || k == 1) && e.iter().sum::<i64>() <= 1)
}

pub(crate) fn is_linear(polys: &[LaurentPolyQ]) -> bool {
    polys.iter().all(is_affine_linear)
}

/// Isolated torus zeros of a square affine-linear system: the unique solution
/// when the matrix is invertible and the solution avoids the coordinate
/// hyperplanes, and nothing otherwise (a singular system has no isolated zeros).
pub fn solve_linear(polys: &[LaurentPolyQ]) -> Result<Vec<AffinePointQ>> {
    let n = polys.len();
    if !is_linear(polys) || polys.iter().any(|f| f.nvars() != n) {
        return Err(Error::domain("system is not square affine-linear"));
    }
    let mut m = vec![vec![Rational::zero(); n + 1]; n];
    for (i, f) in polys.iter().enumerate() {
        for (e, c) in f.terms() {
            match e.iter().position(|&k| k == 1) {
                Some(j) => m[i][j] = c.clone(),
                None => m[i][n] = -c,
            }
        }
    }
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Vec::new());
        };
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for k in col..=n {
            m[col][k] = &m[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for k in col..=n {
                    let t = &factor * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    let x: Vec<Rational> = m.into_iter().map(|row| row[n].clone()).collect();
    if x.iter().any(|v| v.is_zero()) {
        return Ok(Vec::new());
    }
    Ok(vec![AffinePointQ::new(x)?])
}

/// Determinant over Q by Gaussian elimination.
pub(crate) fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for k in col..n {
                let t = &factor * &m[col][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Whether the Jacobian of a square system is invertible at one of its zeros;
/// a nonsingular zero has intersection multiplicity 1.
pub fn jacobian_nonsingular(polys: &[LaurentPolyQ], xi: &AffinePointQ) -> Result<bool> {
    let n = polys.len();
    if xi.dim() != n || polys.iter().any(|f| f.nvars() != n) {
        return Err(Error::domain(
            "Jacobian test needs n polynomials in n variables",
        ));
    }
    for (i, f) in polys.iter().enumerate() {
        if !f.eval(xi.coords())?.is_zero() {
            return Err(Error::domain(format!("point is not a zero of polys[{i}]")));
        }
    }
    let jac = polys
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| f.derivative(j).eval(xi.coords()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(!rational_det(jac).is_zero())
}
