//! Successive minima, degree and height bounds of projective toric varieties
//! `X_A`, read off the combinatorics of `A`.

mod sampler;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use sampler::{sample_verify_minima, FaceSampleSummary, SampleConfig, SampleReport};

use crate::error::{Error, Result};
use crate::heights::{half_log, proj_height, ProjPointQ};
use crate::lattice::{difference_lattice, DifferenceLattice, LatticeIndex};
use crate::numkernel::{ExactLog, Rational};
use crate::polytope::{
    convex_hull, face_counts, normalized_volume, point_faces, ExponentSet, FaceCounts,
};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn half_log_usize(n: usize) -> ExactLog {
    half_log(&BigInt::from(n))
}

/// `mu_i = (1/2) log N_A(r - i + 1)` for `i = 1..=r+1`; `mu_1` is the
/// essential minimum and `mu_{r+1} = 0` the absolute one.
pub fn successive_minima(a: &ExponentSet) -> Vec<ExactLog> {
    minima_from_counts(&face_counts(a))
}

fn minima_from_counts(fc: &FaceCounts) -> Vec<ExactLog> {
    let r = fc.counts.len() - 1;
    (1..=r + 1)
        .map(|i| half_log_usize(fc.counts[r + 1 - i]))
        .collect()
}

/// `(dim X_A, deg X_A) = (rank L_A, Vol(A))`.
pub fn toric_dim_deg(a: &ExponentSet) -> (usize, BigInt) {
    (difference_lattice(a).rank, normalized_volume(a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightBracket {
    pub lower: ExactLog,
    pub upper: ExactLog,
}

/// `(1/2) sum_i log N_A(i) Vol(A) <= h(X_A) <= ((r+1)/2) log Card(A) Vol(A)`.
pub fn height_bounds(a: &ExponentSet) -> HeightBracket {
    bracket_from(&face_counts(a), &normalized_volume(a), a.len())
}

fn bracket_from(fc: &FaceCounts, vol: &BigInt, card: usize) -> HeightBracket {
    let r = fc.counts.len() - 1;
    let vol = Rational::from_integer(vol.clone());
    let lower = fc
        .counts
        .iter()
        .fold(ExactLog::zero(), |acc, &c| acc.plus(&half_log_usize(c)))
        .scale(&vol);
    let upper = half_log_usize(card).scale(&(Rational::from_integer(BigInt::from(r + 1)) * vol));
    HeightBracket { lower, upper }
}

/// `h(P^n) = ((n+1)/2) sum_{j=2}^{n+1} 1/j`.
pub fn proj_space_height(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("projective space height needs n >= 1"));
    }
    let harmonic: Rational = (2..=n + 1).map(|j| rat(1, j as i64)).sum();
    Ok(rat(n as i64 + 1, 2) * harmonic)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZhangBracket {
    pub n: usize,
    pub sum_minima: ExactLog,
    #[serde(serialize_with = "ser_rational")]
    pub h_value: Rational,
    pub top: ExactLog,
    pub lower_strict: bool,
    pub upper_strict: bool,
    pub strict: bool,
    pub inside_height_bracket: bool,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    q: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::numkernel::format_rational(q))
}

/// Checks `sum mu_i(P^n) < h(P^n) < (n+1) mu_1(P^n)` and that `h(P^n)` lies
/// in the bracket of [`height_bounds`].
pub fn zhang_bracket_check(n: usize) -> Result<ZhangBracket> {
    let h = proj_space_height(n)?;
    let a = classical_example(ClassicalKind::Projective, n, 1)?.a;
    let mu = successive_minima(&a);
    let sum_minima = mu.iter().fold(ExactLog::zero(), |acc, m| acc.plus(m));
    let top = mu[0].scale_int(n as i64 + 1);
    let lower_strict = sum_minima.cmp_rational(&h).is_lt();
    let upper_strict = top.cmp_rational(&h).is_gt();
    let bracket = height_bounds(&a);
    let inside_height_bracket =
        bracket.lower.cmp_rational(&h).is_le() && bracket.upper.cmp_rational(&h).is_ge();
    Ok(ZhangBracket {
        n,
        sum_minima,
        h_value: h,
        top,
        lower_strict,
        upper_strict,
        strict: lower_strict && upper_strict,
        inside_height_bracket,
    })
}

pub const INDEX_ONE: &str = "requires L_A = Z^n";

pub(crate) fn require_index_one(lat: &DifferenceLattice) -> Result<()> {
    match lat.index() {
        LatticeIndex::Finite(g) if g.is_one() => Ok(()),
        idx => Err(Error::precondition(
            INDEX_ONE,
            format!("lattice index is {idx}"),
        )),
    }
}

/// `(3/2)(n+1) log Card(A) Vol(A)`, stated only when `L_A = Z^n`.
pub fn resultant_height_bound(a: &ExponentSet) -> Result<ExactLog> {
    require_index_one(&difference_lattice(a))?;
    Ok(resultant_bound_value(
        a.ambient_dim(),
        a.len(),
        &normalized_volume(a),
    ))
}

fn resultant_bound_value(n: usize, card: usize, vol: &BigInt) -> ExactLog {
    let c = rat(3 * (n as i64 + 1), 1) * Rational::from_integer(vol.clone());
    half_log_usize(card).scale(&c)
}

/// `X_{A, alpha}`: the closure of `t -> (alpha_j t^{a_j})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialVarietyData {
    pub a: ExponentSet,
    pub alpha: Vec<Rational>,
}

impl MonomialVarietyData {
    pub fn new(a: ExponentSet, alpha: Vec<Rational>) -> Result<Self> {
        if alpha.len() != a.len() {
            return Err(Error::domain(format!(
                "alpha has {} entries but A has {} points",
                alpha.len(),
                a.len()
            )));
        }
        if alpha.iter().any(Zero::is_zero) {
            return Err(Error::domain("alpha must have nonzero entries"));
        }
        Ok(MonomialVarietyData { a, alpha })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialBounds {
    pub minima_upper: Vec<ExactLog>,
    pub height_upper: ExactLog,
}

/// `mu_i <= min { h(alpha(P)) : dim P = r - i + 1 }` and
/// `h(X_{A,alpha}) <= (r+1) h(alpha) Vol(A)`.
///
/// The height bound is the upper half of the successive-minima bracket,
/// `h <= (r+1) mu_1 deg`, with `mu_1 <= h(alpha)` and `deg = Vol(A)`. For
/// `alpha = (1, ..., 1)` it is exactly the upper end of [`height_bounds`].
pub fn monomial_bounds(m: &MonomialVarietyData) -> Result<MonomialBounds> {
    let faces = point_faces(&m.a);
    let r = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let mut minima_upper = Vec::with_capacity(r + 1);
    for i in 1..=r + 1 {
        let dim = r + 1 - i;
        let mut best: Option<ExactLog> = None;
        for f in faces.iter().filter(|f| f.dim == dim) {
            let sub: Vec<Rational> = f
                .point_indices
                .iter()
                .map(|&j| m.alpha[j].clone())
                .collect();
            let h = proj_height(&ProjPointQ::from_rationals(&sub)?);
            best = Some(match best {
                Some(b) if b.try_cmp(&h)?.is_le() => b,
                _ => h,
            });
        }
        minima_upper.push(best.expect("faces exist in every dimension"));
    }
    let h_alpha = proj_height(&ProjPointQ::from_rationals(&m.alpha)?);
    let vol = Rational::from_integer(normalized_volume(&m.a));
    let height_upper = h_alpha.scale(&(rat(r as i64 + 1, 1) * vol));
    Ok(MonomialBounds {
        minima_upper,
        height_upper,
    })
}

/// `h(xi) >= (1/2) log(N+1)` for a point with no zero coordinate.
pub fn min_height_lower_check(xi: &ProjPointQ) -> Result<bool> {
    if xi.has_zero_coordinate() {
        return Err(Error::domain("point has a zero coordinate"));
    }
    Ok(xi.sum_of_squares() >= BigInt::from(xi.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalKind {
    Projective,
    Veronese,
    Segre,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalExample {
    pub kind: ClassicalKind,
    pub a: ExponentSet,
    pub expected_minima: Vec<ExactLog>,
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// `{0, e_1, .., e_n}`, `{a in N^n : |a| <= d}` or `{0,1}^n`, with the
/// closed-form minima of the corresponding variety.
pub fn classical_example(kind: ClassicalKind, n: usize, d: usize) -> Result<ClassicalExample> {
    if n == 0 {
        return Err(Error::domain("classical examples need n >= 1"));
    }
    let nn = n as i64;
    let (points, expected_minima) = match kind {
        ClassicalKind::Projective => {
            let mut pts = vec![vec![0; n]];
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                pts.push(e);
            }
            let mu = (1..=nn + 1)
                .map(|i| half_log(&BigInt::from(nn - i + 2)))
                .collect();
            (pts, mu)
        }
        ClassicalKind::Veronese => {
            if d == 0 {
                return Err(Error::domain("Veronese degree must be >= 1"));
            }
            let mut pts = Vec::new();
            let mut cur = vec![0i64; n];
            bounded_degree(&mut cur, 0, d as i64, &mut pts);
            pts.sort();
            let mu = (1..=nn + 1)
                .map(|i| {
                    half_log(&binomial(
                        (d as i64 + nn - i + 1) as u64,
                        (nn - i + 1) as u64,
                    ))
                })
                .collect();
            (pts, mu)
        }
        ClassicalKind::Segre => {
            let pts = (0..1u64 << n)
                .map(|m| (0..n).rev().map(|j| ((m >> j) & 1) as i64).collect())
                .collect();
            let log2 = ExactLog::of_u64(2).expect("positive");
            let mu = (1..=nn + 1)
                .map(|i| log2.scale(&rat(nn - i + 1, 2)))
                .collect();
            (pts, mu)
        }
    };
    Ok(ClassicalExample {
        kind,
        a: ExponentSet::new(n, points)?,
        expected_minima,
    })
}

fn bounded_degree(cur: &mut Vec<i64>, j: usize, budget: i64, out: &mut Vec<Vec<i64>>) {
    if j == cur.len() {
        out.push(cur.clone());
        return;
    }
    for k in 0..=budget {
        cur[j] = k;
        bounded_degree(cur, j + 1, budget - k, out);
    }
    cur[j] = 0;
}

/// Everything Theorem-1-style analysis says about `X_A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricReport {
    pub a: ExponentSet,
    pub lattice: DifferenceLattice,
    pub r: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub degree: BigInt,
    pub vertices: Vec<Vec<i64>>,
    pub f_vector: Vec<usize>,
    pub face_counts: Vec<usize>,
    pub minima: Vec<ExactLog>,
    pub essential_minimum: ExactLog,
    pub absolute_minimum: ExactLog,
    pub height_lower: ExactLog,
    pub height_upper: ExactLog,
    pub resultant_bound: Option<ExactLog>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resultant_bound_unavailable: Option<String>,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn toric_report(a: &ExponentSet) -> ToricReport {
    let lattice = difference_lattice(a);
    let fc = face_counts(a);
    let degree = normalized_volume(a);
    let minima = minima_from_counts(&fc);
    let bracket = bracket_from(&fc, &degree, a.len());
    let (resultant_bound, resultant_bound_unavailable) = match require_index_one(&lattice) {
        Ok(()) => (
            Some(resultant_bound_value(a.ambient_dim(), a.len(), &degree)),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let poly = convex_hull(a);
    ToricReport {
        a: a.clone(),
        r: lattice.rank,
        lattice,
        degree,
        vertices: poly.vertices().to_vec(),
        f_vector: poly.face_lattice().f_vector(),
        face_counts: fc.counts,
        essential_minimum: minima[0].clone(),
        absolute_minimum: minima.last().expect("at least one minimum").clone(),
        minima,
        height_lower: bracket.lower,
        height_upper: bracket.upper,
        resultant_bound,
        resultant_bound_unavailable,
    }
}
