//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toric_heights::heights::{AffinePointQ, LaurentPolyQ, ProjPointQ};
use toric_heights::lattice::difference_lattice;
use toric_heights::numkernel::{rational_from_ints, ExactLog, Rational};
use toric_heights::polytope::ExponentSet;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn el(terms: &[(u64, i64, i64)]) -> ExactLog {
    ExactLog::from_terms(
        terms
            .iter()
            .map(|&(p, n, d)| (p.into(), rational_from_ints(n, d))),
    )
    .unwrap()
}

pub fn log_of(n: u64) -> ExactLog {
    ExactLog::of_u64(n).unwrap()
}

/// Distinct points of `[lo, hi]^n`, between 1 and `max_points` of them.
pub fn exponent_set(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_points: usize,
    lo: i64,
    hi: i64,
) -> ExponentSet {
    let k = rng.gen_range(1..=max_points);
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for _ in 0..8 * k {
        if pts.len() == k {
            break;
        }
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    ExponentSet::new(n, pts).unwrap()
}

/// A full-dimensional set with `L_A = Z^n`; always contains `0, e_1, ..., e_n`
/// plus random extra points.
pub fn index_one_set(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    lo: i64,
    hi: i64,
) -> ExponentSet {
    let mut pts = vec![vec![0; n]];
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        pts.push(e);
    }
    for _ in 0..extra {
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let a = ExponentSet::new(n, pts).unwrap();
    debug_assert!(difference_lattice(&a).index().is_one());
    a
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

pub fn rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rational_from_ints(nonzero(rng, bound), rng.gen_range(1..=bound))
}

pub fn affine_point(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> AffinePointQ {
    AffinePointQ::new((0..n).map(|_| rational(rng, bound)).collect()).unwrap()
}

/// Integer coordinates in `[-bound, bound]`, not all zero.
pub fn proj_point(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> ProjPointQ {
    loop {
        let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c.iter().any(|&x| x != 0) {
            return ProjPointQ::from_i64(&c).unwrap();
        }
    }
}

/// Nonzero Laurent polynomial with up to `max_terms` terms and exponents in
/// `[lo, hi]^n`.
pub fn laurent_poly(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_terms: usize,
    lo: i64,
    hi: i64,
    coeff: i64,
) -> LaurentPolyQ {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<i64>, Rational)> = (0..k)
            .map(|_| {
                let e = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
                (
                    e,
                    Rational::from_integer(BigInt::from(rng.gen_range(-coeff..=coeff))),
                )
            })
            .collect();
        let f = LaurentPolyQ::new(n, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Homogeneous form of degree `d` in `n + 1` variables.
pub fn homogeneous_form(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    d: i64,
    max_terms: usize,
    coeff: i64,
) -> LaurentPolyQ {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<i64>, Rational)> = (0..k)
            .map(|_| {
                let mut e = vec![0i64; nvars];
                for _ in 0..d {
                    e[rng.gen_range(0..nvars)] += 1;
                }
                (
                    e,
                    Rational::from_integer(BigInt::from(rng.gen_range(-coeff..=coeff))),
                )
            })
            .collect();
        let f = LaurentPolyQ::new(nvars, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// `f = c x^shift prod (q_k x - p_k)^{m_k}`, optionally times `x^2 + t` with
/// `t > 0` so that some zeros are irrational.
pub struct PlantedUnivariate {
    pub f: LaurentPolyQ,
    pub roots: Vec<(Rational, u64)>,
    pub shift: i64,
    /// `deg f` after removing `x^shift`, the length of the Newton segment.
    pub width: i64,
    pub complete: bool,
}

impl PlantedUnivariate {
    /// `sum m log max(|p|, q)` over reduced roots `p/q`.
    pub fn weil_sum(&self) -> ExactLog {
        self.roots.iter().fold(ExactLog::zero(), |acc, (r, m)| {
            let top = r.numer().abs().max(r.denom().clone());
            acc.plus(&ExactLog::of_integer(&top).unwrap().scale_int(*m as i64))
        })
    }

    pub fn count(&self) -> u64 {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

pub fn planted_univariate(rng: &mut ChaCha8Rng, max_degree: i64) -> PlantedUnivariate {
    let with_quadratic = max_degree >= 3 && rng.gen_bool(0.25);
    let budget = max_degree - if with_quadratic { 2 } else { 0 };
    let mut roots: Vec<(Rational, u64)> = Vec::new();
    let mut used = 0;
    let target = rng.gen_range(1..=budget);
    while used < target {
        let r = rational_from_ints(nonzero(rng, 7), rng.gen_range(1..=4));
        if roots.iter().any(|(s, _)| *s == r) {
            continue;
        }
        let m = rng.gen_range(1..=(target - used).min(3));
        used += m;
        roots.push((r, m as u64));
    }
    let shift = rng.gen_range(-3..=3);
    let lead = Rational::from_integer(BigInt::from(nonzero(rng, 3)));
    let mut f = LaurentPolyQ::new(1, [(vec![shift], lead)]).unwrap();
    for (r, m) in &roots {
        let factor = LaurentPolyQ::new(
            1,
            [
                (vec![1], Rational::from_integer(r.denom().clone())),
                (vec![0], Rational::from_integer(-r.numer().clone())),
            ],
        )
        .unwrap();
        for _ in 0..*m {
            f = f.mul(&factor);
        }
    }
    if with_quadratic {
        let t = rng.gen_range(1..=5);
        f = f.mul(&LaurentPolyQ::from_ints(1, &[(&[2], 1, 1), (&[0], t, 1)]).unwrap());
    }
    PlantedUnivariate {
        f,
        roots,
        shift,
        width: used + if with_quadratic { 2 } else { 0 },
        complete: !with_quadratic,
    }
}

/// `f_1 = x_1 - H`, `f_i = x_i x_{i-1}^{-d} - H`; the unique zero is
/// `(H, H^{1+d}, ..., H^{1+d+...+d^{n-1}})`.
pub fn proj_family(n: usize, d: i64, h: i64) -> Vec<LaurentPolyQ> {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            if i > 0 {
                e[i - 1] = -d;
            }
            LaurentPolyQ::from_ints(n, &[(&e, 1, 1), (&vec![0; n], -h, 1)]).unwrap()
        })
        .collect()
}

pub fn proj_family_zero(n: usize, d: i64, h: i64) -> Vec<Rational> {
    let mut e = 0u32;
    (0..n)
        .map(|i| {
            e = if i == 0 { 1 } else { 1 + d as u32 * e };
            Rational::from_integer(BigInt::from(h).pow(e))
        })
        .collect()
}

pub fn standard_simplex(n: usize) -> ExponentSet {
    let mut pts = vec![vec![0; n]];
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        pts.push(e);
    }
    ExponentSet::new(n, pts).unwrap()
}

/// Reeve tetrahedron `conv{0, e_1, e_2, (1, 1, r)}`: the system
/// `x_1 - a, x_2 - b, 2 x_1 x_2 x_3^r - 2abc` with a planted rational zero
/// `xi0`. Its only lattice points are the vertices, so the index is `r`.
pub fn reeve_system(r: i64, xi0: &[Rational]) -> Vec<LaurentPolyQ> {
    let eta2 = num_traits::pow(xi0[2].clone(), r as usize);
    let prod = &xi0[0] * &xi0[1] * eta2;
    let two = Rational::from_integer(BigInt::from(2));
    vec![
        LaurentPolyQ::new(
            3,
            [
                (vec![1, 0, 0], Rational::from_integer(1.into())),
                (vec![0, 0, 0], -xi0[0].clone()),
            ],
        )
        .unwrap(),
        LaurentPolyQ::new(
            3,
            [
                (vec![0, 1, 0], Rational::from_integer(1.into())),
                (vec![0, 0, 0], -xi0[1].clone()),
            ],
        )
        .unwrap(),
        LaurentPolyQ::new(
            3,
            [(vec![1, 1, r], two.clone()), (vec![0, 0, 0], -(prod * two))],
        )
        .unwrap(),
    ]
}

pub fn reeve_zero() -> Vec<Rational> {
    vec![
        rational_from_ints(2, 1),
        rational_from_ints(-1, 3),
        rational_from_ints(3, 2),
    ]
}
