//! Empirical check of the minima of `X_A` on sampled torsion and rational
//! points, globally and on the orbit attached to each face.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{
    half_log, monomial_map, monomial_map_on, phased_height, torsion_image, twisted_image,
    AffinePointQ, PhasedProjPoint, ProjPointQ, TorsionPoint, TwistedPoint,
};
use crate::numkernel::{ExactLog, Rational};
use crate::polytope::{point_faces, ExponentSet};

use super::successive_minima;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub torsion_samples: usize,
    pub rational_samples: usize,
    /// Torsion orders are drawn from `1..=max_order`.
    pub max_order: u64,
    /// Numerators and denominators are drawn from `1..=coeff_bound`.
    pub coeff_bound: u64,
    /// Torsion and rational samples drawn on each face.
    pub per_face_samples: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            torsion_samples: 200,
            rational_samples: 200,
            max_order: 12,
            coeff_bound: 9,
            per_face_samples: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSampleSummary {
    pub dim: usize,
    pub card: usize,
    pub expected: ExactLog,
    pub torsion_all_equal: bool,
    pub rational_min: Option<ExactLog>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub expected: ExactLog,
    pub torsion_samples: usize,
    pub torsion_all_equal: bool,
    pub translate_samples: usize,
    pub translates_all_equal: bool,
    pub rational_samples: usize,
    /// Rational samples whose image happened to be torsion; excluded from the
    /// strict comparison.
    pub rational_torsion_images: usize,
    pub rational_min: Option<ExactLog>,
    pub faces: Vec<FaceSampleSummary>,
    /// Per dimension `k`, the least torsion height seen on a `k`-face.
    pub face_minima: Vec<ExactLog>,
    pub face_minima_match: bool,
    pub violations: Vec<String>,
}

const SHARD: usize = 64;

/// Splits `total` draws into fixed shards with independent ChaCha streams so
/// the output depends only on the seed, not on the thread schedule.
fn sharded<T, F>(total: usize, seed: u64, stream_base: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let shards = total.div_ceil(SHARD);
    (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_base + s as u64);
            let len = SHARD.min(total - s * SHARD);
            (0..len).map(|_| f(&mut rng)).collect::<Vec<T>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn random_torsion(rng: &mut ChaCha8Rng, n: usize, max_order: u64) -> TorsionPoint {
    let m = rng.gen_range(1..=max_order);
    let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..m) as i64).collect();
    TorsionPoint::new(m, &exps).expect("positive order")
}

/// Coordinates `+-p/q` with `p, q` uniform in `1..=bound`, never `+-1`.
fn random_rational(rng: &mut ChaCha8Rng, n: usize, bound: u64) -> AffinePointQ {
    let coords = (0..n)
        .map(|_| loop {
            let p = rng.gen_range(1..=bound);
            let q = rng.gen_range(1..=bound);
            let mut v = Rational::new(BigInt::from(p), BigInt::from(q));
            if rng.gen_bool(0.5) {
                v = -v;
            }
            if !v.abs().is_one() {
                break v;
            }
        })
        .collect();
    AffinePointQ::new(coords).expect("nonzero coordinates")
}

/// All nonzero coordinates share one absolute value, so the point is torsion
/// in the ambient torus of its support.
fn is_torsion_image(p: &ProjPointQ) -> bool {
    p.coords()
        .iter()
        .filter(|c| !c.is_zero())
        .all(|c| c.abs().is_one())
}

fn min_height(sums: impl Iterator<Item = BigInt>) -> Option<ExactLog> {
    sums.min().map(|s| half_log(&s))
}

pub fn sample_verify_minima(a: &ExponentSet, config: &SampleConfig) -> Result<SampleReport> {
    if config.max_order == 0 || config.coeff_bound < 2 {
        return Err(Error::domain("need max_order >= 1 and coeff_bound >= 2"));
    }
    let n = a.ambient_dim();
    let card = BigInt::from(a.len());
    let expected = half_log(&card);
    let mut violations = Vec::new();

    // torsion images
    let torsion: Vec<PhasedProjPoint> = sharded(config.torsion_samples, config.seed, 0, |rng| {
        let z = random_torsion(rng, n, config.max_order);
        torsion_image(a, &z).expect("dimensions agree")
    });
    let mut torsion_all_equal = true;
    for (k, img) in torsion.iter().enumerate() {
        if phased_height(img) != expected {
            torsion_all_equal = false;
            violations.push(format!(
                "torsion sample {k}: height differs from (1/2) log Card(A)"
            ));
        }
    }

    // torsion translates omega * phi_A(zeta) of torsion images stay minimal
    let translates: Vec<PhasedProjPoint> =
        sharded(config.torsion_samples, config.seed, 1 << 20, |rng| {
            let z = random_torsion(rng, n, config.max_order);
            let ones = AffinePointQ::new(vec![Rational::one(); n]).expect("nonzero");
            let base =
                twisted_image(a, &TwistedPoint::new(z, ones).expect("same dim")).expect("dims");
            // multiply by a torsion point of the ambient torus of P^N
            let m = rng.gen_range(1..=config.max_order);
            let phases = base
                .phases
                .iter()
                .map(|&ph| {
                    let extra = rng.gen_range(0..m);
                    ((ph as u128 * m as u128 + extra as u128 * base.order as u128)
                        % (base.order as u128 * m as u128)) as u64
                })
                .collect();
            PhasedProjPoint {
                order: base.order * m,
                phases,
                magnitudes: base.magnitudes,
            }
        });
    let mut translates_all_equal = true;
    for (k, img) in translates.iter().enumerate() {
        if phased_height(img) != expected {
            translates_all_equal = false;
            violations.push(format!(
                "torsion translate {k}: height differs from (1/2) log Card(A)"
            ));
        }
    }

    // rational non-torsion points: strictly above the minimum
    let rational: Vec<ProjPointQ> = sharded(config.rational_samples, config.seed, 2 << 20, |rng| {
        let xi = random_rational(rng, n, config.coeff_bound);
        monomial_map(a, &xi).expect("dimensions agree")
    });
    let mut rational_torsion_images = 0;
    let mut rational_sums = Vec::new();
    for (k, img) in rational.iter().enumerate() {
        if is_torsion_image(img) {
            rational_torsion_images += 1;
            continue;
        }
        let s = img.sum_of_squares();
        if s <= card {
            violations.push(format!(
                "rational sample {k}: height not above (1/2) log Card(A)"
            ));
        }
        rational_sums.push(s);
    }
    let rational_min = min_height(rational_sums.into_iter());

    // orbit of each face: zero coordinates outside A cap P
    let faces = point_faces(a);
    let mut summaries = Vec::with_capacity(faces.len());
    for (fi, face) in faces.iter().enumerate() {
        let fcard = BigInt::from(face.point_indices.len());
        let fexpected = half_log(&fcard);
        let seed = config.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(fi as u64 + 1));
        let samples: Vec<(ProjPointQ, ProjPointQ)> =
            sharded(config.per_face_samples, seed, 3 << 20, |rng| {
                let z = random_torsion(rng, n, config.max_order);
                let img = torsion_image(a, &z).expect("dims");
                let mut mags = vec![BigInt::from(0); a.len()];
                for &j in &face.point_indices {
                    mags[j] = img.magnitudes.coords()[j].clone();
                }
                let tors = ProjPointQ::new(mags).expect("face is nonempty");
                let xi = random_rational(rng, n, config.coeff_bound);
                let rat = monomial_map_on(a, &face.point_indices, &xi).expect("dims");
                (tors, rat)
            });
        let mut all_equal = true;
        let mut sums = Vec::new();
        for (tors, rat) in &samples {
            if tors.sum_of_squares() != fcard {
                all_equal = false;
                violations.push(format!(
                    "face {fi}: torsion orbit point off (1/2) log Card(A cap P)"
                ));
            }
            let s = rat.sum_of_squares();
            if s < fcard {
                violations.push(format!(
                    "face {fi}: rational orbit point below (1/2) log Card(A cap P)"
                ));
            }
            sums.push(s);
        }
        summaries.push(FaceSampleSummary {
            dim: face.dim,
            card: face.point_indices.len(),
            expected: fexpected,
            torsion_all_equal: all_equal,
            rational_min: min_height(sums.into_iter()),
        });
    }

    let r = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let face_minima: Vec<ExactLog> = (0..=r)
        .map(|k| {
            let c = summaries
                .iter()
                .filter(|s| s.dim == k)
                .map(|s| s.card)
                .min()
                .expect("every dimension has a face");
            half_log(&BigInt::from(c))
        })
        .collect();
    // mu_i = min over (r - i + 1)-faces
    let mu = successive_minima(a);
    let face_minima_match = (0..=r).all(|k| face_minima[k] == mu[r - k]);
    if !face_minima_match {
        violations.push("face orbit minima disagree with the successive minima".into());
    }

    Ok(SampleReport {
        expected,
        torsion_samples: torsion.len(),
        torsion_all_equal,
        translate_samples: translates.len(),
        translates_all_equal,
        rational_samples: rational.len() - rational_torsion_images,
        rational_torsion_images,
        rational_min,
        faces: summaries,
        face_minima,
        face_minima_match,
        violations,
    })
}
