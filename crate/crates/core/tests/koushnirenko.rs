mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use toric_heights::heights::{a_weil_height, AffinePointQ, LaurentPolyQ};
use toric_heights::koushnirenko::{
    denso_check, koushnirenko_check, reduction_check, simplex_shift_check, sylvester_resultant,
    sylvester_resultant_check, transport_system, DeclaredSolution, LaurentSystem, ZeroSource,
};
use toric_heights::numkernel::{ExactLog, Rational};
use toric_heights::Error;

#[test]
fn planted_univariate_systems() {
    let mut rng = rng(401);
    for _ in 0..200 {
        let planted = planted_univariate(&mut rng, 10);
        let sys = LaurentSystem::new(1, vec![planted.f.clone()], None).unwrap();
        let rep = koushnirenko_check(&sys).unwrap();
        assert!(rep.ok, "{:?}", planted.f);
        assert_eq!(rep.source, ZeroSource::Univariate);
        assert_eq!(rep.lhs_complete, planted.complete);
        assert!(rep.multiplicities_certified);
        assert_eq!(rep.zero_count, planted.count());
        assert_eq!(rep.vol_term, BigInt::from(planted.width));
        assert!(rep.count_ok);
        // on Q = [s, s + w] the Q-height of p/q is w log max(|p|, q)
        assert_eq!(rep.lhs, planted.weil_sum().scale_int(planted.width));

        if planted.shift >= 0 {
            let dense = denso_check(&sys).unwrap();
            assert!(dense.ok);
            assert_eq!(dense.lhs, planted.weil_sum());
            // Q inside [0, deg f], so h_Q <= deg f * h
            let deg = planted.shift + planted.width;
            assert!(rep.lhs.try_cmp(&dense.lhs.scale_int(deg)).unwrap().is_le());
        }
    }
}

#[test]
fn proj_family_grid() {
    for n in 1..=4 {
        let simplex = standard_simplex(n);
        for d in 1..=3 {
            for h in 2..=10 {
                let sys = LaurentSystem::new(n, proj_family(n, d, h), None).unwrap();
                let rep = koushnirenko_check(&sys).unwrap();
                assert!(rep.ok && rep.lhs_complete, "n={n} d={d} H={h}");
                assert_eq!(rep.contributions.len(), 1);
                let z = &rep.contributions[0];
                assert_eq!(z.point.coords(), proj_family_zero(n, d, h).as_slice());
                assert!(z.multiplicity_certified);
                assert_eq!(z.height, log_of(h as u64));
                let geometric: i64 = (0..n as u32).map(|k| d.pow(k)).sum();
                assert_eq!(
                    a_weil_height(&simplex, &z.point).unwrap(),
                    log_of(h as u64).scale_int(geometric)
                );
                assert_eq!(rep.vol_term, BigInt::one());
                assert!(rep.count_ok);
                // h_1(f_i) = log(1 + H) for every i
                assert_eq!(rep.rhs, log_of(h as u64 + 1).scale_int(n as i64));

                let shifted = simplex_shift_check(&sys);
                if n >= 2 {
                    assert!(matches!(shifted, Err(Error::Precondition { .. })));
                } else {
                    assert!(shifted.unwrap().ok);
                }
            }
        }
    }
}

#[test]
fn declared_linear_systems_count_below_the_volume() {
    let mut rng = rng(402);
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(2..=3);
        let xi = affine_point(&mut rng, n, 6);
        // f_i = sum_j c_ij x_j - sum_j c_ij xi_j with a random integer matrix
        let polys: Vec<LaurentPolyQ> = (0..n)
            .map(|_| {
                let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let rhs: Rational = c
                    .iter()
                    .zip(xi.coords())
                    .map(|(c, x)| Rational::from_integer(BigInt::from(*c)) * x)
                    .sum();
                let mut terms: Vec<(Vec<i64>, Rational)> = vec![(vec![0; n], -rhs)];
                for (j, cj) in c.iter().enumerate() {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    terms.push((e, Rational::from_integer(BigInt::from(*cj))));
                }
                LaurentPolyQ::new(n, terms).unwrap()
            })
            .collect();
        if polys.iter().any(LaurentPolyQ::is_zero) {
            continue;
        }
        let Ok(sys) = LaurentSystem::new(n, polys, None) else {
            continue;
        };
        let Ok(rep) = koushnirenko_check(&sys) else {
            // singular coefficient matrices have no isolated zero to enumerate
            continue;
        };
        if !rep.lhs_complete || rep.source == ZeroSource::Degenerate {
            continue;
        }
        assert!(rep.ok);
        assert!(rep.count_ok);
        assert!(BigInt::from(rep.zero_count) <= rep.vol_term);
        // a singular matrix leaves only a positive-dimensional solution set
        if rep.contributions.is_empty() {
            continue;
        }
        assert_eq!(rep.contributions.len(), 1);
        assert_eq!(rep.contributions[0].point, xi);
        tested += 1;
    }
}

#[test]
fn reeve_tetrahedra_reduce_consistently() {
    let xi0 = reeve_zero();
    for r in 2..=4i64 {
        let basis = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, r]];
        let eta: Vec<Rational> = vec![
            xi0[0].clone(),
            xi0[1].clone(),
            num_traits::pow(xi0[2].clone(), r as usize),
        ];
        // the same system, once written down and once transported from the simplex
        let g = reeve_system(1, &eta);
        let f = transport_system(&g, &basis, &[0, 0, 0]).unwrap();
        assert_eq!(f, reeve_system(r, &xi0));

        let sys = LaurentSystem::new(
            3,
            f,
            Some(vec![DeclaredSolution {
                point: AffinePointQ::new(xi0.clone()).unwrap(),
                multiplicity: 1,
            }]),
        )
        .unwrap();
        let rep = reduction_check(&sys).unwrap();
        assert_eq!(rep.gamma, BigInt::from(r));
        assert_eq!(rep.kernel_order, r as u64);
        assert!(rep.lhs_identical && rep.rhs_identical, "r={r}");
        assert_eq!(rep.lhs_f, rep.reduced_report.lhs.scale_int(r));
        assert_eq!(rep.rhs_f, rep.reduced_report.rhs.scale_int(r));
        assert_eq!(rep.fibers.len(), 1);
        let fiber = &rep.fibers[0];
        assert_eq!(fiber.eta.coords(), eta.as_slice());
        assert_eq!(fiber.multiplicity_sum, r as u64 * fiber.eta_multiplicity);
        assert!(fiber.relation_ok && fiber.images_equal && fiber.heights_equal);
        assert_eq!(rep.zero_count_f, r as u64);
        assert_eq!(rep.vol_term_f, BigInt::from(r));
        assert!(rep.ok && rep.lhs_complete && rep.count_ok);
    }
}

/// Coefficients `c_0..c_d` of `prod (x - root)`.
fn monic_from_roots(roots: &[i64]) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for &r in roots {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] += cj;
            next[j] -= cj * BigInt::from(r);
        }
        c = next;
    }
    c
}

#[test]
fn sylvester_resultant_vanishes_on_common_roots_and_factors_over_root_pairs() {
    // Res(f, g) = prod (alpha_i - beta_j) for monic f, g, up to a global sign
    let mut rng = rng(403);
    for d in 1..=3usize {
        let res = sylvester_resultant(d).unwrap();
        let mut sign: Option<bool> = None;
        for _ in 0..40 {
            let alpha: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
            let beta: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
            let expected: BigInt = alpha
                .iter()
                .flat_map(|a| beta.iter().map(move |b| BigInt::from(a - b)))
                .product();
            let value = res.eval(&monic_from_roots(&alpha), &monic_from_roots(&beta));
            assert_eq!(value.abs(), expected.abs(), "d={d} {alpha:?} {beta:?}");
            if !expected.is_zero() {
                let same = value == expected;
                assert_eq!(*sign.get_or_insert(same), same);
            }
        }
    }
}

#[test]
fn sylvester_heights_and_extremes() {
    for d in 1..=3 {
        let rep = sylvester_resultant_check(d).unwrap();
        assert!(rep.ok && rep.extreme_ok, "d={d}");
        assert!(rep.extreme_coeffs.iter().all(|c| c.abs() == 1));
        let bound = log_of(d as u64 + 1).scale_int(3 * d as i64);
        assert_eq!(rep.bound, bound);
        assert_eq!(rep.h_sup, ExactLog::of_integer(&rep.max_abs_coeff).unwrap());
        assert!(rep.h_sup.try_cmp(&bound).unwrap().is_le());
    }
    assert_eq!(
        sylvester_resultant_check(2).unwrap().max_abs_coeff,
        BigInt::from(2)
    );
}
