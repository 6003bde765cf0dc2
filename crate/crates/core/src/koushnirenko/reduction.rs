//! Reduction of a system whose Newton polytope has lattice points spanning a
//! proper sublattice `L_A` of index `gamma` to one with `L = Z^n`.
//!
//! With `w_1..w_n` a basis of `L_A` and `a_0` the base point, every `f_i` is
//! `x^{a_0} g_i(psi(x))` where `psi(x) = (x^{w_1}, ..., x^{w_n})` is an isogeny
//! of degree `gamma`. Zeros of `f` are the fibres of `psi` over zeros of `g`,
//! and each fibre is a coset `ker(psi) xi_0`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{h1_sum, koushnirenko_check, DeclaredSolution, KoushReport, LaurentSystem};
use crate::error::{Error, Result};
use crate::heights::{
    a_weil_height, monomial_value, twisted_image, AffinePointQ, LaurentPolyQ, TorsionPoint,
    TwistedPoint,
};
use crate::lattice::{difference_lattice, DifferenceLattice, LatticeIndex};
use crate::numkernel::{ExactLog, Rational};
use crate::polytope::{newton_polytope, ExponentSet};
use crate::toric::ser_bigint;

use super::solve::jacobian_nonsingular;

/// Kernel enumeration scans `gamma^n` candidates.
const MAX_KERNEL_SCAN: u64 = 1 << 20;

/// `f_i(x) = x^{base} g_i(x^{basis[0]}, ..., x^{basis[n-1]})`.
pub fn transport_system(
    g: &[LaurentPolyQ],
    basis: &[Vec<i64>],
    base: &[i64],
) -> Result<Vec<LaurentPolyQ>> {
    let n = base.len();
    if basis.len() != n || basis.iter().any(|w| w.len() != n) {
        return Err(Error::domain("transport needs an n x n basis"));
    }
    g.iter()
        .map(|gi| {
            if gi.nvars() != n {
                return Err(Error::domain(
                    "transported polynomial has the wrong number of variables",
                ));
            }
            let terms = gi.terms().iter().map(|(k, c)| {
                let mut e = base.to_vec();
                for (kj, w) in k.iter().zip(basis) {
                    for (ei, wi) in e.iter_mut().zip(w) {
                        *ei += kj * wi;
                    }
                }
                (e, c.clone())
            });
            LaurentPolyQ::new(n, terms)
        })
        .collect()
}

fn basis_i64(lat: &DifferenceLattice) -> Result<Vec<Vec<i64>>> {
    lat.basis
        .iter()
        .map(|w| {
            w.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::domain("lattice basis entry overflows i64"))
                })
                .collect()
        })
        .collect()
}

fn psi(basis: &[Vec<i64>], xi: &AffinePointQ) -> Result<AffinePointQ> {
    AffinePointQ::new(
        basis
            .iter()
            .map(|w| monomial_value(w, xi.coords()))
            .collect::<Result<Vec<Rational>>>()?,
    )
}

/// `ker(psi)` as torsion points of order `gamma`: `zeta^{w_j} = 1` for all `j`.
fn kernel(basis: &[Vec<i64>], gamma: u64) -> Result<Vec<TorsionPoint>> {
    let n = basis.len();
    let scan = (gamma as u128).pow(n as u32);
    if scan > MAX_KERNEL_SCAN as u128 {
        return Err(Error::domain(format!(
            "kernel scan of {scan} candidates is too large"
        )));
    }
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let zeta = TorsionPoint::new(gamma, &k)?;
        if basis.iter().all(|w| zeta.character(w) == 0) {
            out.push(zeta);
        }
        let mut j = 0;
        while j < n {
            k[j] += 1;
            if (k[j] as u64) < gamma {
                break;
            }
            k[j] = 0;
            j += 1;
        }
        if j == n {
            return Ok(out);
        }
    }
}

/// The fibre `psi^{-1}(eta)` checked through a known rational preimage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCheck {
    pub eta: AffinePointQ,
    pub eta_multiplicity: u64,
    pub xi0: Option<AffinePointQ>,
    /// `sum l(xi)` over the fibre; each point is simple when `xi0` is.
    pub multiplicity_sum: u64,
    /// `multiplicity_sum = gamma l(eta)`.
    pub relation_ok: bool,
    /// `phi_A(zeta xi0) = phi_A(xi0)` in projective space for all `zeta` in the kernel.
    pub images_equal: bool,
    pub height_q: Option<ExactLog>,
    pub height_p: ExactLog,
    pub heights_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    #[serde(serialize_with = "ser_bigint")]
    pub gamma: BigInt,
    pub lattice: DifferenceLattice,
    pub reduced: LaurentSystem,
    /// `|ker psi|`, counted by brute force.
    pub kernel_order: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub vol_term_f: BigInt,
    pub lhs_f: ExactLog,
    pub rhs_f: ExactLog,
    pub reduced_report: KoushReport,
    pub fibers: Vec<FiberCheck>,
    /// `lhs_f = gamma lhs_g`.
    pub lhs_identical: bool,
    /// `rhs_f = gamma rhs_g` and `n! Vol_n(Q) = gamma n! Vol_n(P)`.
    pub rhs_identical: bool,
    /// Every zero of `f` lies in a verified fibre and `g`'s zero set is complete.
    pub lhs_complete: bool,
    pub zero_count_f: u64,
    pub count_ok: bool,
    pub ok: bool,
}

/// Reduces `f` through the difference lattice of `Q cap Z^n`, runs the checker
/// on the reduced system and lifts its zeros back along `psi`.
pub fn reduction_check(f: &LaurentSystem) -> Result<ReductionReport> {
    f.require_square()?;
    let n = f.nvars();
    let q = newton_polytope(f.polys())?;
    let a: ExponentSet = q.lattice_points();
    let lat = difference_lattice(&a);
    let gamma = match lat.index() {
        LatticeIndex::Finite(g) => g,
        LatticeIndex::Infinite => {
            return Err(Error::domain("the Newton polytope is not full-dimensional"))
        }
    };
    let gamma_u = gamma
        .to_u64()
        .ok_or_else(|| Error::domain("lattice index overflows u64"))?;
    let basis = basis_i64(&lat)?;

    let g_polys = f
        .polys()
        .iter()
        .map(|fi| {
            let terms = fi
                .terms()
                .iter()
                .map(|(e, c)| {
                    let k = lat.coordinates(e)?;
                    let k = k
                        .iter()
                        .map(|x| {
                            x.to_i64()
                                .ok_or_else(|| Error::domain("lattice coordinate overflows i64"))
                        })
                        .collect::<Result<Vec<i64>>>()?;
                    Ok((k, c.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            LaurentPolyQ::new(n, terms)
        })
        .collect::<Result<Vec<_>>>()?;

    let images: Vec<(AffinePointQ, AffinePointQ, u64)> = f
        .declared()
        .unwrap_or(&[])
        .iter()
        .map(|s| Ok((psi(&basis, &s.point)?, s.point.clone(), s.multiplicity)))
        .collect::<Result<Vec<_>>>()?;
    let mut reduced = LaurentSystem::new(n, g_polys.clone(), None)?;
    let reduced_report = match koushnirenko_check(&reduced) {
        Ok(r) => r,
        Err(Error::Unsolvable(_)) if !images.is_empty() => {
            let mut decl: Vec<DeclaredSolution> = Vec::new();
            for (eta, _, m) in &images {
                if !decl.iter().any(|d| &d.point == eta) {
                    decl.push(DeclaredSolution {
                        point: eta.clone(),
                        multiplicity: *m,
                    });
                }
            }
            reduced = LaurentSystem::new(n, g_polys, Some(decl))?;
            koushnirenko_check(&reduced)?
        }
        Err(e) => return Err(e),
    };

    let ker = kernel(&basis, gamma_u)?;
    let kernel_order = ker.len() as u64;
    let mut fibers = Vec::with_capacity(reduced_report.contributions.len());
    let mut lhs_f = ExactLog::zero();
    let mut zero_count_f = 0u64;
    let mut all_verified = true;
    for c in &reduced_report.contributions {
        let xi0 = images
            .iter()
            .find(|(eta, _, _)| eta == &c.point)
            .map(|(_, xi, _)| xi.clone());
        let simple_eta = c.multiplicity == 1 && c.multiplicity_certified;
        let mut check = FiberCheck {
            eta: c.point.clone(),
            eta_multiplicity: c.multiplicity,
            xi0: xi0.clone(),
            multiplicity_sum: 0,
            relation_ok: false,
            images_equal: false,
            height_q: None,
            height_p: c.height.clone(),
            heights_equal: false,
        };
        if let (Some(xi0), true) = (xi0, simple_eta) {
            // f(zeta xi0) = zeta^{a_0} f(xi0) and J_f(zeta xi0) = zeta^{a_0} J_f(xi0) diag(zeta)^{-1}
            // because every exponent of A is congruent to a_0 modulo L_A
            let mut images_equal = true;
            for zeta in &ker {
                let img = twisted_image(&a, &TwistedPoint::new(zeta.clone(), xi0.clone())?)?;
                images_equal &= img.phases.iter().all(|&p| p == img.phases[0]);
            }
            let simple = jacobian_nonsingular(f.polys(), &xi0)?;
            let hq = a_weil_height(&a, &xi0)?;
            check.multiplicity_sum = if simple { kernel_order } else { 0 };
            check.relation_ok = simple && images_equal && kernel_order == gamma_u * c.multiplicity;
            check.images_equal = images_equal;
            check.heights_equal = hq == c.height;
            if check.relation_ok {
                lhs_f = lhs_f.plus(&hq.scale_int(kernel_order as i64));
                zero_count_f += kernel_order;
            } else {
                all_verified = false;
            }
            check.height_q = Some(hq);
        } else {
            all_verified = false;
        }
        fibers.push(check);
    }

    let vol_term_f = q.scaled_euclidean_volume();
    let rhs_f = h1_sum(f.polys())?.scale(&Rational::from_integer(vol_term_f.clone()));
    let g_scale = Rational::from_integer(gamma.clone());
    let lhs_identical = all_verified && lhs_f == reduced_report.lhs.scale(&g_scale);
    let rhs_identical = rhs_f == reduced_report.rhs.scale(&g_scale)
        && vol_term_f == &gamma * &reduced_report.vol_term;
    let lhs_complete = all_verified && reduced_report.lhs_complete;
    let count_ok = BigInt::from(zero_count_f) <= vol_term_f;
    let ok = lhs_identical
        && rhs_identical
        && kernel_order == gamma_u
        && fibers
            .iter()
            .all(|c| c.relation_ok && c.images_equal && c.heights_equal)
        && lhs_f.try_cmp(&rhs_f)?.is_le();
    Ok(ReductionReport {
        gamma,
        lattice: lat,
        reduced,
        kernel_order,
        vol_term_f,
        lhs_f,
        rhs_f,
        reduced_report,
        fibers,
        lhs_identical,
        rhs_identical,
        lhs_complete,
        zero_count_f,
        count_ok,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational_from_ints as rat;

    fn pt(c: &[(i64, i64)]) -> AffinePointQ {
        AffinePointQ::from_ints(c).unwrap()
    }

    /// Triangular `g` on the unimodular simplex `{0, e1, e2, (1,1,1)}` with zero `eta`.
    fn simplex_system(eta: &AffinePointQ) -> Vec<LaurentPolyQ> {
        let e = eta.coords();
        let prod = &e[0] * &e[1] * &e[2];
        vec![
            LaurentPolyQ::new(
                3,
                [(vec![1, 0, 0], rat(1, 1)), (vec![0, 0, 0], -e[0].clone())],
            )
            .unwrap(),
            LaurentPolyQ::new(
                3,
                [(vec![0, 1, 0], rat(1, 1)), (vec![0, 0, 0], -e[1].clone())],
            )
            .unwrap(),
            LaurentPolyQ::new(
                3,
                [
                    (vec![1, 1, 1], rat(2, 1)),
                    (vec![0, 0, 0], -prod * rat(2, 1)),
                ],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn reeve_tetrahedron_reduces_with_index_r() {
        for r in 2..=4i64 {
            let basis = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, r]];
            let xi0 = pt(&[(2, 1), (-1, 3), (3, 2)]);
            let eta = psi(&basis, &xi0).unwrap();
            let f = transport_system(&simplex_system(&eta), &basis, &[0, 0, 0]).unwrap();
            let sys = LaurentSystem::new(
                3,
                f,
                Some(vec![DeclaredSolution {
                    point: xi0,
                    multiplicity: 1,
                }]),
            )
            .unwrap();
            let rep = reduction_check(&sys).unwrap();
            assert_eq!(rep.gamma, BigInt::from(r));
            assert_eq!(rep.kernel_order, r as u64);
            assert!(rep.ok && rep.lhs_complete, "r={r}: {rep:?}");
            assert_eq!(rep.zero_count_f, r as u64);
            assert_eq!(rep.vol_term_f, BigInt::from(r));
            assert!(rep.count_ok);
        }
    }

    #[test]
    fn kernel_of_a_diagonal_lattice() {
        let ker = kernel(&[vec![2, 0], vec![0, 3]], 6).unwrap();
        let mut exps: Vec<Vec<u64>> = ker.iter().map(|z| z.exponents().to_vec()).collect();
        exps.sort();
        let expect = vec![
            vec![0, 0],
            vec![0, 2],
            vec![0, 4],
            vec![3, 0],
            vec![3, 2],
            vec![3, 4],
        ];
        assert_eq!(exps, expect);
    }
}
