//! Heights over Q: projective and Weil heights of points, monomial images,
//! Q-heights, torsion images, and coefficient-norm heights of polynomials.
//!
//! Every height is computed from coprime integer coordinates (or primitive
//! integer coefficients), where all finite places contribute zero and only the
//! archimedean term is left.

mod point;
mod poly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use point::{AffinePointQ, PhasedProjPoint, ProjPointQ, TorsionPoint, TwistedPoint};
pub use poly::{monomial_value, LaurentPolyQ, PolyJson, TermJson};

use crate::error::{Error, Result};
use crate::numkernel::{ExactLog, Rational};
use crate::polytope::{ExponentSet, LatticePolytope};

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// `(1/2) log S` for a positive integer `S`.
pub fn half_log(s: &BigInt) -> ExactLog {
    ExactLog::of_integer(s)
        .expect("positive argument")
        .scale(&half())
}

/// `h(xi) = (1/2) log sum xi_j^2`.
pub fn proj_height(xi: &ProjPointQ) -> ExactLog {
    half_log(&xi.sum_of_squares())
}

/// `h^(xi) = log max |xi_j|`.
pub fn weil_height(xi: &ProjPointQ) -> ExactLog {
    ExactLog::of_integer(&xi.max_abs()).expect("nonzero point")
}

fn check_dim(a: &ExponentSet, n: usize) -> Result<()> {
    if a.ambient_dim() != n {
        return Err(Error::domain(format!(
            "point has {n} coordinates but the exponent set lives in dimension {}",
            a.ambient_dim()
        )));
    }
    Ok(())
}

/// `phi_A(xi) = (xi^{a_0} : ... : xi^{a_N})`.
pub fn monomial_map(a: &ExponentSet, xi: &AffinePointQ) -> Result<ProjPointQ> {
    check_dim(a, xi.dim())?;
    let vals = a
        .points()
        .iter()
        .map(|e| monomial_value(e, xi.coords()))
        .collect::<Result<Vec<_>>>()?;
    ProjPointQ::from_rationals(&vals)
}

/// Like [`monomial_map`] but with zero coordinates at every index outside
/// `support` (a point of the orbit attached to a face).
pub fn monomial_map_on(
    a: &ExponentSet,
    support: &[usize],
    xi: &AffinePointQ,
) -> Result<ProjPointQ> {
    check_dim(a, xi.dim())?;
    let mut vals = vec![Rational::zero(); a.len()];
    for &j in support {
        vals[j] = monomial_value(&a.points()[j], xi.coords())?;
    }
    ProjPointQ::from_rationals(&vals)
}

/// `h^_A(xi) = h^(phi_A(xi))`.
pub fn a_weil_height(a: &ExponentSet, xi: &AffinePointQ) -> Result<ExactLog> {
    Ok(weil_height(&monomial_map(a, xi)?))
}

/// `h^_Q(xi)`: the Weil height of the image under all lattice points of `Q`.
pub fn q_height(q: &LatticePolytope, xi: &AffinePointQ) -> Result<ExactLog> {
    a_weil_height(&q.lattice_points(), xi)
}

/// `h^_Q` from the vertices only; at each place the max over `Q` is attained
/// at a vertex, so this agrees with [`q_height`].
pub fn q_height_from_vertices(q: &LatticePolytope, xi: &AffinePointQ) -> Result<ExactLog> {
    a_weil_height(&q.vertex_set(), xi)
}

/// `phi_A(zeta)`: every coordinate is a root of unity.
pub fn torsion_image(a: &ExponentSet, zeta: &TorsionPoint) -> Result<PhasedProjPoint> {
    check_dim(a, zeta.dim())?;
    Ok(PhasedProjPoint {
        order: zeta.order(),
        phases: a.points().iter().map(|e| zeta.character(e)).collect(),
        magnitudes: ProjPointQ::new(vec![BigInt::one(); a.len()])?,
    })
}

/// `phi_A(omega xi) = phi_A(omega) * phi_A(xi)` coordinatewise.
pub fn twisted_image(a: &ExponentSet, p: &TwistedPoint) -> Result<PhasedProjPoint> {
    check_dim(a, p.rational.dim())?;
    let magnitudes = monomial_map(a, &p.rational)?;
    Ok(PhasedProjPoint {
        order: p.torsion.order(),
        phases: a.points().iter().map(|e| p.torsion.character(e)).collect(),
        magnitudes,
    })
}

/// Projective height of a point with root-of-unity phases.
pub fn phased_height(p: &PhasedProjPoint) -> ExactLog {
    proj_height(&p.magnitudes)
}

/// `h(phi_A(zeta)) = (1/2) log Card(A)`.
pub fn torsion_image_height(a: &ExponentSet, zeta: &TorsionPoint) -> Result<ExactLog> {
    Ok(phased_height(&torsion_image(a, zeta)?))
}

/// Coefficient norms on polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Sup,
    L1,
    L2,
}

/// `h_sup`, `h_1` or `h_2` of a nonzero polynomial.
pub fn poly_height(f: &LaurentPolyQ, norm: Norm) -> Result<ExactLog> {
    if f.is_zero() {
        return Err(Error::domain("height of the zero polynomial"));
    }
    let c = f.primitive_integer_coeffs();
    Ok(match norm {
        Norm::Sup => ExactLog::of_integer(&c.iter().map(Signed::abs).max().unwrap())?,
        Norm::L1 => ExactLog::of_integer(&c.iter().map(Signed::abs).sum())?,
        Norm::L2 => half_log(&c.iter().map(|x| x * x).sum()),
    })
}

/// `d! / (a_0! ... a_N!)`.
pub fn multinomial(a: &[i64]) -> BigInt {
    let d: i64 = a.iter().sum();
    let mut out = crate::polytope::factorial(d as usize);
    for &k in a {
        out /= crate::polytope::factorial(k as usize);
    }
    out
}

/// `||f||_W^2 = sum_a c_a^2 / multinomial(d; a)` for a homogeneous form.
pub fn weyl_norm_sq(f: &LaurentPolyQ) -> Result<Rational> {
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::domain("Weyl norm of a non-homogeneous polynomial"));
    }
    Ok(f.terms()
        .iter()
        .map(|(a, c)| c * c / Rational::from_integer(multinomial(a)))
        .sum())
}

/// `|f(xi)| <= ||f||_W ||xi||_2^d`, decided exactly in squared form.
pub fn weyl_inequality_holds(f: &LaurentPolyQ, xi: &[Rational]) -> Result<bool> {
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::domain("Weyl inequality needs a homogeneous form"))?;
    let v = f.eval(xi)?;
    let norm2: Rational = xi.iter().map(|x| x * x).sum();
    Ok(&v * &v <= weyl_norm_sq(f)? * norm2.pow(d as i32))
}

/// A map `P^N -> P^M` given by `M + 1` forms of a common degree, scaled to
/// jointly coprime integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogMapQ {
    source_dim: usize,
    degree: i64,
    forms: Vec<LaurentPolyQ>,
}

impl HomogMapQ {
    pub fn new(forms: Vec<LaurentPolyQ>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::domain("a map needs at least one form"))?;
        let nvars = first.nvars();
        if nvars == 0 {
            return Err(Error::domain("forms need at least one variable"));
        }
        let mut degree = None;
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != nvars {
                return Err(Error::domain(format!(
                    "form {i} has a different number of variables"
                )));
            }
            if f.is_zero() {
                continue;
            }
            let d = f
                .homogeneous_degree()
                .ok_or_else(|| Error::domain(format!("form {i} is not homogeneous")))?;
            if *degree.get_or_insert(d) != d {
                return Err(Error::domain(format!(
                    "form {i} has degree {d}, expected {}",
                    degree.unwrap()
                )));
            }
        }
        let degree = degree.ok_or_else(|| Error::domain("all forms vanish identically"))?;
        // joint primitive scaling
        let all = forms.iter().enumerate().flat_map(|(i, f)| {
            f.terms().iter().map(move |(e, c)| {
                let mut key = vec![i as i64];
                key.extend_from_slice(e);
                (key, c.clone())
            })
        });
        let joint = LaurentPolyQ::new(nvars + 1, all)?;
        let scale = {
            let (key, c) = joint.terms().iter().next().expect("some form is nonzero");
            joint.primitive_part().coeff(key) / c
        };
        Ok(HomogMapQ {
            source_dim: nvars - 1,
            degree,
            forms: forms.iter().map(|f| f.scale(&scale)).collect(),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn forms(&self) -> &[LaurentPolyQ] {
        &self.forms
    }

    /// `phi(xi)`; a domain error when every form vanishes at `xi`.
    pub fn apply(&self, xi: &ProjPointQ) -> Result<ProjPointQ> {
        if xi.len() != self.source_dim + 1 {
            return Err(Error::domain(
                "point and map have different source dimensions",
            ));
        }
        let x: Vec<Rational> = xi
            .coords()
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        let vals = self
            .forms
            .iter()
            .map(|f| f.eval(&x))
            .collect::<Result<Vec<_>>>()?;
        if vals.iter().all(Zero::is_zero) {
            return Err(Error::domain("the map is undefined at this point"));
        }
        ProjPointQ::from_rationals(&vals)
    }
}

/// `h_W(phi) = (1/2) log sum_i ||phi_i||_W^2`.
pub fn map_weyl_height(phi: &HomogMapQ) -> Result<ExactLog> {
    let mut total = Rational::zero();
    for f in phi.forms() {
        total += weyl_norm_sq(f)?;
    }
    ExactLog::scaled_log(&half(), &total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardCheck {
    pub lhs: ExactLog,
    pub rhs: ExactLog,
    pub ok: bool,
}

/// `h(phi(xi)) <= h_W(phi) + d h(xi)`.
pub fn pushforward_height_check(phi: &HomogMapQ, xi: &ProjPointQ) -> Result<PushforwardCheck> {
    let image = phi.apply(xi)?;
    let lhs = proj_height(&image);
    let rhs = map_weyl_height(phi)?.plus(&proj_height(xi).scale_int(phi.degree()));
    let ok = lhs.try_cmp(&rhs)?.is_le();
    Ok(PushforwardCheck { lhs, rhs, ok })
}
