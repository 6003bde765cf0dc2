//! Arithmetic Koushnirenko checks on exactly solvable Laurent systems.
//!
//! The left-hand sides sum `l(xi) h^_Q(xi)` over the rational isolated zeros
//! the solvers can certify. Omitted zeros only contribute nonnegative terms, so
//! a partial sum is still a valid necessary condition; `lhs_complete` records
//! whether the zero set is known to be exhausted.

mod reduction;
mod solve;
mod sylvester;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use reduction::{reduction_check, transport_system, FiberCheck, ReductionReport};
pub use solve::{
    jacobian_nonsingular, solve_linear, solve_triangular, solve_univariate, UnivariateRoot,
};
pub use sylvester::{
    sylvester_resultant, sylvester_resultant_check, ResultantPoly, SylvesterReport,
    MAX_SYLVESTER_DEGREE,
};

use crate::error::{Error, Result};
use crate::heights::{
    a_weil_height, poly_height, q_height_from_vertices, AffinePointQ, LaurentPolyQ, Norm, PolyJson,
};
use crate::lattice::difference_lattice;
use crate::numkernel::{format_rational, parse_rational, ExactLog, Rational};
use crate::polytope::{newton_polytope, normalized_volume, ExponentSet, LatticePolytope};
use crate::toric::{require_index_one, ser_bigint};

/// A zero supplied with the system, trusted only after exact evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeclaredSolution {
    pub point: AffinePointQ,
    pub multiplicity: u64,
}

/// `n` variables, Laurent polynomials over Q, optional declared zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentSystem {
    n: usize,
    polys: Vec<LaurentPolyQ>,
    declared: Option<Vec<DeclaredSolution>>,
}

#[derive(Debug, Deserialize)]
struct SystemJson {
    vars: Option<usize>,
    polys: Option<Vec<PolyJson>>,
    #[serde(default)]
    solutions: Option<Vec<SolutionJson>>,
}

#[derive(Debug, Deserialize)]
struct SolutionJson {
    point: Vec<String>,
    #[serde(default = "one")]
    multiplicity: u64,
}

fn one() -> u64 {
    1
}

impl LaurentSystem {
    pub fn new(
        n: usize,
        polys: Vec<LaurentPolyQ>,
        declared: Option<Vec<DeclaredSolution>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("vars", "must be positive"));
        }
        for (i, f) in polys.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::input(
                    format!("polys[{i}]"),
                    format!("expected {n} variables"),
                ));
            }
            if f.is_zero() {
                return Err(Error::input(format!("polys[{i}]"), "must be nonzero"));
            }
        }
        for (k, s) in declared.iter().flatten().enumerate() {
            if s.point.dim() != n {
                return Err(Error::input(
                    format!("solutions[{k}].point"),
                    format!("expected {n} coordinates"),
                ));
            }
            if s.multiplicity == 0 {
                return Err(Error::input(
                    format!("solutions[{k}].multiplicity"),
                    "must be positive",
                ));
            }
            for (i, f) in polys.iter().enumerate() {
                if !f.eval(s.point.coords())?.is_zero() {
                    return Err(Error::input(
                        format!("solutions[{k}]"),
                        format!("not a zero of polys[{i}]"),
                    ));
                }
            }
        }
        Ok(LaurentSystem { n, polys, declared })
    }

    /// Parses `{"vars": n, "polys": [...], "solutions": [...]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: SystemJson = serde_json::from_str(text)
            .map_err(|e| Error::input("system", format!("malformed JSON: {e}")))?;
        let n = raw.vars.ok_or_else(|| Error::input("vars", "missing"))?;
        let polys = raw
            .polys
            .ok_or_else(|| Error::input("polys", "missing"))?
            .iter()
            .enumerate()
            .map(|(i, p)| LaurentPolyQ::from_json(n, p, &format!("polys[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let declared = match raw.solutions {
            None => None,
            Some(sols) => Some(
                sols.iter()
                    .enumerate()
                    .map(|(k, s)| {
                        let coords = s
                            .point
                            .iter()
                            .enumerate()
                            .map(|(j, c)| {
                                parse_rational(c).map_err(|e| {
                                    Error::input(
                                        format!("solutions[{k}].point[{j}]"),
                                        e.to_string(),
                                    )
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        let point = AffinePointQ::new(coords).map_err(|e| {
                            Error::input(format!("solutions[{k}].point"), e.to_string())
                        })?;
                        Ok(DeclaredSolution {
                            point,
                            multiplicity: s.multiplicity,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Self::new(n, polys, declared)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "vars": self.n,
            "polys": self.polys.iter().map(LaurentPolyQ::to_json).collect::<Vec<_>>(),
        });
        if let Some(d) = &self.declared {
            v["solutions"] = d
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "point": s.point.coords().iter().map(format_rational).collect::<Vec<_>>(),
                        "multiplicity": s.multiplicity,
                    })
                })
                .collect();
        }
        v
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[LaurentPolyQ] {
        &self.polys
    }

    pub fn declared(&self) -> Option<&[DeclaredSolution]> {
        self.declared.as_deref()
    }

    fn require_square(&self) -> Result<()> {
        if self.polys.len() != self.n {
            return Err(Error::domain(format!(
                "expected {} polynomials in {} variables, found {}",
                self.n,
                self.n,
                self.polys.len()
            )));
        }
        Ok(())
    }
}

/// How the zero set was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSource {
    Declared,
    Univariate,
    Linear,
    Triangular,
    /// `dim Q < n`: every zero lies on a positive-dimensional component.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FoundZero {
    point: AffinePointQ,
    multiplicity: u64,
    certified: bool,
}

#[derive(Debug, Clone)]
struct Zeros {
    list: Vec<FoundZero>,
    complete: bool,
    source: ZeroSource,
}

/// Zeros from the built-in solvers, or `None` when the shape is unsupported.
fn solve_automatically(sys: &LaurentSystem) -> Result<Option<Zeros>> {
    let polys = &sys.polys;
    if sys.n == 1 && polys.len() == 1 {
        let f = &polys[0];
        let roots = solve_univariate(f)?;
        let total: u64 = roots.iter().map(|r| r.multiplicity).sum();
        let list = roots
            .into_iter()
            .map(|r| {
                Ok(FoundZero {
                    point: AffinePointQ::new(vec![r.root])?,
                    multiplicity: r.multiplicity,
                    certified: true,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(Zeros {
            list,
            complete: total == solve::torus_degree(f),
            source: ZeroSource::Univariate,
        }));
    }
    if solve::is_linear(polys) {
        let list = solve_linear(polys)?
            .into_iter()
            .map(|p| {
                Ok(FoundZero {
                    certified: jacobian_nonsingular(polys, &p)?,
                    point: p,
                    multiplicity: 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(Zeros {
            list,
            complete: true,
            source: ZeroSource::Linear,
        }));
    }
    if solve::is_triangular(polys) {
        let p = solve_triangular(polys)?;
        let certified = jacobian_nonsingular(polys, &p)?;
        debug_assert!(
            certified,
            "triangular Jacobians are invertible on the torus"
        );
        return Ok(Some(Zeros {
            list: vec![FoundZero {
                point: p,
                multiplicity: 1,
                certified,
            }],
            complete: true,
            source: ZeroSource::Triangular,
        }));
    }
    Ok(None)
}

fn same_zero_set(a: &[FoundZero], b: &[FoundZero]) -> bool {
    let key = |z: &[FoundZero]| {
        z.iter()
            .map(|z| (z.point.coords().to_vec(), z.multiplicity))
            .collect::<BTreeMap<_, _>>()
    };
    a.len() == b.len() && key(a) == key(b)
}

/// Declared zeros take precedence; they are certified complete when a solver
/// independently finds exactly the same set.
fn zeros_of(sys: &LaurentSystem) -> Result<Zeros> {
    sys.require_square()?;
    let auto = solve_automatically(sys)?;
    match (&sys.declared, auto) {
        (Some(decl), auto) => {
            let mut list = decl
                .iter()
                .map(|s| {
                    let simple = jacobian_nonsingular(&sys.polys, &s.point)?;
                    Ok(FoundZero {
                        point: s.point.clone(),
                        multiplicity: s.multiplicity,
                        certified: simple && s.multiplicity == 1,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut complete = false;
            if let Some(auto) = auto {
                if auto.complete && same_zero_set(&list, &auto.list) {
                    complete = true;
                    list = auto.list;
                }
            }
            Ok(Zeros {
                list,
                complete,
                source: ZeroSource::Declared,
            })
        }
        (None, Some(auto)) => Ok(auto),
        (None, None) => Err(Error::Unsolvable(
            "no declared solutions and the system is not univariate, linear or triangular".into(),
        )),
    }
}

/// One summand `l(xi) h(xi)` of a left-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroContribution {
    pub point: AffinePointQ,
    pub multiplicity: u64,
    pub multiplicity_certified: bool,
    pub height: ExactLog,
    pub contribution: ExactLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Koushnirenko,
    Denso,
    SimplexShift,
}

/// `lhs = sum l(xi) h(xi)` against `rhs = factor * sum h_1(f_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoushReport {
    pub kind: CheckKind,
    pub n: usize,
    pub source: ZeroSource,
    /// `n! Vol_n(Q)` for the Newton polytope `Q` of the system.
    #[serde(serialize_with = "ser_bigint")]
    pub vol_term: BigInt,
    /// Multiplier of `sum h_1(f_i)`: `vol_term`, or `d^{n-1}` for the dense check.
    #[serde(serialize_with = "ser_bigint")]
    pub factor: BigInt,
    pub h1_sum: ExactLog,
    pub lhs: ExactLog,
    pub rhs: ExactLog,
    pub contributions: Vec<ZeroContribution>,
    pub ok: bool,
    pub lhs_complete: bool,
    pub multiplicities_certified: bool,
    /// `sum l(xi)` over the listed zeros.
    pub zero_count: u64,
    /// `zero_count <= vol_term`.
    pub count_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

fn h1_sum(polys: &[LaurentPolyQ]) -> Result<ExactLog> {
    polys.iter().try_fold(ExactLog::zero(), |acc, f| {
        Ok(acc.plus(&poly_height(f, Norm::L1)?))
    })
}

fn standard_simplex(n: usize) -> ExponentSet {
    let mut pts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    ExponentSet::new(n, pts).expect("distinct points")
}

struct Assembled<'a> {
    kind: CheckKind,
    sys: &'a LaurentSystem,
    q: &'a LatticePolytope,
    factor: BigInt,
    shift: Option<Vec<i64>>,
    degree: Option<i64>,
}

fn assemble<F>(a: Assembled<'_>, height: F) -> Result<KoushReport>
where
    F: Fn(&AffinePointQ) -> Result<ExactLog>,
{
    let n = a.sys.n;
    let vol_term = a.q.scaled_euclidean_volume();
    let zeros = if a.q.intrinsic_dim() < n {
        // the fibres of phi_A are positive-dimensional, so nothing is isolated
        Zeros {
            list: Vec::new(),
            complete: true,
            source: ZeroSource::Degenerate,
        }
    } else {
        zeros_of(a.sys)?
    };
    let mut lhs = ExactLog::zero();
    let mut contributions = Vec::with_capacity(zeros.list.len());
    for z in &zeros.list {
        let h = height(&z.point)?;
        let c = h.scale_int(z.multiplicity as i64);
        lhs = lhs.plus(&c);
        contributions.push(ZeroContribution {
            point: z.point.clone(),
            multiplicity: z.multiplicity,
            multiplicity_certified: z.certified,
            height: h,
            contribution: c,
        });
    }
    let h1 = h1_sum(&a.sys.polys)?;
    let rhs = h1.scale(&Rational::from_integer(a.factor.clone()));
    let zero_count: u64 = zeros.list.iter().map(|z| z.multiplicity).sum();
    Ok(KoushReport {
        kind: a.kind,
        n,
        source: zeros.source,
        count_ok: BigInt::from(zero_count) <= vol_term,
        vol_term,
        factor: a.factor,
        h1_sum: h1,
        ok: lhs.try_cmp(&rhs)?.is_le(),
        lhs,
        rhs,
        contributions,
        lhs_complete: zeros.complete,
        multiplicities_certified: zeros.list.iter().all(|z| z.certified),
        zero_count,
        shift: a.shift,
        degree: a.degree,
    })
}

/// `sum l(xi) h^_Q(xi) <= n! Vol_n(Q) sum h_1(f_i)` with `Q` the Newton
/// polytope of the system.
pub fn koushnirenko_check(sys: &LaurentSystem) -> Result<KoushReport> {
    sys.require_square()?;
    let q = newton_polytope(&sys.polys)?;
    let factor = q.scaled_euclidean_volume();
    assemble(
        Assembled {
            kind: CheckKind::Koushnirenko,
            sys,
            q: &q,
            factor,
            shift: None,
            degree: None,
        },
        |xi| q_height_from_vertices(&q, xi),
    )
}

fn require_polynomials(sys: &LaurentSystem) -> Result<()> {
    match sys
        .polys
        .iter()
        .position(|f| !f.has_nonnegative_exponents())
    {
        Some(i) => Err(Error::domain(format!("polys[{i}] has a negative exponent"))),
        None => Ok(()),
    }
}

/// `sum l(xi) h^(xi) <= d^{n-1} sum h_1(f_i)` for ordinary polynomials of
/// degree at most `d`.
pub fn denso_check(sys: &LaurentSystem) -> Result<KoushReport> {
    sys.require_square()?;
    require_polynomials(sys)?;
    let n = sys.n;
    let d = sys
        .polys
        .iter()
        .map(LaurentPolyQ::total_degree)
        .max()
        .unwrap_or(0);
    let q = newton_polytope(&sys.polys)?;
    let factor = num_traits::pow(BigInt::from(d), n - 1);
    let simplex = standard_simplex(n);
    assemble(
        Assembled {
            kind: CheckKind::Denso,
            sys,
            q: &q,
            factor,
            shift: None,
            degree: Some(d),
        },
        |xi| a_weil_height(&simplex, xi),
    )
}

/// Lex-least `b` in `Z^n` with `b + S` inside `q`, `S` the standard simplex.
pub fn simplex_shift(q: &LatticePolytope) -> Option<Vec<i64>> {
    let n = q.ambient_dim();
    let pts = q.lattice_points().sorted();
    pts.points()
        .iter()
        .find(|b| {
            (0..n).all(|i| {
                let mut v = (*b).clone();
                v[i] += 1;
                q.contains(&v)
            })
        })
        .cloned()
}

pub const SIMPLEX_INSIDE: &str = "requires b + S inside Q for some integer b";

/// When `b + S` lies in `Q`, the Weil height may replace `h^_Q` on the left.
pub fn simplex_shift_check(sys: &LaurentSystem) -> Result<KoushReport> {
    sys.require_square()?;
    let q = newton_polytope(&sys.polys)?;
    let b = simplex_shift(&q).ok_or_else(|| {
        Error::precondition(
            SIMPLEX_INSIDE,
            "no translate of the standard simplex fits in Q",
        )
    })?;
    let factor = q.scaled_euclidean_volume();
    let simplex = standard_simplex(sys.n);
    assemble(
        Assembled {
            kind: CheckKind::SimplexShift,
            sys,
            q: &q,
            factor,
            shift: Some(b),
            degree: None,
        },
        |xi| a_weil_height(&simplex, xi),
    )
}

/// Degree and height bounds for `Z(f_1, ..., f_s)` measured through `X_A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BkGralBounds {
    pub n: usize,
    pub card: usize,
    pub s: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub deg_bound: BigInt,
    pub h2_sum: ExactLog,
    pub height_bound: ExactLog,
}

pub const SUPPORT_IN_A: &str = "requires Supp(f_i) inside A";

/// `deg <= Vol(A)` and `h <= Vol(A) ((n+1)/2 log Card(A) + sum h_2(f_i))`.
pub fn bkgral_bounds(a: &ExponentSet, polys: &[LaurentPolyQ]) -> Result<BkGralBounds> {
    let n = a.ambient_dim();
    require_index_one(&difference_lattice(a))?;
    for (i, f) in polys.iter().enumerate() {
        if f.nvars() != n {
            return Err(Error::domain(format!(
                "polys[{i}] has {} variables, A lives in Z^{n}",
                f.nvars()
            )));
        }
        if let Some(e) = f.support().into_iter().find(|e| !a.contains(e)) {
            return Err(Error::precondition(
                SUPPORT_IN_A,
                format!("polys[{i}] has exponent {e:?} outside A"),
            ));
        }
    }
    let vol = normalized_volume(a);
    let h2_sum = polys.iter().try_fold(ExactLog::zero(), |acc, f| {
        Ok::<_, Error>(acc.plus(&poly_height(f, Norm::L2)?))
    })?;
    let card = crate::heights::half_log(&BigInt::from(a.len())).scale_int(n as i64 + 1);
    Ok(BkGralBounds {
        n,
        card: a.len(),
        s: polys.len(),
        height_bound: card
            .plus(&h2_sum)
            .scale(&Rational::from_integer(vol.clone())),
        deg_bound: vol,
        h2_sum,
    })
}
