//! Exact integer linear algebra and the difference lattice `L_A`.

mod matrix;
mod normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

pub use matrix::{determinant, is_unit, rational_rank, solve_in_span, IntMatrix};
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithDecomposition};

use crate::error::{Error, Result};
use crate::polytope::ExponentSet;

/// The lattice spanned by `{a - a_0 : a in A}` with a canonical (HNF) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceLattice {
    pub ambient_dim: usize,
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
    pub elementary_divisors: Vec<BigInt>,
    pub base_point: Vec<i64>,
}

/// `[Z^n : L_A]`, infinite when `L_A` has rank below `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(g) if g.is_one())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(g) => write!(f, "{g}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for LatticeIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LatticeIndex::Finite(g) => matrix::bigint_json(g).serialize(s),
            LatticeIndex::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl Serialize for DifferenceLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DifferenceLattice", 6)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field(
            "basis",
            &IntMatrix::from_rows(&self.basis, self.ambient_dim),
        )?;
        let divs: Vec<serde_json::Value> = self
            .elementary_divisors
            .iter()
            .map(matrix::bigint_json)
            .collect();
        st.serialize_field("elementary_divisors", &divs)?;
        st.serialize_field("base_point", &self.base_point)?;
        st.serialize_field("index", &self.index())?;
        st.end()
    }
}

impl DifferenceLattice {
    pub fn index(&self) -> LatticeIndex {
        if self.rank < self.ambient_dim {
            LatticeIndex::Infinite
        } else {
            LatticeIndex::Finite(self.elementary_divisors.iter().product())
        }
    }

    /// Coordinates of `p - base_point` in the lattice basis; errors when
    /// `p - base_point` is not a lattice vector.
    pub fn coordinates(&self, p: &[i64]) -> Result<Vec<BigInt>> {
        let diff: Vec<BigInt> = p
            .iter()
            .zip(&self.base_point)
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect();
        coordinates_in_basis(&self.basis, &diff)
    }

    /// `base_point + sum c_k basis[k]`.
    pub fn point_from_coordinates(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.base_point.iter().map(|&x| BigInt::from(x)).collect();
        for (ck, bk) in c.iter().zip(&self.basis) {
            for (o, b) in out.iter_mut().zip(bk) {
                *o += ck * b;
            }
        }
        out
    }
}

/// Integer coordinates of `v` in a linearly independent `basis`.
pub fn coordinates_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<Vec<BigInt>> {
    let sol = solve_in_span(basis, v)
        .ok_or_else(|| Error::domain("vector is outside the span of the basis"))?;
    sol.into_iter()
        .map(|q| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::domain(
                    "vector is not in the lattice spanned by the basis",
                ))
            }
        })
        .collect()
}

pub fn difference_lattice(a: &ExponentSet) -> DifferenceLattice {
    let n = a.ambient_dim();
    let base = a.points()[0].clone();
    let diffs: Vec<Vec<BigInt>> = a.points()[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&base)
                .map(|(x, y)| BigInt::from(x - y))
                .collect()
        })
        .collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&diffs, n));
    let basis: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row(i).to_vec())
        .collect();
    let rank = basis.len();
    let elementary_divisors = if rank == 0 {
        Vec::new()
    } else {
        smith_normal_form(&IntMatrix::from_rows(&basis, n)).diag
    };
    DifferenceLattice {
        ambient_dim: n,
        rank,
        basis,
        elementary_divisors,
        base_point: base,
    }
}

pub fn lattice_index(a: &ExponentSet) -> LatticeIndex {
    difference_lattice(a).index()
}

/// `B` such that `a_i = a_0 + beta(b_i)`; `B` lives in `Z^r` and `L_B = Z^r`.
pub fn lattice_coordinates(a: &ExponentSet) -> Result<ExponentSet> {
    let lat = difference_lattice(a);
    lattice_coordinates_in(&lat, a)
}

pub fn lattice_coordinates_in(lat: &DifferenceLattice, a: &ExponentSet) -> Result<ExponentSet> {
    let mut points = Vec::with_capacity(a.len());
    for p in a.points() {
        let c = lat
            .coordinates(p)
            .map_err(|e| Error::Internal(format!("lattice coordinates: {e}")))?;
        let c: Option<Vec<i64>> = c.iter().map(ToPrimitive::to_i64).collect();
        points.push(c.ok_or_else(|| Error::Internal("lattice coordinate overflow".into()))?);
    }
    ExponentSet::new(lat.rank, points)
}

/// `true` when every elementary divisor is 1.
pub fn is_saturated(lat: &DifferenceLattice) -> bool {
    lat.elementary_divisors.iter().all(One::is_one)
}
