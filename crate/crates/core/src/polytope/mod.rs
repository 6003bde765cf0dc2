//! Lattice polytopes `Conv(A)`: hulls, faces, face-restricted counts, lattice
//! points and volumes, all in exact integer arithmetic.

mod exponent_set;
mod hull;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use exponent_set::ExponentSet;

use crate::error::{Error, Result};
use crate::lattice::lattice_coordinates;
use hull::{face_closure, facets, scaled_volume, Facet, Frame, RawFace};

/// `Conv(A)` for a finite `A`, stored by its extreme points.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    ambient_dim: usize,
    intrinsic_dim: usize,
    vertices: Vec<Vec<i64>>,
    frame: Frame,
    facets: Vec<Facet>,
    faces: Vec<RawFace>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

/// One face of a polytope, by the positions of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
}

/// Every nonempty face, the polytope itself included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

/// A face of `Conv(A)` recorded by the positions of the points of `A` on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PointFace {
    pub dim: usize,
    pub point_indices: Vec<usize>,
}

/// `counts[i] = N_A(i)`, the least number of points of `A` on an `i`-face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCounts {
    pub counts: Vec<usize>,
}

impl FaceLattice {
    /// Number of faces of each dimension `0..=r`.
    pub fn f_vector(&self) -> Vec<usize> {
        let r = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        (0..=r)
            .map(|d| self.faces.iter().filter(|f| f.dim == d).count())
            .collect()
    }

    /// `sum_{i<r} (-1)^i f_i = 1 - (-1)^r`; vacuous for `r = 0`.
    pub fn euler_holds(&self) -> bool {
        let f = self.f_vector();
        let r = f.len() - 1;
        if r == 0 {
            return f == [1];
        }
        let lhs: i64 = f[..r]
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i.is_multiple_of(2) {
                    c as i64
                } else {
                    -(c as i64)
                }
            })
            .sum();
        lhs == 1 - if r.is_multiple_of(2) { 1 } else { -1 }
    }
}

struct Hull {
    frame: Frame,
    facets: Vec<(Facet, Vec<usize>)>,
    faces: Vec<RawFace>,
    ys: Vec<Vec<BigInt>>,
}

fn hull_of(points: &[Vec<i64>]) -> Hull {
    let frame = Frame::of_points(points);
    let ys: Vec<Vec<BigInt>> = points.iter().map(|p| frame.project(p)).collect();
    let r = frame.rank();
    if r == 0 {
        let faces = vec![RawFace {
            dim: 0,
            members: vec![0],
        }];
        return Hull {
            frame,
            facets: Vec::new(),
            faces,
            ys,
        };
    }
    let fs = facets(&ys, r);
    let sets: Vec<Vec<usize>> = fs.iter().map(|(_, s)| s.clone()).collect();
    let faces = face_closure(&ys, r, &sets);
    Hull {
        frame,
        facets: fs,
        faces,
        ys,
    }
}

pub fn convex_hull(a: &ExponentSet) -> LatticePolytope {
    let first = hull_of(a.points());
    let mut vertices: Vec<Vec<i64>> = first
        .faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| a.points()[f.members[0]].clone())
        .collect();
    vertices.sort();
    from_sorted_vertices(a.ambient_dim(), vertices)
}

fn from_sorted_vertices(ambient_dim: usize, vertices: Vec<Vec<i64>>) -> LatticePolytope {
    let h = hull_of(&vertices);
    LatticePolytope {
        ambient_dim,
        intrinsic_dim: h.frame.rank(),
        vertices,
        facets: h.facets.into_iter().map(|(f, _)| f).collect(),
        frame: h.frame,
        faces: h.faces,
    }
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.intrinsic_dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> ExponentSet {
        ExponentSet::new(self.ambient_dim, self.vertices.clone()).expect("vertices are distinct")
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Exact membership: affine-hull equations, then facet inequalities.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.ambient_dim || !self.frame.in_hull(x) {
            return false;
        }
        let y = self.frame.project(x);
        self.facets.iter().all(|f| !f.slack(&y).is_negative())
    }

    pub fn face_lattice(&self) -> FaceLattice {
        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .map(|f| Face {
                dim: f.dim,
                vertex_indices: f.members.clone(),
            })
            .collect();
        faces.sort();
        FaceLattice { faces }
    }

    /// All integer points, by a bounding-box scan.
    pub fn lattice_points(&self) -> ExponentSet {
        let n = self.ambient_dim;
        let lo: Vec<i64> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j]).max().unwrap())
            .collect();
        let test = FastMembership::new(self);
        let mut out = Vec::new();
        let mut x = lo.clone();
        'scan: loop {
            let inside = match &test {
                Some(t) => t.contains(&x),
                None => self.contains(&x),
            };
            if inside {
                out.push(x.clone());
            }
            for j in (0..n).rev() {
                if x[j] < hi[j] {
                    x[j] += 1;
                    for (k, xk) in x.iter_mut().enumerate().skip(j + 1) {
                        *xk = lo[k];
                    }
                    continue 'scan;
                }
            }
            break;
        }
        ExponentSet::new(n, out).expect("scan yields distinct points")
    }

    /// `Vol_n(P)`; zero when the polytope is not full-dimensional.
    pub fn euclidean_volume(&self) -> crate::numkernel::Rational {
        use crate::numkernel::Rational;
        let n = self.ambient_dim;
        if self.intrinsic_dim < n || n == 0 {
            return if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        let ys: Vec<Vec<BigInt>> = self
            .vertices
            .iter()
            .map(|v| self.frame.project(v))
            .collect();
        let scaled = scaled_volume(&ys, n, &self.faces);
        Rational::new(scaled, factorial(n))
    }

    /// `n! Vol_n(P)` as an integer; zero when not full-dimensional.
    pub fn scaled_euclidean_volume(&self) -> BigInt {
        let n = self.ambient_dim;
        if self.intrinsic_dim < n {
            return BigInt::zero();
        }
        if n == 0 {
            return BigInt::one();
        }
        let ys: Vec<Vec<BigInt>> = self
            .vertices
            .iter()
            .map(|v| self.frame.project(v))
            .collect();
        scaled_volume(&ys, n, &self.faces)
    }

    /// `k P`.
    pub fn dilate(&self, k: i64) -> Result<LatticePolytope> {
        if k < 1 {
            return Err(Error::domain("dilation factor must be positive"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Ok(from_sorted_vertices(self.ambient_dim, vertices))
    }

    /// `b + P`.
    pub fn translate(&self, b: &[i64]) -> Result<LatticePolytope> {
        if b.len() != self.ambient_dim {
            return Err(Error::domain("translation vector has the wrong length"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(from_sorted_vertices(self.ambient_dim, vertices))
    }

    /// `true` when `self` is contained in `other`.
    pub fn is_subset_of(&self, other: &LatticePolytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LatticePolytope", 4)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("intrinsic_dim", &self.intrinsic_dim)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("f_vector", &self.face_lattice().f_vector())?;
        st.end()
    }
}

/// Machine-integer copy of the membership data, when everything fits.
struct FastMembership {
    base: Vec<i64>,
    pivots: Vec<usize>,
    equations: Vec<Vec<i128>>,
    facets: Vec<(Vec<i128>, i128)>,
}

impl FastMembership {
    fn new(p: &LatticePolytope) -> Option<Self> {
        let equations = p
            .frame
            .equations
            .iter()
            .map(|w| {
                w.iter()
                    .map(ToPrimitive::to_i128)
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let facets = p
            .facets
            .iter()
            .map(|f| {
                let n = f
                    .normal
                    .iter()
                    .map(ToPrimitive::to_i128)
                    .collect::<Option<Vec<_>>>()?;
                Some((n, f.offset.to_i128()?))
            })
            .collect::<Option<Vec<_>>>()?;
        let bounded = |v: &[i128]| v.iter().all(|x| x.abs() < 1 << 40);
        if !equations.iter().all(|w| bounded(w))
            || !facets.iter().all(|(n, c)| bounded(n) && c.abs() < 1 << 80)
        {
            return None;
        }
        Some(FastMembership {
            base: p.frame.base.clone(),
            pivots: p.frame.pivots.clone(),
            equations,
            facets,
        })
    }

    fn contains(&self, x: &[i64]) -> bool {
        if x.iter().any(|v| v.abs() >= 1 << 40) {
            return false;
        }
        for w in &self.equations {
            let s: i128 = w
                .iter()
                .zip(x.iter().zip(&self.base))
                .map(|(wi, (a, b))| wi * (*a as i128 - *b as i128))
                .sum();
            if s != 0 {
                return false;
            }
        }
        self.facets.iter().all(|(n, c)| {
            let s: i128 = n
                .iter()
                .zip(&self.pivots)
                .map(|(ni, &j)| ni * x[j] as i128)
                .sum();
            s <= *c
        })
    }
}

pub fn face_lattice(p: &LatticePolytope) -> FaceLattice {
    p.face_lattice()
}

pub fn lattice_points(p: &LatticePolytope) -> ExponentSet {
    p.lattice_points()
}

pub fn euclidean_volume(p: &LatticePolytope) -> crate::numkernel::Rational {
    p.euclidean_volume()
}

/// Faces of `Conv(A)` with the points of `A` lying on each.
pub fn point_faces(a: &ExponentSet) -> Vec<PointFace> {
    let h = hull_of(a.points());
    h.faces
        .into_iter()
        .map(|f| PointFace {
            dim: f.dim,
            point_indices: f.members,
        })
        .collect()
}

pub fn face_counts(a: &ExponentSet) -> FaceCounts {
    // a simplex has every subset as a face: N_A(i) = i + 1
    let r = Frame::of_points(a.points()).rank();
    if a.len() == r + 1 {
        return FaceCounts {
            counts: (1..=a.len()).collect(),
        };
    }
    let faces = point_faces(a);
    let r = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let counts = (0..=r)
        .map(|d| {
            faces
                .iter()
                .filter(|f| f.dim == d)
                .map(|f| f.point_indices.len())
                .min()
                .expect("every dimension up to r has a face")
        })
        .collect();
    FaceCounts { counts }
}

/// `Vol(A)`: `r!` times the volume of `Conv(A)` measured in `L_A`.
pub fn normalized_volume(a: &ExponentSet) -> BigInt {
    let b = lattice_coordinates(a).expect("lattice coordinates exist for any finite set");
    let r = b.ambient_dim();
    if r == 0 {
        return BigInt::one();
    }
    if b.len() == r + 1 {
        let p0 = &b.points()[0];
        let rows: Vec<Vec<BigInt>> = b.points()[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(x, y)| BigInt::from(x - y)).collect())
            .collect();
        return crate::lattice::determinant(&rows).abs();
    }
    let h = hull_of(b.points());
    let v = scaled_volume(&h.ys, r, &h.faces);
    debug_assert!(v.is_positive());
    v
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::domain(format!(
            "Minkowski sum of polytopes in dimensions {} and {}",
            p.ambient_dim, q.ambient_dim
        )));
    }
    let mut sums = BTreeSet::new();
    for u in &p.vertices {
        for v in &q.vertices {
            sums.insert(u.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<i64>>());
        }
    }
    let set = ExponentSet::new(p.ambient_dim, sums.into_iter().collect())?;
    Ok(convex_hull(&set))
}

/// `Conv` of the union of the supports.
pub fn newton_polytope(fs: &[crate::heights::LaurentPolyQ]) -> Result<LatticePolytope> {
    let first = fs
        .first()
        .ok_or_else(|| Error::domain("Newton polytope of an empty family"))?;
    let n = first.nvars();
    let mut support = BTreeSet::new();
    for (i, f) in fs.iter().enumerate() {
        if f.is_zero() {
            return Err(Error::domain(format!("polynomial {i} is zero")));
        }
        if f.nvars() != n {
            return Err(Error::domain(format!(
                "polynomial {i} has a different number of variables"
            )));
        }
        support.extend(f.support());
    }
    Ok(convex_hull(&ExponentSet::new(
        n,
        support.into_iter().collect(),
    )?))
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
