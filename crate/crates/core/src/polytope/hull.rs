//! Incremental facet enumeration and face closure in an integral frame of the
//! affine hull.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{determinant, hermite_normal_form, rational_rank, IntMatrix};
use crate::numkernel::Rational;

/// Integral chart of an affine subspace: `x -> x[pivots]` is injective on the
/// subspace, which is cut out by `<w, x - base> = 0` for each equation `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Frame {
    pub base: Vec<i64>,
    pub pivots: Vec<usize>,
    pub equations: Vec<Vec<BigInt>>,
}

impl Frame {
    pub fn of_points(points: &[Vec<i64>]) -> Frame {
        let n = points[0].len();
        let base = points[0].clone();
        let diffs: Vec<Vec<BigInt>> = points[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&base)
                    .map(|(a, b)| BigInt::from(a - b))
                    .collect()
            })
            .collect();
        let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&diffs, n));
        let basis: Vec<Vec<BigInt>> = (0..h.rows())
            .filter(|&i| !h.is_zero_row(i))
            .map(|i| h.row(i).to_vec())
            .collect();
        let pivots: Vec<usize> = basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        // kernel of the basis: U B^T = H, rows of U opposite zero rows of H
        let bt = IntMatrix::from_rows(&basis, n).transpose();
        let (hb, u) = hermite_normal_form(&bt);
        let equations = (0..hb.rows())
            .filter(|&i| hb.is_zero_row(i))
            .map(|i| u.row(i).to_vec())
            .collect();
        Frame {
            base,
            pivots,
            equations,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn in_hull(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|w| {
            w.iter()
                .zip(x.iter().zip(&self.base))
                .map(|(wi, (a, b))| wi * BigInt::from(a - b))
                .sum::<BigInt>()
                .is_zero()
        })
    }

    pub fn project(&self, x: &[i64]) -> Vec<BigInt> {
        self.pivots.iter().map(|&j| BigInt::from(x[j])).collect()
    }
}

/// `<normal, y> <= offset` on the polytope, with equality exactly on the facet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Facet {
    pub fn slack(&self, y: &[BigInt]) -> BigInt {
        &self.offset - dot(&self.normal, y)
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Generalized cross product of `r - 1` vectors in `Z^r`: the vector `u` with
/// `<u, x> = det(v_1, ..., v_{r-1}, x)`.
fn cross(vs: &[Vec<BigInt>], r: usize) -> Vec<BigInt> {
    (0..r)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = vs
                .iter()
                .map(|v| (0..r).filter(|&k| k != j).map(|k| v[k].clone()).collect())
                .collect();
            let d = determinant(&minor);
            if (r - 1 + j).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

#[cfg(test)]
fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Oriented, primitive hyperplane through `r` affinely independent points,
/// with `interior / (r+1)` strictly on the inner side.
fn plane_through(ys: &[Vec<BigInt>], pts: &[usize], interior: &[BigInt], r: usize) -> Facet {
    let s0 = &ys[pts[0]];
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|&i| ys[i].iter().zip(s0).map(|(a, b)| a - b).collect())
        .collect();
    let mut u = cross(&diffs, r);
    debug_assert!(!u.iter().all(Zero::is_zero));
    let mut c = dot(&u, s0);
    if dot(&u, interior) > &c * BigInt::from(r + 1) {
        u.iter_mut().for_each(|x| *x = -x.clone());
        c = -c;
    }
    let g = u.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    Facet {
        normal: u.iter().map(|x| x / &g).collect(),
        offset: c / &g,
    }
}

/// Greedily picks `k` affinely independent points among `members`.
fn independent(ys: &[Vec<BigInt>], members: &[usize], k: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![*members.first()?];
    for &i in &members[1..] {
        if chosen.len() == k {
            break;
        }
        chosen.push(i);
        if affine_rank(ys, &chosen) + 1 < chosen.len() {
            chosen.pop();
        }
    }
    (chosen.len() == k).then_some(chosen)
}

/// Facets of the convex hull of full-dimensional points `ys` in `Z^r`, `r >= 1`,
/// each with the indices of the points it contains.
///
/// Beneath-beyond: start from a simplex, then insert points one at a time,
/// replacing the facets a point sees by cones from it over the horizon ridges.
pub(crate) fn facets(ys: &[Vec<BigInt>], r: usize) -> Vec<(Facet, Vec<usize>)> {
    let all: Vec<usize> = (0..ys.len()).collect();
    if r == 1 {
        let lo = ys.iter().map(|y| &y[0]).min().expect("nonempty");
        let hi = ys.iter().map(|y| &y[0]).max().expect("nonempty");
        let on = |v: &BigInt| {
            all.iter()
                .copied()
                .filter(|&i| &ys[i][0] == v)
                .collect::<Vec<_>>()
        };
        return vec![
            (
                Facet {
                    normal: vec![-BigInt::one()],
                    offset: -lo.clone(),
                },
                on(lo),
            ),
            (
                Facet {
                    normal: vec![BigInt::one()],
                    offset: hi.clone(),
                },
                on(hi),
            ),
        ];
    }
    let simplex = independent(ys, &all, r + 1).expect("points are full-dimensional");
    let interior: Vec<BigInt> = (0..r)
        .map(|j| simplex.iter().map(|&i| &ys[i][j]).sum())
        .collect();
    let mut hull: BTreeMap<Facet, Vec<usize>> = BTreeMap::new();
    for skip in 0..=r {
        let pts: Vec<usize> = simplex
            .iter()
            .copied()
            .filter(|&i| i != simplex[skip])
            .collect();
        hull.insert(plane_through(ys, &pts, &interior, r), pts);
    }
    let mut processed = simplex.clone();
    for i in all.iter().copied().filter(|i| !simplex.contains(i)) {
        let y = &ys[i];
        processed.push(i);
        let (visible, kept): (Vec<_>, Vec<_>) = std::mem::take(&mut hull)
            .into_iter()
            .partition(|(f, _)| f.slack(y).is_negative());
        let mut cones = BTreeSet::new();
        for (_, von) in &visible {
            for (_, kon) in &kept {
                let ridge: Vec<usize> = von.iter().copied().filter(|j| kon.contains(j)).collect();
                if let Some(mut pts) = independent(ys, &ridge, r - 1) {
                    if affine_rank(ys, &ridge) == r - 2 {
                        pts.push(i);
                        cones.insert(plane_through(ys, &pts, &interior, r));
                    }
                }
            }
        }
        for (f, mut on) in kept {
            if f.slack(y).is_zero() {
                on.push(i);
            }
            hull.insert(f, on);
        }
        for f in cones {
            if let Entry::Vacant(slot) = hull.entry(f) {
                let on = processed
                    .iter()
                    .copied()
                    .filter(|&j| slot.key().slack(&ys[j]).is_zero())
                    .collect();
                slot.insert(on);
            }
        }
    }
    hull.into_iter()
        .map(|(f, mut on)| {
            on.sort_unstable();
            (f, on)
        })
        .collect()
}

/// A face as the sorted indices of the points it contains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RawFace {
    pub dim: usize,
    pub members: Vec<usize>,
}

pub(crate) fn affine_rank(ys: &[Vec<BigInt>], members: &[usize]) -> usize {
    if members.len() <= 1 {
        return 0;
    }
    let y0 = &ys[members[0]];
    let rows: Vec<Vec<Rational>> = members[1..]
        .iter()
        .map(|&i| {
            ys[i]
                .iter()
                .zip(y0)
                .map(|(a, b)| Rational::from_integer(a - b))
                .collect()
        })
        .collect();
    rational_rank(rows)
}

/// All nonempty faces: intersections of facets plus the whole polytope.
pub(crate) fn face_closure(
    ys: &[Vec<BigInt>],
    r: usize,
    facet_sets: &[Vec<usize>],
) -> Vec<RawFace> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    all.insert((0..ys.len()).collect());
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for f in facet_sets {
        if all.insert(f.clone()) {
            frontier.push(f.clone());
        }
    }
    while let Some(f) = frontier.pop() {
        for g in facet_sets {
            let meet: Vec<usize> = f
                .iter()
                .copied()
                .filter(|i| g.binary_search(i).is_ok())
                .collect();
            if !meet.is_empty() && all.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut faces: Vec<RawFace> = all
        .into_iter()
        .map(|members| RawFace {
            dim: if members.len() == ys.len() {
                r
            } else {
                affine_rank(ys, &members)
            },
            members,
        })
        .collect();
    faces.sort();
    faces
}

/// `r! * volume` of the hull of full-dimensional points, by a fan from the
/// lexicographically least vertex over a recursive triangulation of facets.
pub(crate) fn scaled_volume(ys: &[Vec<BigInt>], r: usize, faces: &[RawFace]) -> BigInt {
    if r == 0 {
        return BigInt::one();
    }
    let vertices: BTreeSet<usize> = faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| f.members[0])
        .collect();
    let top = faces
        .iter()
        .find(|f| f.dim == r)
        .expect("whole polytope is a face");
    let mut total = BigInt::zero();
    for simplex in triangulate(ys, faces, top, &vertices) {
        let s0 = &ys[simplex[0]];
        let rows: Vec<Vec<BigInt>> = simplex[1..]
            .iter()
            .map(|&i| ys[i].iter().zip(s0).map(|(a, b)| a - b).collect())
            .collect();
        total += determinant(&rows).abs();
    }
    total
}

fn triangulate(
    ys: &[Vec<BigInt>],
    faces: &[RawFace],
    face: &RawFace,
    vertices: &BTreeSet<usize>,
) -> Vec<Vec<usize>> {
    let apex = face
        .members
        .iter()
        .copied()
        .filter(|i| vertices.contains(i))
        .min_by(|&a, &b| ys[a].cmp(&ys[b]))
        .expect("face has a vertex");
    if face.dim == 0 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for sub in faces.iter().filter(|g| {
        g.dim + 1 == face.dim
            && g.members.binary_search(&apex).is_err()
            && g.members
                .iter()
                .all(|i| face.members.binary_search(i).is_ok())
    }) {
        for mut s in triangulate(ys, faces, sub, vertices) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}
