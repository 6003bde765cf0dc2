use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// Row-style Hermite normal form `H = U M`.
///
/// `H` is in row echelon form, pivots are positive, and every entry above a
/// pivot lies in `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut p = 0;
    for c in 0..m.cols() {
        if p == h.rows() {
            break;
        }
        while let Some(best) = min_abs_in_column(&h, c, p) {
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut clean = true;
            for i in p + 1..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(p, c)]);
                h.add_row_multiple(i, p, &q);
                u.add_row_multiple(i, p, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(p, c)].is_zero() {
            continue;
        }
        if h[(p, c)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = -h[(i, c)].div_floor(&h[(p, c)]);
            h.add_row_multiple(i, p, &q);
            u.add_row_multiple(i, p, &q);
        }
        p += 1;
    }
    (h, u)
}

fn min_abs_in_column(m: &IntMatrix, c: usize, from: usize) -> Option<usize> {
    (from..m.rows())
        .filter(|&i| !m[(i, c)].is_zero())
        .min_by(|&a, &b| m[(a, c)].abs().cmp(&m[(b, c)].abs()))
}

/// `left * M * right = diag(diag)` with `diag[0] | diag[1] | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    #[serde(serialize_with = "serialize_diag")]
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

fn serialize_diag<S: serde::Serializer>(d: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<serde_json::Value> = d.iter().map(super::matrix::bigint_json).collect();
    v.serialize(s)
}

impl SmithDecomposition {
    /// Nonzero diagonal entries.
    pub fn nonzero_divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// The `rows x cols` matrix with `diag` on its diagonal.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Smith normal form by elementary operations, pivoting on the entry of
/// least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        let Some((pi, pj)) = min_abs_in_block(&a, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = -(&a[(i, t)] / &a[(t, t)]);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = -(&a[(t, j)] / &a[(t, t)]);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if clean {
                // row and column cleared; enforce divisibility of the rest
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        let one = BigInt::from(1);
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue;
                    }
                }
            }
            // a remainder survived: move the smallest entry of row/column t to the pivot
            let in_col = min_abs_in_column(&a, t, t).expect("pivot column nonzero");
            let in_row = (t..cols)
                .filter(|&j| !a[(t, j)].is_zero())
                .min_by(|&x, &y| a[(t, x)].abs().cmp(&a[(t, y)].abs()))
                .expect("pivot row nonzero");
            if a[(in_col, t)].abs() <= a[(t, in_row)].abs() {
                a.swap_rows(t, in_col);
                u.swap_rows(t, in_col);
            } else {
                a.swap_cols(t, in_row);
                v.swap_cols(t, in_row);
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diag = (0..k).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        left: u,
        diag,
        right: v,
    }
}

fn min_abs_in_block(
    m: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
