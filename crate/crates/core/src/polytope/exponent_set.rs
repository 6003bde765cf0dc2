use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite ordered set of distinct integer vectors `a_0, ..., a_N` in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentSet {
    ambient_dim: usize,
    points: Vec<Vec<i64>>,
}

impl ExponentSet {
    pub fn new(ambient_dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("points", "must be nonempty"));
        }
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::input(
                    format!("points[{i}]"),
                    format!("expected {ambient_dim} coordinates, found {}", p.len()),
                ));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::input(format!("points[{i}]"), "duplicate point"));
            }
        }
        Ok(ExponentSet {
            ambient_dim,
            points,
        })
    }

    /// Like [`ExponentSet::new`] but silently drops repeated points.
    pub fn from_points_dedup(ambient_dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let points = points
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        Self::new(ambient_dim, points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.iter().any(|q| q == p)
    }

    /// Same points in lexicographic order.
    pub fn sorted(&self) -> ExponentSet {
        let mut points = self.points.clone();
        points.sort();
        ExponentSet {
            ambient_dim: self.ambient_dim,
            points,
        }
    }

    /// Image under `a -> T a + b`.
    pub fn transform(&self, matrix: &[Vec<i64>], shift: &[i64]) -> Result<ExponentSet> {
        let n = self.ambient_dim;
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) || shift.len() != n {
            return Err(Error::domain("transform dimensions do not match"));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                (0..n)
                    .map(|i| (0..n).map(|j| matrix[i][j] * p[j]).sum::<i64>() + shift[i])
                    .collect()
            })
            .collect();
        ExponentSet::new(n, points)
    }
}

#[derive(Deserialize)]
struct RawExponentSet {
    ambient_dim: Option<usize>,
    points: Option<Vec<Vec<i64>>>,
}

impl ExponentSet {
    /// Parses `{"ambient_dim": n, "points": [[..], ..]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawExponentSet = serde_json::from_str(text)
            .map_err(|e| Error::input("pointset", format!("malformed JSON: {e}")))?;
        let ambient_dim = raw
            .ambient_dim
            .ok_or_else(|| Error::input("ambient_dim", "missing"))?;
        let points = raw
            .points
            .ok_or_else(|| Error::input("points", "missing"))?;
        ExponentSet::new(ambient_dim, points)
    }
}
