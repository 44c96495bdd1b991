use crate::fields::{FieldTower, Scalar};
use crate::linalg;

/// A subspace of `F^n` kept in reduced echelon form, so coordinates of a
/// member are read off at the pivot columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    tower: FieldTower,
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(tower: &FieldTower, n: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let (rows, pivots) = linalg::rref(vectors, n);
        Subspace {
            tower: tower.clone(),
            n,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Echelon basis.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` on the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![self.tower.zero(); self.n];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[k] = &w[k] + &(c * x);
                }
            }
        }
        if w.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }
}
