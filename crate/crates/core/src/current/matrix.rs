use num::Zero;

use crate::linalg::{collect_sparse, scale, sub_scaled, SparseVec, Q};

/// Square matrix stored by columns: `cols[j]` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            cols: (0..dim)
                .map(|j| vec![(j, Q::from_integer(1.into()))])
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &[(usize, Q)]) -> SparseVec {
        collect_sparse(
            v.iter()
                .flat_map(|(j, x)| self.cols[*j].iter().map(move |(i, y)| (*i, x * y))),
        )
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add_scaled(&self, c: &Q, other: &SparseMatrix) -> SparseMatrix {
        let neg = -c.clone();
        SparseMatrix {
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| sub_scaled(a, &neg, b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Q) -> SparseMatrix {
        SparseMatrix {
            cols: self.cols.iter().map(|col| scale(col, c)).collect(),
        }
    }

    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other)
            .add_scaled(&Q::from_integer((-1).into()), &other.mul(self))
    }

    /// `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    out.push((*i, j, v.clone()));
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with index `a * other.dim() + b`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let n = other.dim();
        let mut cols = Vec::with_capacity(self.dim() * n);
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * n + k, x * y));
                    }
                }
                cols.push(col);
            }
        }
        SparseMatrix { cols }
    }
}
