//! The Gosper group: block matrices `[[A, u], [0, 1]]` with `A` square.
//!
//! Products compose as `[[A1 A2, A1 u2 + u1], [0, 1]]`, so a left-to-right
//! product of `n` factors carries `u = sum_k A_1...A_{k-1} u_k`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// `[[A, u], [0, 1]]` with dense row-major `A` and `u` in row order (top first).
#[derive(Clone, Debug, PartialEq)]
pub struct GosperMatrix {
    dim: usize,
    a: Vec<Scalar>,
    u: Vec<Scalar>,
}

impl GosperMatrix {
    pub fn new(a: Vec<Vec<Scalar>>, u: Vec<Scalar>) -> Result<Self> {
        let dim = u.len();
        if dim == 0 {
            return Err(Error::InvalidScheme("block dimension must be at least 1".into()));
        }
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                left: a.len(),
                right: dim,
            });
        }
        for row in &a {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: dim,
                });
            }
        }
        Ok(GosperMatrix {
            dim,
            a: a.into_iter().flatten().collect(),
            u,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut a = vec![Scalar::zero(); dim * dim];
        for i in 0..dim {
            a[i * dim + i] = Scalar::one();
        }
        GosperMatrix {
            dim,
            a,
            u: vec![Scalar::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self, row: usize, col: usize) -> &Scalar {
        &self.a[row * self.dim + col]
    }

    pub fn a_rows(&self) -> Vec<Vec<Scalar>> {
        self.a.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// The column `u`, top entry first.
    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    /// True when every entry is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.a.iter().chain(&self.u).all(Scalar::is_exact)
    }

    fn check_dim(&self, other: &GosperMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &GosperMatrix) -> Result<GosperMatrix> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    let x = self.a(i, k);
                    let y = other.a(k, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                a.push(acc);
            }
        }
        let u = (0..n)
            .map(|i| {
                let mut acc = self.u[i].clone();
                for k in 0..n {
                    let x = self.a(i, k);
                    if !x.is_zero() && !other.u[k].is_zero() {
                        acc = &acc + &(x * &other.u[k]);
                    }
                }
                acc
            })
            .collect();
        Ok(GosperMatrix { dim: n, a, u })
    }

    /// `[[A^-1, -A^-1 u], [0, 1]]` by Gauss-Jordan elimination.
    ///
    /// Exact for rational entries; with float entries the result is rounded
    /// and [`GosperMatrix::is_exact`] reports `false`.
    pub fn inverse(&self) -> Result<GosperMatrix> {
        let n = self.dim;
        // augmented [A | I | u]
        let width = 2 * n + 1;
        let mut m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(width);
                row.extend((0..n).map(|j| self.a(i, j).clone()));
                row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                row.push(self.u[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::Singular { index: col })?;
            m.swap(col, pivot);
            let inv = m[col][col].invert()?;
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row).take(width) {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
        }
        let a = m.iter().flat_map(|row| row[n..2 * n].to_vec()).collect();
        let u = m.iter().map(|row| -&row[2 * n]).collect();
        Ok(GosperMatrix { dim: n, a, u })
    }
}

/// Left-to-right product; the empty product is the identity of `dim`.
pub fn finite_product(dim: usize, ms: &[GosperMatrix]) -> Result<GosperMatrix> {
    ms.iter()
        .try_fold(GosperMatrix::identity(dim), |acc, m| acc.multiply(m))
}

/// The same product reduced as a balanced tree, halves evaluated in parallel.
///
/// Associativity makes this identical to [`finite_product`] for exact
/// entries; `leaf` bounds the sequential run at the bottom of the tree.
pub fn finite_product_segmented(
    dim: usize,
    ms: &[GosperMatrix],
    leaf: usize,
) -> Result<GosperMatrix> {
    let leaf = leaf.max(1);
    if ms.len() <= leaf {
        return finite_product(dim, ms);
    }
    let (left, right) = ms.split_at(ms.len() / 2);
    let (l, r) = rayon::join(
        || finite_product_segmented(dim, left, leaf),
        || finite_product_segmented(dim, right, leaf),
    );
    l?.multiply(&r?)
}

/// Segmented product over fixed-size chunks folded in order.
pub fn finite_product_chunked(
    dim: usize,
    ms: &[GosperMatrix],
    chunk: usize,
) -> Result<GosperMatrix> {
    let partials: Vec<GosperMatrix> = ms
        .par_chunks(chunk.max(1))
        .map(|c| finite_product(dim, c))
        .collect::<Result<_>>()?;
    finite_product(dim, &partials)
}
