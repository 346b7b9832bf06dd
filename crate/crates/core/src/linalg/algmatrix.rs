//! Matrices with entries in a finite-dimensional algebra `A`.

use std::fmt;

use super::field::{Field, Scalar};
use super::matrix::KMatrix;
use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};

/// Element of `M_{r×c}(A)`: every entry is a coordinate vector of length
/// `dim A`. Products use the structure constants of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<Vec<Scalar>>,
}

impl AlgMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, dim: usize, entries: Vec<Vec<Scalar>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { context: "algebra matrix entries", expected: rows * cols, found: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|e| e.len() != dim) {
            return Err(Error::DimensionMismatch { context: "algebra matrix entry length", expected: dim, found: bad.len() });
        }
        Ok(Self { field, rows, cols, dim, entries })
    }

    pub fn zeros(alg: &FiniteDimAlgebra, rows: usize, cols: usize) -> Self {
        Self {
            field: alg.field(),
            rows,
            cols,
            dim: alg.dim(),
            entries: vec![alg.zero_vector(); rows * cols],
        }
    }

    pub fn identity(alg: &FiniteDimAlgebra, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.entries[i * n + i] = alg.unit().to_vec();
        }
        m
    }

    /// Embeds a scalar matrix as `(c_{ij} · 1_A)`.
    pub fn scalar(c: &KMatrix, alg: &FiniteDimAlgebra) -> Self {
        let entries = c
            .data()
            .iter()
            .map(|s| alg.unit().iter().map(|u| s * u).collect())
            .collect();
        Self { field: alg.field(), rows: c.rows(), cols: c.cols(), dim: alg.dim(), entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Vec<Scalar>) {
        assert_eq!(value.len(), self.dim, "algebra matrix entry length");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// Sub-block of size `rows × cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> AlgMatrix {
        let entries = (r0..r0 + rows)
            .flat_map(|r| (c0..c0 + cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).to_vec())
            .collect();
        AlgMatrix { field: self.field, rows, cols, dim: self.dim, entries }
    }

    /// Entrywise sum of equally shaped matrices.
    pub fn add(&self, rhs: &AlgMatrix) -> Result<AlgMatrix> {
        if (self.rows, self.cols, self.dim) != (rhs.rows, rhs.cols, rhs.dim) {
            return Err(Error::DimensionMismatch { context: "algebra matrix sum", expected: self.rows * self.cols, found: rhs.rows * rhs.cols });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
            .collect();
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    /// `(XY)_{ij} = Σ_k X_{ik} Y_{kj}` with products in `A`.
    pub fn mul(&self, rhs: &AlgMatrix, alg: &FiniteDimAlgebra) -> Result<AlgMatrix> {
        if self.dim != alg.dim() || rhs.dim != alg.dim() || self.field != alg.field() || rhs.field != alg.field() {
            return Err(Error::AmbientMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { context: "algebra matrix product", expected: self.cols, found: rhs.rows });
        }
        let mut out = AlgMatrix::zeros(alg, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.iter().all(Scalar::is_zero) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = alg.mul_coords(x, rhs.get(k, j));
                    for (o, p) in out.entries[i * rhs.cols + j].iter_mut().zip(prod) {
                        *o = &*o + &p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Expands each entry `x` into the `dim × dim` block of left multiplication
    /// by `x`, giving a scalar matrix of size `rows·dim × cols·dim`.
    pub fn expand(&self, alg: &FiniteDimAlgebra) -> KMatrix {
        let d = self.dim;
        let mut out = KMatrix::zeros(self.field, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = alg.left_multiplication(self.get(i, j));
                for r in 0..d {
                    for c in 0..d {
                        out.set(i * d + r, j * d + c, block.get(r, c).clone());
                    }
                }
            }
        }
        out
    }

    /// All coordinates in row-major entry order, as one long vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).iter().map(ToString::to_string).collect())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let parts: Vec<String> = self.get(i, j).iter().map(ToString::to_string).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
