//! Dense matrices over the base field and over `End_K(A)`.

use std::fmt;
use std::ops::Mul;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix with entries in a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl KMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entry count",
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: bad.field() });
        }
        Ok(Self { field, rows, cols, data })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(row) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "matrix row length",
                expected: c,
                found: row.len(),
            });
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integer literals. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    fn check_same_field(&self, other: &KMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    /// Exact product `self · rhs`.
    pub fn matmul(&self, rhs: &KMatrix) -> Result<KMatrix> {
        self.check_same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = KMatrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j].add_mul(a, rhs.get(k, j));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &KMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<KMatrix> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(KMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &KMatrix) -> Result<KMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &KMatrix) -> Result<KMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> KMatrix {
        KMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self += c · other`, shapes assumed equal.
    pub fn add_scaled(&mut self, c: &Scalar, other: &KMatrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            x.add_mul(c, y);
        }
    }

    pub fn transpose(&self) -> KMatrix {
        let mut out = KMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Matrix-vector product on a coordinate column.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, x);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (KMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.data[row * m.cols + j] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.data[r * m.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact inverse by Gauss-Jordan elimination on `[X | I]`.
    pub fn inverse(&self) -> Result<KMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: "inverse of non-square matrix",
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = KMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = self.field.one();
        }
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&c| c < n).count();
        if rank < n {
            return Err(Error::Singular { rank, size: n });
        }
        let mut out = KMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Ok(out)
    }

    /// Echelonized basis of the right null space `{v : X v = 0}`; one vector per
    /// free column, carrying a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Mul for &KMatrix {
    type Output = KMatrix;
    fn mul(self, rhs: &KMatrix) -> KMatrix {
        self.matmul(rhs).expect("compatible matrix shapes")
    }
}

impl fmt::Display for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| r.join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// A K-linear endomorphism of an algebra `A`, stored as its matrix on
/// coordinate columns. Composition is the matrix product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearEndo {
    mat: KMatrix,
}

impl LinearEndo {
    pub fn new(mat: KMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                context: "endomorphism must be square",
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        Ok(Self { mat })
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        Self { mat: KMatrix::identity(field, dim) }
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Self { mat: KMatrix::zeros(field, dim, dim) }
    }

    pub fn from_i64<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Self {
        Self::new(KMatrix::from_i64(field, rows)).expect("square integer matrix")
    }

    pub fn matrix(&self) -> &KMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> KMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn field(&self) -> Field {
        self.mat.field()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mat.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearEndo) -> LinearEndo {
        LinearEndo { mat: &self.mat * &other.mat }
    }

    pub fn add(&self, other: &LinearEndo) -> LinearEndo {
        LinearEndo { mat: self.mat.add(&other.mat).expect("same shape") }
    }

    pub fn sub(&self, other: &LinearEndo) -> LinearEndo {
        LinearEndo { mat: self.mat.sub(&other.mat).expect("same shape") }
    }

    pub fn scale(&self, c: &Scalar) -> LinearEndo {
        LinearEndo { mat: self.mat.scale(c) }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &LinearEndo) {
        self.mat.add_scaled(c, &other.mat);
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

/// A rectangular matrix with entries in `End_K(A)`; products compose entries,
/// `(XY)_{rc} = Σ_s X_{rs} ∘ Y_{sc}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LinearEndo>,
}

impl EndoMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<LinearEndo>) -> Self {
        assert_eq!(entries.len(), rows * cols, "endomorphism matrix entry count");
        Self { rows, cols, entries }
    }

    pub fn zeros(field: Field, dim: usize, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![LinearEndo::zero(field, dim); rows * cols] }
    }

    pub fn identity(field: Field, dim: usize, n: usize) -> Self {
        let mut m = Self::zeros(field, dim, n, n);
        for i in 0..n {
            m.entries[i * n + i] = LinearEndo::identity(field, dim);
        }
        m
    }

    /// The matrix `(c_{ij} · id)` for a scalar matrix `c`.
    pub fn scalar(c: &KMatrix, dim: usize) -> Self {
        let id = LinearEndo::identity(c.field(), dim);
        let entries = c.data().iter().map(|s| id.scale(s)).collect();
        Self { rows: c.rows(), cols: c.cols(), entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LinearEndo {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LinearEndo {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[LinearEndo] {
        &self.entries
    }

    pub fn mul(&self, rhs: &EndoMatrix) -> EndoMatrix {
        assert_eq!(self.cols, rhs.rows, "endomorphism matrix shapes");
        let entries = (0..self.rows)
            .flat_map(|r| (0..rhs.cols).map(move |c| (r, c)))
            .map(|(r, c)| {
                let mut acc = self.get(r, 0).compose(rhs.get(0, c));
                for s in 1..self.cols {
                    acc = acc.add(&self.get(r, s).compose(rhs.get(s, c)));
                }
                acc
            })
            .collect();
        EndoMatrix { rows: self.rows, cols: rhs.cols, entries }
    }

    pub fn add(&self, rhs: &EndoMatrix) -> EndoMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        EndoMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &Scalar) -> EndoMatrix {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        EndoMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &EndoMatrix) {
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            x.add_scaled(c, y);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LinearEndo::is_zero)
    }

    /// Sub-block of size `rows × cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> EndoMatrix {
        let entries = (r0..r0 + rows)
            .flat_map(|r| (c0..c0 + cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        EndoMatrix { rows, cols, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_product() {
        let i2 = KMatrix::identity(q(), 2);
        assert_eq!(&i2 * &i2, i2);
    }

    #[test]
    fn idempotent_structure_matrix_squares_to_itself() {
        let x = KMatrix::from_i64(q(), &[[0, 0], [1, 1]]);
        assert_eq!(&x * &x, x);
    }

    #[test]
    fn truncated_shift_squared() {
        let y = KMatrix::from_i64(q(), &[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        let expected = KMatrix::from_i64(q(), &[[0, 0, 0], [0, 0, 0], [1, 0, 0]]);
        assert_eq!(&y * &y, expected);
    }

    #[test]
    fn product_errors() {
        let a = KMatrix::identity(q(), 2);
        let b = KMatrix::identity(q(), 3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        let c = KMatrix::identity(Field::Prime(2), 2);
        assert!(matches!(a.matmul(&c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn inverses() {
        let i3 = KMatrix::identity(q(), 3);
        assert_eq!(i3.inverse().unwrap(), i3);
        let m = KMatrix::from_i64(q(), &[[1, 0], [1, 1]]);
        assert_eq!(m.inverse().unwrap(), KMatrix::from_i64(q(), &[[1, 0], [-1, 1]]));
        let f2 = Field::Prime(2);
        let s = KMatrix::from_i64(f2, &[[0, 1], [1, 0]]);
        assert_eq!(s.inverse().unwrap(), s);
        let sing = KMatrix::from_i64(q(), &[[1, 2], [2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular { rank: 1, size: 2 })));
    }

    #[test]
    fn kernels() {
        assert!(KMatrix::identity(q(), 4).kernel_basis().is_empty());
        assert_eq!(KMatrix::zeros(q(), 2, 2).kernel_basis().len(), 2);
        let k = KMatrix::from_i64(q(), &[[1, 1], [1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q().from_i64(-1), q().from_i64(1)]]);
    }

    #[test]
    fn endo_matrix_composes_entries_in_order() {
        let f = Field::Rationals;
        let a = LinearEndo::from_i64(f, &[[0, 1], [0, 0]]);
        let b = LinearEndo::from_i64(f, &[[0, 0], [1, 0]]);
        let x = EndoMatrix::from_entries(1, 1, vec![a.clone()]);
        let y = EndoMatrix::from_entries(1, 1, vec![b.clone()]);
        assert_eq!(x.mul(&y).get(0, 0), &a.compose(&b));
        assert_ne!(a.compose(&b), b.compose(&a));
    }
}
