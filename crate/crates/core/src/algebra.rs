//! Finite-dimensional associative unital algebras presented by structure
//! constants.
//!
//! An algebra with ordered basis `b_0, …, b_{n-1}` is stored as the tensor
//! `λ[i][j][k]`, the coefficient of `b_k` in `b_i · b_j`, together with the
//! coordinates of its unit. All indices in this crate are 0-based.

use crate::error::{Error, Result};
use crate::linalg::{Field, KMatrix, Scalar};
use crate::report::{ReportBuilder, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDimAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    // flat, index (i * dim + j) * dim + k
    lambda: Vec<Scalar>,
    unit: Vec<Scalar>,
}

/// Coordinates of an element relative to the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement(pub Vec<Scalar>);

impl AlgElement {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

impl From<Vec<Scalar>> for AlgElement {
    fn from(v: Vec<Scalar>) -> Self {
        AlgElement(v)
    }
}

impl FiniteDimAlgebra {
    /// Builds an algebra from a nested `λ[i][j][k]` table. Only shapes and the
    /// field are checked here; use [`validate`](Self::validate) for the axioms.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedAlgebra("dimension must be positive".into()));
        }
        let malformed = |what: String| Error::MalformedAlgebra(what);
        if table.len() != n {
            return Err(malformed(format!("lambda has {} rows, expected {n}", table.len())));
        }
        let mut lambda = Vec::with_capacity(n * n * n);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != n {
                return Err(malformed(format!("lambda[{i}] has length {}, expected {n}", row.len())));
            }
            for (j, coeffs) in row.into_iter().enumerate() {
                if coeffs.len() != n {
                    return Err(malformed(format!(
                        "lambda[{i}][{j}] has length {}, expected {n}",
                        coeffs.len()
                    )));
                }
                lambda.extend(coeffs);
            }
        }
        if unit.len() != n {
            return Err(malformed(format!("unit has length {}, expected {n}", unit.len())));
        }
        Self::from_flat(field, labels, lambda, unit)
    }

    pub(crate) fn from_flat(
        field: Field,
        labels: Vec<String>,
        lambda: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = labels.len();
        debug_assert_eq!(lambda.len(), dim * dim * dim);
        if let Some(bad) = lambda.iter().chain(&unit).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: bad.field() });
        }
        Ok(Self { field, dim, labels, lambda, unit })
    }

    /// Builds an algebra from a closure giving the integer coordinates of
    /// `b_i · b_j`. Convenient for hard-coded examples.
    pub fn from_products(
        field: Field,
        labels: &[&str],
        unit: &[i64],
        product: impl Fn(usize, usize) -> Vec<i64>,
    ) -> Self {
        let n = labels.len();
        let mut lambda = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let coords = product(i, j);
                assert_eq!(coords.len(), n, "product coordinates");
                lambda.extend(coords.into_iter().map(|v| field.from_i64(v)));
            }
        }
        let unit = unit.iter().map(|&v| field.from_i64(v)).collect();
        Self::from_flat(field, labels.iter().map(|s| s.to_string()).collect(), lambda, unit)
            .expect("consistent field")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.lambda[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.lambda[start..start + self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub(crate) fn lambda_flat(&self) -> &[Scalar] {
        &self.lambda
    }

    /// Product of coordinate vectors, bilinear extension of `λ`.
    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, l) in out.iter_mut().zip(self.basis_product(i, j)) {
                    o.add_mul(&c, l);
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        for v in [x, y] {
            if v.0.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    context: "algebra element",
                    expected: self.dim,
                    found: v.0.len(),
                });
            }
        }
        Ok(AlgElement(self.mul_coords(&x.0, &y.0)))
    }

    /// Checks associativity `Σ_l λ_ij^l λ_lk^m = Σ_l λ_jk^l λ_il^m` and the
    /// two-sided unit identity `Σ_j α_j λ_ji^k = Σ_j α_j λ_ij^k = δ_ki`.
    pub fn validate(&self) -> VerificationReport {
        let n = self.dim;
        let mut report = ReportBuilder::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(self.basis_product(i, j), &self.basis_vector(k));
                    let right = self.mul_coords(&self.basis_vector(i), self.basis_product(j, k));
                    for m in 0..n {
                        if left[m] != right[m] {
                            report.fail(
                                "associativity",
                                &[i, j, k, m],
                                &left[m..=m],
                                &right[m..=m],
                            );
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            let left = self.mul_coords(&self.unit, &e);
            let right = self.mul_coords(&e, &self.unit);
            for k in 0..n {
                let delta = if k == i { self.field.one() } else { self.field.zero() };
                if left[k] != delta || right[k] != delta {
                    let bad = if left[k] != delta { &left[k] } else { &right[k] };
                    report.fail("unit", &[i, k], std::slice::from_ref(bad), &[delta]);
                }
            }
        }
        report.finish()
    }

    /// `[b_k]`: entry `(i, j)` is `λ_{kj}^i`, the matrix of left
    /// multiplication by `b_k`.
    pub fn structure_matrix(&self, k: usize) -> Result<KMatrix> {
        if k >= self.dim {
            return Err(Error::IndexOutOfRange { index: k, dim: self.dim });
        }
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.lambda(k, j, i).clone());
            }
        }
        KMatrix::new(self.field, n, n, data)
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_multiplication(&self, x: &[Scalar]) -> KMatrix {
        let n = self.dim;
        let mut m = KMatrix::zeros(self.field, n, n);
        for (k, xk) in x.iter().enumerate() {
            if !xk.is_zero() {
                m.add_scaled(xk, &self.structure_matrix(k).expect("index in range"));
            }
        }
        m
    }

    pub fn opposite(&self) -> FiniteDimAlgebra {
        let n = self.dim;
        let mut lambda = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                lambda.extend_from_slice(self.basis_product(j, i));
            }
        }
        FiniteDimAlgebra {
            field: self.field,
            dim: n,
            labels: self.labels.clone(),
            lambda,
            unit: self.unit.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// `B × C` with ordered basis `b_0, …, b_{n-1}, c_0, …, c_{m-1}`.
    pub fn direct_product(&self, other: &FiniteDimAlgebra) -> Result<FiniteDimAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        let (n, m) = (self.dim, other.dim);
        let d = n + m;
        let zero = self.field.zero();
        let mut lambda = vec![zero; d * d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    lambda[(i * d + j) * d + k] = self.lambda(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    lambda[((i + n) * d + j + n) * d + k + n] = other.lambda(i, j, k).clone();
                }
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        FiniteDimAlgebra::from_flat(self.field, labels, lambda, unit)
    }

    /// Inverse of [`direct_product`](Self::direct_product): recovers the two
    /// factors when the structure constants are block-diagonal.
    pub fn split_direct_product(&self, n: usize) -> Result<(FiniteDimAlgebra, FiniteDimAlgebra)> {
        let d = self.dim;
        if n == 0 || n >= d {
            return Err(Error::NotDirectProduct { n, m: d.saturating_sub(n) });
        }
        let m = d - n;
        let in_b = |x: usize| x < n;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let allowed = (in_b(i) && in_b(j) && in_b(k)) || (!in_b(i) && !in_b(j) && !in_b(k));
                    if !allowed && !self.lambda(i, j, k).is_zero() {
                        return Err(Error::NotDirectProduct { n, m });
                    }
                }
            }
        }
        let sub = |offset: usize, size: usize| {
            let mut lambda = Vec::with_capacity(size * size * size);
            for i in 0..size {
                for j in 0..size {
                    for k in 0..size {
                        lambda.push(self.lambda(i + offset, j + offset, k + offset).clone());
                    }
                }
            }
            let labels = self.labels[offset..offset + size].to_vec();
            let unit = self.unit[offset..offset + size].to_vec();
            FiniteDimAlgebra::from_flat(self.field, labels, lambda, unit)
        };
        Ok((sub(0, n)?, sub(n, m)?))
    }

    /// The algebra in a new basis `b'_i = Σ_u P_{ui} b_u`.
    pub fn rebase(&self, p: &KMatrix) -> Result<FiniteDimAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "basis change matrix",
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let p_inv = p.inverse()?;
        let new_basis: Vec<Vec<Scalar>> = (0..n).map(|i| p.column(i)).collect();
        let mut lambda = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul_coords(&new_basis[i], &new_basis[j]);
                lambda.extend(p_inv.apply(&prod));
            }
        }
        let unit = p_inv.apply(&self.unit);
        let labels = (0..n).map(|i| format!("{}'", self.labels[i])).collect();
        FiniteDimAlgebra::from_flat(self.field, labels, lambda, unit)
    }
}
