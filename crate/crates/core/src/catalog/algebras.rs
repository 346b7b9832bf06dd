//! The base algebras used throughout the examples.

use crate::algebra::FiniteDimAlgebra;
use crate::linalg::{Field, Scalar};

/// `K^n` with orthogonal idempotents `e_i e_j = δ_ij e_i`.
pub fn split(field: Field, n: usize) -> FiniteDimAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    FiniteDimAlgebra::from_products(field, &labels, &vec![1; n], |i, j| {
        (0..n).map(|k| i64::from(i == j && j == k)).collect()
    })
}

/// `K[X]/⟨X² − X⟩` with basis `{1, X}`.
pub fn idempotent_line(field: Field) -> FiniteDimAlgebra {
    quadratic(field, field.one(), field.zero())
}

/// `K[X]/⟨X² − αX + β⟩` with basis `{1, X}`, so `X² = αX − β`.
pub fn quadratic(field: Field, alpha: Scalar, beta: Scalar) -> FiniteDimAlgebra {
    let (z, o) = (field.zero(), field.one());
    let table = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![-&beta, alpha]],
    ];
    FiniteDimAlgebra::new(field, vec!["1".into(), "X".into()], table, vec![o, z])
        .expect("well-formed quadratic algebra")
}

/// `K[Y]/⟨Y^n⟩` with basis `{1, Y, …, Y^{n-1}}`.
pub fn truncated(field: Field, n: usize) -> FiniteDimAlgebra {
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "Y".to_string(),
            _ => format!("Y^{i}"),
        })
        .collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    FiniteDimAlgebra::from_products(field, &labels, &unit, |i, j| {
        (0..n).map(|k| i64::from(i + j == k)).collect()
    })
}

/// Upper triangular `2 × 2` matrices with basis `e11, e12, e22`.
pub fn upper_triangular(field: Field) -> FiniteDimAlgebra {
    // (row, col) of each basis matrix unit
    const UNITS: [(usize, usize); 3] = [(0, 0), (0, 1), (1, 1)];
    FiniteDimAlgebra::from_products(field, &["e11", "e12", "e22"], &[1, 0, 1], |i, j| {
        let (a, b) = UNITS[i];
        let (c, d) = UNITS[j];
        (0..3).map(|k| i64::from(b == c && UNITS[k] == (a, d))).collect()
    })
}
