//! JSON schemas for algebras, candidates and matrices.
//!
//! Scalars are strings in canonical form (`"3"`, `"-1/2"`, residues in
//! `[0, p)`). Output is canonical: object keys sorted, see [`to_canonical`].
//!
//! ```json
//! {"field": {"kind": "Fp", "p": 2}, "dim": 2, "basis": ["e1", "e2"],
//!  "lambda": [[["1","0"],["0","0"]], [["0","0"],["0","1"]]], "unit": ["1","1"]}
//! ```
//!
//! `lambda[i][j][k]` is the coefficient of `b_k` in `b_i b_j`. A candidate is
//! `{"A": algebra, "B": algebra, "gamma": grid}` with `gamma[i][j]` the
//! `dim A × dim A` coordinate matrix of `γ_i^j`, rows first.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, KMatrix, LinearEndo, Scalar};
use crate::twisting::GammaFamily;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldJson {
    Q,
    Fp { p: u32 },
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldJson::Q => Ok(Field::Rationals),
            FieldJson::Fp { p } => Field::prime(*p),
        }
    }

    pub fn from_field(field: Field) -> Self {
        match field {
            Field::Rationals => FieldJson::Q,
            Field::Prime(p) => FieldJson::Fp { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub dim: usize,
    pub basis: Vec<String>,
    pub lambda: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    #[serde(rename = "A")]
    pub a: AlgebraJson,
    #[serde(rename = "B")]
    pub b: AlgebraJson,
    pub gamma: Vec<Vec<MatrixJson>>,
}

/// A matrix as rows of scalar strings.
pub type MatrixJson = Vec<Vec<String>>;

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn parse_vec(field: Field, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn parse_matrix(field: Field, m: &MatrixJson) -> Result<KMatrix> {
    let rows = m.iter().map(|r| parse_vec(field, r)).collect::<Result<Vec<_>>>()?;
    KMatrix::from_rows(field, rows)
}

pub fn matrix_json(m: &KMatrix) -> MatrixJson {
    m.to_strings()
}

impl AlgebraJson {
    pub fn from_algebra(alg: &FiniteDimAlgebra) -> Self {
        let d = alg.dim();
        let lambda = (0..d).map(|i| (0..d).map(|j| strings(alg.basis_product(i, j))).collect()).collect();
        Self {
            field: FieldJson::from_field(alg.field()),
            dim: d,
            basis: alg.labels().to_vec(),
            lambda,
            unit: strings(alg.unit()),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteDimAlgebra> {
        let field = self.field.to_field()?;
        if self.lambda.len() != self.dim {
            return Err(Error::DimensionMismatch { context: "lambda", expected: self.dim, found: self.lambda.len() });
        }
        let table = self
            .lambda
            .iter()
            .map(|row| row.iter().map(|v| parse_vec(field, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = parse_vec(field, &self.unit)?;
        FiniteDimAlgebra::new(field, self.basis.clone(), table, unit)
    }
}

impl CandidateJson {
    pub fn from_family(family: &GammaFamily) -> Self {
        Self {
            a: AlgebraJson::from_algebra(family.a()),
            b: AlgebraJson::from_algebra(family.b()),
            gamma: family.grid().iter().map(|row| row.iter().map(|g| matrix_json(g.matrix())).collect()).collect(),
        }
    }

    pub fn to_family(&self) -> Result<GammaFamily> {
        let a = Arc::new(self.a.to_algebra()?);
        let b = Arc::new(self.b.to_algebra()?);
        let grid = gamma_grid(a.field(), &self.gamma)?;
        GammaFamily::new(a, b, grid)
    }
}

pub fn gamma_grid(field: Field, grid: &[Vec<MatrixJson>]) -> Result<Vec<Vec<LinearEndo>>> {
    grid.iter()
        .map(|row| row.iter().map(|m| LinearEndo::new(parse_matrix(field, m)?)).collect())
        .collect()
}

/// Serializes with sorted object keys.
pub fn to_canonical<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let s = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
    s.map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
