//! Twisting maps `χ: A ⊗ B → B ⊗ A` presented by their γ-family.
//!
//! With bases `a_0, …, a_{d-1}` of `A` and `b_0, …, b_{n-1}` of `B`, a linear
//! map `χ` is determined by the endomorphisms `γ_i^j` of `A` through
//!
//! ```text
//! χ(a ⊗ b_i) = Σ_j b_j ⊗ γ_i^j(a).
//! ```
//!
//! Elements of `B ⊗ A` are coordinate vectors of length `n·d`, where
//! `b_i ⊗ a_p` sits at index `i·d + p`.
//!
//! Three independent verification routes are provided:
//!
//! * [`check_conditions_direct`] evaluates the four identities on the γ's;
//! * [`check_rho_representation`] and [`check_phi_representation`] test that
//!   `ρ̂_χ` and `φ̂_χ` are matrix representations;
//! * [`oracle_check`] assembles `μ_χ = (μ_B ⊗ μ_A) ∘ (B ⊗ χ ⊗ A)` and checks
//!   the definition directly.
//!
//! Identities quantified over elements of `A` are checked on basis elements
//! only, which suffices by multilinearity.

mod checks;
mod oracle;
mod product;

use std::sync::Arc;

pub use checks::{
    check_conditions_direct, check_phi_representation, check_rho_representation, phi_hat,
    rho_hat,
};
pub(crate) use checks::check_rho_with;
pub use oracle::oracle_check;
pub use product::{
    build_twisted_product, faithful_rep, verify_faithful, TwistedTensorAlgebra, TwistingCandidate,
};

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, LinearEndo, Scalar};

/// The grid `γ_i^j` of endomorphisms of `A` indexed by the basis of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFamily {
    a: Arc<FiniteDimAlgebra>,
    b: Arc<FiniteDimAlgebra>,
    // index i * n + j holds γ_i^j
    gamma: Vec<LinearEndo>,
}

impl GammaFamily {
    /// `grid[i][j]` is `γ_i^j`.
    pub fn new(
        a: Arc<FiniteDimAlgebra>,
        b: Arc<FiniteDimAlgebra>,
        grid: Vec<Vec<LinearEndo>>,
    ) -> Result<Self> {
        let n = b.dim();
        if grid.len() != n {
            return Err(Error::DimensionMismatch { context: "gamma rows", expected: n, found: grid.len() });
        }
        let mut gamma = Vec::with_capacity(n * n);
        for row in grid {
            if row.len() != n {
                return Err(Error::DimensionMismatch { context: "gamma columns", expected: n, found: row.len() });
            }
            gamma.extend(row);
        }
        Self::from_flat(a, b, gamma)
    }

    /// Row-major flat grid: `gamma[i * n + j]` is `γ_i^j`.
    pub fn from_flat(a: Arc<FiniteDimAlgebra>, b: Arc<FiniteDimAlgebra>, gamma: Vec<LinearEndo>) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch { left: a.field(), right: b.field() });
        }
        let n = b.dim();
        if gamma.len() != n * n {
            return Err(Error::DimensionMismatch { context: "gamma entries", expected: n * n, found: gamma.len() });
        }
        for g in &gamma {
            if g.field() != a.field() {
                return Err(Error::FieldMismatch { left: a.field(), right: g.field() });
            }
            if g.dim() != a.dim() {
                return Err(Error::DimensionMismatch { context: "gamma endomorphism", expected: a.dim(), found: g.dim() });
            }
        }
        Ok(Self { a, b, gamma })
    }

    /// The flip `a ⊗ b ↦ b ⊗ a`, i.e. `γ_i^j = δ_ij · id`.
    pub fn flip(a: Arc<FiniteDimAlgebra>, b: Arc<FiniteDimAlgebra>) -> Result<Self> {
        let (n, d, field) = (b.dim(), a.dim(), a.field());
        let gamma = (0..n * n)
            .map(|x| if x / n == x % n { LinearEndo::identity(field, d) } else { LinearEndo::zero(field, d) })
            .collect();
        Self::from_flat(a, b, gamma)
    }

    pub fn a(&self) -> &FiniteDimAlgebra {
        &self.a
    }

    pub fn b(&self) -> &FiniteDimAlgebra {
        &self.b
    }

    pub fn a_arc(&self) -> &Arc<FiniteDimAlgebra> {
        &self.a
    }

    pub fn b_arc(&self) -> &Arc<FiniteDimAlgebra> {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `dim B`.
    pub fn n(&self) -> usize {
        self.b.dim()
    }

    /// `dim A`.
    pub fn d(&self) -> usize {
        self.a.dim()
    }

    /// `γ_i^j`.
    pub fn gamma(&self, i: usize, j: usize) -> &LinearEndo {
        &self.gamma[i * self.n() + j]
    }

    pub fn set_gamma(&mut self, i: usize, j: usize, endo: LinearEndo) {
        assert_eq!(endo.dim(), self.d(), "gamma endomorphism size");
        let n = self.n();
        self.gamma[i * n + j] = endo;
    }

    pub fn gammas(&self) -> &[LinearEndo] {
        &self.gamma
    }

    pub fn grid(&self) -> Vec<Vec<LinearEndo>> {
        self.gamma.chunks(self.n()).map(<[_]>::to_vec).collect()
    }

    /// Same γ's over different (but equally sized) algebras.
    pub fn with_algebras(&self, a: Arc<FiniteDimAlgebra>, b: Arc<FiniteDimAlgebra>) -> Result<Self> {
        Self::from_flat(a, b, self.gamma.clone())
    }

    pub fn is_flip(&self) -> bool {
        let n = self.n();
        self.gamma
            .iter()
            .enumerate()
            .all(|(x, g)| if x / n == x % n { g.is_identity() } else { g.is_zero() })
    }
}

/// `χ(a ⊗ b)` as a coordinate vector on `B ⊗ A`.
pub fn chi_eval(family: &GammaFamily, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    let (n, d) = (family.n(), family.d());
    if a.len() != d {
        return Err(Error::DimensionMismatch { context: "element of A", expected: d, found: a.len() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { context: "element of B", expected: n, found: b.len() });
    }
    let mut out = vec![family.field().zero(); n * d];
    for (i, bi) in b.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        for j in 0..n {
            let image = family.gamma(i, j).apply(a);
            for (o, v) in out[j * d..(j + 1) * d].iter_mut().zip(&image) {
                o.add_mul(bi, v);
            }
        }
    }
    Ok(out)
}

/// Coordinates of `b ⊗ a` in `B ⊗ A`.
pub fn pure_tensor(b: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
    b.iter().flat_map(|x| a.iter().map(move |y| x * y)).collect()
}
