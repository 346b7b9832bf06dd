//! Algebra morphisms `f: B → C` by their transition matrices, the induced
//! morphism criterion between twisted products, and change of basis in `B`.
//!
//! Transition matrices are stored as `Z` with `Z[i][j] = ζ_j^i`, so that
//! column `j` holds the coordinates of `f(b_j)` in the basis of `C`.

use std::sync::Arc;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{AlgMatrix, EndoMatrix, KMatrix, LinearEndo, Scalar};
use crate::report::{ReportBuilder, VerificationReport};
use crate::twisting::{phi_hat, rho_hat, GammaFamily, TwistingCandidate};

/// A validated algebra morphism `B → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    source: Arc<FiniteDimAlgebra>,
    target: Arc<FiniteDimAlgebra>,
    zeta: KMatrix,
}

impl MorphismData {
    pub fn source(&self) -> &FiniteDimAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteDimAlgebra {
        &self.target
    }

    /// `m × n`, column `j` is `f(b_j)`.
    pub fn zeta(&self) -> &KMatrix {
        &self.zeta
    }

    pub fn apply(&self, b: &[Scalar]) -> Vec<Scalar> {
        self.zeta.apply(b)
    }

    /// `M_B^C(f)`, with entries `ζ · 1_A`.
    pub fn transition(&self, a: &FiniteDimAlgebra) -> AlgMatrix {
        AlgMatrix::scalar(&self.zeta, a)
    }

    /// `M̂_B^C(f)`, with entries `ζ · id`.
    pub fn transition_hat(&self, d: usize) -> EndoMatrix {
        EndoMatrix::scalar(&self.zeta, d)
    }
}

pub fn make_morphism(
    source: Arc<FiniteDimAlgebra>,
    target: Arc<FiniteDimAlgebra>,
    zeta: KMatrix,
) -> Result<MorphismData> {
    if source.field() != target.field() || zeta.field() != source.field() {
        return Err(Error::FieldMismatch { left: source.field(), right: target.field() });
    }
    if zeta.rows() != target.dim() {
        return Err(Error::DimensionMismatch { context: "transition matrix rows", expected: target.dim(), found: zeta.rows() });
    }
    if zeta.cols() != source.dim() {
        return Err(Error::DimensionMismatch { context: "transition matrix columns", expected: source.dim(), found: zeta.cols() });
    }
    if zeta.apply(source.unit()) != target.unit() {
        return Err(Error::NotMorphism { reason: "unit", witness: vec![] });
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let left = zeta.apply(source.basis_product(i, j));
            let right = target.mul_coords(&zeta.column(i), &zeta.column(j));
            if left != right {
                return Err(Error::NotMorphism { reason: "multiplicativity", witness: vec![i, j] });
            }
        }
    }
    Ok(MorphismData { source, target, zeta })
}

fn same_structure(x: &FiniteDimAlgebra, y: &FiniteDimAlgebra) -> bool {
    let d = x.dim();
    x.field() == y.field()
        && d == y.dim()
        && x.unit() == y.unit()
        && (0..d).all(|i| (0..d).all(|j| x.basis_product(i, j) == y.basis_product(i, j)))
}

/// Checks that `f ⊗ A: B ⊗_χ A → C ⊗_ϖ A` is an algebra morphism.
///
/// The matrix form `φ_ϖ(a) M = M φ_χ(a)` is checked on the basis of `A`
/// (`morphism_matrix [x]`), and independently the endomorphism form
/// `Σ_i ζ_i^j γ_k^i = Σ_u ζ_k^u γ̃_u^j` (`morphism_gamma [j, k]`). If the two
/// verdicts disagree a `form_disagreement` failure is added.
pub fn check_induced_morphism(
    chi: &TwistingCandidate,
    varpi: &TwistingCandidate,
    f: &MorphismData,
) -> Result<VerificationReport> {
    chi.require_verified()?;
    varpi.require_verified()?;
    let (chi, varpi) = (chi.family(), varpi.family());
    if !same_structure(chi.a(), varpi.a()) {
        return Err(Error::AmbientMismatch);
    }
    if !same_structure(chi.b(), f.source()) || !same_structure(varpi.b(), f.target()) {
        return Err(Error::WrongShape("morphism does not connect the two algebras"));
    }
    let a = chi.a();
    let m_mat = f.transition(a);

    let mut matrix_form = ReportBuilder::new();
    for x in 0..a.dim() {
        let ax = a.basis_vector(x);
        let left = phi_hat(varpi, &ax)?.mul(&m_mat, a)?;
        let right = m_mat.mul(&phi_hat(chi, &ax)?, a)?;
        matrix_form.expect_eq("morphism_matrix", &[x], &left.flatten(), &right.flatten());
    }
    let matrix_form = matrix_form.finish();

    let mut gamma_form = ReportBuilder::new();
    let z = f.zeta();
    let (field, d) = (chi.field(), chi.d());
    for j in 0..varpi.n() {
        for k in 0..chi.n() {
            let mut left = LinearEndo::zero(field, d);
            for i in 0..chi.n() {
                left.add_scaled(z.get(j, i), chi.gamma(k, i));
            }
            let mut right = LinearEndo::zero(field, d);
            for u in 0..varpi.n() {
                right.add_scaled(z.get(u, k), varpi.gamma(u, j));
            }
            gamma_form.expect_eq("morphism_gamma", &[j, k], left.matrix().data(), right.matrix().data());
        }
    }
    let gamma_form = gamma_form.finish();

    let disagree = matrix_form.ok != gamma_form.ok;
    let mut report = matrix_form.merge(gamma_form);
    if disagree {
        let mut extra = ReportBuilder::new();
        extra.fail_text("form_disagreement", &[], vec![], vec![]);
        report = report.merge(extra.finish());
    }
    Ok(report)
}

fn rho_at(family: &GammaFamily, coords: &[Scalar]) -> Result<EndoMatrix> {
    let n = family.n();
    let mut acc = EndoMatrix::zeros(family.field(), family.d(), n, n);
    for (k, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            acc.add_scaled(c, &rho_hat(family, k)?);
        }
    }
    Ok(acc)
}

fn endo_data(m: &EndoMatrix) -> Vec<Scalar> {
    m.entries().iter().flat_map(|e| e.matrix().data().iter().cloned()).collect()
}

/// `ρ̂_ϖ(f(b_k)) M̂ = M̂ ρ̂_χ(b_k)` for every basis element (`rho_morphism [k]`).
pub fn check_rho_morphism(chi: &GammaFamily, varpi: &GammaFamily, f: &MorphismData) -> Result<VerificationReport> {
    let m_hat = f.transition_hat(chi.d());
    let mut report = ReportBuilder::new();
    for k in 0..chi.n() {
        let image = f.apply(&chi.b().basis_vector(k));
        let left = rho_at(varpi, &image)?.mul(&m_hat);
        let right = m_hat.mul(&rho_hat(chi, k)?);
        report.expect_eq("rho_morphism", &[k], &endo_data(&left), &endo_data(&right));
    }
    Ok(report.finish())
}

/// The same map `χ` expressed in the basis `b'_i = Σ_u P_ui b_u`:
/// `γ'_i^j = Σ_{u,v} (P⁻¹)_jv γ_u^v P_ui`. The returned family carries the
/// rebased algebra `B'`.
pub fn rebase(family: &GammaFamily, p: &KMatrix) -> Result<GammaFamily> {
    let n = family.n();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch { context: "change of basis matrix", expected: n, found: p.rows().max(p.cols()) });
    }
    let b_new = family.b().rebase(p)?;
    let p_inv = p.inverse()?;
    let (field, d) = (family.field(), family.d());
    let mut grid = vec![vec![LinearEndo::zero(field, d); n]; n];
    for u in 0..n {
        for v in 0..n {
            let g = family.gamma(u, v);
            if g.is_zero() {
                continue;
            }
            for i in 0..n {
                let pui = p.get(u, i);
                if pui.is_zero() {
                    continue;
                }
                for (j, slot) in grid[i].iter_mut().enumerate() {
                    let c = pui * p_inv.get(j, v);
                    if !c.is_zero() {
                        slot.add_scaled(&c, g);
                    }
                }
            }
        }
    }
    GammaFamily::new(family.a_arc().clone(), Arc::new(b_new), grid)
}

/// Rebases a candidate; the result keeps the verdict of the input.
pub fn rebase_candidate(candidate: &TwistingCandidate, p: &KMatrix) -> Result<TwistingCandidate> {
    let family = rebase(candidate.family(), p)?;
    let mut out = TwistingCandidate::new(family);
    if candidate.is_verified() {
        out.verify();
    }
    Ok(out)
}

/// The change-of-basis identities with `M = M_B^{B'}(id) = P⁻¹`:
/// `φ'(a_x) = M φ(a_x) M⁻¹` (`phi_conjugation [x]`) and
/// `ρ̂'(b'_k) = M̂ ρ̂(b'_k) M̂⁻¹` (`rho_conjugation [k]`), where the right-hand
/// side evaluates `ρ̂` at `b'_k = Σ_u P_uk b_u` in the old basis.
pub fn check_conjugation(family: &GammaFamily, p: &KMatrix) -> Result<VerificationReport> {
    let rebased = rebase(family, p)?;
    let a = family.a();
    let m = p.inverse()?;
    let (m_alg, m_inv_alg) = (AlgMatrix::scalar(&m, a), AlgMatrix::scalar(p, a));
    let d = family.d();
    let (m_hat, m_inv_hat) = (EndoMatrix::scalar(&m, d), EndoMatrix::scalar(p, d));
    let mut report = ReportBuilder::new();
    for x in 0..a.dim() {
        let ax = a.basis_vector(x);
        let left = phi_hat(&rebased, &ax)?;
        let right = m_alg.mul(&phi_hat(family, &ax)?, a)?.mul(&m_inv_alg, a)?;
        report.expect_eq("phi_conjugation", &[x], &left.flatten(), &right.flatten());
    }
    for k in 0..family.n() {
        let left = rho_hat(&rebased, k)?;
        let right = m_hat.mul(&rho_at(family, &p.column(k))?).mul(&m_inv_hat);
        report.expect_eq("rho_conjugation", &[k], &endo_data(&left), &endo_data(&right));
    }
    Ok(report.finish())
}
