use super::{check_conditions_direct, phi_hat, GammaFamily};
use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{AlgMatrix, KMatrix};
use crate::report::{ReportBuilder, VerificationReport};

/// A γ-family together with a flag recording that it passed verification.
/// The flag can only be raised by [`verify`](Self::verify).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingCandidate {
    family: GammaFamily,
    verified: bool,
}

impl TwistingCandidate {
    pub fn new(family: GammaFamily) -> Self {
        Self { family, verified: false }
    }

    /// Builds and verifies in one step, refusing families that fail.
    pub fn verified(family: GammaFamily) -> Result<Self> {
        let mut c = Self::new(family);
        if c.verify().ok {
            Ok(c)
        } else {
            Err(Error::Unverified)
        }
    }

    /// Runs [`check_conditions_direct`] and records the verdict.
    pub fn verify(&mut self) -> VerificationReport {
        let report = check_conditions_direct(&self.family);
        self.verified = report.ok;
        report
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn family(&self) -> &GammaFamily {
        &self.family
    }

    pub fn into_family(self) -> GammaFamily {
        self.family
    }

    /// Raises the flag without checking anything. Only meant for negative
    /// controls that exercise downstream consumers on corrupted input.
    #[doc(hidden)]
    pub fn assume_verified_unchecked(family: GammaFamily) -> Self {
        Self { family, verified: true }
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }
}

/// `B ⊗_χ A` with basis `b_i ⊗ a_p` at index `i·d + p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedTensorAlgebra {
    algebra: FiniteDimAlgebra,
    source: TwistingCandidate,
}

impl TwistedTensorAlgebra {
    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.algebra
    }

    pub fn candidate(&self) -> &TwistingCandidate {
        &self.source
    }

    pub fn index(&self, i: usize, p: usize) -> usize {
        i * self.source.family.d() + p
    }
}

/// Structure constants
/// `(b_i ⊗ a_p)(b_j ⊗ a_q) = Σ_{k,l} λ_il^k · b_k ⊗ γ_j^l(a_p) a_q`.
pub fn build_twisted_product(candidate: &TwistingCandidate) -> Result<TwistedTensorAlgebra> {
    candidate.require_verified()?;
    let family = &candidate.family;
    let (a, b) = (family.a(), family.b());
    let (n, d) = (b.dim(), a.dim());
    let nd = n * d;
    let zero = family.field().zero();
    let mut lambda = vec![zero; nd * nd * nd];
    for j in 0..n {
        for l in 0..n {
            for p in 0..d {
                let moved = family.gamma(j, l).matrix().column(p);
                for q in 0..d {
                    let tail = a.mul_coords(&moved, &a.basis_vector(q));
                    for i in 0..n {
                        let row = ((i * d + p) * nd + j * d + q) * nd;
                        for k in 0..n {
                            let c = b.lambda(i, l, k);
                            if c.is_zero() {
                                continue;
                            }
                            for (s, t) in tail.iter().enumerate() {
                                lambda[row + k * d + s].add_mul(c, t);
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = b
        .labels()
        .iter()
        .flat_map(|bl| a.labels().iter().map(move |al| format!("{bl}⊗{al}")))
        .collect();
    let unit = b.unit().iter().flat_map(|x| a.unit().iter().map(move |y| x * y)).collect();
    let algebra = FiniteDimAlgebra::from_flat(family.field(), labels, lambda, unit)?;
    Ok(TwistedTensorAlgebra { algebra, source: candidate.clone() })
}

/// `φ_χ` on the basis of `B ⊗_χ A`: entry `i·d + p` is
/// `φ_χ(b_i) φ_χ(a_p)` with `φ_χ(b_i) = [b_i] · 1_A` and `φ_χ(a) = φ̂_χ(a)`.
pub fn faithful_rep(candidate: &TwistingCandidate) -> Result<Vec<AlgMatrix>> {
    candidate.require_verified()?;
    let family = &candidate.family;
    let (a, b) = (family.a(), family.b());
    let mut out = Vec::with_capacity(b.dim() * a.dim());
    for i in 0..b.dim() {
        let phi_b = AlgMatrix::scalar(&b.structure_matrix(i)?, a);
        for p in 0..a.dim() {
            let phi_a = phi_hat(family, &a.basis_vector(p))?;
            out.push(phi_b.mul(&phi_a, a)?);
        }
    }
    Ok(out)
}

/// Checks that `φ_χ` is multiplicative on basis pairs (`faithful_mult`),
/// unital (`faithful_unit`) and injective (`faithful_injective`, the witness
/// is the kernel dimension).
pub fn verify_faithful(candidate: &TwistingCandidate) -> Result<VerificationReport> {
    let product = build_twisted_product(candidate)?;
    let images = faithful_rep(candidate)?;
    let (alg, a) = (product.algebra(), candidate.family.a());
    let n = candidate.family.n();
    let eval = |x: &[crate::linalg::Scalar]| {
        let mut acc = AlgMatrix::zeros(a, n, n);
        let mut flat = acc.flatten();
        for (c, m) in x.iter().zip(&images) {
            if c.is_zero() {
                continue;
            }
            for (f, v) in flat.iter_mut().zip(m.flatten()) {
                f.add_mul(c, &v);
            }
        }
        let d = a.dim();
        for (idx, chunk) in flat.chunks(d).enumerate() {
            acc.set(idx / n, idx % n, chunk.to_vec());
        }
        acc
    };
    let mut report = ReportBuilder::new();
    let nd = alg.dim();
    for x in 0..nd {
        for y in 0..nd {
            let left = eval(alg.basis_product(x, y));
            let right = images[x].mul(&images[y], a)?;
            report.expect_eq("faithful_mult", &[x, y], &left.flatten(), &right.flatten());
        }
    }
    let at_unit = eval(alg.unit());
    report.expect_eq("faithful_unit", &[], &at_unit.flatten(), &AlgMatrix::identity(a, n).flatten());

    let columns: Vec<Vec<_>> = images.iter().map(AlgMatrix::flatten).collect();
    let rows = columns[0].len();
    let mut data = Vec::with_capacity(rows * nd);
    for r in 0..rows {
        for col in &columns {
            data.push(col[r].clone());
        }
    }
    let matrix = KMatrix::new(alg.field(), rows, nd, data)?;
    let kernel = matrix.kernel_basis();
    if !kernel.is_empty() {
        report.fail_text("faithful_injective", &[kernel.len()], vec![kernel.len().to_string()], vec!["0".into()]);
    }
    Ok(report.finish())
}
