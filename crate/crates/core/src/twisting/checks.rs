use super::GammaFamily;
use crate::error::{Error, Result};
use crate::linalg::{AlgMatrix, EndoMatrix, LinearEndo, Scalar};
use crate::report::{ReportBuilder, VerificationReport};

fn delta(family: &GammaFamily, i: usize, j: usize) -> Scalar {
    if i == j {
        family.field().one()
    } else {
        family.field().zero()
    }
}

/// Checks the four identities characterizing twisting maps:
///
/// 1. `γ_i^j(1) = δ_ij · 1`
/// 2. `γ_i^k(a a') = Σ_j γ_j^k(a) γ_i^j(a')`
/// 3. `α_k · id = Σ_i α_i γ_i^k`
/// 4. `Σ_k λ_ij^k γ_k^m = Σ_{k,l} λ_kl^m γ_j^l ∘ γ_i^k`
///
/// Failures are tagged `cond1` … `cond4`. Witnesses are `[i, j]`,
/// `[i, k, p, q]` (with `a = a_p`, `a' = a_q`), `[k]` and `[i, j, m]`.
pub fn check_conditions_direct(family: &GammaFamily) -> VerificationReport {
    let mut report = ReportBuilder::new();
    direct_12(family, &mut report);
    direct_34(family, &mut report);
    report.finish()
}

pub(crate) fn direct_12(family: &GammaFamily, report: &mut ReportBuilder) {
    let (a, n, d) = (family.a(), family.n(), family.d());
    let one = a.unit();
    for i in 0..n {
        for j in 0..n {
            let left = family.gamma(i, j).apply(one);
            let right: Vec<Scalar> = one.iter().map(|u| u * &delta(family, i, j)).collect();
            report.expect_eq("cond1", &[i, j], &left, &right);
        }
    }
    // images[j][k][p] = γ_j^k(a_p)
    let images: Vec<Vec<Vec<Scalar>>> = (0..n * n)
        .map(|x| (0..d).map(|p| family.gammas()[x].matrix().column(p)).collect())
        .collect();
    for i in 0..n {
        for k in 0..n {
            for p in 0..d {
                for q in 0..d {
                    let left = family.gamma(i, k).apply(a.basis_product(p, q));
                    let mut right = a.zero_vector();
                    for j in 0..n {
                        let prod = a.mul_coords(&images[j * n + k][p], &images[i * n + j][q]);
                        for (r, v) in right.iter_mut().zip(prod) {
                            *r = &*r + &v;
                        }
                    }
                    report.expect_eq("cond2", &[i, k, p, q], &left, &right);
                }
            }
        }
    }
}

pub(crate) fn direct_34(family: &GammaFamily, report: &mut ReportBuilder) {
    let (b, n, d, field) = (family.b(), family.n(), family.d(), family.field());
    let alpha = b.unit();
    for k in 0..n {
        let left = LinearEndo::identity(field, d).scale(&alpha[k]);
        let mut right = LinearEndo::zero(field, d);
        for (i, ai) in alpha.iter().enumerate() {
            right.add_scaled(ai, family.gamma(i, k));
        }
        report.expect_eq("cond3", &[k], left.matrix().data(), right.matrix().data());
    }
    // compositions[j][l][i][k] = γ_j^l ∘ γ_i^k, computed once
    let comp: Vec<LinearEndo> = (0..n * n)
        .flat_map(|jl| (0..n * n).map(move |ik| (jl, ik)))
        .map(|(jl, ik)| family.gammas()[jl].compose(&family.gammas()[ik]))
        .collect();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut left = LinearEndo::zero(field, d);
                for k in 0..n {
                    left.add_scaled(b.lambda(i, j, k), family.gamma(k, m));
                }
                let mut right = LinearEndo::zero(field, d);
                for k in 0..n {
                    for l in 0..n {
                        let c = b.lambda(k, l, m);
                        if !c.is_zero() {
                            right.add_scaled(c, &comp[(j * n + l) * n * n + i * n + k]);
                        }
                    }
                }
                report.expect_eq("cond4", &[i, j, m], left.matrix().data(), right.matrix().data());
            }
        }
    }
}

/// `ρ̂_χ(b_k)`: the `n × n` matrix over `End_K(A)` with entry
/// `(r, c) = Σ_l λ_{cl}^r γ_k^l`, that is `Σ_l γ_k^l · [b_l]` read in `B^op`.
pub fn rho_hat(family: &GammaFamily, k: usize) -> Result<EndoMatrix> {
    let n = family.n();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    Ok(rho_hat_with(family, family.b().lambda_flat(), k))
}

/// `ρ̂` computed from an explicit structure tensor of `B`; the search harness
/// uses this to inject faults into one verification route only.
pub(crate) fn rho_hat_with(family: &GammaFamily, lambda: &[Scalar], k: usize) -> EndoMatrix {
    let (n, d, field) = (family.n(), family.d(), family.field());
    let mut m = EndoMatrix::zeros(field, d, n, n);
    for r in 0..n {
        for c in 0..n {
            let entry = m.get_mut(r, c);
            for l in 0..n {
                let coeff = &lambda[(c * n + l) * n + r];
                if !coeff.is_zero() {
                    entry.add_scaled(coeff, family.gamma(k, l));
                }
            }
        }
    }
    m
}

/// Checks that `b^op ↦ ρ̂_χ(b^op)` is a unital representation of `B^op`:
/// `Σ_k λ_ji^k ρ̂(b_k) = ρ̂(b_i) ρ̂(b_j)` (tag `rho_mult`, witness `[i, j]`)
/// and `Σ_k α_k ρ̂(b_k) = I` (tag `rho_unit`).
pub fn check_rho_representation(family: &GammaFamily) -> VerificationReport {
    check_rho_with(family, family.b().lambda_flat())
}

pub(crate) fn check_rho_with(family: &GammaFamily, lambda: &[Scalar]) -> VerificationReport {
    let (n, d, field) = (family.n(), family.d(), family.field());
    let rho: Vec<EndoMatrix> = (0..n).map(|k| rho_hat_with(family, lambda, k)).collect();
    let mut report = ReportBuilder::new();
    for i in 0..n {
        for j in 0..n {
            let mut left = EndoMatrix::zeros(field, d, n, n);
            for (k, rk) in rho.iter().enumerate() {
                let c = &lambda[(j * n + i) * n + k];
                if !c.is_zero() {
                    left.add_scaled(c, rk);
                }
            }
            let right = rho[i].mul(&rho[j]);
            if left != right {
                report.fail("rho_mult", &[i, j], &flatten_endo(&left), &flatten_endo(&right));
            }
        }
    }
    let mut sum = EndoMatrix::zeros(field, d, n, n);
    for (k, rk) in rho.iter().enumerate() {
        sum.add_scaled(&family.b().unit()[k], rk);
    }
    let id = EndoMatrix::identity(field, d, n);
    if sum != id {
        report.fail("rho_unit", &[], &flatten_endo(&sum), &flatten_endo(&id));
    }
    report.finish()
}

fn flatten_endo(m: &EndoMatrix) -> Vec<Scalar> {
    m.entries().iter().flat_map(|e| e.matrix().data().iter().cloned()).collect()
}

/// `φ̂_χ(a)`: the `n × n` matrix over `A` with entry `(j, k) = γ_k^j(a)`.
pub fn phi_hat(family: &GammaFamily, a: &[Scalar]) -> Result<AlgMatrix> {
    let (n, d) = (family.n(), family.d());
    if a.len() != d {
        return Err(Error::DimensionMismatch { context: "element of A", expected: d, found: a.len() });
    }
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            entries.push(family.gamma(k, j).apply(a));
        }
    }
    AlgMatrix::new(family.field(), n, n, d, entries)
}

/// Checks that `a ↦ φ̂_χ(a)` is a unital algebra map `A → M_n(A)`:
/// `φ̂(a_p a_q) = φ̂(a_p) φ̂(a_q)` (tag `phi_mult`, witness `[p, q]`) and
/// `φ̂(1) = I` (tag `phi_unit`).
pub fn check_phi_representation(family: &GammaFamily) -> VerificationReport {
    let (a, n, d) = (family.a(), family.n(), family.d());
    let phi: Vec<AlgMatrix> = (0..d)
        .map(|p| phi_hat(family, &a.basis_vector(p)).expect("basis vector has length d"))
        .collect();
    let mut report = ReportBuilder::new();
    for p in 0..d {
        for q in 0..d {
            let left = phi_hat(family, a.basis_product(p, q)).expect("product has length d");
            let right = phi[p].mul(&phi[q], a).expect("same ambient algebra");
            report.expect_eq("phi_mult", &[p, q], &left.flatten(), &right.flatten());
        }
    }
    let at_one = phi_hat(family, a.unit()).expect("unit has length d");
    let id = AlgMatrix::identity(a, n);
    report.expect_eq("phi_unit", &[], &at_one.flatten(), &id.flatten());
    report.finish()
}
