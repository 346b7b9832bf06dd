use super::{chi_eval, pure_tensor, GammaFamily};
use crate::algebra::FiniteDimAlgebra;
use crate::linalg::Scalar;
use crate::report::{ReportBuilder, VerificationReport};

/// Definition-level verdict, independent of the γ identities.
///
/// Checks that `χ(1 ⊗ b) = b ⊗ 1` and `χ(a ⊗ 1) = 1 ⊗ a` on basis elements
/// (`chi_unit_a`, `chi_unit_b`), that `μ_χ` built literally from `χ` is
/// associative with unit `1 ⊗ 1` (`mu_associativity`, `mu_unit`), that
/// `i_A` and `i_B` are multiplicative (`i_a_morphism`, `i_b_morphism`) and
/// that `i_B(b) i_A(a) = b ⊗ a` (`i_b_i_a`).
pub fn oracle_check(family: &GammaFamily) -> VerificationReport {
    let (a, b) = (family.a(), family.b());
    let (n, d) = (b.dim(), a.dim());
    let mut report = ReportBuilder::new();

    for i in 0..n {
        let bi = b.basis_vector(i);
        let got = chi_eval(family, a.unit(), &bi).expect("shapes agree");
        report.expect_eq("chi_unit_a", &[i], &got, &pure_tensor(&bi, a.unit()));
    }
    for p in 0..d {
        let ap = a.basis_vector(p);
        let got = chi_eval(family, &ap, b.unit()).expect("shapes agree");
        report.expect_eq("chi_unit_b", &[p], &got, &pure_tensor(b.unit(), &ap));
    }

    let mu = assemble(family);
    let renamed = mu.validate();
    for f in renamed.failures {
        let tag = match f.condition.as_str() {
            "associativity" => "mu_associativity",
            _ => "mu_unit",
        };
        report.fail_text(tag, &f.witness, f.left, f.right);
    }

    let i_a = |x: &[Scalar]| pure_tensor(b.unit(), x);
    let i_b = |y: &[Scalar]| pure_tensor(y, a.unit());
    for p in 0..d {
        for q in 0..d {
            let left = mu.mul_coords(&i_a(&a.basis_vector(p)), &i_a(&a.basis_vector(q)));
            report.expect_eq("i_a_morphism", &[p, q], &left, &i_a(a.basis_product(p, q)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let left = mu.mul_coords(&i_b(&b.basis_vector(i)), &i_b(&b.basis_vector(j)));
            report.expect_eq("i_b_morphism", &[i, j], &left, &i_b(b.basis_product(i, j)));
        }
    }
    for i in 0..n {
        for p in 0..d {
            let (bi, ap) = (b.basis_vector(i), a.basis_vector(p));
            let left = mu.mul_coords(&i_b(&bi), &i_a(&ap));
            report.expect_eq("i_b_i_a", &[i, p], &left, &pure_tensor(&bi, &ap));
        }
    }
    report.finish()
}

/// `μ_χ = (μ_B ⊗ μ_A) ∘ (B ⊗ χ ⊗ A)` on basis pairs, as an unvalidated
/// algebra with unit `1_B ⊗ 1_A`.
fn assemble(family: &GammaFamily) -> FiniteDimAlgebra {
    let (a, b) = (family.a(), family.b());
    let (n, d) = (b.dim(), a.dim());
    let nd = n * d;
    let mut lambda = Vec::with_capacity(nd * nd * nd);
    for i in 0..n {
        for p in 0..d {
            for j in 0..n {
                for q in 0..d {
                    // b_i ⊗ χ(a_p ⊗ b_j) ⊗ a_q
                    let middle = chi_eval(family, &a.basis_vector(p), &b.basis_vector(j)).expect("shapes agree");
                    let mut out = vec![family.field().zero(); nd];
                    for l in 0..n {
                        for s in 0..d {
                            let c = &middle[l * d + s];
                            if c.is_zero() {
                                continue;
                            }
                            let left = b.basis_product(i, l);
                            let right = a.basis_product(s, q);
                            for (x, v) in pure_tensor(left, right).iter().enumerate() {
                                out[x].add_mul(c, v);
                            }
                        }
                    }
                    lambda.extend(out);
                }
            }
        }
    }
    let labels = (0..nd).map(|x| x.to_string()).collect();
    FiniteDimAlgebra::from_flat(family.field(), labels, lambda, pure_tensor(b.unit(), a.unit()))
        .expect("single field")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::algebras;
    use crate::linalg::{Field, LinearEndo};

    #[test]
    fn broken_unit_condition_fails_first_axiom() {
        let f = Field::Prime(3);
        let a = Arc::new(algebras::split(f, 2));
        let b = Arc::new(algebras::idempotent_line(f));
        let mut fam = GammaFamily::flip(a, b).unwrap();
        // δ(1) ≠ 0
        fam.set_gamma(1, 0, LinearEndo::from_i64(f, &[[1, 0], [0, 0]]));
        let r = oracle_check(&fam);
        assert!(r.has("chi_unit_a"));
    }

    #[test]
    fn flip_product_is_ordinary_tensor_product() {
        let f = Field::Rationals;
        let a = Arc::new(algebras::truncated(f, 2));
        let b = Arc::new(algebras::upper_triangular(f));
        let fam = GammaFamily::flip(a.clone(), b.clone()).unwrap();
        let mu = assemble(&fam);
        for i in 0..3 {
            for p in 0..2 {
                for j in 0..3 {
                    for q in 0..2 {
                        let x = mu.basis_product(i * 2 + p, j * 2 + q);
                        assert_eq!(x, &pure_tensor(b.basis_product(i, j), a.basis_product(p, q))[..]);
                    }
                }
            }
        }
    }
}
