//! Twisting with a two-dimensional `B = K[X]/⟨X² − αX + β⟩`.
//!
//! With basis `{1, X}` the γ-family is `γ_0^0 = id`, `γ_0^1 = 0`,
//! `γ_1^0 = δ`, `γ_1^1 = f`, so that `χ(a ⊗ X) = 1 ⊗ δ(a) + X ⊗ f(a)`.

use std::sync::Arc;

use super::algebras;
use super::maps::{is_multiplicative, is_twisted_derivation, is_unital};
use crate::algebra::FiniteDimAlgebra;
use crate::linalg::{LinearEndo, Scalar};
use crate::twisting::{GammaFamily, TwistingCandidate};

fn family(a: Arc<FiniteDimAlgebra>, b: FiniteDimAlgebra, f: LinearEndo, delta: LinearEndo) -> TwistingCandidate {
    let field = a.field();
    let d = a.dim();
    let grid = vec![
        vec![LinearEndo::identity(field, d), LinearEndo::zero(field, d)],
        vec![delta, f],
    ];
    TwistingCandidate::new(GammaFamily::new(a, Arc::new(b), grid).expect("endomorphisms of A"))
}

/// Non-commutative duplicate over `B = K[X]/⟨X² − X⟩`.
pub fn make_ncd(a: Arc<FiniteDimAlgebra>, f: LinearEndo, delta: LinearEndo) -> TwistingCandidate {
    let b = algebras::idempotent_line(a.field());
    family(a, b, f, delta)
}

/// Quantum duplicate over `B = K[X]/⟨X² − αX + β⟩`.
pub fn make_quantum_duplicate(
    a: Arc<FiniteDimAlgebra>,
    alpha: Scalar,
    beta: Scalar,
    f: LinearEndo,
    delta: LinearEndo,
) -> TwistingCandidate {
    let b = algebras::quadratic(a.field(), alpha, beta);
    family(a, b, f, delta)
}

/// The seven conditions for a non-commutative duplicate, in order:
///
/// 1. `δ ∘ δ = δ`
/// 2. `f ∘ δ + δ ∘ f + f ∘ f = f`
/// 3. `(δ + f)² = δ + f`
/// 4. `δ(1) = 0`
/// 5. `f(1) = 1`
/// 6. `δ(ab) = a δ(b) + δ(a) f(b)`
/// 7. `f(ab) = f(a) f(b)`
///
/// The first three say that `ρ̂` is a representation, the last four that
/// `φ̂` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NcdConditions {
    pub c: [bool; 7],
}

impl NcdConditions {
    pub fn evaluate(a: &FiniteDimAlgebra, f: &LinearEndo, delta: &LinearEndo) -> Self {
        let sum = delta.add(f);
        let c = [
            delta.compose(delta) == *delta,
            f.compose(delta).add(&delta.compose(f)).add(&f.compose(f)) == *f,
            sum.compose(&sum) == sum,
            delta.apply(a.unit()).iter().all(Scalar::is_zero),
            is_unital(a, f),
            is_twisted_derivation(a, delta, f),
            is_multiplicative(a, f),
        ];
        Self { c }
    }

    /// Condition `k`, numbered from 1.
    pub fn get(&self, k: usize) -> bool {
        self.c[k - 1]
    }

    pub fn all(&self) -> bool {
        self.c.iter().all(|&x| x)
    }

    /// The closed-form restatement: `f` an endomorphism, `δ` an
    /// `(id, f)`-derivation and `f = f² + δ∘f + f∘δ`. It omits `δ ∘ δ = δ`.
    pub fn summary(&self) -> bool {
        self.get(5) && self.get(7) && self.get(6) && self.get(2)
    }
}

/// The conditions for a quantum duplicate, with `P(t) = t² − αt + β`:
///
/// 1. `δ ∘ δ − β f ∘ f = α δ − β id`
/// 2. `δ ∘ f + f ∘ δ + α f ∘ f = α f`
/// 3. `f(1) = 1`
/// 4. `δ(ab) = a δ(b) + δ(a) f(b)`
/// 5. `f(ab) = f(a) f(b)`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumConditions {
    pub c: [bool; 5],
    /// `P(δ) = β f²`
    pub p_of_delta: bool,
    /// `f ∘ δ + δ ∘ f = α (f − f²)`
    pub anticommutator: bool,
}

impl QuantumConditions {
    pub fn evaluate(
        a: &FiniteDimAlgebra,
        alpha: &Scalar,
        beta: &Scalar,
        f: &LinearEndo,
        delta: &LinearEndo,
    ) -> Self {
        let id = LinearEndo::identity(a.field(), a.dim());
        let dd = delta.compose(delta);
        let ff = f.compose(f);
        let fd_df = f.compose(delta).add(&delta.compose(f));
        let c = [
            dd.sub(&ff.scale(beta)) == delta.scale(alpha).sub(&id.scale(beta)),
            fd_df.add(&ff.scale(alpha)) == f.scale(alpha),
            is_unital(a, f),
            is_twisted_derivation(a, delta, f),
            is_multiplicative(a, f),
        ];
        let p_of_delta = dd.sub(&delta.scale(alpha)).add(&id.scale(beta)) == ff.scale(beta);
        let anticommutator = fd_df == f.sub(&ff).scale(alpha);
        Self { c, p_of_delta, anticommutator }
    }

    pub fn get(&self, k: usize) -> bool {
        self.c[k - 1]
    }

    pub fn all(&self) -> bool {
        self.c.iter().all(|&x| x)
    }

    /// `f` an endomorphism, `δ` an `(id, f)`-derivation, `P(δ) = β f²` and
    /// `f ∘ δ + δ ∘ f = α (f − f²)`.
    pub fn summary(&self) -> bool {
        self.get(3) && self.get(5) && self.get(4) && self.p_of_delta && self.anticommutator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, KMatrix};
    use crate::twisting::{faithful_rep, phi_hat, rho_hat};

    #[test]
    fn identity_and_zero_give_the_flip() {
        let q = Field::Rationals;
        let a = Arc::new(algebras::split(q, 2));
        let mut c = make_ncd(a.clone(), LinearEndo::identity(q, 2), LinearEndo::zero(q, 2));
        assert!(c.family().is_flip());
        assert!(c.verify().ok);
        assert!(NcdConditions::evaluate(&a, &LinearEndo::identity(q, 2), &LinearEndo::zero(q, 2)).all());
    }

    #[test]
    fn delta_not_vanishing_on_one_is_rejected() {
        let q = Field::Rationals;
        let a = Arc::new(algebras::split(q, 2));
        let f = LinearEndo::identity(q, 2);
        let delta = LinearEndo::from_i64(q, &[[1, 0], [0, 0]]);
        let conds = NcdConditions::evaluate(&a, &f, &delta);
        assert!(!conds.get(4));
        let mut c = make_ncd(a, f, delta);
        assert!(!c.verify().ok);
    }

    #[test]
    fn quantum_duplicate_with_swap() {
        let q = Field::Rationals;
        let a = Arc::new(algebras::split(q, 2));
        let swap = LinearEndo::from_i64(q, &[[0, 1], [1, 0]]);
        let (alpha, beta) = (q.zero(), q.from_i64(-1));
        let ok = QuantumConditions::evaluate(&a, &alpha, &beta, &swap, &LinearEndo::zero(q, 2));
        assert!(ok.summary() && ok.all());
        let mut c = make_quantum_duplicate(a.clone(), alpha.clone(), beta.clone(), swap.clone(), LinearEndo::zero(q, 2));
        assert!(c.verify().ok);

        let bad = QuantumConditions::evaluate(&a, &alpha, &beta, &swap, &swap);
        assert!(!bad.anticommutator);
        let mut c = make_quantum_duplicate(a, alpha, beta, swap.clone(), swap);
        assert!(!c.verify().ok);
    }

    #[test]
    fn quantum_rho_hat_and_structure_matrix() {
        let q = Field::Rationals;
        let a = Arc::new(algebras::split(q, 2));
        let f = LinearEndo::from_i64(q, &[[1, 0], [1, 0]]);
        let delta = LinearEndo::from_i64(q, &[[0, 1], [0, -1]]);
        let (alpha, beta) = (q.from_i64(2), q.from_i64(3));
        let c = make_quantum_duplicate(a.clone(), alpha.clone(), beta.clone(), f.clone(), delta.clone());
        let r = rho_hat(c.family(), 1).unwrap();
        assert_eq!(r.get(0, 0), &delta);
        assert_eq!(r.get(0, 1), &f.scale(&-&beta));
        assert_eq!(r.get(1, 0), &f);
        assert_eq!(r.get(1, 1), &delta.add(&f.scale(&alpha)));
        let x = vec![q.from_i64(4), q.from_i64(9)];
        let m = phi_hat(c.family(), &x).unwrap();
        assert_eq!(m.get(1, 1), &f.apply(&x)[..]);
        assert_eq!(
            c.family().b().structure_matrix(1).unwrap(),
            KMatrix::from_i64(q, &[[0, -3], [1, 2]])
        );
        assert!(faithful_rep(&c).is_err());
    }
}
