//! Twisting with `B = K^n` and its canonical basis of idempotents.

use std::sync::Arc;

use super::algebras;
use crate::algebra::FiniteDimAlgebra;
use crate::linalg::LinearEndo;
use crate::twisting::{GammaFamily, TwistingCandidate};

/// `grid[i][j]` is `γ̃_i^j`, so `χ(a ⊗ e_i) = Σ_j e_j ⊗ γ̃_i^j(a)`.
pub fn make_kn(a: Arc<FiniteDimAlgebra>, n: usize, grid: Vec<Vec<LinearEndo>>) -> crate::Result<TwistingCandidate> {
    let b = Arc::new(algebras::split(a.field(), n));
    Ok(TwistingCandidate::new(GammaFamily::new(a, b, grid)?))
}

/// The four conditions for `K^n`:
///
/// 1. `γ̃_i^p ∘ γ̃_j^p = δ_ij γ̃_i^p` for all `i, j, p`
/// 2. `Σ_j γ̃_j^i = id` for every `i`
/// 3. `γ̃_j^i(ab) = Σ_p γ̃_p^i(a) γ̃_j^p(b)`
/// 4. `γ̃_j^i(1) = δ_ij 1`
///
/// Each entry holds the first failing index tuple, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnConditions {
    pub idempotent: Option<[usize; 3]>,
    pub row_sums: Option<usize>,
    pub multiplicative: Option<[usize; 4]>,
    pub units: Option<[usize; 2]>,
}

impl KnConditions {
    pub fn evaluate(family: &GammaFamily) -> Self {
        let (a, n, d) = (family.a(), family.n(), family.d());
        let g = |i: usize, j: usize| family.gamma(i, j);
        let mut idempotent = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for p in 0..n {
                    let left = g(i, p).compose(g(j, p));
                    let right = if i == j { g(i, p).clone() } else { LinearEndo::zero(a.field(), d) };
                    if left != right {
                        idempotent = Some([i, j, p]);
                        break 'outer;
                    }
                }
            }
        }
        let row_sums = (0..n).find(|&i| {
            let mut s = LinearEndo::zero(a.field(), d);
            for j in 0..n {
                s = s.add(g(j, i));
            }
            !s.is_identity()
        });
        let mut multiplicative = None;
        'mult: for i in 0..n {
            for j in 0..n {
                for x in 0..d {
                    for y in 0..d {
                        let left = g(j, i).apply(a.basis_product(x, y));
                        let mut right = a.zero_vector();
                        for p in 0..n {
                            let prod = a.mul_coords(&g(p, i).matrix().column(x), &g(j, p).matrix().column(y));
                            right = right.iter().zip(&prod).map(|(u, v)| u + v).collect();
                        }
                        if left != right {
                            multiplicative = Some([i, j, x, y]);
                            break 'mult;
                        }
                    }
                }
            }
        }
        let units = (0..n * n).map(|x| [x / n, x % n]).find(|&[i, j]| {
            let got = g(j, i).apply(a.unit());
            let expected = if i == j { a.unit().to_vec() } else { a.zero_vector() };
            got != expected
        });
        Self { idempotent, row_sums, multiplicative, units }
    }

    pub fn all(&self) -> bool {
        self.idempotent.is_none() && self.row_sums.is_none() && self.multiplicative.is_none() && self.units.is_none()
    }
}
