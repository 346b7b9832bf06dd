//! Twisting with `B = K[Y]/⟨Y^n⟩` and basis `{1, Y, …, Y^{n-1}}`.

use std::sync::Arc;

use super::algebras;
use crate::algebra::FiniteDimAlgebra;
use crate::linalg::{Field, LinearEndo};
use crate::twisting::{GammaFamily, TwistingCandidate};

/// `grid[i][j]` is `γ̃_i^j`, so `χ(a ⊗ Y^i) = Σ_j Y^j ⊗ γ̃_i^j(a)`.
pub fn make_truncated(a: Arc<FiniteDimAlgebra>, n: usize, grid: Vec<Vec<LinearEndo>>) -> crate::Result<TwistingCandidate> {
    let b = Arc::new(algebras::truncated(a.field(), n));
    Ok(TwistingCandidate::new(GammaFamily::new(a, b, grid)?))
}

fn convolution(field: Field, d: usize, grid: &[Vec<LinearEndo>], r1: usize, r2: usize, j: usize) -> LinearEndo {
    let mut acc = LinearEndo::zero(field, d);
    for l in 0..=j {
        acc = acc.add(&grid[r1][j - l].compose(&grid[r2][l]));
    }
    acc
}

/// The grid determined by `γ̃_1^0, …, γ̃_1^{n-1}`: row `0` is `δ_0j · id` and
/// `γ̃_r^j = Σ_{l ≤ j} γ̃_{r-1}^{j-l} ∘ γ̃_1^l` for `r ≥ 2`.
pub fn truncated_grid_from_generators(field: Field, d: usize, generators: Vec<LinearEndo>) -> Vec<Vec<LinearEndo>> {
    let n = generators.len();
    let mut grid = Vec::with_capacity(n);
    grid.push((0..n).map(|j| if j == 0 { LinearEndo::identity(field, d) } else { LinearEndo::zero(field, d) }).collect());
    if n > 1 {
        grid.push(generators);
    }
    for r in 2..n {
        let row = (0..n).map(|j| convolution(field, d, &grid, r - 1, 1, j)).collect();
        grid.push(row);
    }
    grid
}

/// The five conditions for the truncated polynomial case:
///
/// 1. `γ̃_0^j = δ_0j id`
/// 2. `γ̃_r^j = Σ_{l ≤ j} γ̃_{r-i}^{j-l} ∘ γ̃_i^l` for `1 < r < n`, `0 < i < r`
/// 3. `Σ_{l ≤ j} γ̃_{n-i}^{j-l} ∘ γ̃_i^l = 0` for `0 < i < n`
/// 4. `γ̃_j^i(ab) = Σ_{p < n} γ̃_p^i(a) γ̃_j^p(b)`
/// 5. `γ̃_j^i(1) = δ_ij 1`
///
/// Each entry holds the first failing index tuple, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedConditions {
    pub first_row: Option<usize>,
    pub convolution: Option<[usize; 3]>,
    pub vanishing: Option<[usize; 2]>,
    pub multiplicative: Option<[usize; 4]>,
    pub units: Option<[usize; 2]>,
}

impl TruncatedConditions {
    pub fn evaluate(family: &GammaFamily) -> Self {
        let (a, n, d, field) = (family.a(), family.n(), family.d(), family.field());
        let grid = family.grid();
        let first_row = (0..n).find(|&j| {
            if j == 0 {
                !grid[0][0].is_identity()
            } else {
                !grid[0][j].is_zero()
            }
        });
        let mut convolution_fail = None;
        'conv: for r in 2..n {
            for i in 1..r {
                for j in 0..n {
                    if grid[r][j] != convolution(field, d, &grid, r - i, i, j) {
                        convolution_fail = Some([r, i, j]);
                        break 'conv;
                    }
                }
            }
        }
        let mut vanishing = None;
        'van: for i in 1..n {
            for j in 0..n {
                if !convolution(field, d, &grid, n - i, i, j).is_zero() {
                    vanishing = Some([i, j]);
                    break 'van;
                }
            }
        }
        let mut multiplicative = None;
        'mult: for i in 0..n {
            for j in 0..n {
                for x in 0..d {
                    for y in 0..d {
                        let left = grid[j][i].apply(a.basis_product(x, y));
                        let mut right = a.zero_vector();
                        for p in 0..n {
                            let prod = a.mul_coords(&grid[p][i].matrix().column(x), &grid[j][p].matrix().column(y));
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
            let got = grid[j][i].apply(a.unit());
            let expected = if i == j { a.unit().to_vec() } else { a.zero_vector() };
            got != expected
        });
        Self { first_row, convolution: convolution_fail, vanishing, multiplicative, units }
    }

    pub fn all(&self) -> bool {
        self.first_row.is_none()
            && self.convolution.is_none()
            && self.vanishing.is_none()
            && self.multiplicative.is_none()
            && self.units.is_none()
    }
}
