//! Twisting maps on a direct product `D = B × C`.
//!
//! `D` carries the ordered basis `b_0, …, b_{n-1}, c_0, …, c_{m-1}` produced
//! by [`FiniteDimAlgebra::direct_product`], and `γ̃_i^j` denotes the γ-family
//! of `ψ: A ⊗ D → D ⊗ A`. With `λ` and `η` the structure constants of `B` and
//! `C`, the blocks of `ρ̂_ψ` are
//!
//! ```text
//! B1_k (r, c) = Σ_{l<n} λ_{cl}^r γ̃_k^l          C1_k (r, c) = Σ_{l<n} λ_{cl}^r γ̃_{k+n}^l
//! B2_k (r, c) = Σ_{l<m} η_{cl}^r γ̃_k^{l+n}      C2_k (r, c) = Σ_{l<m} η_{cl}^r γ̃_{k+n}^{l+n}
//! ```
//!
//! and `Γ^p_q(a)` are the corners of `φ̂_ψ(a)`: `Γ^0_0` is `n × n`, `Γ^0_1` is
//! `n × m`, `Γ^1_0` is `m × n` and `Γ^1_1` is `m × m`.

use std::sync::Arc;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{AlgMatrix, EndoMatrix, LinearEndo, Scalar};
use crate::report::{ReportBuilder, VerificationReport};
use crate::twisting::{check_conditions_direct, phi_hat, GammaFamily, TwistingCandidate};

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub n: usize,
    pub m: usize,
    pub b_factor: FiniteDimAlgebra,
    pub c_factor: FiniteDimAlgebra,
    pub b1: Vec<EndoMatrix>,
    pub b2: Vec<EndoMatrix>,
    pub c1: Vec<EndoMatrix>,
    pub c2: Vec<EndoMatrix>,
    psi: GammaFamily,
}

impl BlockDecomposition {
    /// `Γ^p_q(a)`, sliced from `φ̂_ψ(a)`.
    pub fn gamma_at(&self, p: usize, q: usize, a: &[Scalar]) -> Result<AlgMatrix> {
        let full = phi_hat(&self.psi, a)?;
        let (r0, rows) = if p == 0 { (0, self.n) } else { (self.n, self.m) };
        let (c0, cols) = if q == 0 { (0, self.n) } else { (self.n, self.m) };
        Ok(full.block(r0, c0, rows, cols))
    }

    /// `Γ^p_q` as a grid of endomorphisms: entry `(j, k)` is `γ̃_k^j`
    /// relative to the block offsets.
    pub fn gamma_grid(&self, p: usize, q: usize) -> EndoMatrix {
        let (r0, rows) = if p == 0 { (0, self.n) } else { (self.n, self.m) };
        let (c0, cols) = if q == 0 { (0, self.n) } else { (self.n, self.m) };
        let entries = (0..rows)
            .flat_map(|j| (0..cols).map(move |k| (j, k)))
            .map(|(j, k)| self.psi.gamma(c0 + k, r0 + j).clone())
            .collect();
        EndoMatrix::from_entries(rows, cols, entries)
    }

    pub fn psi(&self) -> &GammaFamily {
        &self.psi
    }
}

fn block_matrix(
    psi: &GammaFamily,
    factor: &FiniteDimAlgebra,
    gamma_row: usize,
    gamma_offset: usize,
) -> EndoMatrix {
    let size = factor.dim();
    let (field, d) = (psi.field(), psi.d());
    let mut out = EndoMatrix::zeros(field, d, size, size);
    for r in 0..size {
        for c in 0..size {
            let entry = out.get_mut(r, c);
            for l in 0..size {
                let coeff = factor.lambda(c, l, r);
                if !coeff.is_zero() {
                    entry.add_scaled(coeff, psi.gamma(gamma_row, l + gamma_offset));
                }
            }
        }
    }
    out
}

fn factors(psi: &GammaFamily, n: usize, m: usize) -> Result<(FiniteDimAlgebra, FiniteDimAlgebra)> {
    if n + m != psi.n() {
        return Err(Error::DimensionMismatch { context: "block sizes n + m", expected: psi.n(), found: n + m });
    }
    psi.b().split_direct_product(n)
}

pub fn split_blocks(psi: &GammaFamily, n: usize, m: usize) -> Result<BlockDecomposition> {
    let (b_factor, c_factor) = factors(psi, n, m)?;
    let b1 = (0..n).map(|k| block_matrix(psi, &b_factor, k, 0)).collect();
    let b2 = (0..n).map(|k| block_matrix(psi, &c_factor, k, n)).collect();
    let c1 = (0..m).map(|k| block_matrix(psi, &b_factor, k + n, 0)).collect();
    let c2 = (0..m).map(|k| block_matrix(psi, &c_factor, k + n, n)).collect();
    Ok(BlockDecomposition { n, m, b_factor, c_factor, b1, b2, c1, c2, psi: psi.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    B,
    C,
}

/// `Θ = (p_B ⊗ A) ∘ ψ ∘ (A ⊗ i_B)` for [`Side::B`], `Υ` for [`Side::C`].
pub fn restrict(psi: &GammaFamily, n: usize, side: Side) -> Result<GammaFamily> {
    let m = psi.n().checked_sub(n).ok_or(Error::NotDirectProduct { n, m: 0 })?;
    let (b_factor, c_factor) = factors(psi, n, m)?;
    let (factor, offset, size) = match side {
        Side::B => (b_factor, 0, n),
        Side::C => (c_factor, n, m),
    };
    let grid = (0..size)
        .map(|i| (0..size).map(|j| psi.gamma(i + offset, j + offset).clone()).collect())
        .collect();
    GammaFamily::new(psi.a_arc().clone(), Arc::new(factor), grid)
}

/// `Θ ⊕ Υ` on `B × C`, with vanishing cross blocks. The result is verified.
pub fn direct_sum(theta: &TwistingCandidate, ups: &TwistingCandidate) -> Result<TwistingCandidate> {
    theta.require_verified()?;
    ups.require_verified()?;
    let (t, u) = (theta.family(), ups.family());
    if t.a() != u.a() {
        return Err(Error::AmbientMismatch);
    }
    let d_alg = Arc::new(t.b().direct_product(u.b())?);
    let (n, m) = (t.n(), u.n());
    let (field, d) = (t.field(), t.d());
    let grid = (0..n + m)
        .map(|i| {
            (0..n + m)
                .map(|j| match (i < n, j < n) {
                    (true, true) => t.gamma(i, j).clone(),
                    (false, false) => u.gamma(i - n, j - n).clone(),
                    _ => LinearEndo::zero(field, d),
                })
                .collect()
        })
        .collect();
    let mut out = TwistingCandidate::new(GammaFamily::new(t.a_arc().clone(), d_alg, grid)?);
    out.verify();
    Ok(out)
}

/// How far the extension criterion goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Keeps `Γ^0_1` and checks the identities involving it.
    Lemma,
    /// Requires `Γ^0_1 = 0` instead.
    Proposition,
}

fn endo_data(m: &EndoMatrix) -> Vec<Scalar> {
    m.entries().iter().flat_map(|e| e.matrix().data().iter().cloned()).collect()
}

fn combination(blocks: &[EndoMatrix], coeffs: &[Scalar], shape: &EndoMatrix) -> EndoMatrix {
    let mut acc = shape.scale(&shape.entries()[0].field().zero());
    for (blk, c) in blocks.iter().zip(coeffs) {
        if !c.is_zero() {
            acc.add_scaled(c, blk);
        }
    }
    acc
}

fn mult_family(
    report: &mut ReportBuilder,
    tag: &str,
    prefix: &[usize],
    blocks: &[EndoMatrix],
    factor: &FiniteDimAlgebra,
) {
    let size = factor.dim();
    for i in 0..size {
        for j in 0..size {
            let left = blocks[i].mul(&blocks[j]);
            let right = combination(blocks, factor.basis_product(j, i), &blocks[0]);
            if left != right {
                let mut w = prefix.to_vec();
                w.extend([i, j]);
                report.fail(tag, &w, &endo_data(&left), &endo_data(&right));
            }
        }
    }
}

fn annihilation(report: &mut ReportBuilder, tag: &str, prefix: &[usize], bs: &[EndoMatrix], cs: &[EndoMatrix]) {
    for (i, bi) in bs.iter().enumerate() {
        for (j, cj) in cs.iter().enumerate() {
            for prod in [bi.mul(cj), cj.mul(bi)] {
                if !prod.is_zero() {
                    let mut w = prefix.to_vec();
                    w.extend([i, j]);
                    let zero = prod.scale(&prod.entries()[0].field().zero());
                    report.fail(tag, &w, &endo_data(&prod), &endo_data(&zero));
                }
            }
        }
    }
}

fn unit_sum(report: &mut ReportBuilder, tag: &str, prefix: &[usize], bs: &[EndoMatrix], cs: &[EndoMatrix], blocks: &BlockDecomposition) {
    let mut sum = combination(bs, blocks.b_factor.unit(), &bs[0]);
    sum = sum.add(&combination(cs, blocks.c_factor.unit(), &cs[0]));
    let (field, d) = (blocks.psi.field(), blocks.psi.d());
    let id = EndoMatrix::identity(field, d, sum.rows());
    if sum != id {
        report.fail(tag, prefix, &endo_data(&sum), &endo_data(&id));
    }
}

/// `Γ^p_q` at every basis element of `A`, indexed `[p][q][x]`.
fn gamma_table(blocks: &BlockDecomposition) -> Result<Vec<Vec<Vec<AlgMatrix>>>> {
    let a = blocks.psi.a();
    let full: Vec<AlgMatrix> = (0..a.dim()).map(|x| phi_hat(&blocks.psi, &a.basis_vector(x))).collect::<Result<_>>()?;
    let at_one = phi_hat(&blocks.psi, a.unit())?;
    let (n, m) = (blocks.n, blocks.m);
    let slice = |mat: &AlgMatrix, p: usize, q: usize| {
        let (r0, rows) = if p == 0 { (0, n) } else { (n, m) };
        let (c0, cols) = if q == 0 { (0, n) } else { (n, m) };
        mat.block(r0, c0, rows, cols)
    };
    Ok((0..2)
        .map(|p| {
            (0..2)
                .map(|q| {
                    let mut v: Vec<AlgMatrix> = full.iter().map(|f| slice(f, p, q)).collect();
                    v.push(slice(&at_one, p, q));
                    v
                })
                .collect()
        })
        .collect())
}

/// `Γ^p_q(aa')` against `Γ^p_0(a) Γ^0_q(a') + Γ^p_1(a) Γ^1_q(a')` on basis pairs.
fn gamma_rule(report: &mut ReportBuilder, tag: &str, table: &[Vec<Vec<AlgMatrix>>], blocks: &BlockDecomposition, p: usize, q: usize, witness_p: bool) {
    let a = blocks.psi.a();
    let d = a.dim();
    for x in 0..d {
        for y in 0..d {
            let left = blocks.gamma_at(p, q, a.basis_product(x, y)).expect("product has length d");
            let right = table[p][0][x]
                .mul(&table[0][q][y], a)
                .and_then(|u| u.add(&table[p][1][x].mul(&table[1][q][y], a)?))
                .expect("compatible block shapes");
            let w: Vec<usize> = if witness_p { vec![p, q, x, y] } else { vec![x, y] };
            report.expect_eq(tag, &w, &left.flatten(), &right.flatten());
        }
    }
}

fn expect_unit_block(report: &mut ReportBuilder, tag: &str, block: &AlgMatrix, a: &FiniteDimAlgebra, identity: bool) {
    let expected = if identity {
        AlgMatrix::identity(a, block.rows())
    } else {
        AlgMatrix::zeros(a, block.rows(), block.cols())
    };
    report.expect_eq(tag, &[], &block.flatten(), &expected.flatten());
}

/// Block form of "`ρ̂_ψ` and `φ̂_ψ` are representations".
///
/// For `l ∈ {1, 2}`: `B_mult [l, i, j]`, `C_mult [l, i, j]`,
/// `BC_annihilate [l, i, j]` and `unit_sum [l]`. Then `Gamma_unit [p, q]`
/// for the values at `1` and `Gamma_rule [p, q, x, y]` for
/// `Γ^p_q(aa') = Γ^p_0(a) Γ^0_q(a') + Γ^p_1(a) Γ^1_q(a')`.
pub fn check_lemma_blocks(psi: &GammaFamily, n: usize, m: usize) -> Result<VerificationReport> {
    let blocks = split_blocks(psi, n, m)?;
    let mut report = ReportBuilder::new();
    for (l, (bs, cs)) in [(&blocks.b1, &blocks.c1), (&blocks.b2, &blocks.c2)].into_iter().enumerate() {
        let tag_l = l + 1;
        mult_family(&mut report, "B_mult", &[tag_l], bs, &blocks.b_factor);
        mult_family(&mut report, "C_mult", &[tag_l], cs, &blocks.c_factor);
        annihilation(&mut report, "BC_annihilate", &[tag_l], bs, cs);
        unit_sum(&mut report, "unit_sum", &[tag_l], bs, cs, &blocks);
    }
    let table = gamma_table(&blocks)?;
    let a = psi.a();
    let one = a.dim();
    for p in 0..2 {
        for q in 0..2 {
            let got = &table[p][q][one];
            let expected = if p == q { AlgMatrix::identity(a, got.rows()) } else { AlgMatrix::zeros(a, got.rows(), got.cols()) };
            report.expect_eq("Gamma_unit", &[p, q], &got.flatten(), &expected.flatten());
        }
    }
    for p in 0..2 {
        for q in 0..2 {
            gamma_rule(&mut report, "Gamma_rule", &table, &blocks, p, q, true);
        }
    }
    Ok(report.finish())
}

/// The extension criterion, assuming `Θ` (the restriction to `B`) is a
/// twisting map; returns [`Error::ThetaNotTwisting`] otherwise.
pub fn check_extension_given_theta(psi: &GammaFamily, n: usize, m: usize) -> Result<VerificationReport> {
    check_extension_staged(psi, n, m, Stage::Proposition)
}

/// Tags shared by both stages: `B2_mult [i, j]`, `C1_zero [k]`,
/// `C2_mult [i, j]`, `B2C2_annihilate [i, j]`, `unit_sum`,
/// `Gamma10_rule [x, y]`, `Gamma11_unit`, `Gamma10_unit`.
///
/// [`Stage::Proposition`] adds `Gamma01` (witness `[row, col, x]` of a
/// nonzero entry of `Γ^0_1(a_x)`) and `Gamma11_mult [x, y]`.
/// [`Stage::Lemma`] adds `Gamma_p1_rule [p, 1, x, y]`,
/// `Gamma01_Gamma10_zero [x, y]` and `Gamma01_unit`.
pub fn check_extension_staged(psi: &GammaFamily, n: usize, m: usize, stage: Stage) -> Result<VerificationReport> {
    let theta = restrict(psi, n, Side::B)?;
    let theta_report = check_conditions_direct(&theta);
    if !theta_report.ok {
        return Err(Error::ThetaNotTwisting(Box::new(theta_report)));
    }
    let blocks = split_blocks(psi, n, m)?;
    let a = psi.a();
    let mut report = ReportBuilder::new();
    mult_family(&mut report, "B2_mult", &[], &blocks.b2, &blocks.b_factor);
    for (k, c1) in blocks.c1.iter().enumerate() {
        if !c1.is_zero() {
            let zero = c1.scale(&psi.field().zero());
            report.fail("C1_zero", &[k], &endo_data(c1), &endo_data(&zero));
        }
    }
    mult_family(&mut report, "C2_mult", &[], &blocks.c2, &blocks.c_factor);
    annihilation(&mut report, "B2C2_annihilate", &[], &blocks.b2, &blocks.c2);
    unit_sum(&mut report, "unit_sum", &[], &blocks.b2, &blocks.c2, &blocks);

    let table = gamma_table(&blocks)?;
    let one = a.dim();
    match stage {
        Stage::Proposition => {
            for x in 0..a.dim() {
                let g = &table[0][1][x];
                for r in 0..n {
                    for c in 0..m {
                        let v = g.get(r, c);
                        if v.iter().any(|s| !s.is_zero()) {
                            report.fail("Gamma01", &[r, c, x], v, &a.zero_vector());
                        }
                    }
                }
            }
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let left = blocks.gamma_at(1, 1, a.basis_product(x, y))?;
                    let right = table[1][1][x].mul(&table[1][1][y], a)?;
                    report.expect_eq("Gamma11_mult", &[x, y], &left.flatten(), &right.flatten());
                }
            }
        }
        Stage::Lemma => {
            for p in 0..2 {
                gamma_rule(&mut report, "Gamma_p1_rule", &table, &blocks, p, 1, true);
            }
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let prod = table[0][1][x].mul(&table[1][0][y], a)?;
                    report.expect_eq("Gamma01_Gamma10_zero", &[x, y], &prod.flatten(), &AlgMatrix::zeros(a, n, n).flatten());
                }
            }
        }
    }
    gamma_rule(&mut report, "Gamma10_rule", &table, &blocks, 1, 0, false);
    expect_unit_block(&mut report, "Gamma11_unit", &table[1][1][one], a, true);
    expect_unit_block(&mut report, "Gamma10_unit", &table[1][0][one], a, false);
    if stage == Stage::Lemma {
        expect_unit_block(&mut report, "Gamma01_unit", &table[0][1][one], a, false);
    }
    Ok(report.finish())
}

/// For a verified `ψ` with `Γ^0_1 = 0`, checks that `φ_B = Γ^0_0` and
/// `φ_C = Γ^1_1` are multiplicative (`phi_B_mult`, `phi_C_mult`) and that
/// `Δ = Γ^1_0` satisfies `Δ(aa') = Δ(a) φ_B(a') + φ_C(a) Δ(a')`
/// (`Delta_rule`), all with witness `[x, y]`.
pub fn check_remark_delta(psi: &TwistingCandidate, n: usize, m: usize) -> Result<VerificationReport> {
    psi.require_verified()?;
    let blocks = split_blocks(psi.family(), n, m)?;
    let table = gamma_table(&blocks)?;
    let a = psi.family().a();
    if table[0][1][..a.dim()].iter().any(|g| !g.is_zero()) {
        return Err(Error::BlockFormAbsent);
    }
    let mut report = ReportBuilder::new();
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let xy = a.basis_product(x, y);
            for (tag, p) in [("phi_B_mult", 0), ("phi_C_mult", 1)] {
                let left = blocks.gamma_at(p, p, xy)?;
                let right = table[p][p][x].mul(&table[p][p][y], a)?;
                report.expect_eq(tag, &[x, y], &left.flatten(), &right.flatten());
            }
            let left = blocks.gamma_at(1, 0, xy)?;
            let right = table[1][0][x].mul(&table[0][0][y], a)?.add(&table[1][1][x].mul(&table[1][0][y], a)?)?;
            report.expect_eq("Delta_rule", &[x, y], &left.flatten(), &right.flatten());
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{algebras, make_ncd};
    use crate::linalg::Field;
    use crate::twisting::{check_phi_representation, check_rho_representation, oracle_check, rho_hat};

    fn setup() -> (Arc<FiniteDimAlgebra>, TwistingCandidate, TwistingCandidate) {
        let q = Field::Rationals;
        let a = Arc::new(algebras::split(q, 2));
        let mut theta = make_ncd(a.clone(), LinearEndo::from_i64(q, &[[1, 0], [1, 0]]), LinearEndo::zero(q, 2));
        assert!(theta.verify().ok);
        let ups = TwistingCandidate::verified(GammaFamily::flip(a.clone(), Arc::new(algebras::split(q, 1))).unwrap()).unwrap();
        (a, theta, ups)
    }

    #[test]
    fn direct_sum_round_trip() {
        let (_, theta, ups) = setup();
        let psi = direct_sum(&theta, &ups).unwrap();
        assert!(psi.is_verified());
        let fam = psi.family();
        assert!(check_rho_representation(fam).ok && check_phi_representation(fam).ok && oracle_check(fam).ok);
        assert_eq!(restrict(fam, 2, Side::B).unwrap(), *theta.family());
        assert_eq!(restrict(fam, 2, Side::C).unwrap(), *ups.family());
        let blocks = split_blocks(fam, 2, 1).unwrap();
        assert!(blocks.gamma_grid(0, 1).is_zero() && blocks.gamma_grid(1, 0).is_zero());
        assert!(blocks.c1.iter().all(EndoMatrix::is_zero));
        assert!(check_extension_given_theta(fam, 2, 1).unwrap().ok);
        assert!(check_extension_staged(fam, 2, 1, Stage::Lemma).unwrap().ok);
        assert!(check_lemma_blocks(fam, 2, 1).unwrap().ok);
        assert!(check_remark_delta(&psi, 2, 1).unwrap().ok);
    }

    #[test]
    fn blocks_reassemble_rho_hat() {
        let (_, theta, ups) = setup();
        let mut fam = direct_sum(&theta, &ups).unwrap().into_family();
        let q = Field::Rationals;
        // arbitrary cross entries so every block is nonzero
        fam.set_gamma(2, 0, LinearEndo::from_i64(q, &[[1, 2], [3, 4]]));
        fam.set_gamma(0, 2, LinearEndo::from_i64(q, &[[5, 0], [0, 6]]));
        let blocks = split_blocks(&fam, 2, 1).unwrap();
        for k in 0..3 {
            let r = rho_hat(&fam, k).unwrap();
            let (top, bottom) = if k < 2 { (&blocks.b1[k], &blocks.b2[k]) } else { (&blocks.c1[k - 2], &blocks.c2[k - 2]) };
            assert_eq!(&r.block(0, 0, 2, 2), top);
            assert_eq!(&r.block(2, 2, 1, 1), bottom);
            assert!(r.block(0, 2, 2, 1).is_zero() && r.block(2, 0, 1, 2).is_zero());
        }
    }

    #[test]
    fn perturbed_cross_block_is_rejected() {
        let (_, theta, ups) = setup();
        let mut fam = direct_sum(&theta, &ups).unwrap().into_family();
        let q = Field::Rationals;
        fam.set_gamma(2, 0, LinearEndo::from_i64(q, &[[1, 0], [0, 0]]));
        let r = check_extension_given_theta(&fam, 2, 1).unwrap();
        assert!(r.has("Gamma01"));
        assert!(!oracle_check(&fam).ok);
    }

    #[test]
    fn theta_must_be_twisting() {
        let (_, theta, ups) = setup();
        let mut fam = direct_sum(&theta, &ups).unwrap().into_family();
        fam.set_gamma(0, 1, LinearEndo::identity(Field::Rationals, 2));
        assert!(matches!(check_extension_given_theta(&fam, 2, 1), Err(Error::ThetaNotTwisting(_))));
    }

    #[test]
    fn annihilation_violation_is_tagged() {
        let (_, theta, ups) = setup();
        let mut fam = direct_sum(&theta, &ups).unwrap().into_family();
        let q = Field::Rationals;
        // B2_0 = γ̃_0^2 and C2_0 = γ̃_2^2 = id, so their product is γ̃_0^2
        fam.set_gamma(0, 2, LinearEndo::identity(q, 2));
        let r = check_lemma_blocks(&fam, 2, 1).unwrap();
        assert!(r.has("BC_annihilate"));
    }

    #[test]
    fn corrupted_delta_breaks_the_derivation_rule() {
        let (_, theta, ups) = setup();
        let mut fam = direct_sum(&theta, &ups).unwrap().into_family();
        fam.set_gamma(0, 2, LinearEndo::from_i64(Field::Rationals, &[[1, 1], [0, 0]]));
        let forged = TwistingCandidate::assume_verified_unchecked(fam);
        let r = check_remark_delta(&forged, 2, 1).unwrap();
        assert!(r.has("Delta_rule"));
        let mut with_gamma01 = forged.into_family();
        with_gamma01.set_gamma(2, 0, LinearEndo::identity(Field::Rationals, 2));
        let forged = TwistingCandidate::assume_verified_unchecked(with_gamma01);
        assert!(matches!(check_remark_delta(&forged, 2, 1), Err(Error::BlockFormAbsent)));
    }
}
