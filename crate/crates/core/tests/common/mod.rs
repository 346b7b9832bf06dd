#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use twistkit::catalog::{algebras, make_ncd};
use twistkit::symbolic::{
    render_kmatrix, render_scalar_alg_matrix, rho_conditions, symbolic_phi_hat, symbolic_rho_hat, Symbol, SymbolTable,
};
use twistkit::twisting::faithful_rep;
use twistkit::{AlgMatrix, Field, FiniteDimAlgebra, LinearEndo};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn duplicate_table() -> SymbolTable {
    SymbolTable::generic(2).set(0, 0, Symbol::Identity).set(0, 1, Symbol::Zero).named(1, 0, "δ").named(1, 1, "f")
}

fn structure_block(b: &FiniteDimAlgebra, k: usize) -> String {
    format!("[{}]_B\n{}", b.labels()[k], render_kmatrix(&b.structure_matrix(k).unwrap()))
}

/// `φ_χ(b_k ⊗ 1)` as the sum of the faithful images of `b_k ⊗ a_p`
/// weighted by the unit coordinates of `A`.
fn phi_chi_on_b(images: &[AlgMatrix], a: &FiniteDimAlgebra, k: usize) -> AlgMatrix {
    let d = a.dim();
    let mut acc = images[k * d].clone();
    let mut flat: Vec<_> = acc.flatten().iter().map(|_| a.field().zero()).collect();
    for (p, u) in a.unit().iter().enumerate() {
        for (f, v) in flat.iter_mut().zip(images[k * d + p].flatten()) {
            f.add_mul(u, &v);
        }
    }
    for (idx, chunk) in flat.chunks(d).enumerate() {
        acc.set(idx / acc.cols(), idx % acc.cols(), chunk.to_vec());
    }
    acc
}

fn ncd_structure() -> String {
    let b = algebras::idempotent_line(Field::Rationals);
    format!("{}\n{}", structure_block(&b, 1), structure_block(&b, 0))
}

fn ncd_rho_hat() -> String {
    let b = algebras::idempotent_line(Field::Rationals);
    let t = duplicate_table();
    let mut out = format!(
        "rho_hat(X)\n{}\nrho_hat(1)\n{}\nconditions\n",
        symbolic_rho_hat(&b, &t, 1).render(&t),
        symbolic_rho_hat(&b, &t, 0).render(&t)
    );
    for c in rho_conditions(&b, &t) {
        out.push_str(&c);
        out.push('\n');
    }
    out
}

fn ncd_phi() -> String {
    let q = Field::Rationals;
    let a = Arc::new(algebras::split(q, 2));
    let mut c = make_ncd(a.clone(), LinearEndo::from_i64(q, &[[1, 0], [1, 0]]), LinearEndo::from_i64(q, &[[0, 0], [-1, 1]]));
    assert!(c.verify().ok);
    let images = faithful_rep(&c).unwrap();
    let render = |k| render_scalar_alg_matrix(&phi_chi_on_b(&images, &a, k), &a).expect("scalar image");
    format!(
        "phi_hat(a)\n{}\nphi_chi(X)\n{}\nphi_chi(1)\n{}",
        symbolic_phi_hat(&duplicate_table()),
        render(1),
        render(0)
    )
}

fn qdup() -> String {
    let q = Field::Rationals;
    let mut out = String::new();
    for (alpha, beta) in [(2, 3), (0, -1), (1, 0)] {
        let b = algebras::quadratic(q, q.from_i64(alpha), q.from_i64(beta));
        let t = duplicate_table();
        out.push_str(&format!("alpha = {alpha}, beta = {beta}\n{}", structure_block(&b, 1)));
        out.push_str(&format!("rho_hat(X)\n{}conditions\n", symbolic_rho_hat(&b, &t, 1).render(&t)));
        for c in rho_conditions(&b, &t) {
            out.push_str(&c);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

fn kn() -> String {
    let b = algebras::split(Field::Rationals, 3);
    let t = SymbolTable::generic(3);
    let mut out = String::new();
    for i in 0..3 {
        out.push_str(&format!("{}\nrho_hat({})\n{}\n", structure_block(&b, i), b.labels()[i], symbolic_rho_hat(&b, &t, i).render(&t)));
    }
    out.push_str(&format!("phi_hat(a)\n{}", symbolic_phi_hat(&t)));
    out
}

fn truncated() -> String {
    let b = algebras::truncated(Field::Rationals, 4);
    let t = SymbolTable::generic(4);
    let mut out = format!("{}\n{}\n", structure_block(&b, 1), structure_block(&b, 0));
    for i in 1..4 {
        out.push_str(&format!("rho_hat({})\n{}\n", b.labels()[i], symbolic_rho_hat(&b, &t, i).render(&t)));
    }
    out
}

/// Every fixture as `(file name, rendered content)`.
pub fn golden_fixtures() -> Vec<(&'static str, String)> {
    vec![
        ("ncd_structure.txt", ncd_structure()),
        ("ncd_rho_hat.txt", ncd_rho_hat()),
        ("ncd_phi.txt", ncd_phi()),
        ("qdup.txt", qdup()),
        ("kn.txt", kn()),
        ("truncated.txt", truncated()),
    ]
}
