//! Symbolic rendering of `ρ̂` and `φ̂` with the γ's kept as letters.
//!
//! Entries of `ρ̂` are non-commutative polynomials in the symbols `γ_i^j`,
//! where a word `[s, t]` stands for the composite `s ∘ t` and the empty word
//! is `id`. Used for human-readable output and golden fixtures.

use std::collections::BTreeMap;

use crate::algebra::FiniteDimAlgebra;
use crate::linalg::{AlgMatrix, Field, KMatrix, LinearEndo, Scalar};
use crate::twisting::GammaFamily;

/// What a symbol `γ_i^j` stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    Identity,
    Named(String),
}

/// Symbols for a whole `n × n` γ grid, indexed `i·n + j`.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    n: usize,
    symbols: Vec<Symbol>,
}

impl SymbolTable {
    /// Every `γ_i^j` free, named `g_i^j` (0-based).
    pub fn generic(n: usize) -> Self {
        let symbols = (0..n * n).map(|x| Symbol::Named(format!("g_{}^{}", x / n, x % n))).collect();
        Self { n, symbols }
    }

    pub fn set(mut self, i: usize, j: usize, s: Symbol) -> Self {
        self.symbols[i * self.n + j] = s;
        self
    }

    pub fn named(self, i: usize, j: usize, name: &str) -> Self {
        self.set(i, j, Symbol::Named(name.to_string()))
    }

    pub fn get(&self, i: usize, j: usize) -> &Symbol {
        &self.symbols[i * self.n + j]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn name(&self, id: usize) -> &str {
        match &self.symbols[id] {
            Symbol::Named(s) => s,
            _ => unreachable!("only named symbols appear in words"),
        }
    }
}

/// A non-commutative polynomial over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    field: Field,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl NcPoly {
    pub fn zero(field: Field) -> Self {
        Self { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(Vec::new(), c);
        p
    }

    /// `c · γ_i^j` resolved through the table.
    pub fn symbol(table: &SymbolTable, i: usize, j: usize, c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        match table.get(i, j) {
            Symbol::Zero => {}
            Symbol::Identity => p.add_term(Vec::new(), c),
            Symbol::Named(_) => p.add_term(vec![i * table.n() + j], c),
        }
        p
    }

    fn add_term(&mut self, word: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word.clone()).or_insert_with(|| self.field.zero());
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&-&self.field.one()))
    }

    /// Substitutes `family`'s γ for every named symbol.
    pub fn evaluate(&self, family: &GammaFamily) -> LinearEndo {
        let d = family.d();
        let mut out = LinearEndo::zero(self.field, d);
        for (w, c) in &self.terms {
            let mut term = LinearEndo::identity(self.field, d);
            for &id in w {
                term = term.compose(&family.gammas()[id]);
            }
            out.add_scaled(c, &term);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        // shorter words first, then lexicographic
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for (idx, (word, c)) in terms.into_iter().enumerate() {
            let body = if word.is_empty() {
                "id".to_string()
            } else {
                word.iter().map(|&s| table.name(s)).collect::<Vec<_>>().join("∘")
            };
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let coeff = if magnitude == "1" { String::new() } else { format!("{magnitude}·") };
            match (idx, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&coeff);
            out.push_str(&body);
        }
        out
    }
}

/// A matrix of [`NcPoly`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<NcPoly>,
}

impl SymMatrix {
    pub fn get(&self, r: usize, c: usize) -> &NcPoly {
        &self.entries[r * self.cols + c]
    }

    /// Matrix product with composition of entries.
    pub fn mul(&self, rhs: &SymMatrix) -> SymMatrix {
        assert_eq!(self.cols, rhs.rows, "symbolic matrix shapes");
        let field = self.entries[0].field;
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = NcPoly::zero(field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(r, k).compose(rhs.get(k, c)));
                }
                entries.push(acc);
            }
        }
        SymMatrix { rows: self.rows, cols: rhs.cols, entries }
    }

    pub fn sub(&self, rhs: &SymMatrix) -> SymMatrix {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(x, y)| x.sub(y)).collect();
        SymMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale_add(&self, c: &Scalar, rhs: &SymMatrix) -> SymMatrix {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(x, y)| x.add(&y.scale(c))).collect();
        SymMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        let cells: Vec<String> = self.entries.iter().map(|p| p.render(table)).collect();
        render_grid(self.rows, self.cols, &cells)
    }
}

fn render_grid(rows: usize, cols: usize, cells: &[String]) -> String {
    let widths: Vec<usize> =
        (0..cols).map(|c| (0..rows).map(|r| cells[r * cols + c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in 0..rows {
        out.push('[');
        for c in 0..cols {
            let cell = &cells[r * cols + c];
            out.push_str(cell);
            if c + 1 < cols {
                out.push_str(", ");
                out.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
            }
        }
        out.push_str("]\n");
    }
    out
}

/// `ρ̂(b_k)` with entry `(r, c) = Σ_l λ_{cl}^r γ_k^l`.
pub fn symbolic_rho_hat(b: &FiniteDimAlgebra, table: &SymbolTable, k: usize) -> SymMatrix {
    let n = b.dim();
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = NcPoly::zero(b.field());
            for l in 0..n {
                acc = acc.add(&NcPoly::symbol(table, k, l, b.lambda(c, l, r).clone()));
            }
            entries.push(acc);
        }
    }
    SymMatrix { rows: n, cols: n, entries }
}

/// The nonzero entries of `ρ̂(b_i) ρ̂(b_j) − Σ_k λ_ji^k ρ̂(b_k)` and of
/// `Σ_k α_k ρ̂(b_k) − I`, one line per entry, as `poly = 0`.
pub fn rho_conditions(b: &FiniteDimAlgebra, table: &SymbolTable) -> Vec<String> {
    let n = b.dim();
    let rho: Vec<SymMatrix> = (0..n).map(|k| symbolic_rho_hat(b, table, k)).collect();
    let zero = SymMatrix { rows: n, cols: n, entries: vec![NcPoly::zero(b.field()); n * n] };
    let mut out = Vec::new();
    let mut emit = |m: &SymMatrix| {
        for p in &m.entries {
            if !p.is_zero() {
                let line = format!("{} = 0", p.render(table));
                if !out.contains(&line) {
                    out.push(line);
                }
            }
        }
    };
    for i in 0..n {
        for j in 0..n {
            let mut combo = zero.clone();
            for (k, rk) in rho.iter().enumerate() {
                combo = combo.scale_add(b.lambda(j, i, k), rk);
            }
            emit(&rho[i].mul(&rho[j]).sub(&combo));
        }
    }
    let mut unit = zero.clone();
    for (k, rk) in rho.iter().enumerate() {
        unit = unit.scale_add(&b.unit()[k], rk);
    }
    let identity = SymMatrix {
        rows: n,
        cols: n,
        entries: (0..n * n)
            .map(|x| if x / n == x % n { NcPoly::constant(b.field().one()) } else { NcPoly::zero(b.field()) })
            .collect(),
    };
    emit(&unit.sub(&identity));
    out
}

/// `φ̂(a)` with entry `(j, k) = γ_k^j(a)`.
pub fn symbolic_phi_hat(table: &SymbolTable) -> String {
    let n = table.n();
    let cells: Vec<String> = (0..n * n)
        .map(|x| match table.get(x % n, x / n) {
            Symbol::Zero => "0".into(),
            Symbol::Identity => "a".into(),
            Symbol::Named(s) => format!("{s}(a)"),
        })
        .collect();
    render_grid(n, n, &cells)
}

pub fn render_kmatrix(m: &KMatrix) -> String {
    render_grid(m.rows(), m.cols(), &m.data().iter().map(Scalar::to_string).collect::<Vec<_>>())
}

/// Renders an `A`-valued matrix whose entries are all scalar multiples of
/// `1_A` as the scalar matrix; `None` if some entry is not.
pub fn render_scalar_alg_matrix(m: &AlgMatrix, a: &FiniteDimAlgebra) -> Option<String> {
    let unit = a.unit();
    let pivot = unit.iter().position(|u| !u.is_zero())?;
    let inv = unit[pivot].inverse()?;
    let mut cells = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            let s = &v[pivot] * &inv;
            if v.iter().zip(unit).any(|(x, u)| *x != &s * u) {
                return None;
            }
            cells.push(s.to_string());
        }
    }
    Some(render_grid(m.rows(), m.cols(), &cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::algebras;

    #[test]
    fn duplicate_conditions_reappear() {
        let q = Field::Rationals;
        let b = algebras::idempotent_line(q);
        let t = SymbolTable::generic(2).set(0, 0, Symbol::Identity).set(0, 1, Symbol::Zero).named(1, 0, "δ").named(1, 1, "f");
        assert_eq!(symbolic_rho_hat(&b, &t, 1).render(&t), "[δ, 0]\n[f, δ + f]\n");
        let conds = rho_conditions(&b, &t);
        assert_eq!(
            conds,
            vec![
                "-δ + δ∘δ = 0",
                "-f + δ∘f + f∘δ + f∘f = 0",
                "-δ - f + δ∘δ + δ∘f + f∘δ + f∘f = 0",
            ]
        );
        assert_eq!(symbolic_phi_hat(&t), "[a, δ(a)]\n[0, f(a)]\n");
    }

    #[test]
    fn polynomial_cancellation() {
        let q = Field::Rationals;
        let t = SymbolTable::generic(1);
        let g = NcPoly::symbol(&t, 0, 0, q.one());
        assert!(g.sub(&g).is_zero());
        assert_eq!(g.compose(&g).scale(&q.from_i64(-2)).render(&t), "-2·g_0^0∘g_0^0");
    }
}
