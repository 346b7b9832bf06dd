//! Exhaustive enumeration of γ-families over prime fields.
//!
//! A family is identified with the `n²·d²` entries of its γ grid, flattened
//! row-major over `(i, j)` and then row-major within each `d × d` matrix.
//! Candidate `index` reads these entries as base-`p` digits, most significant
//! first, so index `0` is the zero family and the order is lexicographic.
//!
//! Work is split into contiguous index ranges. With the `parallel` feature
//! the ranges run on a rayon pool; results are always merged in range order,
//! so output does not depend on the number of workers.

use std::ops::Range;
use std::sync::Arc;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, KMatrix, LinearEndo, Scalar};
use crate::report::{ReportBuilder, VerificationReport};
use crate::twisting::{
    check_conditions_direct, check_phi_representation, check_rho_representation, oracle_check, GammaFamily,
};

/// Largest admissible number of candidates.
pub const SEARCH_LIMIT: u64 = 1 << 24;

const CHUNK: u64 = 1 << 10;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TWISTKIT_THREADS";

#[derive(Clone, Debug)]
pub struct SearchSpace {
    a: Arc<FiniteDimAlgebra>,
    b: Arc<FiniteDimAlgebra>,
    p: u32,
    total: u64,
}

impl SearchSpace {
    pub fn new(a: Arc<FiniteDimAlgebra>, b: Arc<FiniteDimAlgebra>) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch { left: a.field(), right: b.field() });
        }
        let p = match a.field() {
            Field::Prime(p) => p,
            Field::Rationals => return Err(Error::InvalidField("enumeration needs a prime field".into())),
        };
        let entries = (b.dim() * b.dim() * a.dim() * a.dim()) as u32;
        let size = (p as u128).checked_pow(entries).unwrap_or(u128::MAX);
        if size > SEARCH_LIMIT as u128 {
            return Err(Error::SearchTooLarge { size, limit: SEARCH_LIMIT });
        }
        Ok(Self { a, b, p, total: size as u64 })
    }

    pub fn a(&self) -> &Arc<FiniteDimAlgebra> {
        &self.a
    }

    pub fn b(&self) -> &Arc<FiniteDimAlgebra> {
        &self.b
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn entries(&self) -> usize {
        let (n, d) = (self.b.dim(), self.a.dim());
        n * n * d * d
    }

    /// The family with the given index.
    pub fn candidate(&self, index: u64) -> Result<GammaFamily> {
        if index >= self.total {
            return Err(Error::IndexOutOfRange { index: index as usize, dim: self.total as usize });
        }
        let (n, d) = (self.b.dim(), self.a.dim());
        let field = self.a.field();
        let mut digits = vec![0u32; self.entries()];
        let mut rest = index;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
        }
        let gamma = digits
            .chunks(d * d)
            .map(|chunk| {
                let data = chunk.iter().map(|&v| field.element(v)).collect();
                LinearEndo::new(KMatrix::new(field, d, d, data).expect("d × d entries")).expect("square")
            })
            .collect();
        debug_assert_eq!(n * n, digits.len() / (d * d));
        GammaFamily::from_flat(self.a.clone(), self.b.clone(), gamma)
    }

    /// Inverse of [`candidate`](Self::candidate).
    pub fn index_of(&self, family: &GammaFamily) -> Result<u64> {
        if family.a() != &*self.a || family.b() != &*self.b {
            return Err(Error::AmbientMismatch);
        }
        let mut index = 0u64;
        for g in family.gammas() {
            for s in g.matrix().data() {
                let v = match s {
                    Scalar::Residue { value, .. } => *value as u64,
                    Scalar::Rational(_) => return Err(Error::AmbientMismatch),
                };
                index = index * self.p as u64 + v;
            }
        }
        Ok(index)
    }

    fn clamp(&self, range: Option<Range<u64>>) -> Range<u64> {
        let r = range.unwrap_or(0..self.total);
        r.start.min(self.total)..r.end.min(self.total)
    }
}

/// Which verification route decides acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checker {
    /// The four γ identities.
    Direct,
    /// `ρ̂` and `φ̂` are both representations.
    Rep,
    /// The definition-level oracle.
    Oracle,
    /// All three routes accept.
    All,
}

impl Checker {
    pub fn accepts(self, family: &GammaFamily) -> bool {
        match self {
            Checker::Direct => check_conditions_direct(family).ok,
            Checker::Rep => check_rho_representation(family).ok && check_phi_representation(family).ok,
            Checker::Oracle => oracle_check(family).ok,
            Checker::All => [Checker::Direct, Checker::Rep, Checker::Oracle].iter().all(|c| c.accepts(family)),
        }
    }
}

/// Execution settings for a sweep.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Index range to scan; the whole space when `None`.
    pub range: Option<Range<u64>>,
    /// Worker cap; the rayon default when `None`.
    pub threads: Option<usize>,
    /// Forces a single-threaded scan.
    pub sequential: bool,
}

impl SearchOptions {
    /// Reads the worker cap from `TWISTKIT_THREADS`.
    pub fn from_env() -> Result<Self> {
        let threads = match std::env::var(THREADS_ENV) {
            Ok(v) => Some(parse_threads(&v)?),
            Err(_) => None,
        };
        Ok(Self { threads, ..Self::default() })
    }
}

pub fn parse_threads(text: &str) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Parse(format!("{THREADS_ENV} must be a positive integer, got {text:?}"))),
    }
}

fn chunks(range: Range<u64>) -> Vec<Range<u64>> {
    let mut out = Vec::new();
    let mut start = range.start;
    while start < range.end {
        let end = (start + CHUNK).min(range.end);
        out.push(start..end);
        start = end;
    }
    out
}

/// Applies `f` to every candidate in the configured range and returns the
/// results in index order.
pub fn sweep<T, F>(space: &SearchSpace, options: &SearchOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &GammaFamily) -> T + Sync,
{
    let parts = chunks(space.clamp(options.range.clone()));
    let run = |r: &Range<u64>| -> Vec<T> {
        r.clone()
            .map(|i| f(i, &space.candidate(i).expect("index within space")))
            .collect()
    };
    let nested: Vec<Vec<T>> = if options.sequential {
        parts.iter().map(run).collect()
    } else {
        run_parallel(&parts, options.threads, run)
    };
    nested.into_iter().flatten().collect()
}

#[cfg(feature = "parallel")]
fn run_parallel<T, R>(parts: &[Range<u64>], threads: Option<usize>, run: R) -> Vec<Vec<T>>
where
    T: Send,
    R: Fn(&Range<u64>) -> Vec<T> + Sync,
{
    use rayon::prelude::*;
    let go = || parts.par_iter().map(&run).collect();
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(go),
        None => go(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<T, R>(parts: &[Range<u64>], _threads: Option<usize>, run: R) -> Vec<Vec<T>>
where
    R: Fn(&Range<u64>) -> Vec<T>,
{
    parts.iter().map(run).collect()
}

/// Ascending indices of accepted candidates over the whole space.
pub fn enumerate(space: &SearchSpace, checker: Checker) -> Vec<u64> {
    enumerate_with(space, checker, &SearchOptions::default())
}

pub fn enumerate_with(space: &SearchSpace, checker: Checker, options: &SearchOptions) -> Vec<u64> {
    sweep(space, options, |i, fam| checker.accepts(fam).then_some(i))
        .into_iter()
        .flatten()
        .collect()
}

/// A deliberate corruption of one verification route, used to test that
/// [`cross_validate_with_fault`] notices disagreement.
#[derive(Clone, Debug)]
pub struct Fault {
    /// Flat index `(i·n + j)·n + k` of the structure constant of `B` to
    /// perturb, seen only by the `ρ̂` route.
    pub lambda_index: usize,
}

/// Checks that the direct, representation and oracle routes agree on every
/// candidate. Disagreements are tagged `unanimity` with the candidate index
/// as witness, the three verdicts on the left and the γ entries on the right.
pub fn cross_validate(space: &SearchSpace, options: &SearchOptions) -> VerificationReport {
    cross_validate_inner(space, options, None)
}

pub fn cross_validate_with_fault(space: &SearchSpace, options: &SearchOptions, fault: &Fault) -> VerificationReport {
    cross_validate_inner(space, options, Some(fault))
}

fn cross_validate_inner(space: &SearchSpace, options: &SearchOptions, fault: Option<&Fault>) -> VerificationReport {
    let faulty_lambda = fault.map(|f| {
        let mut lambda = space.b.lambda_flat().to_vec();
        let one = space.b.field().one();
        lambda[f.lambda_index] = &lambda[f.lambda_index] + &one;
        lambda
    });
    let verdicts = sweep(space, options, |i, fam| {
        let direct = check_conditions_direct(fam).ok;
        let rho = match &faulty_lambda {
            Some(l) => crate::twisting::check_rho_with(fam, l).ok,
            None => check_rho_representation(fam).ok,
        };
        let rep = rho && check_phi_representation(fam).ok;
        let oracle = oracle_check(fam).ok;
        if direct == rep && rep == oracle {
            None
        } else {
            Some((i, [direct, rep, oracle], dump(fam)))
        }
    });
    let mut report = ReportBuilder::new();
    for (i, [direct, rep, oracle], gamma) in verdicts.into_iter().flatten() {
        report.fail_text(
            "unanimity",
            &[i as usize],
            vec![format!("direct={direct}"), format!("rep={rep}"), format!("oracle={oracle}")],
            gamma,
        );
    }
    report.finish()
}

fn dump(family: &GammaFamily) -> Vec<String> {
    family
        .gammas()
        .iter()
        .flat_map(|g| g.matrix().data().iter().map(ToString::to_string))
        .collect()
}
