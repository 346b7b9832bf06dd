use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use twistkit::basischange::{check_conjugation, rebase};
use twistkit::catalog::{
    make_kn, make_ncd, make_quantum_duplicate, make_truncated, quiver_of, truncated_grid_from_generators, KnConditions,
    NcdConditions, QuantumConditions, TruncatedConditions,
};
use twistkit::extension::{check_extension_staged, direct_sum, restrict, Side, Stage};
use twistkit::json::{gamma_grid, matrix_json, parse_matrix, to_canonical, AlgebraJson, CandidateJson, MatrixJson};
use twistkit::search::{cross_validate, enumerate_with, parse_threads, Checker, SearchOptions, SearchSpace};
use twistkit::twisting::{
    build_twisted_product, check_conditions_direct, check_phi_representation, check_rho_representation, faithful_rep,
    oracle_check, phi_hat, rho_hat, verify_faithful,
};
use twistkit::{EndoMatrix, FiniteDimAlgebra, GammaFamily, LinearEndo, TwistingCandidate, VerificationReport};

use crate::args::{CatalogCommand, CheckerArg, Command, ExtendCommand, SideArg, SpaceArgs, StageArg};

/// What a command produced: a document or JSON lines, and whether every
/// verification it ran passed.
pub enum Output {
    Document(Value),
    Lines(Vec<String>),
}

pub struct Outcome {
    pub output: Output,
    pub ok: bool,
}

impl Outcome {
    fn doc(value: Value, ok: bool) -> Self {
        Self { output: Output::Document(value), ok }
    }

    pub fn render(&self) -> Result<String> {
        Ok(match &self.output {
            Output::Document(v) => to_canonical(v, true)? + "\n",
            Output::Lines(lines) => lines.iter().map(|l| format!("{l}\n")).collect(),
        })
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn read_algebra(path: &Path) -> Result<FiniteDimAlgebra> {
    Ok(read_json::<AlgebraJson>(path)?.to_algebra()?)
}

fn read_family(path: &Path) -> Result<GammaFamily> {
    Ok(read_json::<CandidateJson>(path)?.to_family()?)
}

fn report_json(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn endo_matrix_json(m: &EndoMatrix) -> Value {
    let rows: Vec<Vec<MatrixJson>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| matrix_json(m.get(r, c).matrix())).collect()).collect();
    json!(rows)
}

fn checker(arg: CheckerArg) -> Checker {
    match arg {
        CheckerArg::Direct => Checker::Direct,
        CheckerArg::Rep => Checker::Rep,
        CheckerArg::Oracle => Checker::Oracle,
        CheckerArg::All => Checker::All,
    }
}

fn check(family: &GammaFamily, arg: CheckerArg) -> VerificationReport {
    match arg {
        CheckerArg::Direct => check_conditions_direct(family),
        CheckerArg::Rep => check_rho_representation(family).merge(check_phi_representation(family)),
        CheckerArg::Oracle => oracle_check(family),
        CheckerArg::All => check_conditions_direct(family)
            .merge(check_rho_representation(family))
            .merge(check_phi_representation(family))
            .merge(oracle_check(family)),
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::ValidateAlgebra { algebra } => {
            let r = read_algebra(algebra)?.validate();
            Ok(Outcome::doc(report_json(&r), r.ok))
        }
        Command::CheckTwisting { candidate, checker } => {
            let r = check(&read_family(candidate)?, *checker);
            Ok(Outcome::doc(report_json(&r), r.ok))
        }
        Command::BuildProduct { candidate } => {
            let mut c = TwistingCandidate::new(read_family(candidate)?);
            let r = c.verify();
            if !r.ok {
                return Ok(Outcome::doc(json!({ "report": report_json(&r) }), false));
            }
            let product = build_twisted_product(&c)?;
            let validity = product.algebra().validate();
            let ok = validity.ok;
            Ok(Outcome::doc(
                json!({
                    "algebra": AlgebraJson::from_algebra(product.algebra()),
                    "report": report_json(&r.merge(validity)),
                }),
                ok,
            ))
        }
        Command::Represent { candidate } => represent(&read_family(candidate)?),
        Command::Rebase { candidate, p } => {
            let family = read_family(candidate)?;
            let p = parse_matrix(family.field(), &read_json::<MatrixJson>(p)?)?;
            let rebased = rebase(&family, &p)?;
            let r = check_conjugation(&family, &p)?;
            Ok(Outcome::doc(
                json!({ "candidate": CandidateJson::from_family(&rebased), "conjugation": report_json(&r) }),
                r.ok,
            ))
        }
        Command::Extend(cmd) => extend(cmd),
        Command::Quiver { candidate } => quiver(read_family(candidate)?),
        Command::Catalog(cmd) => catalog(cmd),
        Command::Enumerate { space, checker: arg } => {
            let (space_, options) = search_setup(space)?;
            let accepted = enumerate_with(&space_, checker(*arg), &options);
            let lines = accepted
                .into_iter()
                .map(|index| {
                    let family = space_.candidate(index)?;
                    let gamma = CandidateJson::from_family(&family).gamma;
                    Ok(to_canonical(&json!({ "index": index, "gamma": gamma }), false)?)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome { output: Output::Lines(lines), ok: true })
        }
        Command::CrossValidate { space } => {
            let (space_, options) = search_setup(space)?;
            let r = cross_validate(&space_, &options);
            Ok(Outcome::doc(report_json(&r), r.ok))
        }
    }
}

fn search_setup(args: &SpaceArgs) -> Result<(SearchSpace, SearchOptions)> {
    let a = Arc::new(read_algebra(&args.a)?);
    let b = Arc::new(read_algebra(&args.b)?);
    let space = SearchSpace::new(a, b)?;
    let threads = args.threads.as_deref().map(parse_threads).transpose()?;
    let range = match (args.from, args.to) {
        (None, None) => None,
        (from, to) => {
            let (start, end) = (from.unwrap_or(0), to.unwrap_or(space.len()));
            if start > end {
                bail!("--from {start} exceeds --to {end}");
            }
            Some(start..end)
        }
    };
    Ok((space, SearchOptions { range, threads, sequential: args.sequential }))
}

fn represent(family: &GammaFamily) -> Result<Outcome> {
    let (a, b) = (family.a(), family.b());
    let structure: Vec<MatrixJson> =
        (0..b.dim()).map(|k| b.structure_matrix(k).map(|m| matrix_json(&m))).collect::<twistkit::Result<_>>()?;
    let rho: Vec<Value> = (0..b.dim()).map(|k| rho_hat(family, k).map(|m| endo_matrix_json(&m))).collect::<twistkit::Result<_>>()?;
    let phi: Vec<Value> =
        (0..a.dim()).map(|x| phi_hat(family, &a.basis_vector(x)).map(|m| json!(m.to_strings()))).collect::<twistkit::Result<_>>()?;
    let mut doc = json!({
        "structure_matrices": structure,
        "rho_hat": rho,
        "phi_hat": phi,
    });
    let mut candidate = TwistingCandidate::new(family.clone());
    let r = candidate.verify();
    if !r.ok {
        doc["report"] = report_json(&r);
        return Ok(Outcome::doc(doc, false));
    }
    // φ_χ(b_k ⊗ 1) is the structure matrix of b_k times 1_A
    doc["faithful_on_B"] = json!(structure);
    let images: Vec<Value> = faithful_rep(&candidate)?.iter().map(|m| json!(m.to_strings())).collect();
    doc["faithful"] = json!(images);
    let faithful = verify_faithful(&candidate)?;
    let ok = faithful.ok;
    doc["report"] = report_json(&r.merge(faithful));
    Ok(Outcome::doc(doc, ok))
}

fn extend(cmd: &ExtendCommand) -> Result<Outcome> {
    match cmd {
        ExtendCommand::DirectSum { theta, upsilon } => {
            let mut t = TwistingCandidate::new(read_family(theta)?);
            let mut u = TwistingCandidate::new(read_family(upsilon)?);
            let (rt, ru) = (t.verify(), u.verify());
            if !(rt.ok && ru.ok) {
                return Ok(Outcome::doc(json!({ "theta": report_json(&rt), "upsilon": report_json(&ru) }), false));
            }
            let psi = direct_sum(&t, &u)?;
            Ok(Outcome::doc(json!({ "candidate": CandidateJson::from_family(psi.family()) }), psi.is_verified()))
        }
        ExtendCommand::Restrict { psi, n, side } => {
            let side = match side {
                SideArg::B => Side::B,
                SideArg::C => Side::C,
            };
            let part = restrict(&read_family(psi)?, *n, side)?;
            Ok(Outcome::doc(json!({ "candidate": CandidateJson::from_family(&part) }), true))
        }
        ExtendCommand::Check { psi, n, stage } => {
            let family = read_family(psi)?;
            let m = family.n().checked_sub(*n).ok_or_else(|| anyhow!("--n {n} exceeds dim B = {}", family.n()))?;
            let stage = match stage {
                StageArg::Lemma => Stage::Lemma,
                StageArg::Proposition => Stage::Proposition,
            };
            match check_extension_staged(&family, *n, m, stage) {
                Ok(r) => Ok(Outcome::doc(report_json(&r), r.ok)),
                Err(twistkit::Error::ThetaNotTwisting(r)) => {
                    Ok(Outcome::doc(json!({ "theta": report_json(&r), "ok": false, "failures": [] }), false))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn quiver(family: GammaFamily) -> Result<Outcome> {
    let mut c = TwistingCandidate::new(family);
    let r = c.verify();
    let (q, rep) = quiver_of(&c)?;
    let adm = rep.admissibility(c.family())?;
    let maps: serde_json::Map<String, Value> =
        rep.maps.iter().map(|((j, i), g)| (format!("{j}->{i}"), json!(matrix_json(g.matrix())))).collect();
    Ok(Outcome::doc(
        json!({
            "vertices": q.vertices,
            "arrows": q.arrows,
            "maps": maps,
            "admissibility": {
                "splitted": adm.splitted,
                "unital": adm.unital,
                "factorizable": adm.factorizable,
            },
            "report": report_json(&r),
        }),
        r.ok && adm.holds(),
    ))
}

#[derive(Deserialize)]
struct DuplicateParams {
    #[serde(rename = "A")]
    a: AlgebraJson,
    f: MatrixJson,
    delta: MatrixJson,
    #[serde(default)]
    alpha: Option<String>,
    #[serde(default)]
    beta: Option<String>,
}

#[derive(Deserialize)]
struct GridParams {
    #[serde(rename = "A")]
    a: AlgebraJson,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    gamma: Option<Vec<Vec<MatrixJson>>>,
    #[serde(default)]
    generators: Option<Vec<MatrixJson>>,
}

fn endo(field: twistkit::Field, m: &MatrixJson) -> Result<LinearEndo> {
    Ok(LinearEndo::new(parse_matrix(field, m)?)?)
}

fn catalog(cmd: &CatalogCommand) -> Result<Outcome> {
    let (mut candidate, conditions) = match cmd {
        CatalogCommand::Ncd { params } => {
            let p: DuplicateParams = read_json(params)?;
            let a = Arc::new(p.a.to_algebra()?);
            let (f, delta) = (endo(a.field(), &p.f)?, endo(a.field(), &p.delta)?);
            let conds = NcdConditions::evaluate(&a, &f, &delta);
            let c = make_ncd(a, f, delta);
            (c, json!({ "list": conds.c, "summary": conds.summary() }))
        }
        CatalogCommand::Qdup { params } => {
            let p: DuplicateParams = read_json(params)?;
            let a = Arc::new(p.a.to_algebra()?);
            let field = a.field();
            let alpha = field.parse(p.alpha.as_deref().ok_or_else(|| anyhow!("missing \"alpha\""))?)?;
            let beta = field.parse(p.beta.as_deref().ok_or_else(|| anyhow!("missing \"beta\""))?)?;
            let (f, delta) = (endo(field, &p.f)?, endo(field, &p.delta)?);
            let conds = QuantumConditions::evaluate(&a, &alpha, &beta, &f, &delta);
            let c = make_quantum_duplicate(a, alpha, beta, f, delta);
            (
                c,
                json!({
                    "list": conds.c,
                    "p_of_delta": conds.p_of_delta,
                    "anticommutator": conds.anticommutator,
                    "summary": conds.summary(),
                }),
            )
        }
        CatalogCommand::Kn { params } => {
            let p: GridParams = read_json(params)?;
            let a = Arc::new(p.a.to_algebra()?);
            let grid = gamma_grid(a.field(), p.gamma.as_ref().ok_or_else(|| anyhow!("missing \"gamma\""))?)?;
            let n = p.n.unwrap_or(grid.len());
            let c = make_kn(a, n, grid)?;
            let conds = KnConditions::evaluate(c.family());
            (
                c,
                json!({
                    "idempotent": conds.idempotent,
                    "row_sums": conds.row_sums,
                    "multiplicative": conds.multiplicative,
                    "units": conds.units,
                }),
            )
        }
        CatalogCommand::Trunc { params } => {
            let p: GridParams = read_json(params)?;
            let a = Arc::new(p.a.to_algebra()?);
            let field = a.field();
            let grid = match (&p.gamma, &p.generators) {
                (Some(g), None) => gamma_grid(field, g)?,
                (None, Some(gens)) => {
                    let gens = gens.iter().map(|m| endo(field, m)).collect::<Result<Vec<_>>>()?;
                    truncated_grid_from_generators(field, a.dim(), gens)
                }
                _ => bail!("give exactly one of \"gamma\" and \"generators\""),
            };
            let n = p.n.unwrap_or(grid.len());
            let c = make_truncated(a, n, grid)?;
            let conds = TruncatedConditions::evaluate(c.family());
            (
                c,
                json!({
                    "first_row": conds.first_row,
                    "convolution": conds.convolution,
                    "vanishing": conds.vanishing,
                    "multiplicative": conds.multiplicative,
                    "units": conds.units,
                }),
            )
        }
    };
    let r = candidate.verify();
    Ok(Outcome::doc(
        json!({
            "candidate": CandidateJson::from_family(candidate.family()),
            "conditions": conditions,
            "report": report_json(&r),
        }),
        r.ok,
    ))
}
