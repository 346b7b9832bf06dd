//! Acceptance suite. Every criterion runs at exact equality and prints one
//! `PASS`/`FAIL` line; the process exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p twistkit --test acceptance`.

mod common;

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistkit::basischange::{check_conjugation, check_induced_morphism, check_rho_morphism, make_morphism, rebase};
use twistkit::catalog::{
    algebras, make_ncd, make_quantum_duplicate, make_truncated, truncated_grid_from_generators, NcdConditions,
    QuantumConditions, TruncatedConditions,
};
use twistkit::extension::{
    check_extension_given_theta, check_extension_staged, check_lemma_blocks, check_remark_delta, direct_sum, restrict,
    split_blocks, Side, Stage,
};
use twistkit::search::{cross_validate, enumerate, sweep, Checker, SearchOptions, SearchSpace};
use twistkit::twisting::{
    build_twisted_product, check_conditions_direct, check_phi_representation, check_rho_representation, oracle_check,
    verify_faithful,
};
use twistkit::{Field, FiniteDimAlgebra, GammaFamily, KMatrix, LinearEndo, TwistingCandidate};

/// Accepted count for `A = B = F_2 × F_2`, pinned from the oracle run.
const N22: usize = 7;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

/// All `d × d` matrices over a prime field, in base-`p` digit order.
fn all_endos(field: Field, d: usize) -> Vec<LinearEndo> {
    let p = field.order().unwrap() as usize;
    let total = p.pow((d * d) as u32);
    (0..total)
        .map(|mut idx| {
            let mut data = vec![field.zero(); d * d];
            for slot in data.iter_mut().rev() {
                *slot = field.element((idx % p) as u32);
                idx /= p;
            }
            LinearEndo::new(KMatrix::new(field, d, d, data).unwrap()).unwrap()
        })
        .collect()
}

struct Shared {
    k2: Arc<FiniteDimAlgebra>,
    accepted22: Vec<GammaFamily>,
    accepted_trunc: Vec<GammaFamily>,
}

fn criterion_1(space: &SearchSpace) -> (Verdict, Vec<u64>) {
    let start = Instant::now();
    let report = cross_validate(space, &SearchOptions::default());
    let elapsed = start.elapsed();
    let accepted = enumerate(space, Checker::Oracle);
    let pass = report.ok && accepted.len() == N22 && elapsed.as_secs() < 300;
    let detail = format!(
        "{} candidates, unanimity {}, oracle accepts {} (pinned {N22}), cross-validation {:.1}s",
        space.len(),
        report.ok,
        accepted.len(),
        elapsed.as_secs_f64()
    );
    (Verdict::new(pass, detail), accepted)
}

fn criterion_2(space: &SearchSpace) -> Verdict {
    let exceptions: Vec<u64> = sweep(space, &SearchOptions::default(), |i, fam| {
        let direct = check_conditions_direct(fam);
        let phi_conds = !direct.has("cond1") && !direct.has("cond2");
        let rho_conds = !direct.has("cond3") && !direct.has("cond4");
        let phi = check_phi_representation(fam).ok;
        let rho = check_rho_representation(fam).ok;
        (phi != phi_conds || rho != rho_conds).then_some(i)
    })
    .into_iter()
    .flatten()
    .collect();
    Verdict::new(exceptions.is_empty(), format!("{} exceptions over {} candidates", exceptions.len(), space.len()))
}

fn criterion_3(accepted: &[GammaFamily]) -> Verdict {
    let mut bad = 0;
    for fam in accepted {
        let c = TwistingCandidate::verified(fam.clone()).unwrap();
        let product_ok = build_twisted_product(&c).map(|p| p.algebra().validate().ok).unwrap_or(false);
        let faithful_ok = verify_faithful(&c).map(|r| r.ok).unwrap_or(false);
        if !(product_ok && faithful_ok) {
            bad += 1;
        }
    }
    Verdict::new(bad == 0 && !accepted.is_empty(), format!("{} accepted candidates, {bad} exceptions", accepted.len()))
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let field = f3();
    let a = Arc::new(algebras::split(field, 2));
    let endos = all_endos(field, 2);
    let (mut mismatches, mut first_mismatch) = (0, None);
    let (mut imp_123, mut imp_564, mut imp_567) = (0, 0, 0);
    for f in &endos {
        for delta in &endos {
            let conds = NcdConditions::evaluate(&a, f, delta);
            let mut c = make_ncd(a.clone(), f.clone(), delta.clone());
            let verdict = c.verify().ok;
            if verdict != conds.all() {
                // the constructor and the full list must agree regardless
                return Verdict::new(false, "checker disagrees with the full condition list");
            }
            if verdict != conds.summary() {
                mismatches += 1;
                first_mismatch.get_or_insert_with(|| format!("f={} delta={}", f.matrix(), delta.matrix()));
            }
            if conds.get(1) && conds.get(2) && !conds.get(3) {
                imp_123 += 1;
            }
            if conds.get(5) && conds.get(6) && !conds.get(4) {
                imp_564 += 1;
            }
            if conds.get(5) && conds.get(6) && !conds.get(7) {
                imp_567 += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && imp_123 == 0 && imp_564 == 0 && elapsed.as_secs() < 60;
    let mut detail = format!(
        "{} pairs, verdict != summary on {mismatches}, (1)&(2)=>(3) violations {imp_123}, (5)&(6)=>(4) violations {imp_564}, \
         (5)&(6)=>(7) violations {imp_567}, {:.1}s",
        endos.len() * endos.len(),
        elapsed.as_secs_f64()
    );
    if let Some(m) = first_mismatch {
        detail.push_str(&format!("; first mismatch {}", m.replace('\n', " ")));
    }
    Verdict::new(pass, detail)
}

fn criterion_5() -> Verdict {
    let field = f3();
    let a = Arc::new(algebras::split(field, 2));
    let endos = all_endos(field, 2);
    let mut exceptions = 0;
    let mut accepted = 0;
    for (alpha, beta) in [(0, -1), (1, 0), (1, 1)] {
        let (alpha, beta) = (field.from_i64(alpha), field.from_i64(beta));
        for f in &endos {
            for delta in &endos {
                let conds = QuantumConditions::evaluate(&a, &alpha, &beta, f, delta);
                let mut c = make_quantum_duplicate(a.clone(), alpha.clone(), beta.clone(), f.clone(), delta.clone());
                let verdict = c.verify().ok;
                accepted += verdict as usize;
                if verdict != conds.summary() || verdict != conds.all() {
                    exceptions += 1;
                }
            }
        }
    }
    Verdict::new(exceptions == 0, format!("3 x {} pairs, {accepted} accepted, {exceptions} exceptions", endos.len() * endos.len()))
}

fn criterion_6(shared_a: &Arc<FiniteDimAlgebra>) -> (Verdict, Vec<GammaFamily>) {
    let start = Instant::now();
    let field = f2();
    let endos = all_endos(field, 2);
    let (mut total, mut exceptions) = (0, 0);
    let mut accepted = Vec::new();
    for g0 in &endos {
        for g1 in &endos {
            for g2 in &endos {
                let grid = truncated_grid_from_generators(field, 2, vec![g0.clone(), g1.clone(), g2.clone()]);
                let c = make_truncated(shared_a.clone(), 3, grid).unwrap();
                let fam = c.family();
                let direct = check_conditions_direct(fam).ok;
                let oracle = oracle_check(fam).ok;
                let listed = TruncatedConditions::evaluate(fam).all();
                total += 1;
                if direct != oracle || direct != listed {
                    exceptions += 1;
                }
                if oracle {
                    accepted.push(fam.clone());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = total == 4096 && exceptions == 0 && elapsed.as_secs() < 60;
    let detail = format!("{total} grids, {} accepted, {exceptions} exceptions, {:.1}s", accepted.len(), elapsed.as_secs_f64());
    (Verdict::new(pass, detail), accepted)
}

fn criterion_7(shared: &Shared) -> Verdict {
    let start = Instant::now();
    let mut problems: Vec<String> = Vec::new();
    let mut note = |cond: bool, what: String| {
        if !cond && problems.len() < 5 {
            problems.push(what);
        }
        cond
    };
    let pool: Vec<TwistingCandidate> = shared
        .accepted22
        .iter()
        .chain(&shared.accepted_trunc)
        .map(|f| TwistingCandidate::verified(f.clone()).unwrap())
        .collect();
    let one = f2().one();
    let (mut pairs, mut perturbations) = (0, 0);
    for (ti, theta) in pool.iter().enumerate() {
        for (ui, ups) in pool.iter().enumerate() {
            pairs += 1;
            let psi = direct_sum(theta, ups).unwrap();
            let fam = psi.family();
            let (n, m) = (theta.family().n(), ups.family().n());
            let tag = format!("pair ({ti},{ui})");
            note(psi.is_verified(), format!("{tag}: direct sum rejected"));
            note(
                check_rho_representation(fam).ok && check_phi_representation(fam).ok && oracle_check(fam).ok,
                format!("{tag}: a checker rejects the direct sum"),
            );
            note(
                restrict(fam, n, Side::B).unwrap().gammas() == theta.family().gammas()
                    && restrict(fam, n, Side::C).unwrap().gammas() == ups.family().gammas(),
                format!("{tag}: restriction does not recover the factors"),
            );
            let blocks = split_blocks(fam, n, m).unwrap();
            note(
                blocks.gamma_grid(0, 1).is_zero() && blocks.gamma_grid(1, 0).is_zero() && blocks.c1.iter().all(|c| c.is_zero()),
                format!("{tag}: cross blocks nonzero"),
            );
            note(
                check_extension_given_theta(fam, n, m).unwrap().ok
                    && check_extension_staged(fam, n, m, Stage::Lemma).unwrap().ok
                    && check_lemma_blocks(fam, n, m).unwrap().ok
                    && check_remark_delta(&psi, n, m).unwrap().ok,
                format!("{tag}: extension checks reject the direct sum"),
            );
            // single-entry perturbations of both cross blocks
            let d = fam.d();
            let cross: Vec<(usize, usize)> =
                (0..m).flat_map(|k| (0..n).map(move |l| (k + n, l))).chain((0..n).flat_map(|k| (0..m).map(move |l| (k, l + n)))).collect();
            for (i, j) in cross {
                for r in 0..d {
                    for c in 0..d {
                        perturbations += 1;
                        let mut bumped = fam.clone();
                        let mut mat = bumped.gamma(i, j).matrix().clone();
                        mat.set(r, c, mat.get(r, c) + &one);
                        bumped.set_gamma(i, j, LinearEndo::new(mat).unwrap());
                        let ext = check_extension_given_theta(&bumped, n, m).unwrap().ok;
                        let direct = check_conditions_direct(&bumped).ok;
                        note(!ext && !direct, format!("{tag}: perturbation at gamma_{i}^{j}[{r},{c}] accepted"));
                    }
                }
            }
        }
    }

    // K² × K over F_2: Θ from the exhaustive run, Υ the flip, all cross blocks free
    let k1 = Arc::new(algebras::split(f2(), 1));
    let endos = all_endos(f2(), 2);
    let (mut searched, mut accepted, mut sums) = (0, 0, 0);
    for theta_fam in &shared.accepted22 {
        let theta = TwistingCandidate::verified(theta_fam.clone()).unwrap();
        let ups = TwistingCandidate::verified(GammaFamily::flip(shared.k2.clone(), k1.clone()).unwrap()).unwrap();
        let base = direct_sum(&theta, &ups).unwrap().into_family();
        for x in 0..endos.len().pow(4) {
            let picks = [x & 15, (x >> 4) & 15, (x >> 8) & 15, (x >> 12) & 15];
            let mut fam = base.clone();
            fam.set_gamma(2, 0, endos[picks[0]].clone());
            fam.set_gamma(2, 1, endos[picks[1]].clone());
            fam.set_gamma(0, 2, endos[picks[2]].clone());
            fam.set_gamma(1, 2, endos[picks[3]].clone());
            searched += 1;
            let direct = check_conditions_direct(&fam).ok;
            let ext = check_extension_given_theta(&fam, 2, 1).unwrap().ok;
            note(direct == ext, format!("K2xK: extension verdict differs from direct at {x}"));
            if direct {
                accepted += 1;
                note(fam.gamma(2, 0).is_zero() && fam.gamma(2, 1).is_zero(), format!("K2xK: accepted with gamma_3^1/gamma_3^2 nonzero at {x}"));
            }
            let is_sum = picks.iter().all(|&p| p == 0);
            sums += is_sum as usize;
            note(direct == is_sum, format!("K2xK: twisting differs from being the direct sum at {x}"));
        }
    }

    // Γ^0_1 = 0 and Υ free: the extension criterion against the direct check
    let (mut lower, mut lower_accepted, mut with_delta) = (0, 0, 0);
    for theta_fam in &shared.accepted22 {
        let theta = TwistingCandidate::verified(theta_fam.clone()).unwrap();
        let ups = TwistingCandidate::verified(GammaFamily::flip(shared.k2.clone(), k1.clone()).unwrap()).unwrap();
        let base = direct_sum(&theta, &ups).unwrap().into_family();
        for x in 0..endos.len().pow(3) {
            let mut fam = base.clone();
            fam.set_gamma(0, 2, endos[x & 15].clone());
            fam.set_gamma(1, 2, endos[(x >> 4) & 15].clone());
            fam.set_gamma(2, 2, endos[(x >> 8) & 15].clone());
            lower += 1;
            let direct = check_conditions_direct(&fam).ok;
            let ext = check_extension_given_theta(&fam, 2, 1).unwrap().ok;
            note(direct == ext, format!("lower: extension verdict differs from direct at {x}"));
            if direct {
                lower_accepted += 1;
                let psi = TwistingCandidate::verified(fam.clone()).unwrap();
                note(check_remark_delta(&psi, 2, 1).unwrap().ok, format!("lower: delta rule fails at {x}"));
                let ups_twisting = check_conditions_direct(&restrict(&fam, 2, Side::C).unwrap()).ok;
                let delta_zero = fam.gamma(0, 2).is_zero() && fam.gamma(1, 2).is_zero();
                with_delta += !delta_zero as usize;
                note(!ups_twisting || delta_zero, format!("lower: both factors twisting but delta nonzero at {x}"));
            }
        }
    }

    let elapsed = start.elapsed();
    let detail = format!(
        "{pairs} direct sums, {perturbations} perturbations; K2xK cross search {searched} candidates, {accepted} accepted \
         ({sums} direct sums); lower-triangular search {lower} candidates, {lower_accepted} accepted, {with_delta} with nonzero Delta; \
         {:.1}s{}",
        elapsed.as_secs_f64(),
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    Verdict::new(problems.is_empty(), detail)
}

fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> KMatrix {
    let p = field.order().unwrap();
    loop {
        let data = (0..n * n).map(|_| field.element(rng.random_range(0..p))).collect();
        let m = KMatrix::new(field, n, n, data).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// Base change of one family by one `P`: verdict preservation, conjugation
/// identities, and the induced-morphism check along `id: B → B'`.
fn base_change_case(fam: &GammaFamily, p: &KMatrix, problems: &mut Vec<String>) {
    let mut fail = |what: &str| {
        if problems.len() < 5 {
            problems.push(format!("{what} for P = {}", p.to_strings().concat().join(" ")));
        }
    };
    let rebased = rebase(fam, p).unwrap();
    let verdict = check_conditions_direct(fam).ok;
    if check_conditions_direct(&rebased).ok != verdict || oracle_check(&rebased).ok != verdict {
        fail("verdict changed");
    }
    if !check_conjugation(fam, p).unwrap().ok {
        fail("conjugation identity");
    }
    if verdict {
        let chi = TwistingCandidate::verified(fam.clone()).unwrap();
        let chi_new = TwistingCandidate::verified(rebased.clone()).unwrap();
        let id = make_morphism(fam.b_arc().clone(), rebased.b_arc().clone(), p.inverse().unwrap()).unwrap();
        let r = check_induced_morphism(&chi, &chi_new, &id).unwrap();
        if !r.ok || !check_rho_morphism(fam, &rebased, &id).unwrap().ok {
            fail("induced morphism along the identity");
        }
        // a mismatched target: the flip on B' under the same identity
        let flip = GammaFamily::flip(rebased.a_arc().clone(), rebased.b_arc().clone()).unwrap();
        let flip = TwistingCandidate::verified(flip).unwrap();
        let r = check_induced_morphism(&chi, &flip, &id).unwrap();
        if r.has("form_disagreement") || r.has("morphism_matrix") != r.has("morphism_gamma") {
            fail("matrix and gamma forms disagree");
        }
        if r.ok != fam.is_flip() {
            fail("mismatched target accepted");
        }
    }
}

fn criterion_8(shared: &Shared) -> Verdict {
    let mut problems = Vec::new();
    let gl2: Vec<KMatrix> = all_endos(f2(), 2).into_iter().map(|e| e.into_matrix()).filter(|m| m.rank() == 2).collect();
    let mut cases = 0;
    for fam in &shared.accepted22 {
        for p in &gl2 {
            base_change_case(fam, p, &mut problems);
            cases += 1;
        }
    }

    // over F_5: the same grids read with coefficients in F_5, plus a
    // non-commutative duplicate known to twist over any field
    let field = f5();
    let a5 = Arc::new(algebras::split(field, 2));
    let b5 = Arc::new(algebras::split(field, 2));
    let lift = |fam: &GammaFamily| {
        let grid = fam
            .grid()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| {
                        let data = g.matrix().data().iter().map(|s| field.parse(&s.to_string()).unwrap()).collect();
                        LinearEndo::new(KMatrix::new(field, 2, 2, data).unwrap()).unwrap()
                    })
                    .collect()
            })
            .collect();
        GammaFamily::new(a5.clone(), b5.clone(), grid).unwrap()
    };
    let mut pool: Vec<GammaFamily> = shared.accepted22.iter().map(lift).collect();
    pool.push(
        make_ncd(a5.clone(), LinearEndo::from_i64(field, &[[1, 0], [1, 0]]), LinearEndo::from_i64(field, &[[0, 0], [-1, 1]]))
            .into_family(),
    );
    let twisting_over_f5 = pool.iter().filter(|f| check_conditions_direct(f).ok).count();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715_7ed5);
    let ps: Vec<KMatrix> = (0..20).map(|_| random_invertible(&mut rng, field, 2)).collect();
    for fam in &pool {
        for p in &ps {
            base_change_case(fam, p, &mut problems);
            cases += 1;
        }
    }
    let detail = format!(
        "{cases} (candidate, P) cases: {} x GL2(F2) and {} x 20 seeded P over F5 ({twisting_over_f5} twisting over F5){}",
        shared.accepted22.len(),
        pool.len(),
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    Verdict::new(problems.is_empty() && twisting_over_f5 > 0, detail)
}

fn criterion_9() -> Verdict {
    let mut mismatched = Vec::new();
    let fixtures = common::golden_fixtures();
    for (name, content) in &fixtures {
        match std::fs::read_to_string(common::golden_dir().join(name)) {
            Ok(expected) if expected == *content => {}
            _ => mismatched.push(*name),
        }
    }
    // the displayed matrices, typed in directly
    let q = Field::Rationals;
    let displayed = [
        (algebras::idempotent_line(q).structure_matrix(1).unwrap(), KMatrix::from_i64(q, &[[0, 0], [1, 1]])),
        (
            algebras::quadratic(q, q.from_i64(2), q.from_i64(3)).structure_matrix(1).unwrap(),
            KMatrix::from_i64(q, &[[0, -3], [1, 2]]),
        ),
        (
            algebras::truncated(q, 4).structure_matrix(1).unwrap(),
            KMatrix::from_i64(q, &[[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
        ),
        (algebras::split(q, 3).structure_matrix(1).unwrap(), KMatrix::from_i64(q, &[[0, 0, 0], [0, 1, 0], [0, 0, 0]])),
    ];
    let wrong = displayed.iter().filter(|(got, want)| got != want).count();
    Verdict::new(
        mismatched.is_empty() && wrong == 0,
        format!("{} fixtures, mismatched {:?}, displayed matrices wrong {wrong}", fixtures.len(), mismatched),
    )
}

fn main() {
    let k2 = Arc::new(algebras::split(f2(), 2));
    let space = SearchSpace::new(k2.clone(), k2.clone()).unwrap();
    let mut results: Vec<(usize, &str, Verdict)> = Vec::new();
    let mut emit = |id: usize, title: &'static str, v: Verdict| {
        println!("{} criterion {id}: {title}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((id, title, v));
    };

    let (v1, accepted_idx) = criterion_1(&space);
    emit(1, "checker equivalence on F2^2 x F2^2", v1);
    let accepted22: Vec<GammaFamily> = accepted_idx.iter().map(|&i| space.candidate(i).unwrap()).collect();
    emit(2, "condition partition", criterion_2(&space));
    emit(3, "product validity and faithfulness", criterion_3(&accepted22));
    emit(4, "non-commutative duplicate predicate", criterion_4());
    emit(5, "quantum duplicate predicate", criterion_5());
    let (v6, accepted_trunc) = criterion_6(&k2);
    emit(6, "truncated polynomial checker vs oracle", v6);
    let shared = Shared { k2: k2.clone(), accepted22, accepted_trunc };
    emit(7, "extension theorems", criterion_7(&shared));
    emit(8, "base change", criterion_8(&shared));
    emit(9, "golden files", criterion_9());

    let failed: Vec<usize> = results.iter().filter(|(_, _, v)| !v.pass).map(|(id, _, _)| *id).collect();
    println!("acceptance: {} passed, {} failed {:?}", results.len() - failed.len(), failed.len(), failed);
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
