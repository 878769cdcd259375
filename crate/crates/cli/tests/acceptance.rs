//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p interdict-cli --test acceptance`.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use interdict::exact::solve_exact;
use interdict::instance::{parse_instance, serialize_instance, Instance, Payload, ProblemKind};
use interdict::lagrangian::{iteration_count, psi, psi_vector};
use interdict::lp::{integral_dual, solve_to_vertex, LinearProgram, Relation, Sense};
use interdict::oracles::{
    bstable_lagrangian_lp, bstable_oracle, flow_oracle, lagrangian_value, nu_star, solve_framework,
};
use interdict::ptas::{build_cover_lp, hurkens_check, solve_ptas};
use interdict::scalar::{int, ratio, Field};
use interdict::verify::{brute_force_opt, check_guarantee, generate, kink_audit, naive_nominal};
use interdict::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{instance, run, strip_times};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    Outcome {
        pass: failures.is_empty(),
        detail: match failures.first() {
            None => summary,
            Some(first) => format!("{summary}; {} failures, first: {first}", failures.len()),
        },
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

const FRAMEWORK_KINDS: [ProblemKind; 5] = [
    ProblemKind::MatroidCardinality,
    ProblemKind::MatroidWeighted,
    ProblemKind::MatroidSubmodularCost,
    ProblemKind::MaxFlow,
    ProblemKind::BipartiteBstable,
];

fn alphas() -> [Rational; 3] {
    [ratio(1, 2), int(1), int(2)]
}

/// Guarantee and lower bound on 200 instances per kind, |N| ≤ 10.
fn criteria_1_and_2() -> (Outcome, Outcome) {
    let start = Instant::now();
    let per_kind: Vec<(Vec<String>, Vec<String>, usize)> = std::thread::scope(|s| {
        let handles: Vec<_> = FRAMEWORK_KINDS
            .iter()
            .enumerate()
            .map(|(k, &kind)| {
                s.spawn(move || {
                    let (mut guarantee, mut bound, mut runs) = (Vec::new(), Vec::new(), 0);
                    for seed in 0..200u64 {
                        let inst = generate(kind, 2 + seed as usize % 9, 10_000 * k as u64 + seed);
                        assert!(inst.len() <= 10);
                        let brute = brute_force_opt(&inst).unwrap();
                        for alpha in alphas() {
                            runs += 1;
                            let tag = format!("{kind} seed {seed} α {alpha}");
                            let run = match solve_framework(&inst, &alpha) {
                                Ok(r) => r,
                                Err(e) => {
                                    guarantee.push(format!("{tag}: {e}"));
                                    continue;
                                }
                            };
                            if let Err(reason) = check_guarantee(&run.result, &brute, &alpha, inst.budget) {
                                guarantee.push(format!("{tag}: {reason}"));
                            }
                            let lower = run.result.lower_bound.clone().unwrap_or_else(|| int(0));
                            if lower > brute.opt {
                                bound.push(format!("{tag}: L* = {lower} > OPT = {}", brute.opt));
                            }
                        }
                    }
                    (guarantee, bound, runs)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let elapsed = start.elapsed();
    let runs: usize = per_kind.iter().map(|p| p.2).sum();
    let guarantee: Vec<String> = per_kind.iter().flat_map(|p| p.0.clone()).collect();
    let bound: Vec<String> = per_kind.iter().flat_map(|p| p.1.clone()).collect();
    let mut first = outcome(&guarantee, format!("{runs} framework runs in {}", secs(elapsed)));
    if elapsed >= Duration::from_secs(300) {
        first.pass = false;
        first.detail.push_str("; exceeds 5 minutes");
    }
    (first, outcome(&bound, format!("L(λ*) ≤ OPT checked on {runs} runs")))
}

/// Small instances with `c(N) ≤ 6` and `ν* ≤ 6` across every kind, leaving
/// out the cases `B ≥ c(N)` and `ν* = 0` that never reach the bisection.
fn small_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for (k, kind) in ProblemKind::ALL.into_iter().enumerate() {
        let mut seed = 0;
        let mut taken = 0;
        while taken < 40 && seed < 2000 {
            let inst = generate(kind, 2 + seed as usize % 3, 50_000 + 5000 * k as u64 + seed);
            seed += 1;
            let nu = nu_star(&inst).unwrap();
            if inst.total_cost() <= 6 && inst.budget < inst.total_cost() && nu <= 6 && nu > 0 {
                out.push(inst);
                taken += 1;
            }
        }
    }
    out
}

/// Iteration count and maximality of λ* over every candidate kink; the width
/// of consecutive kinks.
fn criteria_3_and_4() -> (Outcome, Outcome) {
    let instances = small_instances();
    let (mut fidelity, mut width) = (Vec::new(), Vec::new());
    let mut bisected = 0;
    for inst in &instances {
        let nu = nu_star(inst).unwrap();
        let total = inst.total_cost();
        let l = |x: &Rational| lagrangian_value(inst, x).unwrap();
        let audit = kink_audit(l, nu, total);
        let tag = format!("{} {:?}", inst.kind, inst.ground);
        match solve_framework(inst, &int(1)).unwrap().outcome {
            Some(out) => {
                bisected += 1;
                let expected = iteration_count(nu, total);
                if out.iterations != expected {
                    fidelity.push(format!("{tag}: {} iterations, expected {expected}", out.iterations));
                }
                if out.l_star < audit.max_value {
                    fidelity.push(format!("{tag}: L(λ*) = {} < max {}", out.l_star, audit.max_value));
                }
            }
            None => fidelity.push(format!("{tag}: bisection skipped")),
        }
        let floor = Rational::new(1.into(), (total * total).into());
        for w in audit.kinks.windows(2) {
            if &w[1] - &w[0] < floor {
                width.push(format!("{tag}: kinks {} and {} closer than 1/{}", w[0], w[1], total * total));
            }
        }
    }
    (
        outcome(&fidelity, format!("{bisected} instances, every candidate kink enumerated")),
        outcome(&width, format!("{} instances audited", instances.len())),
    )
}

/// Exact algorithm against brute force.
fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases: Vec<(String, Instance)> = (0..300u64)
        .map(|seed| {
            let inst = generate(ProblemKind::BipartiteStable, 2 + seed as usize % 7, 70_000 + seed);
            (format!("seed {seed}"), inst)
        })
        .collect();
    for name in ["path3.json", "cycle4.json"] {
        let text = std::fs::read_to_string(instance(name)).unwrap();
        cases.push((name.into(), parse_instance(&text).unwrap()));
    }
    for (tag, inst) in &cases {
        let run = match solve_exact(inst) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        let brute = brute_force_opt(inst).unwrap();
        if run.result.value != brute.opt || run.result.budget_used > inst.budget {
            failures.push(format!("{tag}: exact {} vs OPT {}", run.result.value, brute.opt));
        }
        if run.result.value != psi(inst, &run.result.removal).unwrap() {
            failures.push(format!("{tag}: reported value differs from ψ(R)"));
        }
        if tag == "path3.json" && brute.opt != int(1) {
            failures.push("path3.json: OPT is not 1".into());
        }
    }
    let elapsed = start.elapsed();
    let mut out = outcome(&failures, format!("{} instances in {}", cases.len(), secs(elapsed)));
    if elapsed >= Duration::from_secs(120) {
        out.pass = false;
        out.detail.push_str("; exceeds 2 minutes");
    }
    out
}

/// A random b-stable instance with `b ≤ 3`.
fn ptas_instance(seed: u64) -> Instance {
    let mut inst = generate(ProblemKind::BipartiteBstable, 2 + seed as usize % 7, 90_000 + seed);
    if let Payload::Bipartite(g) = &mut inst.payload {
        for e in &mut g.edges {
            e.b = 1 + (e.b - 1) % 3;
        }
    }
    inst
}

/// PTAS guarantee, the `b(F²)` bound and the Hurkens structure.
fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut extractions = 0;
    let mut half_time = Duration::ZERO;
    for eps in [int(2), int(1), ratio(1, 2)] {
        let start = Instant::now();
        for seed in 0..100u64 {
            let inst = ptas_instance(seed);
            let tag = format!("seed {seed} ε {eps}");
            let run = match solve_ptas(&inst, &eps) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let brute = brute_force_opt(&inst).unwrap();
            if run.result.value > (int(1) + &eps) * &brute.opt {
                failures.push(format!("{tag}: value {} > (1+ε)·{}", run.result.value, brute.opt));
            }
            if run.result.budget_used > inst.budget {
                failures.push(format!("{tag}: over budget"));
            }
            let (aux, _) = build_cover_lp(&inst).unwrap();
            for c in &run.candidates {
                let Some(p) = &c.pair else { continue };
                extractions += 1;
                if int(p.b2 as i64) > &p.lp_value + int(2 * p.b_max as i64) {
                    failures.push(format!("{tag}: b(F²) = {} > {} + 2·{}", p.b2, p.lp_value, p.b_max));
                }
                if !hurkens_check(&aux, &p.f1, &p.f2) {
                    failures.push(format!("{tag}: F¹ΔF² is not one alternating path or cycle"));
                }
            }
        }
        if eps == ratio(1, 2) {
            half_time = start.elapsed();
        }
    }
    let mut out = outcome(
        &failures,
        format!("300 runs, {extractions} extractions, ε = 1/2 in {}", secs(half_time)),
    );
    if half_time >= Duration::from_secs(600) {
        out.pass = false;
        out.detail.push_str("; exceeds 10 minutes");
    }
    out
}

/// `LP(λ)` for flows, built directly from the network.
fn flow_lp_value(inst: &Instance, lambda: &Rational) -> Rational {
    let Payload::Flow(net) = &inst.payload else { unreachable!() };
    let c = inst.linear_costs().unwrap();
    let m = inst.len();
    let obj = (0..m).map(|a| int((net.tail[a] == net.source) as i64 - (net.head[a] == net.source) as i64)).collect();
    let mut lp = LinearProgram::new(Sense::Maximize, obj);
    for a in 0..m {
        lp.constrain_sparse([(a, int(1))], Relation::Le, int(net.capacity[a] as i64));
        lp.constrain_sparse([(a, int(1))], Relation::Le, lambda * int(c[a] as i64));
    }
    for v in 0..net.vertices.len() {
        if v != net.source && v != net.sink {
            let terms: Vec<(usize, Rational)> = (0..m)
                .filter(|&a| (net.head[a] == v) != (net.tail[a] == v))
                .map(|a| (a, if net.head[a] == v { int(1) } else { int(-1) }))
                .collect();
            lp.constrain_sparse(terms, Relation::Eq, int(0));
        }
    }
    solve_to_vertex(&lp).unwrap().objective - lambda * int(inst.budget as i64)
}

/// Flow oracle against the LP, and integrality of the b-stable duals.
fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for seed in 0..500u64 {
        let inst = generate(ProblemKind::MaxFlow, rng.gen_range(1..=9), 110_000 + seed);
        let lambda = ratio(rng.gen_range(0..=40), rng.gen_range(1..=8));
        let e = flow_oracle(&inst, &lambda).unwrap();
        let lp = flow_lp_value(&inst, &lambda);
        if e.value != lp || !e.is_consistent(inst.budget) {
            failures.push(format!("flow seed {seed} λ {lambda}: oracle {} vs LP {lp}", e.value));
        }
    }
    let mut probes = 0;
    for seed in 0..250u64 {
        let kind = if seed % 2 == 0 { ProblemKind::BipartiteBstable } else { ProblemKind::BipartiteStable };
        let inst = generate(kind, rng.gen_range(2..=8), 120_000 + seed);
        let lambda = ratio(rng.gen_range(0..=30), rng.gen_range(1..=6));
        probes += 1;
        let lp = bstable_lagrangian_lp(&inst, &lambda);
        let sol = integral_dual(&lp).unwrap();
        let e = bstable_oracle(&inst, &lambda).unwrap();
        if !sol.all_duals().all(Field::is_integral) || !e.payment.is_integral() {
            failures.push(format!("{kind} seed {seed} λ {lambda}: fractional dual"));
        }
        if e.value != &sol.objective - &lambda * int(inst.budget as i64) {
            failures.push(format!("{kind} seed {seed} λ {lambda}: dual value differs from LP"));
        }
    }
    outcome(&failures, format!("500 flow pairs, {probes} b-stable probes"))
}

/// `ψ(r) = ψ(r∧1)` and `φ(R) = ψ(χ^R)`.
fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for seed in 0..500u64 {
        let kind = ProblemKind::ALL[seed as usize % ProblemKind::ALL.len()];
        let inst = generate(kind, rng.gen_range(2..=7), 130_000 + seed);
        let n = inst.len();
        let r: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let clipped: Vec<u64> = r.iter().map(|&x| x.min(1)).collect();
        if psi_vector(&inst, &r).unwrap() != psi_vector(&inst, &clipped).unwrap() {
            failures.push(format!("{kind} seed {seed}: ψ(r) ≠ ψ(r∧1)"));
        }
        let removal: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let chi: Vec<u64> = (0..n).map(|e| removal.contains(&e) as u64).collect();
        let phi = psi(&inst, &removal).unwrap();
        if phi != psi_vector(&inst, &chi).unwrap() || phi != naive_nominal(&inst, &removal) {
            failures.push(format!("{kind} seed {seed}: φ(R) ≠ ψ(χ^R)"));
        }
    }
    outcome(&failures, "500 pairs".into())
}

/// Every command twice on the same inputs, compared byte for byte after
/// zeroing the wall-time fields.
fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    for (k, kind) in ProblemKind::ALL.into_iter().enumerate() {
        for seed in 0..2u64 {
            let inst = generate(kind, 5, 140_000 + 10 * k as u64 + seed);
            let path = dir.path().join(format!("{}_{seed}.json", kind.name()));
            std::fs::write(path, serialize_instance(&inst)).unwrap();
        }
    }
    let file = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut commands: Vec<Vec<String>> = Vec::new();
    for kind in ProblemKind::ALL {
        let f = file(&format!("{}_0.json", kind.name()));
        commands.push(vec!["solve".into(), "--input".into(), f.clone()]);
        commands.push(vec!["solve".into(), "--input".into(), f.clone(), "--method".into(), "brute".into()]);
        commands.push(vec!["verify".into(), "--input".into(), f.clone(), "--alpha".into(), "1/2".into()]);
        commands.push(vec!["oracle".into(), "--input".into(), f.clone(), "--lambda".into(), "1/3".into(), "--lambda".into(), "2".into()]);
        if kind.is_bipartite() {
            commands.push(vec!["solve".into(), "--input".into(), f.clone(), "--method".into(), "ptas".into(), "--epsilon".into(), "1".into()]);
        }
        if kind == ProblemKind::BipartiteStable {
            commands.push(vec!["solve".into(), "--input".into(), f, "--method".into(), "exact".into()]);
        }
    }
    let mut failures = Vec::new();
    for args in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        if a.status.code() != b.status.code() || a.stderr != b.stderr {
            failures.push(format!("{args:?}: status or stderr differs"));
        }
        let (sa, sb) = (String::from_utf8_lossy(&a.stdout), String::from_utf8_lossy(&b.stdout));
        if strip_times(&sa) != strip_times(&sb) {
            failures.push(format!("{args:?}: stdout differs"));
        }
    }
    let out_dir = tempfile::tempdir().unwrap();
    let csv: Vec<String> = (0..2)
        .map(|k| {
            let out = out_dir.path().join(format!("bench{k}.csv"));
            let o = run(&["bench", "--dir", dir.path().to_str().unwrap(), "--out", out.to_str().unwrap()]);
            assert!(o.status.success());
            strip_times(&std::fs::read_to_string(Path::new(&out)).unwrap())
        })
        .collect();
    if csv[0] != csv[1] {
        failures.push("bench CSV differs".into());
    }
    outcome(&failures, format!("{} commands plus bench, each run twice", commands.len()))
}

fn main() {
    let (c1, c2) = criteria_1_and_2();
    let (c3, c4) = criteria_3_and_4();
    let results = [
        ("1", "framework guarantee", c1),
        ("2", "lower bound", c2),
        ("3", "bisection fidelity", c3),
        ("4", "segment width", c4),
        ("5", "exact equivalence", criterion_5()),
        ("6", "ptas guarantee", criterion_6()),
        ("7", "oracle equivalence", criterion_7()),
        ("8", "framework identities", criterion_8()),
        ("9", "determinism", criterion_9()),
    ];
    let mut all = true;
    for (id, name, o) in &results {
        all &= o.pass;
        println!("criterion {id} ({name}): {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
