use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::instance::{parse_instance, ProblemKind};
use crate::lagrangian::Branch;
use crate::lp::solve_to_vertex;
use crate::scalar::{ratio, Field};
use crate::verify::{generate, naive_nominal, probe_concavity};

const TRIANGLE: &str = include_str!("../../../../instances/triangle.json");
const PARALLEL: &str = include_str!("../../../../instances/parallel_arcs.json");
const SINGLE_EDGE: &str = include_str!("../../../../instances/single_edge.json");

/// `LP(λ)` for flows written out directly: conservation, `z ≤ u`, `z ≤ λc`.
fn flow_lp_value(inst: &Instance, lambda: &Rational) -> Rational {
    let net = inst.network().unwrap();
    let c = inst.linear_costs().unwrap();
    let m = inst.len();
    let obj = (0..m)
        .map(|a| if net.tail[a] == net.source { int(1) } else { int(0) })
        .collect();
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

#[test]
fn nominal_optima() {
    assert_eq!(nu_star(&parse_instance(PARALLEL).unwrap()).unwrap(), 5);
    assert_eq!(nu_star(&parse_instance(TRIANGLE).unwrap()).unwrap(), 2);
    assert_eq!(nu_star(&parse_instance(SINGLE_EDGE).unwrap()).unwrap(), 5);
}

#[test]
fn flow_oracle_examples() {
    let p = parse_instance(PARALLEL).unwrap();
    let e = flow_oracle(&p, &ratio(5, 2)).unwrap();
    assert_eq!((e.payment.clone(), e.cost, e.r.clone()), (int(2), 1, vec![0, 1]));
    assert_eq!(e.value, ratio(9, 2) - ratio(5, 2));
    assert_eq!(flow_oracle(&p, &int(0)).unwrap().value, int(0));
    let e = flow_oracle(&p, &int(3)).unwrap();
    assert_eq!((e.cost, e.payment), (0, int(5)));
}

#[test]
fn matroid_oracle_examples() {
    let t = parse_instance(TRIANGLE).unwrap();
    assert_eq!(matroid_oracle(&t, &ratio(2, 3)).unwrap().value, ratio(4, 3));
    assert_eq!(matroid_oracle(&t, &int(0)).unwrap().value, int(0));
    let e = matroid_oracle(&t, &int(2)).unwrap();
    assert_eq!((e.cost, e.value), (0, int(0)));
}

#[test]
fn bstable_oracle_single_edge() {
    let s = parse_instance(SINGLE_EDGE).unwrap();
    for lambda in [int(0), ratio(1, 2), int(1), ratio(5, 4), int(2), int(5)] {
        let e = bstable_oracle(&s, &lambda).unwrap();
        // Integral covers: y ∈ {0,1} for the edge, r ∈ {0,1} per vertex.
        let mut best: Option<Rational> = None;
        for (y, ri, rj) in cover_choices() {
            if y + ri >= 1 && y + rj >= 1 {
                let v = int(5 * y) + &lambda * int(2 * ri + 2 * rj) - &lambda;
                best = Some(best.map_or(v.clone(), |b: Rational| b.min(v)));
            }
        }
        assert_eq!(e.value, best.unwrap(), "λ = {lambda}");
    }
    assert_eq!(bstable_oracle(&s, &int(1)).unwrap().cost, 4);
    assert_eq!(bstable_oracle(&s, &int(5)).unwrap().payment, int(5));
}

fn cover_choices() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for y in 0..2 {
        for ri in 0..2 {
            for rj in 0..2 {
                out.push((y, ri, rj));
            }
        }
    }
    out
}

#[test]
fn flow_oracle_matches_lp() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for seed in 0..150 {
        let inst = generate(ProblemKind::MaxFlow, rng.gen_range(1..=8), seed);
        let lambda = ratio(rng.gen_range(0..=30), rng.gen_range(1..=6));
        let e = flow_oracle(&inst, &lambda).unwrap();
        assert!(e.is_consistent(inst.budget));
        assert_eq!(e.value, flow_lp_value(&inst, &lambda), "{inst:?} at {lambda}");
    }
}

#[test]
fn matroid_oracle_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for seed in 0..60 {
        let kind = [
            ProblemKind::MatroidCardinality,
            ProblemKind::MatroidWeighted,
            ProblemKind::MatroidSubmodularCost,
        ][seed as usize % 3];
        let inst = generate(kind, rng.gen_range(1..=7), seed);
        let lambda = ratio(rng.gen_range(0..=20), rng.gen_range(1..=5));
        let e = matroid_oracle(&inst, &lambda).unwrap();
        let n = inst.len();
        let min = (0u64..1 << n)
            .map(crate::instance::set_of)
            .map(|a| &lambda * int(inst.set_cost(&a) as i64) + naive_nominal(&inst, &a))
            .min()
            .unwrap();
        assert_eq!(e.value, min - &lambda * int(inst.budget as i64));
    }
}

#[test]
fn bstable_duals_are_integral_and_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for seed in 0..80 {
        let kind = if seed % 2 == 0 { ProblemKind::BipartiteBstable } else { ProblemKind::BipartiteStable };
        let inst = generate(kind, rng.gen_range(2..=7), seed);
        let lambda = ratio(rng.gen_range(0..=20), rng.gen_range(1..=4));
        let e = bstable_oracle(&inst, &lambda).unwrap();
        assert!(e.is_consistent(inst.budget));
        assert!(e.payment.is_integral());
        // Same optimum as the primal LP(λ).
        let sol = solve_to_vertex(&bstable_lagrangian_lp(&inst, &lambda)).unwrap();
        assert_eq!(e.value, sol.objective - &lambda * int(inst.budget as i64));
    }
}

#[test]
fn oracles_are_concave() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for (k, kind) in ProblemKind::ALL.into_iter().enumerate() {
        for seed in 0..15 {
            let inst = generate(kind, rng.gen_range(2..=6), 100 * k as u64 + seed);
            let nu = nu_star(&inst).unwrap() as i64;
            let triples: Vec<_> = (0..10)
                .map(|_| {
                    let mut t: Vec<Rational> =
                        (0..3).map(|_| ratio(rng.gen_range(0..=6 * nu), 6)).collect();
                    t.sort();
                    (t[0].clone(), t[1].clone(), t[2].clone())
                })
                .collect();
            let l = |x: &Rational| lagrangian_value(&inst, x).unwrap();
            assert!(probe_concavity(l, &triples).is_ok(), "{kind}");
        }
    }
}

#[test]
fn framework_on_bundled_instances() {
    let t = parse_instance(TRIANGLE).unwrap();
    let run = solve_framework(&t, &int(1)).unwrap();
    let out = run.outcome.unwrap();
    assert_eq!(out.lambda_star, ratio(2, 3));
    assert_eq!(out.l_star, ratio(4, 3));
    assert_eq!((run.result.value.clone(), run.result.branch), (int(2), Branch::WithinBudget));

    let p = parse_instance(PARALLEL).unwrap();
    let run = solve_framework(&p, &int(1)).unwrap();
    assert_eq!(run.outcome.unwrap().l_star, int(2));
    assert_eq!(run.result.removal, vec![1]);
    assert_eq!(run.result.value, int(2));
    assert_eq!(run.result.branch, Branch::WithinBudget);
}
