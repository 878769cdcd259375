use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use num_traits::Signed;

use crate::scalar::{int, ratio, Field};

fn parallel(c1: Rational, c2: Rational) -> CapacitatedNetwork {
    let mut net = CapacitatedNetwork::new(2, 0, 1);
    net.add_arc(0, 1, c1);
    net.add_arc(0, 1, c2);
    net
}

/// Minimum cut capacity by enumerating every source side.
fn brute_min_cut(net: &CapacitatedNetwork) -> Rational {
    let n = net.num_vertices;
    (0u32..1 << n)
        .filter(|m| m >> net.source & 1 == 1 && m >> net.sink & 1 == 0)
        .map(|m| {
            net.arcs
                .iter()
                .filter(|a| m >> a.tail & 1 == 1 && m >> a.head & 1 == 0)
                .fold(int(0), |acc, a| acc + &a.capacity)
        })
        .min()
        .unwrap()
}

/// Cheapest integral flow of the given value by enumerating arc values.
fn brute_min_cost(net: &CapacitatedNetwork, value: i64) -> Option<Rational> {
    let m = net.arcs.len();
    let lo: Vec<i64> = net.arcs.iter().map(|a| crate::scalar::to_i64(&a.lower).unwrap()).collect();
    let hi: Vec<i64> = net.arcs.iter().map(|a| crate::scalar::to_i64(&a.capacity).unwrap()).collect();
    let mut x = lo.clone();
    let mut best: Option<Rational> = None;
    loop {
        let flow: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        if net.is_feasible_flow(&flow) && net.excess_out(&flow, net.source) == int(value) {
            let cost = net
                .arcs
                .iter()
                .zip(&flow)
                .fold(int(0), |acc, (a, f)| acc + &a.cost * f);
            if best.as_ref().map_or(true, |b| cost < *b) {
                best = Some(cost);
            }
        }
        let mut k = 0;
        while k < m && x[k] == hi[k] {
            x[k] = lo[k];
            k += 1;
        }
        if k == m {
            return best;
        }
        x[k] += 1;
    }
}

fn random_network(rng: &mut ChaCha8Rng, n: usize, m: usize, max_cap: i64) -> CapacitatedNetwork {
    let mut net = CapacitatedNetwork::new(n, 0, n - 1);
    for _ in 0..m {
        let tail = rng.gen_range(0..n);
        let mut head = rng.gen_range(0..n - 1);
        if head >= tail {
            head += 1;
        }
        let cap = if rng.gen_bool(0.3) {
            ratio(rng.gen_range(0..=2 * max_cap), 2)
        } else {
            int(rng.gen_range(0..=max_cap))
        };
        net.add_arc(tail, head, cap);
    }
    net
}

#[test]
fn two_parallel_arcs() {
    let r = max_flow(&parallel(int(2), int(3)));
    assert_eq!(r.value, int(5));
    assert_eq!(r.cut.source_side, vec![true, false]);
    assert_eq!(r.cut.arcs, vec![0, 1]);
}

#[test]
fn parallel_arcs_with_lagrangian_capacities() {
    // min(u, λc) with λ = 5/2, c = (1, 1).
    let lambda = ratio(5, 2);
    let r = max_flow(&parallel(int(2).min(lambda.clone()), int(3).min(lambda)));
    assert_eq!(r.value, ratio(9, 2));
}

#[test]
fn zero_capacity() {
    assert_eq!(max_flow(&parallel(int(0), int(0))).value, int(0));
}

#[test]
fn max_flow_equals_min_cut_on_random_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=10);
        let net = random_network(&mut rng, n, m, 4);
        let r = max_flow(&net);
        assert!(net.is_feasible_flow(&r.flow));
        assert_eq!(net.excess_out(&r.flow, net.source), r.value);
        assert_eq!(r.cut.capacity, r.value);
        assert_eq!(brute_min_cut(&net), r.value);
        assert!(r.cut.source_side[net.source] && !r.cut.source_side[net.sink]);
    }
}

#[test]
fn assignment_of_size_two() {
    // s=0, workers 1,2, jobs 3,4, t=5.
    let mut net = CapacitatedNetwork::new(6, 0, 5);
    for w in [1, 2] {
        net.add_arc(0, w, int(1));
    }
    for (w, j, c) in [(1, 3, 1), (1, 4, 5), (2, 3, 5), (2, 4, 1)] {
        net.add_arc_with(w, j, int(1), int(0), int(c));
    }
    for j in [3, 4] {
        net.add_arc(j, 5, int(1));
    }
    let r = min_cost_flow(&net, &int(2)).unwrap();
    assert_eq!(r.cost, int(2));
    assert!(r.flow.iter().all(Field::is_integral));
}

#[test]
fn value_beyond_the_cut_is_infeasible() {
    assert!(min_cost_flow(&parallel(int(2), int(3)), &int(6)).is_none());
}

#[test]
fn lower_bound_forces_an_expensive_arc() {
    let mut net = CapacitatedNetwork::new(3, 0, 2);
    net.add_arc_with(0, 2, int(2), int(0), int(1));
    net.add_arc_with(0, 1, int(2), int(1), int(5));
    net.add_arc_with(1, 2, int(2), int(0), int(0));
    let r = min_cost_flow(&net, &int(2)).unwrap();
    assert_eq!(r.cost, int(6));
    assert_eq!(r.flow, vec![int(1), int(1), int(1)]);
}

#[test]
fn min_cost_flow_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut feasible = 0;
    for _ in 0..300 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=8);
        // Acyclic orientation (tail < head) rules out negative cycles.
        let mut net = CapacitatedNetwork::new(n, 0, n - 1);
        for _ in 0..m {
            let tail = rng.gen_range(0..n - 1);
            let head = rng.gen_range(tail + 1..n);
            let cap = rng.gen_range(0..=2);
            let lower = if rng.gen_bool(0.2) { rng.gen_range(0..=cap) } else { 0 };
            let cost = rng.gen_range(-3..=5);
            net.add_arc_with(tail, head, int(cap), int(lower), int(cost));
        }
        let value = rng.gen_range(0..=3);
        let expected = brute_min_cost(&net, value);
        let got = min_cost_flow(&net, &int(value));
        match (&expected, &got) {
            (None, None) => {}
            (Some(c), Some(r)) => {
                feasible += 1;
                assert_eq!(*c, r.cost);
                assert!(net.is_feasible_flow(&r.flow));
                assert_eq!(net.excess_out(&r.flow, 0), int(value));
                assert!(r.flow.iter().all(Field::is_integral));
            }
            _ => panic!("feasibility disagrees: {expected:?} vs {got:?} on {net:?}"),
        }
    }
    assert!(feasible > 50);
}

fn assert_decomposes(net: &CapacitatedNetwork, flow: &[Rational]) -> usize {
    let d = path_decompose(net, flow);
    assert!(d.paths.len() <= net.arcs.len());
    let mut sum = vec![int(0); net.arcs.len()];
    for (path, w) in &d.paths {
        assert!(w.is_positive());
        assert_eq!(net.arcs[path[0]].tail, net.source);
        assert_eq!(net.arcs[*path.last().unwrap()].head, net.sink);
        for pair in path.windows(2) {
            assert_eq!(net.arcs[pair[0]].head, net.arcs[pair[1]].tail);
        }
        for &a in path {
            sum[a] += w;
        }
    }
    assert_eq!(sum, d.acyclic);
    d.paths.len()
}

#[test]
fn single_path_and_parallel_decompositions() {
    let mut net = CapacitatedNetwork::new(3, 0, 2);
    net.add_arc(0, 1, int(4));
    net.add_arc(1, 2, int(4));
    let d = path_decompose(&net, &[int(3), int(3)]);
    assert_eq!(d.paths, vec![(vec![0, 1], int(3))]);

    let d = path_decompose(&parallel(int(2), int(3)), &[int(2), int(3)]);
    assert_eq!(d.paths, vec![(vec![0], int(2)), (vec![1], int(3))]);
}

#[test]
fn diamond_decomposition() {
    // s=0 → {1,2} → t=3 plus the cross arc 1→2.
    let mut net = CapacitatedNetwork::new(4, 0, 3);
    for (u, v) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
        net.add_arc(u, v, int(5));
    }
    let flow = [int(3), ratio(3, 2), int(1), int(2), ratio(5, 2)];
    assert!(assert_decomposes(&net, &flow) <= 4);
}

#[test]
fn cycles_are_cancelled() {
    // s→a→t plus the cycle a→b→a.
    let mut net = CapacitatedNetwork::new(4, 0, 3);
    net.add_arc(0, 1, int(5));
    net.add_arc(1, 3, int(5));
    net.add_arc(1, 2, int(5));
    net.add_arc(2, 1, int(5));
    let d = path_decompose(&net, &[int(2), int(2), int(1), int(1)]);
    assert_eq!(d.acyclic, vec![int(2), int(2), int(0), int(0)]);
    assert_eq!(d.paths, vec![(vec![0, 1], int(2))]);
}

#[test]
fn max_flows_decompose_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=10);
        let mut net = random_network(&mut rng, n, m, 4);
        net.arcs.retain(|a| a.head != net.source);
        let r = max_flow(&net);
        assert_decomposes(&net, &r.flow);
        let total = path_decompose(&net, &r.flow)
            .paths
            .iter()
            .fold(int(0), |acc, (_, w)| acc + w);
        assert_eq!(total, r.value);
    }
}

#[test]
fn small_ratio_network() {
    use num_rational::Ratio;
    let mut net: CapacitatedNetwork<Ratio<i64>> = CapacitatedNetwork::new(3, 0, 2);
    net.add_arc(0, 1, Ratio::new(7, 3));
    net.add_arc(1, 2, Ratio::new(5, 2));
    net.add_arc(0, 2, Ratio::new(1, 6));
    assert_eq!(max_flow(&net).value, Ratio::new(5, 2));
}
