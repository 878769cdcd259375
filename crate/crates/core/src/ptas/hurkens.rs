use super::AuxiliaryCoverGraph;

/// Whether `F¹ Δ F²` is empty, a single alternating cycle, or a single
/// alternating path whose endpoints are covered by `F¹ ∩ F²`.
pub fn hurkens_check(aux: &AuxiliaryCoverGraph, f1: &[usize], f2: &[usize]) -> bool {
    let only1: Vec<usize> = f1.iter().copied().filter(|e| !f2.contains(e)).collect();
    let only2: Vec<usize> = f2.iter().copied().filter(|e| !f1.contains(e)).collect();
    if only1.is_empty() && only2.is_empty() {
        return true;
    }
    let n = aux.num_vertices;
    // Per vertex: incident difference edges from each side.
    let mut side_count = vec![[0usize; 2]; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, list) in [&only1, &only2].into_iter().enumerate() {
        for &e in list {
            let (u, v) = aux.ends[e];
            side_count[u][s] += 1;
            side_count[v][s] += 1;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut endpoints = Vec::new();
    for v in 0..n {
        let [a, b] = side_count[v];
        match a + b {
            0 => {}
            1 => endpoints.push(v),
            2 if a == 1 => {}
            _ => return false,
        }
    }

    // One connected component.
    let touched: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
    let mut seen = vec![false; n];
    let mut stack = vec![touched[0]];
    seen[touched[0]] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if touched.iter().any(|&v| !seen[v]) {
        return false;
    }

    match endpoints.len() {
        0 => true,
        2 => {
            let common: Vec<usize> = f1.iter().copied().filter(|e| f2.contains(e)).collect();
            endpoints.iter().all(|&v| {
                common.iter().any(|&e| aux.ends[e].0 == v || aux.ends[e].1 == v)
            })
        }
        _ => false,
    }
}
