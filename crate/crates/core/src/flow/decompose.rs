use super::CapacitatedNetwork;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    /// s-t paths as arc lists, each with its weight.
    pub paths: Vec<(Vec<usize>, T)>,
    /// The flow after cancelling cycles; equals the weighted sum of paths.
    pub acyclic: Vec<T>,
}

/// Cancels flow cycles, then peels off s-t paths by bottleneck.
///
/// Each peel zeroes at least one arc, so there are at most `|arcs|` paths.
/// `flow` must conserve at every vertex other than source and sink, with
/// nonnegative net outflow at the source.
pub fn path_decompose<T: Field>(net: &CapacitatedNetwork<T>, flow: &[T]) -> Decomposition<T> {
    let mut f = flow.to_vec();
    while let Some(cycle) = find_cycle(net, &f) {
        let amount = min_on(&f, &cycle);
        for &a in &cycle {
            f[a] -= &amount;
        }
    }
    let acyclic = f.clone();

    let mut paths = Vec::new();
    while let Some(path) = find_path(net, &f) {
        let amount = min_on(&f, &path);
        for &a in &path {
            f[a] -= &amount;
        }
        paths.push((path, amount));
    }
    Decomposition { paths, acyclic }
}

fn min_on<T: Field>(f: &[T], arcs: &[usize]) -> T {
    arcs.iter().map(|&a| f[a].clone()).min().expect("nonempty arc list")
}

/// Arcs of some cycle in the positive-flow support, in traversal order.
fn find_cycle<T: Field>(net: &CapacitatedNetwork<T>, f: &[T]) -> Option<Vec<usize>> {
    let n = net.num_vertices;
    // 0 = unvisited, 1 = on stack, 2 = finished.
    let mut state = vec![0u8; n];
    let mut via: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let arc = (*next..net.arcs.len())
                .find(|&a| net.arcs[a].tail == v && f[a].is_positive());
            match arc {
                None => {
                    state[v] = 2;
                    stack.pop();
                }
                Some(a) => {
                    *next = a + 1;
                    let w = net.arcs[a].head;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            via[w] = Some(a);
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![a];
                            let mut u = v;
                            while u != w {
                                let b = via[u].expect("stack vertex has an entry arc");
                                cycle.push(b);
                                u = net.arcs[b].tail;
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    None
}

/// An s-t path in the positive support of an acyclic flow.
fn find_path<T: Field>(net: &CapacitatedNetwork<T>, f: &[T]) -> Option<Vec<usize>> {
    let mut v = net.source;
    let mut path = Vec::new();
    while v != net.sink {
        let a = (0..net.arcs.len()).find(|&a| net.arcs[a].tail == v && f[a].is_positive())?;
        path.push(a);
        v = net.arcs[a].head;
        if path.len() > net.arcs.len() {
            return None;
        }
    }
    if path.is_empty() {
        None
    } else {
        Some(path)
    }
}
