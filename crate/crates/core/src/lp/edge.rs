use super::{dot, row_reduce, tight_gradients, LinearProgram, LpError, Relation};
use crate::scalar::Field;

/// The two vertices spanning the edge through a point, with
/// `point = weight·first + (1 − weight)·second`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeEndpoints<T> {
    pub first: Vec<T>,
    pub second: Vec<T>,
    pub weight: T,
}

/// Finds the endpoints of the unique edge of `polytope` containing `point`.
///
/// Only the constraints and bounds of `polytope` are used. The tight set at
/// `point` must have rank exactly `n − 1`; its one-dimensional null space is
/// the edge direction, and each endpoint is reached by the longest feasible
/// step along ±direction.
pub fn edge_endpoints<T: Field>(
    polytope: &LinearProgram<T>,
    point: &[T],
) -> Result<EdgeEndpoints<T>, LpError> {
    let n = polytope.num_vars();
    if !polytope.is_feasible(point) {
        return Err(LpError::PointInfeasible);
    }
    let rows: Vec<usize> = (0..polytope.constraints.len())
        .filter(|&k| polytope.constraints[k].is_tight(point))
        .collect();
    let lower: Vec<usize> = (0..n)
        .filter(|&j| polytope.lower[j].as_ref() == Some(&point[j]))
        .collect();
    let upper: Vec<usize> = (0..n)
        .filter(|&j| polytope.upper[j].as_ref() == Some(&point[j]))
        .collect();
    let mut tight = tight_gradients(polytope, &rows, &lower, &upper);
    let pivots = row_reduce(&mut tight, n);
    match n - pivots.len() {
        0 => return Err(LpError::AlreadyVertex),
        1 => {}
        _ => return Err(LpError::NotOnEdge),
    }

    // Null vector: set the single free column to one and back-substitute.
    let free = (0..n).find(|j| !pivots.contains(j)).expect("one free column");
    let mut direction = vec![T::zero(); n];
    direction[free] = T::one();
    for (r, &p) in pivots.iter().enumerate() {
        direction[p] = -tight[r][free].clone();
    }

    let forward = max_step(polytope, point, &direction).ok_or(LpError::Unbounded)?;
    let backward_dir: Vec<T> = direction.iter().map(|d| -d.clone()).collect();
    let backward = max_step(polytope, point, &backward_dir).ok_or(LpError::Unbounded)?;
    if forward.is_zero() || backward.is_zero() {
        return Err(LpError::NotOnEdge);
    }

    let step = |dir: &[T], t: &T| -> Vec<T> {
        point
            .iter()
            .zip(dir)
            .map(|(p, d)| {
                let mut v = d.clone();
                v *= t;
                v += p;
                v
            })
            .collect()
    };
    let first = step(&direction, &forward);
    let second = step(&backward_dir, &backward);
    let mut total = forward.clone();
    total += &backward;
    let weight = backward / total;
    Ok(EdgeEndpoints {
        first,
        second,
        weight,
    })
}

/// Largest `t ≥ 0` with `point + t·dir` feasible, `None` if unbounded.
fn max_step<T: Field>(lp: &LinearProgram<T>, point: &[T], dir: &[T]) -> Option<T> {
    let mut best: Option<T> = None;
    let mut offer = |limit: T| {
        if best.as_ref().map_or(true, |b| limit < *b) {
            best = Some(limit);
        }
    };
    for c in &lp.constraints {
        let rate = dot(&c.coefficients, dir);
        if rate.is_zero() {
            continue;
        }
        let mut room = c.rhs.clone();
        room -= &c.activity(point);
        let binding = match c.relation {
            Relation::Le => rate.is_positive(),
            Relation::Ge => rate.is_negative(),
            Relation::Eq => true,
        };
        if binding {
            offer(room / rate);
        }
    }
    for (j, d) in dir.iter().enumerate() {
        if d.is_positive() {
            if let Some(u) = &lp.upper[j] {
                let mut room = u.clone();
                room -= &point[j];
                offer(room / d.clone());
            }
        } else if d.is_negative() {
            if let Some(l) = &lp.lower[j] {
                let mut room = l.clone();
                room -= &point[j];
                offer(room / d.clone());
            }
        }
    }
    best
}
