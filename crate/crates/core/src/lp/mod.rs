//! Exact linear programming over an ordered field.
//!
//! A [`LinearProgram`] is solved to an optimal basic (vertex) solution by a
//! dense two-phase simplex with Bland's rule. Every solution carries a dual
//! certificate using a single sign convention, independent of the sense:
//!
//! ```text
//! objective = Σ_k row_duals[k]·a_k + Σ_j (lower_duals[j] + upper_duals[j])·e_j
//! value     = Σ_k row_duals[k]·rhs_k + Σ_j lower_duals[j]·l_j + Σ_j upper_duals[j]·u_j
//! ```
//!
//! For a maximisation, duals of `≤` rows and upper bounds are nonnegative and
//! duals of `≥` rows and lower bounds are nonpositive; a minimisation flips
//! every sign.

mod edge;
mod simplex;

pub use edge::{edge_endpoints, EdgeEndpoints};
pub use simplex::solve_to_vertex;

use thiserror::Error;

use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T = Rational> {
    pub coefficients: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Field> Constraint<T> {
    pub fn activity(&self, x: &[T]) -> T {
        dot(&self.coefficients, x)
    }

    pub fn is_satisfied(&self, x: &[T]) -> bool {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[T]) -> bool {
        self.activity(x) == self.rhs
    }
}

/// A linear program with per-variable bounds.
///
/// Bounds default to `0 ≤ x_j` with no upper bound. A `None` lower bound makes
/// the variable free below.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T = Rational> {
    pub sense: Sense,
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub lower: Vec<Option<T>>,
    pub upper: Vec<Option<T>>,
}

impl<T: Field> LinearProgram<T> {
    pub fn new(sense: Sense, objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![Some(T::zero()); n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Appends a constraint row and returns its index.
    pub fn constrain(&mut self, coefficients: Vec<T>, relation: Relation, rhs: T) -> usize {
        assert_eq!(coefficients.len(), self.num_vars(), "constraint arity");
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    /// Appends a constraint given as sparse `(variable, coefficient)` pairs.
    pub fn constrain_sparse(
        &mut self,
        terms: impl IntoIterator<Item = (usize, T)>,
        relation: Relation,
        rhs: T,
    ) -> usize {
        let mut row = vec![T::zero(); self.num_vars()];
        for (j, a) in terms {
            row[j] += &a;
        }
        self.constrain(row, relation, rhs)
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<T>, upper: Option<T>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        dot(&self.objective, x)
    }

    /// Exact primal feasibility of `x`, bounds included.
    pub fn is_feasible(&self, x: &[T]) -> bool {
        x.len() == self.num_vars()
            && self.constraints.iter().all(|c| c.is_satisfied(x))
            && x.iter().enumerate().all(|(j, v)| {
                self.lower[j].as_ref().map_or(true, |l| v >= l)
                    && self.upper[j].as_ref().map_or(true, |u| v <= u)
            })
    }
}

/// An optimal basic solution together with its dual certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSolution<T = Rational> {
    pub values: Vec<T>,
    pub objective: T,
    pub tight_rows: Vec<usize>,
    pub tight_lower: Vec<usize>,
    pub tight_upper: Vec<usize>,
    pub row_duals: Vec<T>,
    pub lower_duals: Vec<T>,
    pub upper_duals: Vec<T>,
}

impl<T: Field> VertexSolution<T> {
    /// Rank of the tight constraint set (rows and bounds).
    pub fn tight_rank(&self, lp: &LinearProgram<T>) -> usize {
        let rows = tight_gradients(lp, &self.tight_rows, &self.tight_lower, &self.tight_upper);
        rank(rows, lp.num_vars())
    }

    pub fn all_duals(&self) -> impl Iterator<Item = &T> {
        self.row_duals
            .iter()
            .chain(self.lower_duals.iter())
            .chain(self.upper_duals.iter())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Field::is_integral)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("TU assumption violated: non-integral dual value")]
    NonIntegralDual,
    #[error("point is already a vertex of the polytope")]
    AlreadyVertex,
    #[error("point is not on an edge of the polytope")]
    NotOnEdge,
    #[error("point is not feasible for the polytope")]
    PointInfeasible,
}

/// Solves `lp` and insists on an integral dual certificate.
///
/// Intended for systems whose constraint matrix is totally unimodular; a
/// fractional dual is reported as [`LpError::NonIntegralDual`], never rounded.
pub fn integral_dual<T: Field>(lp: &LinearProgram<T>) -> Result<VertexSolution<T>, LpError> {
    let sol = solve_to_vertex(lp)?;
    if sol.all_duals().all(Field::is_integral) {
        Ok(sol)
    } else {
        Err(LpError::NonIntegralDual)
    }
}

/// Checks primal feasibility, dual sign feasibility, stationarity, zero gap
/// and complementary slackness of a claimed optimum. Returns a description of
/// the first violated condition.
pub fn certify<T: Field>(lp: &LinearProgram<T>, sol: &VertexSolution<T>) -> Result<(), String> {
    let n = lp.num_vars();
    if !lp.is_feasible(&sol.values) {
        return Err("primal infeasible".into());
    }
    if lp.objective_value(&sol.values) != sol.objective {
        return Err("objective mismatch".into());
    }
    // Sign of a dual that pushes the objective "outward" through a ≤ face.
    let outward = |y: &T| match lp.sense {
        Sense::Maximize => !y.is_negative(),
        Sense::Minimize => !y.is_positive(),
    };
    let inward = |y: &T| match lp.sense {
        Sense::Maximize => !y.is_positive(),
        Sense::Minimize => !y.is_negative(),
    };
    let mut gradient = vec![T::zero(); n];
    let mut value = T::zero();
    for (k, (c, y)) in lp.constraints.iter().zip(&sol.row_duals).enumerate() {
        let ok = match c.relation {
            Relation::Le => outward(y),
            Relation::Ge => inward(y),
            Relation::Eq => true,
        };
        if !ok {
            return Err(format!("row {k} dual has the wrong sign"));
        }
        if !y.is_zero() && !c.is_tight(&sol.values) {
            return Err(format!("row {k} violates complementary slackness"));
        }
        for (g, a) in gradient.iter_mut().zip(&c.coefficients) {
            let mut t = a.clone();
            t *= y;
            *g += &t;
        }
        let mut t = c.rhs.clone();
        t *= y;
        value += &t;
    }
    for j in 0..n {
        let (ly, uy) = (&sol.lower_duals[j], &sol.upper_duals[j]);
        if !inward(ly) || !outward(uy) {
            return Err(format!("bound dual of variable {j} has the wrong sign"));
        }
        for (y, bound) in [(ly, &lp.lower[j]), (uy, &lp.upper[j])] {
            if y.is_zero() {
                continue;
            }
            match bound {
                Some(b) if *b == sol.values[j] => {
                    let mut t = b.clone();
                    t *= y;
                    value += &t;
                }
                _ => return Err(format!("bound dual of variable {j} on a slack bound")),
            }
            gradient[j] += y;
        }
    }
    if gradient != lp.objective {
        return Err("dual does not reproduce the objective".into());
    }
    if value != sol.objective {
        return Err("duality gap".into());
    }
    Ok(())
}

pub(crate) fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let mut t = x.clone();
        t *= y;
        acc += &t;
    }
    acc
}

pub(crate) fn tight_gradients<T: Field>(
    lp: &LinearProgram<T>,
    rows: &[usize],
    lower: &[usize],
    upper: &[usize],
) -> Vec<Vec<T>> {
    let n = lp.num_vars();
    let unit = |j: usize| {
        let mut e = vec![T::zero(); n];
        e[j] = T::one();
        e
    };
    rows.iter()
        .map(|&k| lp.constraints[k].coefficients.clone())
        .chain(lower.iter().map(|&j| unit(j)))
        .chain(upper.iter().map(|&j| unit(j)))
        .collect()
}

/// Row-reduces `rows` in place and returns the pivot column of each pivot row.
pub(crate) fn row_reduce<T: Field>(rows: &mut Vec<Vec<T>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..rows[r].len() {
                if rows[r][j].is_zero() {
                    continue;
                }
                let mut t = rows[r][j].clone();
                t *= &f;
                rows[i][j] -= &t;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank<T: Field>(mut rows: Vec<Vec<T>>, width: usize) -> usize {
    row_reduce(&mut rows, width).len()
}
