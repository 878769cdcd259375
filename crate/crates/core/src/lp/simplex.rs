use super::{dot, row_reduce, LinearProgram, LpError, Relation, Sense, VertexSolution};
use crate::scalar::Field;

/// Solves `lp` to an optimal vertex with an exact dual certificate.
///
/// Two-phase dense tableau simplex; Bland's rule on the canonical column order
/// (structural, then slack, then artificial columns) keeps the pivot sequence
/// and therefore the returned vertex deterministic.
pub fn solve_to_vertex<T: Field>(lp: &LinearProgram<T>) -> Result<VertexSolution<T>, LpError> {
    let sf = StandardForm::build(lp);
    let mut tab = Tableau::new(&sf);

    tab.phase_one()?;
    tab.drive_out_artificials();
    tab.phase_two(&sf.cost)?;

    let x_std = tab.primal(sf.width);
    let values = sf.recover_values(lp, &x_std);

    let y = tab.basis_duals(&sf);
    let s = match lp.sense {
        Sense::Minimize => T::one(),
        Sense::Maximize => -T::one(),
    };

    let n = lp.num_vars();
    let mut row_duals = vec![T::zero(); lp.constraints.len()];
    let mut upper_duals = vec![T::zero(); n];
    for (i, origin) in sf.origins.iter().enumerate() {
        let mut v = y[i].clone();
        if sf.negated[i] {
            v = -v;
        }
        v *= &s;
        match *origin {
            RowOrigin::Constraint(k) => row_duals[k] = v,
            RowOrigin::Upper(j) => upper_duals[j] = v,
        }
    }
    let mut lower_duals = vec![T::zero(); n];
    for (col, map) in sf.columns.iter().enumerate() {
        if map.negative || lp.lower[map.var].is_none() {
            continue;
        }
        let mut d = sf.cost[col].clone();
        for (i, row) in sf.matrix.iter().enumerate() {
            if row[col].is_zero() || y[i].is_zero() {
                continue;
            }
            let mut t = row[col].clone();
            t *= &y[i];
            d -= &t;
        }
        d *= &s;
        lower_duals[map.var] = d;
    }

    let tight_rows = lp
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_tight(&values))
        .map(|(k, _)| k)
        .collect();
    let tight_lower = (0..n)
        .filter(|&j| lp.lower[j].as_ref() == Some(&values[j]))
        .collect();
    let tight_upper = (0..n)
        .filter(|&j| lp.upper[j].as_ref() == Some(&values[j]))
        .collect();

    let sol = VertexSolution {
        objective: dot(&lp.objective, &values),
        values,
        tight_rows,
        tight_lower,
        tight_upper,
        row_duals,
        lower_duals,
        upper_duals,
    };
    debug_assert_eq!(super::certify(lp, &sol), Ok(()));
    Ok(sol)
}

#[derive(Debug, Clone, Copy)]
enum RowOrigin {
    Constraint(usize),
    Upper(usize),
}

#[derive(Debug, Clone, Copy)]
struct ColumnMap {
    var: usize,
    negative: bool,
}

/// `min cost·x` subject to `matrix·x = rhs`, `x ≥ 0`, with `rhs ≥ 0`.
/// Columns are structural columns followed by one slack per inequality row.
struct StandardForm<T> {
    columns: Vec<ColumnMap>,
    width: usize,
    matrix: Vec<Vec<T>>,
    rhs: Vec<T>,
    cost: Vec<T>,
    origins: Vec<RowOrigin>,
    negated: Vec<bool>,
}

impl<T: Field> StandardForm<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let n = lp.num_vars();
        let mut columns = Vec::with_capacity(n);
        let mut var_cols: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for j in 0..n {
            var_cols[j].push((columns.len(), false));
            columns.push(ColumnMap {
                var: j,
                negative: false,
            });
            if lp.lower[j].is_none() {
                var_cols[j].push((columns.len(), true));
                columns.push(ColumnMap {
                    var: j,
                    negative: true,
                });
            }
        }
        let ns = columns.len();
        let shift = |j: usize| lp.lower[j].clone().unwrap_or_else(T::zero);

        let mut raw: Vec<(Vec<T>, Relation, T, RowOrigin)> = Vec::new();
        for (k, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![T::zero(); ns];
            let mut rhs = c.rhs.clone();
            for (j, a) in c.coefficients.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(col, neg) in &var_cols[j] {
                    row[col] = if neg { -a.clone() } else { a.clone() };
                }
                let mut t = a.clone();
                t *= &shift(j);
                rhs -= &t;
            }
            raw.push((row, c.relation, rhs, RowOrigin::Constraint(k)));
        }
        for j in 0..n {
            let Some(u) = &lp.upper[j] else { continue };
            let mut row = vec![T::zero(); ns];
            for &(col, neg) in &var_cols[j] {
                row[col] = if neg { -T::one() } else { T::one() };
            }
            let mut rhs = u.clone();
            rhs -= &shift(j);
            raw.push((row, Relation::Le, rhs, RowOrigin::Upper(j)));
        }

        let slack_count = raw.iter().filter(|r| r.1 != Relation::Eq).count();
        let width = ns + slack_count;
        let mut matrix = Vec::with_capacity(raw.len());
        let mut rhs_vec = Vec::with_capacity(raw.len());
        let mut origins = Vec::with_capacity(raw.len());
        let mut negated = Vec::with_capacity(raw.len());
        let mut next_slack = ns;
        for (mut row, rel, mut rhs, origin) in raw {
            row.resize(width, T::zero());
            match rel {
                Relation::Le => row[next_slack] = T::one(),
                Relation::Ge => row[next_slack] = -T::one(),
                Relation::Eq => {}
            }
            if rel != Relation::Eq {
                next_slack += 1;
            }
            let neg = rhs.is_negative();
            if neg {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                rhs = -rhs;
            }
            matrix.push(row);
            rhs_vec.push(rhs);
            origins.push(origin);
            negated.push(neg);
        }

        let mut cost = vec![T::zero(); width];
        for (col, map) in columns.iter().enumerate() {
            let mut c = lp.objective[map.var].clone();
            if map.negative {
                c = -c;
            }
            if lp.sense == Sense::Maximize {
                c = -c;
            }
            cost[col] = c;
        }

        Self {
            columns,
            width,
            matrix,
            rhs: rhs_vec,
            cost,
            origins,
            negated,
        }
    }

    fn recover_values(&self, lp: &LinearProgram<T>, x_std: &[T]) -> Vec<T> {
        let mut values: Vec<T> = (0..lp.num_vars())
            .map(|j| lp.lower[j].clone().unwrap_or_else(T::zero))
            .collect();
        for (col, map) in self.columns.iter().enumerate() {
            if map.negative {
                values[map.var] -= &x_std[col];
            } else {
                values[map.var] += &x_std[col];
            }
        }
        values
    }
}

struct Tableau<T> {
    /// Rows of `B⁻¹[A | artificials]` with the right-hand side in the last slot.
    rows: Vec<Vec<T>>,
    /// Index of the standard-form row each tableau row came from.
    row_ids: Vec<usize>,
    basis: Vec<usize>,
    /// First artificial column; artificial columns never re-enter.
    first_artificial: usize,
    z: Vec<T>,
}

impl<T: Field> Tableau<T> {
    fn new(sf: &StandardForm<T>) -> Self {
        let m = sf.matrix.len();
        let mut basis = vec![usize::MAX; m];
        let mut needs_artificial = Vec::new();
        for i in 0..m {
            let slack = (sf.columns.len()..sf.width)
                .find(|&j| !sf.matrix[i][j].is_zero())
                .filter(|&j| sf.matrix[i][j].is_one());
            match slack {
                Some(j) => basis[i] = j,
                None => needs_artificial.push(i),
            }
        }
        let first_artificial = sf.width;
        let total = sf.width + needs_artificial.len();
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = sf.matrix[i].clone();
            row.resize(total + 1, T::zero());
            row[total] = sf.rhs[i].clone();
            rows.push(row);
        }
        for (a, &i) in needs_artificial.iter().enumerate() {
            rows[i][first_artificial + a] = T::one();
            basis[i] = first_artificial + a;
        }
        Self {
            rows,
            row_ids: (0..m).collect(),
            basis,
            first_artificial,
            z: Vec::new(),
        }
    }

    fn total_cols(&self) -> usize {
        self.rows.first().map_or(self.first_artificial, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let width = self.total_cols() + 1;
        let inv = T::one() / self.rows[r][q].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (0..width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            if row[q].is_zero() {
                return;
            }
            let f = row[q].clone();
            for &j in &support {
                let mut t = pivot_row[j].clone();
                t *= &f;
                row[j] -= &t;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.z);
        self.basis[r] = q;
    }

    fn set_objective(&mut self, cost: &[T]) {
        let width = self.total_cols() + 1;
        let mut z = vec![T::zero(); width];
        for (j, c) in cost.iter().enumerate() {
            z[j] = c.clone();
        }
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &z_cost(cost, self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if row[j].is_zero() {
                    continue;
                }
                let mut t = row[j].clone();
                t *= cb;
                z[j] -= &t;
            }
        }
        self.z = z;
    }

    /// Runs Bland-rule pivots until optimal; `Err(Unbounded)` on a ray.
    fn iterate(&mut self) -> Result<(), LpError> {
        let rhs = self.total_cols();
        loop {
            let Some(q) = (0..self.first_artificial).find(|&j| self.z[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[q].clone();
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, q);
        }
    }

    fn phase_one(&mut self) -> Result<(), LpError> {
        let total = self.total_cols();
        if total == self.first_artificial {
            return Ok(());
        }
        let mut cost = vec![T::zero(); total];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = T::one();
        }
        self.set_objective(&cost);
        self.iterate()
            .expect("phase one is bounded below by zero");
        if !self.z[total].is_zero() {
            return Err(LpError::Infeasible);
        }
        Ok(())
    }

    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // Redundant equality: the row is a combination of the others.
                    self.rows.remove(i);
                    self.basis.remove(i);
                    self.row_ids.remove(i);
                }
            }
        }
    }

    fn phase_two(&mut self, cost: &[T]) -> Result<(), LpError> {
        self.set_objective(cost);
        self.iterate()
    }

    fn primal(&self, width: usize) -> Vec<T> {
        let rhs = self.total_cols();
        let mut x = vec![T::zero(); width];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[i][rhs].clone();
        }
        x
    }

    /// Dual values of the standard-form rows: solves `Bᵀy = c_B` against the
    /// original matrix restricted to the surviving rows.
    fn basis_duals(&self, sf: &StandardForm<T>) -> Vec<T> {
        let m = self.basis.len();
        let mut y = vec![T::zero(); sf.matrix.len()];
        if m == 0 {
            return y;
        }
        // Augmented system [Bᵀ | c_B]: one equation per basic column.
        let mut system: Vec<Vec<T>> = self
            .basis
            .iter()
            .map(|&col| {
                let mut eq: Vec<T> = self.row_ids.iter().map(|&i| sf.matrix[i][col].clone()).collect();
                eq.push(sf.cost[col].clone());
                eq
            })
            .collect();
        let pivots = row_reduce(&mut system, m);
        assert_eq!(pivots.len(), m, "basis matrix is singular");
        for (r, &p) in pivots.iter().enumerate() {
            y[self.row_ids[p]] = system[r][m].clone();
        }
        y
    }
}

fn z_cost<T: Field>(cost: &[T], col: usize) -> T {
    cost.get(col).cloned().unwrap_or_else(T::zero)
}
