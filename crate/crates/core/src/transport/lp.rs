//! Dense two-phase primal simplex.
//!
//! Solves `min c·x` subject to row constraints with `<=`/`=`/`>=` senses and
//! per-variable bounds. Pricing is most-negative-reduced-cost; after a run of
//! degenerate pivots the solver switches permanently to Bland's rule, which
//! cannot cycle. Desk-scale problems only: everything is stored as a dense
//! tableau and no effort is made to exploit sparsity.

use crate::error::{Error, Result};

/// Minimum magnitude for a usable pivot element.
const PIVOT_TOL: f64 = 1e-9;
/// Reduced-cost threshold for entering candidates.
const COST_TOL: f64 = 1e-9;
/// Consecutive non-improving pivots before switching to Bland's rule.
const DEGENERATE_SWITCH: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

impl LpConstraint {
    pub fn new(coeffs: Vec<f64>, sense: Sense, rhs: f64) -> Self {
        Self { coeffs, sense, rhs }
    }
}

/// `min objective·x` over the constraint rows and variable bounds.
///
/// Bounds may be infinite on either side; `(0.0, f64::INFINITY)` is the
/// plain nonnegative variable.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<LpConstraint>,
    pub bounds: Vec<(f64, f64)>,
}

impl LpProblem {
    /// Problem with all variables nonnegative.
    pub fn nonnegative(objective: Vec<f64>, constraints: Vec<LpConstraint>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints,
            bounds: vec![(0.0, f64::INFINITY); n],
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    /// `objective · x` recomputed from the returned point.
    pub value: f64,
    pub x: Vec<f64>,
    /// One multiplier per constraint row (the LP dual vector).
    pub dual: Vec<f64>,
}

#[derive(Clone, Copy)]
enum VarMap {
    /// x = lb + u
    Shifted { col: usize, lb: f64 },
    /// x = ub - u
    Mirrored { col: usize, ub: f64 },
    /// x = u - v
    Split { pos: usize, neg: usize },
}

struct Tableau {
    m: usize,
    width: usize,
    n_cols: usize,
    a: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    is_artificial: Vec<bool>,
    /// Column that started as row r's identity column.
    init_col: Vec<usize>,
    cost1: Vec<f64>,
    cost2: Vec<f64>,
    scratch: Vec<f64>,
}

impl Tableau {
    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.a[r * self.width + self.width - 1]
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let w = self.width;
        let start = r * w;
        let inv = 1.0 / self.a[start + q];
        for v in &mut self.a[start..start + w] {
            *v *= inv;
        }
        self.a[start + q] = 1.0;
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.a[start..start + w]);
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.a[i * w + q];
            if f != 0.0 {
                let row = &mut self.a[i * w..i * w + w];
                for (v, &p) in row.iter_mut().zip(self.scratch.iter()) {
                    *v -= f * p;
                }
                row[q] = 0.0;
            }
        }
        for cost in [&mut self.cost1, &mut self.cost2] {
            let f = cost[q];
            if f != 0.0 {
                for (v, &p) in cost.iter_mut().zip(self.scratch.iter()) {
                    *v -= f * p;
                }
                cost[q] = 0.0;
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
    }

    /// Runs one simplex phase to optimality. `Ok(())` means the phase's
    /// reduced costs are all nonnegative.
    fn run_phase(&mut self, phase_one: bool, iter_budget: &mut usize) -> Result<()> {
        let w = self.width;
        let mut bland = false;
        let mut stall = 0usize;
        let mut last_obj = f64::INFINITY;
        loop {
            if *iter_budget == 0 {
                return Err(Error::IterationLimit(0));
            }
            *iter_budget -= 1;

            let costs: &[f64] = if phase_one { &self.cost1 } else { &self.cost2 };
            let mut enter: Option<usize> = None;
            if bland {
                for j in 0..self.n_cols {
                    if !self.is_basic[j] && !self.is_artificial[j] && costs[j] < -COST_TOL {
                        enter = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = -COST_TOL;
                for j in 0..self.n_cols {
                    if !self.is_basic[j] && !self.is_artificial[j] && costs[j] < best {
                        best = costs[j];
                        enter = Some(j);
                    }
                }
            }
            let Some(q) = enter else {
                return Ok(());
            };

            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a_iq = self.a[i * w + q];
                if a_iq > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a_iq;
                    match leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-12
                                || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li])
                            {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded(q));
            };
            self.pivot(r, q);

            let obj = -costs_last(if phase_one { &self.cost1 } else { &self.cost2 });
            if obj >= last_obj - 1e-12 {
                stall += 1;
                if stall > DEGENERATE_SWITCH {
                    bland = true;
                }
            } else {
                stall = 0;
            }
            last_obj = obj;
        }
    }
}

#[inline]
fn costs_last(costs: &[f64]) -> f64 {
    costs[costs.len() - 1]
}

/// Solves the problem and returns the optimum, the point attaining it and
/// the dual vector for the constraint rows.
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution> {
    let n = problem.objective.len();
    if problem.bounds.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} bounds for {} variables",
            problem.bounds.len(),
            n
        )));
    }
    for (k, row) in problem.constraints.iter().enumerate() {
        if row.coeffs.len() != n {
            return Err(Error::InvalidInput(format!(
                "constraint {k} has {} coefficients for {} variables",
                row.coeffs.len(),
                n
            )));
        }
        if !row.rhs.is_finite() || row.coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "constraint {k} contains a non-finite entry"
            )));
        }
    }
    if problem.objective.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "objective contains a non-finite entry".into(),
        ));
    }

    // map every variable to shifted/mirrored/split nonnegative columns
    let mut maps = Vec::with_capacity(n);
    let mut n_struct = 0usize;
    let mut ub_rows: Vec<(usize, f64)> = Vec::new(); // (column, upper bound on it)
    for (j, &(lb, ub)) in problem.bounds.iter().enumerate() {
        if lb.is_nan() || ub.is_nan() || lb == f64::INFINITY || ub == f64::NEG_INFINITY {
            return Err(Error::InvalidInput(format!(
                "bad bounds ({lb}, {ub}) on variable {j}"
            )));
        }
        if lb > ub {
            return Err(Error::Infeasible(lb - ub));
        }
        if lb.is_finite() {
            let col = n_struct;
            n_struct += 1;
            if ub.is_finite() {
                ub_rows.push((col, ub - lb));
            }
            maps.push(VarMap::Shifted { col, lb });
        } else if ub.is_finite() {
            let col = n_struct;
            n_struct += 1;
            maps.push(VarMap::Mirrored { col, ub });
        } else {
            let pos = n_struct;
            let neg = n_struct + 1;
            n_struct += 2;
            maps.push(VarMap::Split { pos, neg });
        }
    }

    let n_user_rows = problem.constraints.len();
    let m = n_user_rows + ub_rows.len();
    let n_slack = problem
        .constraints
        .iter()
        .filter(|c| c.sense != Sense::Eq)
        .count()
        + ub_rows.len();
    // worst case one artificial per row
    let n_cols_max = n_struct + n_slack + m;
    let width = n_cols_max + 1;

    let mut cost2 = vec![0.0; width];
    for (j, &c) in problem.objective.iter().enumerate() {
        match maps[j] {
            VarMap::Shifted { col, .. } => cost2[col] += c,
            VarMap::Mirrored { col, .. } => cost2[col] -= c,
            VarMap::Split { pos, neg } => {
                cost2[pos] += c;
                cost2[neg] -= c;
            }
        }
    }

    let mut a = vec![0.0; m * width];
    let mut row_flipped = vec![false; m];

    // user rows, then bound rows
    let mut senses = Vec::with_capacity(m);
    for (r, c) in problem.constraints.iter().enumerate() {
        let row = &mut a[r * width..(r + 1) * width];
        let mut rhs = c.rhs;
        for (j, &v) in c.coeffs.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            match maps[j] {
                VarMap::Shifted { col, lb } => {
                    row[col] += v;
                    rhs -= v * lb;
                }
                VarMap::Mirrored { col, ub } => {
                    row[col] -= v;
                    rhs -= v * ub;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += v;
                    row[neg] -= v;
                }
            }
        }
        senses.push((c.sense, rhs));
    }
    for (k, &(col, ub)) in ub_rows.iter().enumerate() {
        let r = n_user_rows + k;
        a[r * width + col] = 1.0;
        senses.push((Sense::Le, ub));
    }

    // slacks, rhs, sign normalization, initial basis
    let mut n_cols = n_struct;
    let mut basis = vec![usize::MAX; m];
    let mut init_col = vec![usize::MAX; m];
    let mut is_artificial = vec![false; n_cols_max];
    for r in 0..m {
        let (sense, rhs) = senses[r];
        let slack_sign = match sense {
            Sense::Le => 1.0,
            Sense::Ge => -1.0,
            Sense::Eq => 0.0,
        };
        let mut slack_col = usize::MAX;
        if slack_sign != 0.0 {
            slack_col = n_cols;
            n_cols += 1;
            a[r * width + slack_col] = slack_sign;
        }
        let flip = rhs < 0.0;
        row_flipped[r] = flip;
        let rhs_abs = if flip {
            for v in &mut a[r * width..(r + 1) * width] {
                *v = -*v;
            }
            -rhs
        } else {
            rhs
        };
        a[r * width + width - 1] = rhs_abs;
        let slack_usable = slack_col != usize::MAX && a[r * width + slack_col] > 0.0;
        if slack_usable {
            basis[r] = slack_col;
            init_col[r] = slack_col;
        } else {
            let art = n_cols;
            n_cols += 1;
            is_artificial[art] = true;
            a[r * width + art] = 1.0;
            basis[r] = art;
            init_col[r] = art;
        }
    }

    // phase-1 reduced costs: cost of artificials is 1, netted against the
    // rows where they start basic
    let mut cost1 = vec![0.0; width];
    for r in 0..m {
        if is_artificial[basis[r]] {
            for (c1, &v) in cost1.iter_mut().zip(&a[r * width..(r + 1) * width]) {
                *c1 -= v;
            }
        }
    }
    for j in 0..n_cols {
        if is_artificial[j] {
            cost1[j] += 1.0;
        }
    }

    let mut is_basic = vec![false; n_cols_max];
    for &b in &basis {
        is_basic[b] = true;
    }

    let mut tab = Tableau {
        m,
        width,
        n_cols,
        a,
        basis,
        is_basic,
        is_artificial,
        init_col,
        cost1,
        cost2,
        scratch: Vec::with_capacity(width),
    };

    let limit = 10_000 + 20 * (m + n_cols);
    let mut budget = limit;
    let b_scale = (0..m).map(|r| tab.rhs(r).abs()).fold(0.0, f64::max);
    let feas_tol = 1e-9 * (1.0 + b_scale);

    tab.run_phase(true, &mut budget).map_err(|e| match e {
        Error::IterationLimit(_) => Error::IterationLimit(limit),
        // phase-1 objective is bounded below by zero; an unbounded ray here
        // means numerical trouble, surface it as the limit error
        Error::Unbounded(_) => Error::IterationLimit(limit),
        other => other,
    })?;
    let phase1_obj = -costs_last(&tab.cost1);
    if phase1_obj > feas_tol {
        return Err(Error::Infeasible(phase1_obj));
    }

    // drive artificials out of the basis where possible; rows that cannot be
    // pivoted are identically zero over real columns and stay inert
    for r in 0..m {
        if !tab.is_artificial[tab.basis[r]] {
            continue;
        }
        if tab.rhs(r).abs() <= feas_tol {
            tab.a[r * width + width - 1] = 0.0;
        }
        let col = (0..tab.n_cols)
            .find(|&j| !tab.is_artificial[j] && tab.a[r * width + j].abs() > PIVOT_TOL);
        if let Some(q) = col {
            tab.pivot(r, q);
        }
    }

    tab.run_phase(false, &mut budget).map_err(|e| match e {
        Error::IterationLimit(_) => Error::IterationLimit(limit),
        other => other,
    })?;

    // recover the point in user coordinates
    let mut x_std = vec![0.0; tab.n_cols];
    for r in 0..m {
        x_std[tab.basis[r]] = tab.rhs(r).max(0.0);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shifted { col, lb } => lb + x_std[col],
            VarMap::Mirrored { col, ub } => ub - x_std[col],
            VarMap::Split { pos, neg } => x_std[pos] - x_std[neg],
        })
        .collect();
    let value: f64 = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();

    // row dual = -reduced cost of the row's initial identity column,
    // unflipped where the row was negated
    let dual: Vec<f64> = (0..n_user_rows)
        .map(|r| {
            let y = -tab.cost2[tab.init_col[r]];
            if row_flipped[r] {
                -y
            } else {
                y
            }
        })
        .collect();

    Ok(LpSolution { value, x, dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ge(coeffs: Vec<f64>, rhs: f64) -> LpConstraint {
        LpConstraint::new(coeffs, Sense::Ge, rhs)
    }
    fn le(coeffs: Vec<f64>, rhs: f64) -> LpConstraint {
        LpConstraint::new(coeffs, Sense::Le, rhs)
    }
    fn eq(coeffs: Vec<f64>, rhs: f64) -> LpConstraint {
        LpConstraint::new(coeffs, Sense::Eq, rhs)
    }

    #[test]
    fn min_x_subject_to_x_ge_one() {
        let p = LpProblem::nonnegative(vec![1.0], vec![ge(vec![1.0], 1.0)]);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 1.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
        assert!((s.dual[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn transport_toy_single_arc() {
        let p = LpProblem::nonnegative(vec![1.0], vec![eq(vec![1.0], 1.0)]);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded_detected() {
        let p = LpProblem::nonnegative(vec![1.0], vec![le(vec![1.0], -1.0)]);
        assert!(matches!(solve_lp(&p), Err(Error::Infeasible(_))));

        let p = LpProblem::nonnegative(vec![-1.0], vec![]);
        assert!(matches!(solve_lp(&p), Err(Error::Unbounded(_))));
    }

    #[test]
    fn beale_cycling_instance_terminates_at_the_optimum() {
        // the classic degenerate instance on which naive most-negative
        // pricing cycles forever without an anti-cycling rule
        let p = LpProblem::nonnegative(
            vec![-0.75, 150.0, -0.02, 6.0],
            vec![
                le(vec![0.25, -60.0, -0.04, 9.0], 0.0),
                le(vec![0.5, -90.0, -0.02, 3.0], 0.0),
                le(vec![0.0, 0.0, 1.0, 0.0], 1.0),
            ],
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 0.05).abs() < 1e-9, "value {}", s.value);
        assert!((s.x[0] - 0.04).abs() < 1e-9);
        assert!((s.x[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn conflicting_equalities_are_infeasible() {
        let p = LpProblem::nonnegative(
            vec![1.0, 1.0],
            vec![eq(vec![1.0, 1.0], 1.0), eq(vec![1.0, 1.0], 2.0)],
        );
        assert!(matches!(solve_lp(&p), Err(Error::Infeasible(_))));
    }

    #[test]
    fn redundant_equalities_are_harmless() {
        let p = LpProblem::nonnegative(
            vec![1.0, 0.0],
            vec![
                eq(vec![1.0, 1.0], 1.0),
                eq(vec![1.0, 1.0], 1.0),
                eq(vec![2.0, 2.0], 2.0),
            ],
        );
        let s = solve_lp(&p).unwrap();
        assert!(s.value.abs() < 1e-9);
        assert!((s.x[0] + s.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // free variable pushed to its constraint floor
        let p = LpProblem {
            objective: vec![1.0],
            constraints: vec![ge(vec![1.0], -5.0)],
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY)],
        };
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 5.0).abs() < 1e-9);

        // maximize x with only an upper bound
        let p = LpProblem {
            objective: vec![-1.0],
            constraints: vec![],
            bounds: vec![(f64::NEG_INFINITY, 7.0)],
        };
        let s = solve_lp(&p).unwrap();
        assert!((s.x[0] - 7.0).abs() < 1e-9);
    }

    #[test]
    fn finite_upper_bounds() {
        let p = LpProblem {
            objective: vec![-1.0, -2.0],
            constraints: vec![le(vec![1.0, 1.0], 1.5)],
            bounds: vec![(0.0, 1.0), (0.0, 1.0)],
        };
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 2.5).abs() < 1e-9, "value {}", s.value);
        assert!((s.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dual_vector_is_feasible_and_tight() {
        // min 2x + 3y st x + y >= 4, x + 2y >= 6
        let p = LpProblem::nonnegative(
            vec![2.0, 3.0],
            vec![ge(vec![1.0, 1.0], 4.0), ge(vec![1.0, 2.0], 6.0)],
        );
        let s = solve_lp(&p).unwrap();
        // dual feasibility A'y <= c, y >= 0 for a >= system in a min problem
        let y = &s.dual;
        assert!(y[0] >= -1e-9 && y[1] >= -1e-9);
        assert!(y[0] + y[1] <= 2.0 + 1e-9);
        assert!(y[0] + 2.0 * y[1] <= 3.0 + 1e-9);
        // strong duality
        let dual_obj = 4.0 * y[0] + 6.0 * y[1];
        assert!((dual_obj - s.value).abs() <= 1e-8 * (1.0 + s.value.abs()));
        // complementary slackness
        let slack0 = s.x[0] + s.x[1] - 4.0;
        let slack1 = s.x[0] + 2.0 * s.x[1] - 6.0;
        assert!((y[0] * slack0).abs() < 1e-8);
        assert!((y[1] * slack1).abs() < 1e-8);
    }

    // brute-force oracle: enumerate all vertices of Ax <= b, 0 <= x <= ub
    fn vertex_enumeration_min(c: &[f64], a: &[Vec<f64>], b: &[f64], ub: f64) -> f64 {
        let n = c.len();
        let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
        for (row, &rhs) in a.iter().zip(b) {
            planes.push((row.clone(), rhs));
        }
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            planes.push((e.clone(), ub));
            let mut e0 = vec![0.0; n];
            e0[j] = 1.0;
            planes.push((e0, 0.0)); // x_j = 0 plane, rhs 0
        }
        let mut best = f64::INFINITY;
        let idx: Vec<usize> = (0..planes.len()).collect();
        let mut combo = vec![0usize; n];
        fn rec(
            idx: &[usize],
            k: usize,
            start: usize,
            combo: &mut Vec<usize>,
            planes: &[(Vec<f64>, f64)],
            a: &[Vec<f64>],
            b: &[f64],
            c: &[f64],
            ub: f64,
            best: &mut f64,
        ) {
            let n = c.len();
            if k == n {
                let mat: Vec<Vec<f64>> = combo.iter().map(|&i| planes[i].0.clone()).collect();
                let rhs: Vec<f64> = combo.iter().map(|&i| planes[i].1).collect();
                if let Some(x) = solve_dense(&mat, &rhs) {
                    let feasible = a.iter().zip(b).all(|(row, &r)| {
                        row.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>() <= r + 1e-9
                    }) && x.iter().all(|&v| v >= -1e-9 && v <= ub + 1e-9);
                    if feasible {
                        let val: f64 = c.iter().zip(&x).map(|(u, v)| u * v).sum();
                        if val < *best {
                            *best = val;
                        }
                    }
                }
                return;
            }
            for s in start..idx.len() {
                combo[k] = idx[s];
                rec(idx, k + 1, s + 1, combo, planes, a, b, c, ub, best);
            }
        }
        rec(&idx, 0, 0, &mut combo, &planes, a, b, c, ub, &mut best);
        best
    }

    fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
        let n = b.len();
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let piv =
                (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
            if m[piv][col].abs() < 1e-10 {
                return None;
            }
            m.swap(col, piv);
            rhs.swap(col, piv);
            let d = m[col][col];
            for i in 0..n {
                if i != col && m[i][col] != 0.0 {
                    let f = m[i][col] / d;
                    for k in col..n {
                        m[i][k] -= f * m[col][k];
                    }
                    rhs[i] -= f * rhs[col];
                }
            }
        }
        Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        // splitmix-style deterministic stream
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        for trial in 0..20 {
            let n = 5;
            let rows = 5;
            let a: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..n).map(|_| next() * 2.0 - 1.0).collect())
                .collect();
            let b: Vec<f64> = (0..rows).map(|_| 1.0 + next()).collect();
            let c: Vec<f64> = (0..n).map(|_| next() * 2.0 - 1.0).collect();
            let ub = 10.0;
            let p = LpProblem {
                objective: c.clone(),
                constraints: a
                    .iter()
                    .zip(&b)
                    .map(|(row, &r)| le(row.clone(), r))
                    .collect(),
                bounds: vec![(0.0, ub); n],
            };
            let s = solve_lp(&p).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
            let oracle = vertex_enumeration_min(&c, &a, &b, ub);
            assert!(
                (s.value - oracle).abs() <= 1e-8 * (1.0 + oracle.abs()),
                "trial {trial}: simplex {} vs oracle {}",
                s.value,
                oracle
            );

            // primal feasibility
            for (row, &rhs) in a.iter().zip(&b) {
                let lhs: f64 = row.iter().zip(&s.x).map(|(u, v)| u * v).sum();
                assert!(lhs <= rhs + 1e-9, "trial {trial}: primal infeasible");
            }
            assert!(s.x.iter().all(|&v| (-1e-9..=ub + 1e-9).contains(&v)));
            // dual feasibility for a <= system in a min problem: y <= 0,
            // c - A'y >= 0
            for (i, &yi) in s.dual.iter().enumerate() {
                assert!(yi <= 1e-9, "trial {trial}: y[{i}] = {yi} > 0");
            }
            for j in 0..n {
                let aty: f64 = (0..rows).map(|i| a[i][j] * s.dual[i]).sum();
                let rc = c[j] - aty;
                // upper bounds x <= 10 contribute a nonpositive term, so the
                // plain reduced cost may only dip negative at the bound
                if s.x[j] < ub - 1e-6 {
                    assert!(
                        rc >= -1e-8,
                        "trial {trial}: reduced cost {rc} at column {j}"
                    );
                }
                // complementary slackness on variables away from both bounds
                if s.x[j] > 1e-6 && s.x[j] < ub - 1e-6 {
                    assert!(
                        rc.abs() <= 1e-8,
                        "trial {trial}: x[{j}]*rc = {}",
                        s.x[j] * rc
                    );
                }
            }
            // complementary slackness on rows
            for (i, (row, &rhs)) in a.iter().zip(&b).enumerate() {
                let slack: f64 = rhs - row.iter().zip(&s.x).map(|(u, v)| u * v).sum::<f64>();
                assert!(
                    (s.dual[i] * slack).abs() <= 1e-8,
                    "trial {trial}: row {i} slackness residual {}",
                    s.dual[i] * slack
                );
            }
        }
    }
}
