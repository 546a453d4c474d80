//! Kantorovich–Rubinstein norms on finite spaces.
//!
//! The balanced norm prices the cheapest transport plan realizing a
//! zero-total measure; the general norm additionally allows a residual paid
//! at total-variation rate, all in a single LP. Each solve returns the plan,
//! the residual, a Lipschitz dual potential and the duality gap.

pub mod lp;

use crate::error::{Error, Result};
use crate::lipschitz::ScalarField;
use crate::measure::SignedMeasure;
use crate::metric::FiniteMetricSpace;

use lp::{LpConstraint, LpProblem, Sense};

/// Balance tolerance required of inputs to the balanced norm.
pub const BALANCE_TOL: f64 = 1e-9;
/// Flows at or below this are dropped when a plan is extracted.
const FLOW_TOL: f64 = 1e-12;

/// One arc of a transport plan: `mass` carried from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanArc {
    pub from: usize,
    pub to: usize,
    pub mass: f64,
}

/// Nonnegative mass per ordered pair, sparse and sorted by `(from, to)`.
///
/// Arcs run from the negative part toward the positive part: the induced
/// measure of a plan is arrivals minus departures per point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TransportPlan {
    arcs: Vec<PlanArc>,
}

impl TransportPlan {
    pub fn arcs(&self) -> &[PlanArc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Arrivals minus departures per point — the balanced measure this plan
    /// realizes.
    pub fn induced(&self, space: &FiniteMetricSpace) -> SignedMeasure {
        let mut mass = vec![0.0; space.len()];
        for arc in &self.arcs {
            mass[arc.to] += arc.mass;
            mass[arc.from] -= arc.mass;
        }
        SignedMeasure::new(space, mass).expect("plan indices fit the space")
    }

    /// Transport cost under the space's metric.
    pub fn cost(&self, space: &FiniteMetricSpace) -> f64 {
        self.arcs
            .iter()
            .map(|a| space.dist(a.from, a.to) * a.mass)
            .sum()
    }
}

/// A solved norm instance: primal plan and value, residual, dual potential
/// and the duality gap.
#[derive(Debug, Clone)]
pub struct KRResult {
    pub primal_value: f64,
    pub plan: TransportPlan,
    /// The part of the measure not realized by the plan, paid at
    /// total-variation rate; numerically zero for the balanced norm.
    pub residual: SignedMeasure,
    pub dual_value: f64,
    pub potential: ScalarField,
    pub gap: f64,
}

#[inline]
fn pair_var(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) + if j < i { j } else { j - 1 }
}

fn check_measure(space: &FiniteMetricSpace, nu: &SignedMeasure) -> Result<()> {
    if nu.len() != space.len() {
        return Err(Error::SpaceMismatch {
            got: nu.len(),
            expected: space.len(),
        });
    }
    if space.is_empty() {
        return Err(Error::EmptySpace(1));
    }
    Ok(())
}

fn extract_plan(space: &FiniteMetricSpace, flows: &[f64]) -> TransportPlan {
    let n = space.len();
    let mut arcs = Vec::new();
    for from in 0..n {
        for to in 0..n {
            if from == to {
                continue;
            }
            let mass = flows[pair_var(n, from, to)];
            if mass > FLOW_TOL {
                arcs.push(PlanArc { from, to, mass });
            }
        }
    }
    TransportPlan { arcs }
}

/// Balanced KR norm: cheapest plan whose arrivals-minus-departures equal
/// `nu`, with the dual potential constrained only by the Lipschitz condition
/// (potentials are defined modulo constants).
pub fn kr0_norm(space: &FiniteMetricSpace, nu: &SignedMeasure) -> Result<KRResult> {
    check_measure(space, nu)?;
    if !nu.is_balanced(BALANCE_TOL) {
        return Err(Error::NotBalanced {
            total: nu.total(),
            tol: BALANCE_TOL,
        });
    }
    let n = space.len();
    let n_vars = n * (n - 1);
    let mut objective = vec![0.0; n_vars];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                objective[pair_var(n, i, j)] = space.dist(i, j);
            }
        }
    }
    let constraints = (0..n)
        .map(|p| {
            let mut coeffs = vec![0.0; n_vars];
            for q in 0..n {
                if q != p {
                    coeffs[pair_var(n, q, p)] += 1.0; // arrival at p
                    coeffs[pair_var(n, p, q)] -= 1.0; // departure from p
                }
            }
            LpConstraint::new(coeffs, Sense::Eq, nu.mass(p))
        })
        .collect();
    let solution = lp::solve_lp(&LpProblem::nonnegative(objective, constraints))?;

    let plan = extract_plan(space, &solution.x);
    let potential = ScalarField::new(space, solution.dual)?;
    let primal_value = plan.cost(space);
    let dual_value: f64 = (0..n).map(|p| potential.value(p) * nu.mass(p)).sum();
    let residual = nu.sub(&plan.induced(space))?;
    Ok(KRResult {
        primal_value,
        plan,
        residual,
        dual_value,
        potential,
        gap: (primal_value - dual_value).abs(),
    })
}

/// General KR norm: transported part priced by the metric plus a residual
/// priced by total variation, as one LP. The dual potential satisfies both
/// the Lipschitz condition and `|f| <= 1`.
pub fn kr_norm(space: &FiniteMetricSpace, mu: &SignedMeasure) -> Result<KRResult> {
    check_measure(space, mu)?;
    let n = space.len();
    let n_flow = n * (n - 1);
    let n_vars = n_flow + 2 * n; // flows, r+, r-
    let mut objective = vec![0.0; n_vars];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                objective[pair_var(n, i, j)] = space.dist(i, j);
            }
        }
    }
    for k in 0..2 * n {
        objective[n_flow + k] = 1.0;
    }
    let constraints = (0..n)
        .map(|p| {
            let mut coeffs = vec![0.0; n_vars];
            for q in 0..n {
                if q != p {
                    coeffs[pair_var(n, q, p)] += 1.0;
                    coeffs[pair_var(n, p, q)] -= 1.0;
                }
            }
            coeffs[n_flow + p] = 1.0; // r+
            coeffs[n_flow + n + p] = -1.0; // r-
            LpConstraint::new(coeffs, Sense::Eq, mu.mass(p))
        })
        .collect();
    let solution = lp::solve_lp(&LpProblem::nonnegative(objective, constraints))?;

    let plan = extract_plan(space, &solution.x);
    // recompute the residual from the extracted plan so that
    // plan + residual reproduces mu exactly
    let residual = mu.sub(&plan.induced(space))?;
    let potential = ScalarField::new(space, solution.dual)?;
    let primal_value = plan.cost(space) + residual.tv();
    let dual_value: f64 = (0..n).map(|p| potential.value(p) * mu.mass(p)).sum();
    Ok(KRResult {
        primal_value,
        plan,
        residual,
        dual_value,
        potential,
        gap: (primal_value - dual_value).abs(),
    })
}

/// Classic fixed-marginal transport value: plans with departure marginal
/// equal to the negative part and arrival marginal equal to the positive
/// part. Agrees with the balanced norm.
pub fn restricted_plan_norm(space: &FiniteMetricSpace, nu: &SignedMeasure) -> Result<f64> {
    check_measure(space, nu)?;
    if !nu.is_balanced(BALANCE_TOL) {
        return Err(Error::NotBalanced {
            total: nu.total(),
            tol: BALANCE_TOL,
        });
    }
    let (plus, minus) = nu.jordan_decompose();
    let sources = minus.support();
    let sinks = plus.support();
    if sources.is_empty() || sinks.is_empty() {
        return Ok(0.0);
    }
    let n_vars = sources.len() * sinks.len();
    let var = |si: usize, ti: usize| si * sinks.len() + ti;
    let mut objective = vec![0.0; n_vars];
    for (si, &s) in sources.iter().enumerate() {
        for (ti, &t) in sinks.iter().enumerate() {
            objective[var(si, ti)] = space.dist(s, t);
        }
    }
    let mut constraints = Vec::with_capacity(sources.len() + sinks.len());
    for (si, &s) in sources.iter().enumerate() {
        let mut coeffs = vec![0.0; n_vars];
        for ti in 0..sinks.len() {
            coeffs[var(si, ti)] = 1.0;
        }
        constraints.push(LpConstraint::new(coeffs, Sense::Eq, minus.mass(s)));
    }
    for (ti, &t) in sinks.iter().enumerate() {
        let mut coeffs = vec![0.0; n_vars];
        for si in 0..sources.len() {
            coeffs[var(si, ti)] = 1.0;
        }
        constraints.push(LpConstraint::new(coeffs, Sense::Eq, plus.mass(t)));
    }
    let solution = lp::solve_lp(&LpProblem::nonnegative(objective, constraints))?;
    Ok(solution.value)
}

/// Solves the general norm for each measure independently, collecting
/// per-item outcomes instead of failing fast.
pub fn kr_batch(space: &FiniteMetricSpace, measures: &[SignedMeasure]) -> Vec<Result<KRResult>> {
    measures.iter().map(|mu| kr_norm(space, mu)).collect()
}
