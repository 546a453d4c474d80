//! Discrete Besov seminorms (double-sum form), Clarkson inequality checks,
//! Hajłasz gradients via LP, and the embedding verifiers tying the two
//! scales together.
//!
//! Ball masses always use closed balls: realized radii hit points exactly
//! and the center's own weight keeps denominators positive.

use crate::error::{Error, Result};
use crate::lipschitz::{holder_norm, rho_pow, ScalarField};
use crate::metric::{BallMassTable, MetricMeasureSpace};
use crate::rng::SplitMix64;
use crate::transport::lp::{solve_lp, LpConstraint, LpProblem, Sense};

/// Smoothness/integrability parameters; only `q = p` spaces are handled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    pub s: f64,
    pub p: f64,
}

impl BesovParams {
    pub fn new(s: f64, p: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::SOutOfRange(s, "(0, 1)"));
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::POutOfRange(p, "[1, inf)"));
        }
        Ok(Self { s, p })
    }
}

fn check_field(mm: &MetricMeasureSpace, f: &ScalarField) -> Result<()> {
    if f.len() != mm.space().len() {
        return Err(Error::SpaceMismatch {
            got: f.len(),
            expected: mm.space().len(),
        });
    }
    Ok(())
}

/// Weighted `L^p` norm `(sum |f|^p mu)^(1/p)`.
pub fn lp_norm(mm: &MetricMeasureSpace, f: &ScalarField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::POutOfRange(p, "[1, inf)"));
    }
    check_field(mm, f)?;
    let total: f64 = f
        .values()
        .iter()
        .zip(mm.weights())
        .map(|(v, w)| v.abs().powf(p) * w)
        .sum();
    Ok(total.powf(1.0 / p))
}

/// Double-sum Besov seminorm:
/// `(sum_{x != y} |f(x)-f(y)|^p / (rho^{sp} mu(B_rho(x))) mu(x) mu(y))^{1/p}`.
pub fn besov_seminorm(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    params: BesovParams,
) -> Result<f64> {
    check_field(mm, f)?;
    let space = mm.space();
    if space.len() < 2 {
        return Err(Error::EmptySpace(2));
    }
    let table = BallMassTable::new(mm);
    let sp = params.s * params.p;
    let mut total = 0.0;
    for x in 0..space.len() {
        let row = space.dist_row(x);
        let wx = mm.weight(x);
        for (y, &rho) in row.iter().enumerate() {
            if y == x {
                continue;
            }
            let diff = (f.value(x) - f.value(y)).abs();
            if diff == 0.0 {
                continue;
            }
            total += diff.powf(params.p) / (rho.powf(sp) * table.mass(x, rho)) * wx * mm.weight(y);
        }
    }
    Ok(total.powf(1.0 / params.p))
}

/// `L^p` norm plus the Besov seminorm.
pub fn besov_norm(mm: &MetricMeasureSpace, f: &ScalarField, params: BesovParams) -> Result<f64> {
    Ok(lp_norm(mm, f, params.p)? + besov_seminorm(mm, f, params)?)
}

#[derive(Debug, Clone, Copy)]
pub struct ClarksonReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Clarkson inequality in the primed norm
/// `(||.||_{L^p}^p + [.]^p)^{1/p}`: the p-th power of the midpoint plus the
/// p-th power of the half-difference is at most the power mean of the pair.
pub fn clarkson_check(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    g: &ScalarField,
    params: BesovParams,
) -> Result<ClarksonReport> {
    if !(params.p > 2.0) {
        return Err(Error::POutOfRange(params.p, "(2, inf)"));
    }
    check_field(mm, f)?;
    check_field(mm, g)?;
    let primed_pow = |h: &ScalarField| -> Result<f64> {
        let l = lp_norm(mm, h, params.p)?;
        let s = besov_seminorm(mm, h, params)?;
        Ok(l.powf(params.p) + s.powf(params.p))
    };
    let space = mm.space();
    let mid = ScalarField::from_fn(space, |i| 0.5 * (f.value(i) + g.value(i)));
    let half_diff = ScalarField::from_fn(space, |i| 0.5 * (f.value(i) - g.value(i)));
    let lhs = primed_pow(&mid)? + primed_pow(&half_diff)?;
    let rhs = 0.5 * (primed_pow(f)? + primed_pow(g)?);
    Ok(ClarksonReport {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12 * (1.0 + rhs.abs()),
    })
}

/// A Hajłasz gradient with its weighted `L^p` norm.
#[derive(Debug, Clone)]
pub struct HajlaszResult {
    pub gradient: ScalarField,
    pub seminorm: f64,
    pub p: f64,
    /// True when the value is the certified LP optimum (`p = 1`); false for
    /// the descent upper bound at general `p`.
    pub certified: bool,
}

/// Pair quotients `|f(x)-f(y)| / rho^s(x,y)`, zero on the diagonal.
fn gradient_demands(mm: &MetricMeasureSpace, f: &ScalarField, s: f64) -> Vec<f64> {
    let space = mm.space();
    let n = space.len();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (f.value(i) - f.value(j)).abs() / rho_pow(space.dist(i, j), s);
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
    q
}

/// Certified Hajłasz seminorm at `p = 1`: minimizes `sum g mu` over
/// nonnegative `g` with `g(x) + g(y) >= |f(x)-f(y)| / rho^s(x,y)`.
///
/// Gradients are restricted to nonnegative fields, which makes the absolute
/// value around `g(x) + g(y)` redundant.
pub fn hajlasz_seminorm_p1(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    s: f64,
) -> Result<HajlaszResult> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::SOutOfRange(s, "(0, 1]"));
    }
    check_field(mm, f)?;
    let space = mm.space();
    let n = space.len();
    let q = gradient_demands(mm, f, s);
    let mut constraints = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if q[i * n + j] > 0.0 {
                let mut coeffs = vec![0.0; n];
                coeffs[i] = 1.0;
                coeffs[j] = 1.0;
                constraints.push(LpConstraint::new(coeffs, Sense::Ge, q[i * n + j]));
            }
        }
    }
    let solution = solve_lp(&LpProblem::nonnegative(mm.weights().to_vec(), constraints))?;
    let gradient = ScalarField::new(space, solution.x.iter().map(|&v| v.max(0.0)).collect())?;
    let seminorm: f64 = gradient
        .values()
        .iter()
        .zip(mm.weights())
        .map(|(g, w)| g * w)
        .sum();
    Ok(HajlaszResult {
        gradient,
        seminorm,
        p: 1.0,
        certified: true,
    })
}

/// One sweep of pairwise moves; returns the objective after the sweep.
fn descent_sweep(g: &mut [f64], q: &[f64], mu: &[f64], p: f64) -> f64 {
    let n = g.len();
    for a in 0..n {
        for b in (a + 1)..n {
            // floors over every constraint not involving the other coordinate
            let mut la = 0.0f64;
            let mut lb = 0.0f64;
            for y in 0..n {
                if y != a && y != b {
                    la = la.max(q[a * n + y] - g[y]);
                    lb = lb.max(q[b * n + y] - g[y]);
                }
            }
            let qab = q[a * n + b];
            if la + lb >= qab {
                g[a] = la;
                g[b] = lb;
            } else {
                // interior optimum on the segment g_a + g_b = qab; the
                // weight ratio can overflow for p near 1, where the split
                // degenerates to the cheaper endpoint
                let w = (mu[b] / mu[a]).powf(1.0 / (p - 1.0));
                let split = if w.is_finite() {
                    qab * w / (1.0 + w)
                } else {
                    qab
                };
                let ga = split.clamp(la, qab - lb);
                g[a] = ga;
                g[b] = qab - ga;
            }
        }
    }
    g.iter().zip(mu).map(|(v, w)| v.powf(p) * w).sum()
}

/// Feasible Hajłasz gradient at general `p >= 1` and its `L^p` norm — an
/// upper bound on the seminorm, not a certified optimum.
///
/// Starts from the `p = 1` LP optimizer and runs cyclic pairwise coordinate
/// descent on the `L^p` objective until the relative improvement drops
/// below 1e-8. Single-coordinate moves alone stall on the sum constraints,
/// so each move re-optimizes one pair jointly.
pub fn hajlasz_upper_bound(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    s: f64,
    p: f64,
) -> Result<HajlaszResult> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::POutOfRange(p, "[1, inf)"));
    }
    let base = hajlasz_seminorm_p1(mm, f, s)?;
    if p == 1.0 {
        return Ok(base);
    }
    let q = gradient_demands(mm, f, s);
    let mut g = base.gradient.values().to_vec();
    let mu = mm.weights();
    let mut prev: f64 = g.iter().zip(mu).map(|(v, w)| v.powf(p) * w).sum();
    for _ in 0..1000 {
        let obj = descent_sweep(&mut g, &q, mu, p);
        if prev - obj <= 1e-8 * (1.0 + prev.abs()) {
            prev = obj;
            break;
        }
        prev = obj;
    }
    let gradient = ScalarField::new(mm.space(), g)?;
    let seminorm = prev.powf(1.0 / p);
    Ok(HajlaszResult {
        gradient,
        seminorm,
        p,
        certified: false,
    })
}

#[derive(Debug, Clone)]
pub struct MorreyReport {
    /// Smallest constant making the pointwise Hölder bound hold for this
    /// gradient: `max |f(x)-f(y)| / (d^{s-Q/p} ||g||_p)`.
    pub c_star: f64,
    pub c: f64,
    pub q: f64,
    pub gradient_lp: f64,
    pub holds: bool,
}

/// Checks the pointwise bound `|f(x)-f(y)| <= C d(x,y)^{s-Q/p} ||g||_p`
/// for the given gradient, under the exponent condition `p > Q/s`.
pub fn morrey_check(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    result: &HajlaszResult,
    s: f64,
    p: f64,
    c: f64,
    q: f64,
) -> Result<MorreyReport> {
    if !(p > q / s) {
        return Err(Error::ExponentViolation { p, bound: q / s });
    }
    check_field(mm, f)?;
    let gradient_lp = lp_norm(mm, &result.gradient, p)?;
    let space = mm.space();
    let exponent = s - q / p;
    let mut c_star = 0.0f64;
    if gradient_lp > 0.0 {
        for x in 0..space.len() {
            for y in (x + 1)..space.len() {
                let d = space.dist(x, y);
                let bound = d.powf(exponent) * gradient_lp;
                c_star = c_star.max((f.value(x) - f.value(y)).abs() / bound);
            }
        }
    }
    Ok(MorreyReport {
        c_star,
        c,
        q,
        gradient_lp,
        holds: c_star <= c,
    })
}

#[derive(Debug, Clone)]
pub struct LinftyReport {
    pub sup_norm: f64,
    pub lp_norm: f64,
    pub gradient_bound: f64,
    /// `||f||_inf / (||f||_p + gradient bound)`; zero for the zero field.
    pub ratio: f64,
}

/// Realized constant of the sup-norm embedding under `p > Q/s`.
pub fn linfty_embedding_check(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    s: f64,
    p: f64,
    q: f64,
) -> Result<LinftyReport> {
    if !(p > q / s) {
        return Err(Error::ExponentViolation { p, bound: q / s });
    }
    check_field(mm, f)?;
    let sup = f.sup_norm();
    let lp = lp_norm(mm, f, p)?;
    let bound = hajlasz_upper_bound(mm, f, s, p)?.seminorm;
    let ratio = if sup == 0.0 { 0.0 } else { sup / (lp + bound) };
    Ok(LinftyReport {
        sup_norm: sup,
        lp_norm: lp,
        gradient_bound: bound,
        ratio,
    })
}

#[derive(Debug, Clone)]
pub struct LipBesovReport {
    pub besov_seminorm: f64,
    pub holder_norm: f64,
    /// `besov_seminorm / holder_norm`; zero when the Hölder norm vanishes.
    pub ratio: f64,
    /// Instance ceiling: the double sum with `|f(x)-f(y)|^p` replaced by its
    /// Hölder bound `min(rho^{alpha p}, 2^p)`, to the 1/p.
    pub ceiling: f64,
    pub holds: bool,
}

/// Ratio of the Besov seminorm to the Hölder norm against the analytic
/// per-instance ceiling, for `s < alpha`.
///
/// The ceiling splits every pair term by the two available bounds on
/// `|f(x)-f(y)|`: the Hölder quotient for close pairs and twice the sup norm
/// for far ones, so the asserted inequality is exact up to rounding; the
/// check allows 10% slack.
pub fn embedding_ratio_lip_besov(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    alpha: f64,
    params: BesovParams,
) -> Result<LipBesovReport> {
    if !(params.s < alpha) {
        return Err(Error::SOutOfRange(params.s, "(0, alpha)"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha, "(0, 1]"));
    }
    check_field(mm, f)?;
    let space = mm.space();
    if space.len() < 2 {
        return Err(Error::EmptySpace(2));
    }
    let semi = besov_seminorm(mm, f, params)?;
    let norm = holder_norm(space, f, alpha)?;
    let table = BallMassTable::new(mm);
    let sp = params.s * params.p;
    let cap = 2f64.powf(params.p);
    let mut total = 0.0;
    for x in 0..space.len() {
        let row = space.dist_row(x);
        for (y, &rho) in row.iter().enumerate() {
            if y == x {
                continue;
            }
            let numer = rho.powf(alpha * params.p).min(cap);
            total += numer / (rho.powf(sp) * table.mass(x, rho)) * mm.weight(x) * mm.weight(y);
        }
    }
    let ceiling = total.powf(1.0 / params.p);
    let ratio = if norm == 0.0 { 0.0 } else { semi / norm };
    Ok(LipBesovReport {
        besov_seminorm: semi,
        holder_norm: norm,
        ratio,
        ceiling,
        holds: ratio <= ceiling * 1.1,
    })
}

#[derive(Debug, Clone)]
pub struct BesovHajlaszReport {
    pub hajlasz_bound: f64,
    pub besov_seminorm: f64,
    /// `hajlasz_bound / besov_seminorm`; zero when both vanish.
    pub ratio: f64,
}

/// Realized constant of the Besov-to-Hajłasz embedding at matching `(s, p)`.
pub fn besov_to_hajlasz_check(
    mm: &MetricMeasureSpace,
    f: &ScalarField,
    s: f64,
    p: f64,
) -> Result<BesovHajlaszReport> {
    let params = BesovParams::new(s, p)?;
    let semi = besov_seminorm(mm, f, params)?;
    let bound = hajlasz_upper_bound(mm, f, s, p)?.seminorm;
    let ratio = if semi == 0.0 { 0.0 } else { bound / semi };
    Ok(BesovHajlaszReport {
        hajlasz_bound: bound,
        besov_seminorm: semi,
        ratio,
    })
}

/// Hölder-`alpha` sample path on the `2^levels + 1` point unit grid:
/// midpoint displacement with per-level amplitude `2^{-alpha k}`.
pub fn midpoint_displacement_field(rng: &mut SplitMix64, levels: u32, alpha: f64) -> Vec<f64> {
    let n = (1usize << levels) + 1;
    let mut v = vec![0.0; n];
    v[0] = rng.next_range(-1.0, 1.0);
    v[n - 1] = rng.next_range(-1.0, 1.0);
    let mut step = n - 1;
    let mut level = 1u32;
    while step > 1 {
        let half = step / 2;
        let amp = 0.5f64.powf(alpha * level as f64);
        let mut i = 0;
        while i + step < n {
            v[i + half] = 0.5 * (v[i] + v[i + step]) + rng.next_range(-1.0, 1.0) * amp;
            i += step;
        }
        step = half;
        level += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetricSpace;

    fn uniform_grid(n: usize) -> MetricMeasureSpace {
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                vec![if n == 1 {
                    0.0
                } else {
                    i as f64 / (n - 1) as f64
                }]
            })
            .collect();
        let ids = (0..n).map(|i| format!("p{i}")).collect();
        MetricMeasureSpace::uniform(FiniteMetricSpace::from_coords(ids, &coords).unwrap()).unwrap()
    }

    fn two_point() -> MetricMeasureSpace {
        uniform_grid(2)
    }

    #[test]
    fn two_point_worked_seminorm() {
        let mm = two_point();
        let f = ScalarField::new(mm.space(), vec![0.0, 1.0]).unwrap();
        let params = BesovParams::new(0.5, 2.0).unwrap();
        let semi = besov_seminorm(&mm, &f, params).unwrap();
        assert!((semi - 0.5f64.sqrt()).abs() < 1e-12, "{semi}");
        let norm = besov_norm(&mm, &f, params).unwrap();
        assert!((norm - 2.0 * 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn seminorm_vanishes_on_constants_and_is_homogeneous() {
        let mm = uniform_grid(7);
        let params = BesovParams::new(0.5, 2.0).unwrap();
        let c = ScalarField::constant(mm.space(), 3.0);
        assert_eq!(besov_seminorm(&mm, &c, params).unwrap(), 0.0);

        let f = ScalarField::from_fn(mm.space(), |i| (i as f64 * 0.9).sin());
        let semi = besov_seminorm(&mm, &f, params).unwrap();
        let semi2 = besov_seminorm(&mm, &f.scaled(2.0), params).unwrap();
        assert!((semi2 - 2.0 * semi).abs() <= 1e-12 * (1.0 + semi));
        // symmetry under negation, exact
        assert_eq!(besov_seminorm(&mm, &f.scaled(-1.0), params).unwrap(), semi);
    }

    #[test]
    fn besov_norm_of_constant_one_is_one() {
        let mm = uniform_grid(5);
        let one = ScalarField::constant(mm.space(), 1.0);
        let params = BesovParams::new(0.3, 2.0).unwrap();
        assert!((besov_norm(&mm, &one, params).unwrap() - 1.0).abs() < 1e-12);
        let zero = ScalarField::constant(mm.space(), 0.0);
        assert_eq!(besov_norm(&mm, &zero, params).unwrap(), 0.0);
    }

    #[test]
    fn clarkson_equality_cases_and_range_check() {
        let mm = uniform_grid(4);
        let f = ScalarField::from_fn(mm.space(), |i| i as f64 * 0.4 - 0.5);
        let params = BesovParams::new(0.5, 4.0).unwrap();
        let same = clarkson_check(&mm, &f, &f, params).unwrap();
        assert!(same.holds);
        assert!((same.lhs - same.rhs).abs() <= 1e-12 * (1.0 + same.rhs));
        let opp = clarkson_check(&mm, &f, &f.scaled(-1.0), params).unwrap();
        assert!(opp.holds);
        assert!((opp.lhs - opp.rhs).abs() <= 1e-12 * (1.0 + opp.rhs));

        let bad = BesovParams::new(0.5, 2.0).unwrap();
        assert!(matches!(
            clarkson_check(&mm, &f, &f, bad),
            Err(Error::POutOfRange(..))
        ));
    }

    #[test]
    fn clarkson_holds_on_random_pairs() {
        let mut rng = SplitMix64::new(31);
        for p in [3.0, 4.0, 6.0] {
            let params = BesovParams::new(0.4, p).unwrap();
            for _ in 0..10 {
                let mm = uniform_grid(8);
                let f = ScalarField::from_fn(mm.space(), |_| rng.next_range(-1.0, 1.0));
                let g = ScalarField::from_fn(mm.space(), |_| rng.next_range(-1.0, 1.0));
                let rep = clarkson_check(&mm, &f, &g, params).unwrap();
                assert!(rep.holds, "p = {p}: lhs {} rhs {}", rep.lhs, rep.rhs);
            }
        }
    }

    #[test]
    fn hajlasz_p1_constant_and_two_point() {
        let mm = two_point();
        let c = ScalarField::constant(mm.space(), 9.0);
        let r = hajlasz_seminorm_p1(&mm, &c, 0.5).unwrap();
        assert_eq!(r.seminorm, 0.0);
        assert!(r.certified);

        let f = ScalarField::new(mm.space(), vec![0.0, 1.0]).unwrap();
        for s in [0.3, 0.5, 1.0] {
            let r = hajlasz_seminorm_p1(&mm, &f, s).unwrap();
            assert_eq!(r.seminorm, 0.5, "s = {s}");
            // gradient is feasible: g(a) + g(b) >= 1
            let g = r.gradient.values();
            assert!(g[0] + g[1] >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn hajlasz_p1_three_point_vs_grid_search() {
        let mm = uniform_grid(3);
        let f = ScalarField::new(mm.space(), vec![0.0, 0.9, 0.4]).unwrap();
        let s = 0.5;
        let r = hajlasz_seminorm_p1(&mm, &f, s).unwrap();
        // one coordinate on a fine lattice, the other two completed
        // analytically: for fixed g0 the cheapest completion takes the floors
        // unless the (1,2) constraint binds
        let q = gradient_demands(&mm, &f, s);
        let n = 3;
        let qmax = q.iter().cloned().fold(0.0, f64::max);
        let mut best = f64::INFINITY;
        let steps = 4000;
        for k in 0..=steps {
            let g0 = qmax * k as f64 / steps as f64;
            let l1 = (q[n] - g0).max(0.0);
            let l2 = (q[2 * n] - g0).max(0.0);
            let (g1, g2) = if l1 + l2 >= q[n + 2] {
                (l1, l2)
            } else {
                let t = q[n + 2];
                // linear objective: push the deficit onto either endpoint
                let a = (l1, t - l1);
                let b = (t - l2, l2);
                let val = |g: (f64, f64)| mm.weight(1) * g.0 + mm.weight(2) * g.1;
                if val(a) <= val(b) {
                    a
                } else {
                    b
                }
            };
            let v = mm.weight(0) * g0 + mm.weight(1) * g1 + mm.weight(2) * g2;
            if v < best {
                best = v;
            }
        }
        assert!(
            (r.seminorm - best).abs() <= 1e-3,
            "lp {} vs grid {best}",
            r.seminorm
        );
        assert!(r.seminorm <= best + 1e-9);
    }

    #[test]
    fn hajlasz_p1_gradient_feasibility_slack() {
        let mm = uniform_grid(6);
        let f = ScalarField::from_fn(mm.space(), |i| (i as f64 * 1.3).cos());
        let r = hajlasz_seminorm_p1(&mm, &f, 0.7).unwrap();
        let g = r.gradient.values();
        let q = gradient_demands(&mm, &f, 0.7);
        for i in 0..6 {
            assert!(g[i] >= 0.0);
            for j in (i + 1)..6 {
                assert!(g[i] + g[j] - q[i * 6 + j] >= -1e-9, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn hajlasz_upper_bound_two_point_p2() {
        let mm = two_point();
        let f = ScalarField::new(mm.space(), vec![0.0, 1.0]).unwrap();
        let r = hajlasz_upper_bound(&mm, &f, 0.5, 2.0).unwrap();
        assert!(!r.certified);
        let g = r.gradient.values();
        assert!(
            (g[0] - 0.5).abs() < 1e-9 && (g[1] - 0.5).abs() < 1e-9,
            "{g:?}"
        );
        assert!((r.seminorm - 0.5).abs() < 1e-9);

        let c = ScalarField::constant(mm.space(), 2.0);
        for p in [1.0, 2.0, 4.0] {
            assert_eq!(hajlasz_upper_bound(&mm, &c, 0.5, p).unwrap().seminorm, 0.0);
        }
    }

    #[test]
    fn hajlasz_upper_bound_survives_extreme_weights_near_p_one() {
        let space = uniform_grid(3);
        let mm = MetricMeasureSpace::new(space.space().clone(), vec![1e12, 1e-12, 1.0]).unwrap();
        let f = ScalarField::new(mm.space(), vec![0.0, 1.0, 0.3]).unwrap();
        let r = hajlasz_upper_bound(&mm, &f, 0.5, 1.0 + 1e-12).unwrap();
        assert!(r.seminorm.is_finite(), "seminorm {}", r.seminorm);
        assert!(r
            .gradient
            .values()
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0));
        // still a feasible gradient
        let q = gradient_demands(&mm, &f, 0.5);
        let g = r.gradient.values();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(g[i] + g[j] >= q[i * 3 + j] - 1e-9);
            }
        }
    }

    #[test]
    fn hajlasz_upper_bound_stays_feasible() {
        let mm = uniform_grid(6);
        let f = ScalarField::from_fn(mm.space(), |i| (i as f64 * 0.77).sin() * 2.0);
        let s = 0.6;
        let r = hajlasz_upper_bound(&mm, &f, s, 2.0).unwrap();
        let g = r.gradient.values();
        let q = gradient_demands(&mm, &f, s);
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert!(g[i] + g[j] - q[i * 6 + j] >= -1e-9);
            }
        }
        // never better than the p=1 certified optimum transported to L^2 by
        // the power-mean inequality on a probability weight
        let p1 = hajlasz_seminorm_p1(&mm, &f, s).unwrap();
        assert!(r.seminorm >= p1.seminorm - 1e-9);
    }

    #[test]
    fn morrey_trivial_and_grid() {
        let mm = uniform_grid(21);
        let c = ScalarField::constant(mm.space(), 4.0);
        let res = hajlasz_upper_bound(&mm, &c, 0.75, 2.0).unwrap();
        let rep = morrey_check(&mm, &c, &res, 0.75, 2.0, 10.0, 1.0).unwrap();
        assert_eq!(rep.c_star, 0.0);
        assert!(rep.holds);

        let f = ScalarField::from_fn(mm.space(), |i| (i as f64 / 20.0).powf(0.6));
        let res = hajlasz_upper_bound(&mm, &f, 0.75, 2.0).unwrap();
        let (cc, qq) = crate::metric::fit_lower_mass_bound(&mm).unwrap();
        assert!(cc > 0.0);
        let rep = morrey_check(&mm, &f, &res, 0.75, 2.0, f64::INFINITY, qq).unwrap();
        assert!(rep.c_star.is_finite() && rep.c_star > 0.0);

        assert!(matches!(
            morrey_check(&mm, &f, &res, 0.5, 1.0, 1.0, 1.0),
            Err(Error::ExponentViolation { .. })
        ));
    }

    #[test]
    fn linfty_embedding_examples() {
        let mm = uniform_grid(9);
        let zero = ScalarField::constant(mm.space(), 0.0);
        let rep = linfty_embedding_check(&mm, &zero, 0.75, 2.0, 1.0).unwrap();
        assert_eq!(rep.ratio, 0.0);

        let one = ScalarField::constant(mm.space(), 1.0);
        let rep = linfty_embedding_check(&mm, &one, 0.75, 2.0, 1.0).unwrap();
        assert!((rep.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lip_besov_embedding_examples() {
        let mm = uniform_grid(21);
        let params = BesovParams::new(0.5, 2.0).unwrap();
        let c = ScalarField::constant(mm.space(), 2.0);
        let rep = embedding_ratio_lip_besov(&mm, &c, 1.0, params).unwrap();
        assert_eq!(rep.ratio, 0.0);
        assert!(rep.holds);

        let f = ScalarField::from_fn(mm.space(), |i| i as f64 / 20.0);
        let rep = embedding_ratio_lip_besov(&mm, &f, 1.0, params).unwrap();
        assert!(rep.ratio.is_finite());
        assert!(rep.ratio <= rep.ceiling, "{} vs {}", rep.ratio, rep.ceiling);
        assert!(rep.holds);

        assert!(matches!(
            embedding_ratio_lip_besov(&mm, &f, 0.4, params),
            Err(Error::SOutOfRange(..))
        ));
    }

    #[test]
    fn midpoint_displacement_fields_stay_under_ceiling() {
        let params = BesovParams::new(0.5, 2.0).unwrap();
        let alpha = 0.7;
        for trial in 0..10 {
            let mut rng = SplitMix64::stream(99, trial);
            let values = midpoint_displacement_field(&mut rng, 6, alpha);
            let mm = uniform_grid(values.len());
            let f = ScalarField::new(mm.space(), values).unwrap();
            let rep = embedding_ratio_lip_besov(&mm, &f, alpha, params).unwrap();
            assert!(rep.holds, "trial {trial}: {} vs {}", rep.ratio, rep.ceiling);
        }
    }

    #[test]
    fn hajlasz_seminorms_vanish_on_constants_and_scale() {
        let mm = uniform_grid(6);
        let c = ScalarField::constant(mm.space(), -3.0);
        assert_eq!(hajlasz_seminorm_p1(&mm, &c, 0.5).unwrap().seminorm, 0.0);
        assert_eq!(
            hajlasz_upper_bound(&mm, &c, 0.5, 3.0).unwrap().seminorm,
            0.0
        );

        let f = ScalarField::from_fn(mm.space(), |i| (i as f64 * 1.1).sin());
        let v1 = hajlasz_seminorm_p1(&mm, &f, 0.5).unwrap().seminorm;
        let v2 = hajlasz_seminorm_p1(&mm, &f.scaled(2.0), 0.5)
            .unwrap()
            .seminorm;
        assert!((v2 - 2.0 * v1).abs() <= 1e-9 * (1.0 + v1));
        let b1 = hajlasz_upper_bound(&mm, &f, 0.5, 2.0).unwrap().seminorm;
        let b2 = hajlasz_upper_bound(&mm, &f.scaled(2.0), 0.5, 2.0)
            .unwrap()
            .seminorm;
        assert!((b2 - 2.0 * b1).abs() <= 1e-7 * (1.0 + b1));
    }

    #[test]
    fn besov_to_hajlasz_max_ratio_over_random_fields() {
        let mut rng = SplitMix64::new(55);
        let mm = uniform_grid(10);
        let mut max_ratio = 0.0f64;
        for _ in 0..10 {
            let f = ScalarField::from_fn(mm.space(), |_| rng.next_range(-1.0, 1.0));
            let rep = besov_to_hajlasz_check(&mm, &f, 0.5, 2.0).unwrap();
            assert!(rep.ratio.is_finite());
            max_ratio = max_ratio.max(rep.ratio);
        }
        assert!(max_ratio > 0.0 && max_ratio.is_finite());
    }

    #[test]
    fn linfty_max_ratio_on_fifty_point_grid() {
        let mm = uniform_grid(50);
        let (_, q) = crate::metric::fit_lower_mass_bound(&mm).unwrap();
        let s = 0.75;
        let p = 2.0;
        assert!(p > q / s);
        let mut rng = SplitMix64::new(66);
        let mut max_ratio = 0.0f64;
        for _ in 0..3 {
            let f = ScalarField::from_fn(mm.space(), |_| rng.next_range(-1.0, 1.0));
            let rep = linfty_embedding_check(&mm, &f, s, p, q).unwrap();
            assert!(rep.ratio.is_finite());
            max_ratio = max_ratio.max(rep.ratio);
        }
        assert!(max_ratio.is_finite() && max_ratio > 0.0);
    }

    #[test]
    fn besov_to_hajlasz_two_point_worked_value() {
        let mm = two_point();
        let f = ScalarField::new(mm.space(), vec![0.0, 1.0]).unwrap();
        let rep = besov_to_hajlasz_check(&mm, &f, 0.5, 2.0).unwrap();
        assert!((rep.hajlasz_bound - 0.5).abs() < 1e-9);
        assert!((rep.besov_seminorm - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((rep.ratio - 0.5f64.sqrt()).abs() < 1e-9);

        let c = ScalarField::constant(mm.space(), 1.0);
        let rep = besov_to_hajlasz_check(&mm, &c, 0.5, 2.0).unwrap();
        assert_eq!(rep.ratio, 0.0);
    }
}
