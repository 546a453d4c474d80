//! Hölder seminorms, the little-Lipschitz modulus and distance profile, the
//! two-component operator family on pairs-plus-evaluation-point, and McShane
//! extension from a subset.

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// A real value per point of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(space: &FiniteMetricSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::SpaceMismatch {
                got: values.len(),
                expected: space.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "value at point {i} is {}; fields must be finite",
                values[i]
            )));
        }
        Ok(Self { values })
    }

    pub fn constant(space: &FiniteMetricSpace, c: f64) -> Self {
        Self {
            values: vec![c; space.len()],
        }
    }

    pub fn from_fn(space: &FiniteMetricSpace, f: impl FnMut(usize) -> f64) -> Self {
        Self {
            values: (0..space.len()).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> ScalarField {
        ScalarField {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}

/// `rho^alpha` with the `alpha = 1` case kept exact.
#[inline]
pub(crate) fn rho_pow(rho: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        rho
    } else {
        rho.powf(alpha)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha, "(0, 1]"))
    }
}

fn check_field(space: &FiniteMetricSpace, f: &ScalarField) -> Result<()> {
    if f.len() != space.len() {
        return Err(Error::SpaceMismatch {
            got: f.len(),
            expected: space.len(),
        });
    }
    Ok(())
}

/// `[f]_alpha`: the exact maximum of `|f(x)-f(y)| / rho(x,y)^alpha` over
/// distinct pairs. Zero on singletons.
pub fn holder_seminorm(space: &FiniteMetricSpace, f: &ScalarField, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_field(space, f)?;
    if space.is_empty() {
        return Err(Error::EmptySpace(1));
    }
    let n = space.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let q = (f.value(i) - f.value(j)).abs() / rho_pow(space.dist(i, j), alpha);
            best = best.max(q);
        }
    }
    Ok(best)
}

/// `max([f]_alpha, sup|f|)`.
pub fn holder_norm(space: &FiniteMetricSpace, f: &ScalarField, alpha: f64) -> Result<f64> {
    Ok(holder_seminorm(space, f, alpha)?.max(f.sup_norm()))
}

/// Sup of the Hölder quotient over pairs with `0 < rho(x,y) <= delta`;
/// zero when no pair qualifies.
pub fn lip_modulus(
    space: &FiniteMetricSpace,
    f: &ScalarField,
    alpha: f64,
    delta: f64,
) -> Result<f64> {
    check_alpha(alpha)?;
    check_field(space, f)?;
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!(
            "delta = {delta} must be positive"
        )));
    }
    let n = space.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let rho = space.dist(i, j);
            if rho <= delta {
                best = best.max((f.value(i) - f.value(j)).abs() / rho_pow(rho, alpha));
            }
        }
    }
    Ok(best)
}

/// Hölder quotient suprema indexed by a decreasing scale schedule.
///
/// `omega[k]` equals `lip_modulus` at `deltas[k]`; the profile is
/// nondecreasing in delta by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile {
    pub deltas: Vec<f64>,
    pub omega: Vec<f64>,
}

impl ModulusProfile {
    /// The distance estimate: the modulus at the smallest scheduled scale.
    pub fn estimate(&self) -> f64 {
        *self.omega.last().unwrap()
    }
}

/// Modulus profile over a strictly decreasing positive schedule, in a single
/// pass over the pairs.
///
/// The estimate at the smallest scale approximates the distance to the
/// little-Lipschitz subspace; on a fixed finite space the scale-indexed
/// profile is the meaningful object, and studies refine the space itself.
pub fn dist_to_little_lip(
    space: &FiniteMetricSpace,
    f: &ScalarField,
    alpha: f64,
    schedule: &[f64],
) -> Result<ModulusProfile> {
    check_alpha(alpha)?;
    check_field(space, f)?;
    if schedule.is_empty() {
        return Err(Error::EmptySchedule);
    }
    for w in schedule.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidInput(
                "delta schedule must be strictly decreasing".into(),
            ));
        }
    }
    if !(schedule[schedule.len() - 1] > 0.0) {
        return Err(Error::InvalidInput(
            "delta schedule must be positive".into(),
        ));
    }
    let m = schedule.len();
    // bucket[k] holds the max quotient over pairs whose largest admissible
    // schedule index is k; omega is then the suffix maximum
    let mut bucket = vec![0.0f64; m];
    let n = space.len();
    for i in 0..n {
        let row = space.dist_row(i);
        for j in (i + 1)..n {
            let rho = row[j];
            if rho > schedule[0] {
                continue;
            }
            let k = schedule.partition_point(|&d| d >= rho);
            let q = (f.value(i) - f.value(j)).abs() / rho_pow(rho, alpha);
            bucket[k - 1] = bucket[k - 1].max(q);
        }
    }
    let mut omega = bucket;
    for k in (0..m.saturating_sub(1)).rev() {
        omega[k] = omega[k].max(omega[k + 1]);
    }
    Ok(ModulusProfile {
        deltas: schedule.to_vec(),
        omega,
    })
}

/// Index `(x, y, z)` with `x != y` into the operator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorIndex {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl OperatorIndex {
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidInput(format!(
                "operator index needs x != y, got x = y = {x}"
            )));
        }
        Ok(Self { x, y, z })
    }
}

/// Evaluates `L_{x,y,z} f = ((f(x)-f(y))/rho(x,y), (rho(x,y)/D) f(z))`.
///
/// The pair lives in `R^2` with the max norm. Rejected on spaces of zero
/// diameter.
pub fn operator_eval(
    space: &FiniteMetricSpace,
    f: &ScalarField,
    idx: OperatorIndex,
) -> Result<(f64, f64)> {
    check_field(space, f)?;
    if space.diam() == 0.0 {
        return Err(Error::DegenerateDiameter);
    }
    if idx.x == idx.y {
        return Err(Error::InvalidInput("operator index needs x != y".into()));
    }
    let rho = space.dist(idx.x, idx.y);
    let first = (f.value(idx.x) - f.value(idx.y)) / rho;
    let second = (rho / space.diam()) * f.value(idx.z);
    Ok((first, second))
}

/// Exact max over all `(x, y, z)` of the max-norm of [`operator_eval`];
/// equal to `holder_norm(f, 1)` bit for bit.
pub fn operator_sup(space: &FiniteMetricSpace, f: &ScalarField) -> Result<f64> {
    check_field(space, f)?;
    if space.diam() == 0.0 {
        return Err(Error::DegenerateDiameter);
    }
    let n = space.len();
    let d = space.diam();
    let mut best = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let rho = space.dist(x, y);
            let first = ((f.value(x) - f.value(y)) / rho).abs();
            best = best.max(first);
            let scale = rho / d;
            for z in 0..n {
                best = best.max((scale * f.value(z)).abs());
            }
        }
    }
    Ok(best)
}

/// McShane extension of data on a subset, clamped to the data range.
///
/// `g(x) = clamp(min_a fa(a) + lip * rho(x, a), min fa, max fa)`; on the
/// subset itself `g` reproduces the data exactly. The constant must dominate
/// the restriction's Lipschitz constant.
pub fn extend_lipschitz(
    space: &FiniteMetricSpace,
    subset: &[usize],
    fa: &[f64],
    lip: f64,
) -> Result<ScalarField> {
    if subset.is_empty() {
        return Err(Error::InvalidInput(
            "extension subset must be nonempty".into(),
        ));
    }
    if subset.len() != fa.len() {
        return Err(Error::SpaceMismatch {
            got: fa.len(),
            expected: subset.len(),
        });
    }
    for &a in subset {
        if a >= space.len() {
            return Err(Error::UnknownPoint(format!("index {a}")));
        }
    }
    let required = restriction_lipschitz_constant(space, subset, fa);
    if lip < required {
        return Err(Error::ConstantTooSmall {
            given: lip,
            required,
        });
    }
    let lo = fa.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = fa.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut values = vec![0.0; space.len()];
    for (x, v) in values.iter_mut().enumerate() {
        let m = subset
            .iter()
            .zip(fa)
            .map(|(&a, &va)| va + lip * space.dist(x, a))
            .fold(f64::INFINITY, f64::min);
        *v = m.clamp(lo, hi);
    }
    // exact restriction regardless of rounding in competing candidates
    for (&a, &va) in subset.iter().zip(fa) {
        values[a] = va;
    }
    Ok(ScalarField { values })
}

/// Lipschitz constant of data on a subset with respect to the base metric.
pub fn restriction_lipschitz_constant(
    space: &FiniteMetricSpace,
    subset: &[usize],
    fa: &[f64],
) -> f64 {
    let mut best = 0.0f64;
    for (k, &a) in subset.iter().enumerate() {
        for (l, &b) in subset.iter().enumerate().skip(k + 1) {
            best = best.max((fa[k] - fa[l]).abs() / space.dist(a, b));
        }
    }
    best
}

/// Outcome of one extension-from-a-subset trial.
#[derive(Debug, Clone)]
pub struct AssumptionHReport {
    pub g: ScalarField,
    /// Lipschitz constant used by the extension (of `f` restricted to the
    /// subset, in the base metric).
    pub lip_constant: f64,
    pub norm_g: f64,
    pub norm_f: f64,
    /// `norm_g / norm_f`, zero when both vanish.
    pub ratio: f64,
    pub c: f64,
    pub holds: bool,
    /// `sup |f - g|` over the whole space.
    pub max_abs_deviation: f64,
}

/// Extends `f` from the subset with the restriction's base-metric Lipschitz
/// constant and reports whether the Hölder norm grew by at most `c`.
pub fn assumption_h_report(
    space: &FiniteMetricSpace,
    f: &ScalarField,
    alpha: f64,
    subset: &[usize],
    c: f64,
) -> Result<AssumptionHReport> {
    check_alpha(alpha)?;
    check_field(space, f)?;
    if subset.is_empty() {
        return Err(Error::InvalidInput("subset must be nonempty".into()));
    }
    if !(c > 1.0) {
        return Err(Error::COutOfRange(c));
    }
    let fa: Vec<f64> = subset.iter().map(|&a| f.value(a)).collect();
    let lip = restriction_lipschitz_constant(space, subset, &fa);
    let g = extend_lipschitz(space, subset, &fa, lip)?;
    let norm_g = holder_norm(space, &g, alpha)?;
    let norm_f = holder_norm(space, f, alpha)?;
    let ratio = if norm_f == 0.0 { 0.0 } else { norm_g / norm_f };
    let max_abs_deviation = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(AssumptionHReport {
        g,
        lip_constant: lip,
        norm_g,
        norm_f,
        ratio,
        c,
        holds: norm_g <= c * norm_f,
        max_abs_deviation,
    })
}
