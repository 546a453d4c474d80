//! Finite metric spaces, snowflake transforms, greedy net hierarchies and
//! doubling estimates.
//!
//! A [`FiniteMetricSpace`] is a list of named points with a dense symmetric
//! distance matrix. All axioms are checked with absolute tolerance
//! [`METRIC_TOL`] so matrices produced by entrywise `powf` transforms stay
//! valid.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Absolute tolerance for the metric axiom checks. Absorbs the rounding of
/// snowflake transforms and coordinate-induced distances.
pub const METRIC_TOL: f64 = 1e-12;

/// A finite metric space: point ids plus a dense distance matrix.
///
/// Immutable after construction; the diameter is cached.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// Row-major `n*n` distances.
    dist: Vec<f64>,
    diam: f64,
}

impl FiniteMetricSpace {
    /// Validates every metric axiom and returns the space.
    ///
    /// Checks, in order: squareness, finite nonnegative entries, zero
    /// diagonal, symmetry, positive off-diagonal, and the triangle
    /// inequality (reporting the first offending triple). The triangle scan
    /// is cubic in the number of points.
    pub fn new(points: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let space = Self::new_trusted(points, rows)?;
        let n = space.len();
        for i in 0..n {
            for j in 0..n {
                let dij = space.dist(i, j);
                for k in 0..n {
                    let direct = space.dist(i, k);
                    let via = dij + space.dist(j, k);
                    if direct > via + METRIC_TOL {
                        return Err(Error::TriangleViolation {
                            i,
                            j,
                            k,
                            direct,
                            via,
                        });
                    }
                }
            }
        }
        Ok(space)
    }

    /// Like [`FiniteMetricSpace::new`] but skips the cubic triangle scan.
    ///
    /// For matrices that are metrics by construction (coordinate-induced
    /// distances, snowflakes of validated spaces). Shape, symmetry, sign and
    /// diagonal checks still run.
    pub fn new_trusted(points: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if rows.len() != n {
            return Err(Error::NotSquare {
                row: 0,
                len: rows.len(),
                expected: n,
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate point id `{p}`")));
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            dist.extend_from_slice(row);
        }
        let mut diam: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = dist[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::NegativeEntry { i, j, value: v });
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "nonzero diagonal {v} at point {i}"
                    )));
                }
                if i != j && v == 0.0 {
                    return Err(Error::ZeroOffDiagonal { i, j });
                }
                let w = dist[j * n + i];
                if (v - w).abs() > METRIC_TOL {
                    return Err(Error::AsymmetricMatrix { i, j, a: v, b: w });
                }
                diam = diam.max(v);
            }
        }
        Ok(Self {
            points,
            index,
            dist,
            diam,
        })
    }

    /// Space induced by Euclidean coordinates.
    pub fn from_coords(points: Vec<String>, coords: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if coords.len() != n {
            return Err(Error::SpaceMismatch {
                got: coords.len(),
                expected: n,
            });
        }
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        coords[i]
                            .iter()
                            .zip(coords[j].iter())
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>()
                            .sqrt()
                    })
                    .collect()
            })
            .collect();
        Self::new_trusted(points, rows)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_ids(&self) -> &[String] {
        &self.points
    }

    pub fn point_id(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.points.len() + j]
    }

    /// Row of distances from point `i`.
    #[inline]
    pub fn dist_row(&self, i: usize) -> &[f64] {
        let n = self.points.len();
        &self.dist[i * n..(i + 1) * n]
    }

    /// Cached maximum of the distance matrix; 0 on singletons.
    pub fn diam(&self) -> f64 {
        self.diam
    }

    pub fn matrix_rows(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.dist_row(i).to_vec()).collect()
    }

    /// Entrywise `rho^alpha` for `alpha` in (0, 1]; a metric by concavity.
    ///
    /// `alpha = 1` returns a clone so the matrix is bit-identical.
    pub fn snowflake(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::AlphaOutOfRange(alpha, "(0, 1]"));
        }
        if alpha == 1.0 {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for v in out.dist.iter_mut() {
            *v = v.powf(alpha);
        }
        out.diam = out.dist.iter().copied().fold(0.0, f64::max);
        Ok(out)
    }

    /// Sorted, deduplicated positive distances realized by the space.
    pub fn realized_radii(&self) -> Vec<f64> {
        let mut radii: Vec<f64> = self.dist.iter().copied().filter(|&d| d > 0.0).collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup();
        radii
    }
}

/// A finite metric space carrying a strictly positive weight per point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMeasureSpace {
    space: FiniteMetricSpace,
    weight: Vec<f64>,
}

impl MetricMeasureSpace {
    pub fn new(space: FiniteMetricSpace, weight: Vec<f64>) -> Result<Self> {
        if weight.len() != space.len() {
            return Err(Error::SpaceMismatch {
                got: weight.len(),
                expected: space.len(),
            });
        }
        for (i, &w) in weight.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveWeight { index: i, value: w });
            }
        }
        Ok(Self { space, weight })
    }

    /// Uniform probability weights `1/n`.
    pub fn uniform(space: FiniteMetricSpace) -> Result<Self> {
        if space.is_empty() {
            return Err(Error::EmptySpace(1));
        }
        let w = 1.0 / space.len() as f64;
        let n = space.len();
        Self::new(space, vec![w; n])
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weight[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    pub fn total_mass(&self) -> f64 {
        self.weight.iter().sum()
    }

    /// Mass of the closed ball `B_r(x)`.
    ///
    /// Linear scan; repeated queries go through the sorted table instead.
    pub fn ball_mass(&self, x: usize, r: f64) -> f64 {
        self.space
            .dist_row(x)
            .iter()
            .zip(self.weight.iter())
            .filter(|(&d, _)| d <= r)
            .map(|(_, &w)| w)
            .sum()
    }
}

/// Per-center sorted distances with cumulative weights, for O(log n) closed
/// ball masses.
pub(crate) struct BallMassTable {
    /// For each center: (distance, cumulative mass up to and including it),
    /// sorted by distance.
    rows: Vec<Vec<(f64, f64)>>,
}

impl BallMassTable {
    pub(crate) fn new(mm: &MetricMeasureSpace) -> Self {
        let n = mm.space.len();
        let rows = (0..n)
            .map(|x| {
                let mut pairs: Vec<(f64, f64)> = mm
                    .space
                    .dist_row(x)
                    .iter()
                    .zip(mm.weight.iter())
                    .map(|(&d, &w)| (d, w))
                    .collect();
                pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                let mut acc = 0.0;
                for p in pairs.iter_mut() {
                    acc += p.1;
                    p.1 = acc;
                }
                pairs
            })
            .collect();
        Self { rows }
    }

    /// Mass of the closed ball `B_r(x)`.
    pub(crate) fn mass(&self, x: usize, r: f64) -> f64 {
        let row = &self.rows[x];
        // rightmost entry with distance <= r
        let k = row.partition_point(|&(d, _)| d <= r);
        if k == 0 {
            0.0
        } else {
            row[k - 1].1
        }
    }

    /// Sorted `(distance, cumulative mass)` pairs for center `x`.
    pub(crate) fn row(&self, x: usize) -> &[(f64, f64)] {
        &self.rows[x]
    }
}

/// Nested net hierarchy: `levels[n]` covers the space at radius `r0 * 2^-n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetHierarchy {
    levels: Vec<Vec<usize>>,
    radii: Vec<f64>,
}

impl NetHierarchy {
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// Point indices of level `n`, sorted ascending.
    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn radius(&self, n: usize) -> f64 {
        self.radii[n]
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Max over points of the distance to the nearest center of level `n`.
    pub fn covering_defect(&self, space: &FiniteMetricSpace, n: usize) -> f64 {
        let centers = &self.levels[n];
        (0..space.len())
            .map(|p| {
                centers
                    .iter()
                    .map(|&c| space.dist(p, c))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Extends `centers` until every index in `members` is within `radius` of a
/// center. New centers are the farthest uncovered member, ties broken toward
/// the lowest point index; with no centers at all the first pick is
/// `first_pick` (or the lowest member index).
fn greedy_cover_extend(
    space: &FiniteMetricSpace,
    members: &[usize],
    radius: f64,
    centers: &mut Vec<usize>,
    first_pick: Option<usize>,
) {
    if members.is_empty() {
        return;
    }
    let mut min_dist: Vec<f64> = members
        .iter()
        .map(|&m| {
            centers
                .iter()
                .map(|&c| space.dist(m, c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    if centers.is_empty() {
        let first = first_pick.unwrap_or(members[0]);
        centers.push(first);
        for (md, &m) in min_dist.iter_mut().zip(members) {
            *md = md.min(space.dist(m, first));
        }
    }
    loop {
        let mut far = 0;
        for k in 1..members.len() {
            if min_dist[k] > min_dist[far] {
                far = k;
            }
        }
        if min_dist[far] <= radius {
            return;
        }
        let c = members[far];
        centers.push(c);
        for (md, &m) in min_dist.iter_mut().zip(members) {
            *md = md.min(space.dist(m, c));
        }
    }
}

/// Builds the nested hierarchy `A_0 ⊆ A_1 ⊆ …` of greedy covers at radii
/// `r0 * 2^-n` for `n = 0..=depth`.
///
/// Level 0 is a greedy farthest-point cover at radius `r0`; each later level
/// keeps the previous centers and adds farthest uncovered points until the
/// halved radius covers the space.
pub fn build_net_hierarchy(
    space: &FiniteMetricSpace,
    depth: usize,
    r0: f64,
) -> Result<NetHierarchy> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "net radius r0 = {r0} must be positive"
        )));
    }
    let members: Vec<usize> = (0..space.len()).collect();
    let mut levels: Vec<Vec<usize>> = Vec::with_capacity(depth + 1);
    let mut radii = Vec::with_capacity(depth + 1);
    let mut centers: Vec<usize> = Vec::new();
    for n in 0..=depth {
        let r = r0 * 0.5f64.powi(n as i32);
        greedy_cover_extend(space, &members, r, &mut centers, None);
        let mut level = centers.clone();
        level.sort_unstable();
        levels.push(level);
        radii.push(r);
    }
    Ok(NetHierarchy { levels, radii })
}

/// Upper bound on the doubling constant: the largest number of half-radius
/// balls the greedy cover needs for any realized ball.
///
/// For every center `x` and every radius realized from `x`, the ball
/// `B_r(x)` is covered greedily (first center `x`, then farthest-point) by
/// balls of radius `r/2` centered at its own points. Greedy covers are not
/// minimal, so this is an upper bound on the true constant.
pub fn estimate_doubling_constant(space: &FiniteMetricSpace) -> Result<usize> {
    if space.is_empty() {
        return Err(Error::EmptySpace(1));
    }
    let n = space.len();
    let mut worst = 1usize;
    for x in 0..n {
        let mut radii: Vec<f64> = space
            .dist_row(x)
            .iter()
            .copied()
            .filter(|&d| d > 0.0)
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup();
        for &r in &radii {
            let ball: Vec<usize> = (0..n).filter(|&p| space.dist(x, p) <= r).collect();
            let mut centers = Vec::new();
            greedy_cover_extend(space, &ball, r / 2.0, &mut centers, Some(x));
            worst = worst.max(centers.len());
        }
    }
    Ok(worst)
}

/// Largest realized volume ratio `mu(B_2r(x)) / mu(B_r(x))` over all centers
/// and realized radii — the measure-doubling analogue of
/// [`estimate_doubling_constant`]. The two estimators are deliberately
/// independent.
pub fn estimate_measure_doubling_constant(mm: &MetricMeasureSpace) -> Result<f64> {
    let space = mm.space();
    if space.is_empty() {
        return Err(Error::EmptySpace(1));
    }
    let table = BallMassTable::new(mm);
    let mut worst: f64 = 1.0;
    for x in 0..space.len() {
        let mut radii: Vec<f64> = space
            .dist_row(x)
            .iter()
            .copied()
            .filter(|&d| d > 0.0)
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup();
        for &r in &radii {
            worst = worst.max(table.mass(x, 2.0 * r) / table.mass(x, r));
        }
    }
    Ok(worst)
}

/// Certificate `(C, Q)` with `mu(B_r(x)) >= C * r^Q` for every center and
/// every radius up to the diameter.
///
/// Q comes from a log-log least-squares fit of ball mass against radius over
/// the realized `(x, r)` pairs. Ball mass is a step function of the radius,
/// so shrinking C against the right end of each constancy window certifies
/// the inequality on the whole range `(0, diam]`, not just at realized
/// radii. When only one positive radius is realized the slope is
/// undetermined and the convention `Q = 1` is used.
pub fn fit_lower_mass_bound(mm: &MetricMeasureSpace) -> Result<(f64, f64)> {
    let space = mm.space();
    if space.len() < 2 {
        return Err(Error::EmptySpace(2));
    }
    let radii = space.realized_radii();
    if radii.is_empty() {
        return Err(Error::DegenerateFit);
    }
    let table = BallMassTable::new(mm);
    let single_scale = radii.len() == 1;
    let q = if single_scale {
        1.0
    } else {
        // least squares of log mass against log radius
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        let mut m = 0.0;
        for x in 0..space.len() {
            for &r in &radii {
                let lx = r.ln();
                let ly = table.mass(x, r).ln();
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
                m += 1.0;
            }
        }
        let denom = m * sxx - sx * sx;
        let slope = (m * sxy - sx * sy) / denom;
        slope.max(1e-9)
    };
    let diam = space.diam();
    let mut c = f64::INFINITY;
    for x in 0..space.len() {
        let row = table.row(x);
        for (k, &(_, mass)) in row.iter().enumerate() {
            // last distinct distance of a tie group carries the full mass
            if k + 1 < row.len() && row[k + 1].0 == row[k].0 {
                continue;
            }
            let window_end = if k + 1 < row.len() {
                row[k + 1].0
            } else {
                diam
            };
            if window_end > 0.0 {
                c = c.min(mass / window_end.powf(q));
            }
        }
    }
    Ok((c, q))
}
