//! Example-space generators: 1-d and 2-d grids, middle-thirds endpoint sets
//! and seeded random point clouds, all with uniform weights.

use krlip::error::{Error, Result};
use krlip::metric::{FiniteMetricSpace, MetricMeasureSpace};
use krlip::rng::SplitMix64;

/// Generates the named space kind with uniform weights `1/n`.
///
/// * `grid1d`: `n` equispaced points on `[0, 1]`.
/// * `grid2d`: the `ceil(sqrt(n))^2` lattice in the unit square.
/// * `cantor`: `n = 2^k` selects construction level `k`; the points are the
///   `2^(k+1)` endpoints of the level-`k` middle-thirds intervals.
/// * `random-euclidean`: `n` seeded uniform points in the unit square.
///
/// All distances are Euclidean; `alpha` applies a final snowflake.
pub fn generate_space(
    kind: &str,
    n: usize,
    seed: u64,
    alpha: Option<f64>,
) -> Result<MetricMeasureSpace> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let coords: Vec<Vec<f64>> = match kind {
        "grid1d" => (0..n)
            .map(|i| {
                vec![if n == 1 {
                    0.0
                } else {
                    i as f64 / (n - 1) as f64
                }]
            })
            .collect(),
        "grid2d" => {
            let m = (n as f64).sqrt().ceil() as usize;
            let coord = |i: usize| {
                if m == 1 {
                    0.0
                } else {
                    i as f64 / (m - 1) as f64
                }
            };
            (0..m * m)
                .map(|k| vec![coord(k / m), coord(k % m)])
                .collect()
        }
        "cantor" => {
            if !n.is_power_of_two() {
                return Err(Error::InvalidInput(format!(
                    "cantor needs n = 2^k intervals, got n = {n}"
                )));
            }
            let k = n.trailing_zeros();
            let mut intervals = vec![(0.0f64, 1.0f64)];
            for _ in 0..k {
                intervals = intervals
                    .iter()
                    .flat_map(|&(a, b)| {
                        let third = (b - a) / 3.0;
                        [(a, a + third), (b - third, b)]
                    })
                    .collect();
            }
            let mut endpoints: Vec<f64> = intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
            endpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
            endpoints.dedup();
            endpoints.into_iter().map(|x| vec![x]).collect()
        }
        "random-euclidean" => {
            let mut rng = SplitMix64::new(seed);
            (0..n)
                .map(|_| vec![rng.next_f64(), rng.next_f64()])
                .collect()
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown space kind `{other}`; expected grid1d, grid2d, cantor or random-euclidean"
            )))
        }
    };
    let ids = (0..coords.len()).map(|i| format!("p{i}")).collect();
    let mut space = FiniteMetricSpace::from_coords(ids, &coords)?;
    if let Some(a) = alpha {
        space = space.snowflake(a)?;
    }
    MetricMeasureSpace::uniform(space)
}
