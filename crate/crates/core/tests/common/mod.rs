//! Shared helpers for the integration suites: seeded random instances and a
//! small dense linear solver for the enumeration oracles.
//!
//! Each suite pulls in the subset it needs.
#![allow(dead_code)]

use krlip::measure::SignedMeasure;
use krlip::metric::FiniteMetricSpace;
use krlip::rng::SplitMix64;

/// Random points in the unit square with Euclidean distances; resamples
/// until the minimum pairwise distance reaches `min_sep`.
pub fn random_euclidean_space(rng: &mut SplitMix64, n: usize, min_sep: f64) -> FiniteMetricSpace {
    loop {
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.next_f64(), rng.next_f64()])
            .collect();
        let ok = (0..n).all(|i| {
            ((i + 1)..n).all(|j| {
                let dx = coords[i][0] - coords[j][0];
                let dy = coords[i][1] - coords[j][1];
                (dx * dx + dy * dy).sqrt() >= min_sep
            })
        });
        if ok {
            let ids = (0..n).map(|i| format!("p{i}")).collect();
            return FiniteMetricSpace::from_coords(ids, &coords).unwrap();
        }
    }
}

pub fn random_measure(rng: &mut SplitMix64, space: &FiniteMetricSpace) -> SignedMeasure {
    let mass: Vec<f64> = (0..space.len())
        .map(|_| rng.next_range(-1.0, 1.0))
        .collect();
    SignedMeasure::new(space, mass).unwrap()
}

/// Random measure with total mass exactly balanced away.
pub fn random_balanced_measure(rng: &mut SplitMix64, space: &FiniteMetricSpace) -> SignedMeasure {
    let mut mass: Vec<f64> = (0..space.len())
        .map(|_| rng.next_range(-1.0, 1.0))
        .collect();
    let mean = mass.iter().sum::<f64>() / mass.len() as f64;
    for m in mass.iter_mut() {
        *m -= mean;
    }
    SignedMeasure::new(space, mass).unwrap()
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m = a.to_vec();
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

/// All `k`-element index subsets of `0..n`, fed to `visit`.
pub fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        let remaining = k - cur.len();
        for i in start..=n.saturating_sub(remaining) {
            cur.push(i);
            rec(n, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(n, k, 0, &mut cur, visit);
}
