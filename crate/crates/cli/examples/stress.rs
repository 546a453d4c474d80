//! Degeneracy stress: tie-heavy grid spaces with sparse measures, cross
//! checking the two balanced-norm formulations and the duality gaps.

use krlip::measure::SignedMeasure;
use krlip::rng::SplitMix64;
use krlip::transport::{kr0_norm, kr_norm, restricted_plan_norm};
use krlip_cli::gen::generate_space;

fn main() {
    let mut rng = SplitMix64::new(99);
    let mut worst_gap = 0.0f64;
    let mut worst_dev = 0.0f64;
    for trial in 0..300u64 {
        let kind = if trial % 2 == 0 { "grid1d" } else { "grid2d" };
        let n = 9 + rng.next_index(17);
        let mm = generate_space(kind, n, trial, None).unwrap();
        let space = mm.space();
        let n = space.len();
        // sparse signed masses with many exact ties
        let mut mass = vec![0.0; n];
        let support = 2 + rng.next_index(n - 1);
        for _ in 0..support {
            let i = rng.next_index(n);
            mass[i] += [1.0, -1.0, 0.5, -0.5][rng.next_index(4)];
        }
        let total: f64 = mass.iter().sum();
        let mu = SignedMeasure::new(space, mass.clone()).unwrap();
        let r = kr_norm(space, &mu).unwrap();
        worst_gap = worst_gap.max(r.gap / (1.0 + r.primal_value.abs()));

        mass[rng.next_index(n)] -= total;
        let nu = SignedMeasure::new(space, mass).unwrap();
        let a = kr0_norm(space, &nu).unwrap();
        let b = restricted_plan_norm(space, &nu).unwrap();
        worst_gap = worst_gap.max(a.gap / (1.0 + a.primal_value.abs()));
        worst_dev = worst_dev.max((a.primal_value - b).abs() / (1.0 + b.abs()));
    }
    println!("300 degenerate instances: worst relative gap {worst_gap:.3e}, worst formulation deviation {worst_dev:.3e}");
    assert!(worst_gap <= 1e-8 && worst_dev <= 1e-8);
}
