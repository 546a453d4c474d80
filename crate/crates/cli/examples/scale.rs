//! Upper-scale timing probe: the general norm at 150 and 200 points.

use krlip::measure::SignedMeasure;
use krlip::rng::SplitMix64;
use krlip::transport::kr_norm;
use krlip_cli::gen::generate_space;

fn main() {
    for n in [100usize, 150, 200] {
        let mm = generate_space("random-euclidean", n, 5, None).unwrap();
        let space = mm.space();
        let mut rng = SplitMix64::new(n as u64);
        let mu =
            SignedMeasure::new(space, (0..n).map(|_| rng.next_range(-1.0, 1.0)).collect()).unwrap();
        let t = std::time::Instant::now();
        let r = kr_norm(space, &mu).unwrap();
        println!(
            "n = {n}: {:.2}s, primal {:.6}, gap {:.2e}, {} arcs",
            t.elapsed().as_secs_f64(),
            r.primal_value,
            r.gap,
            r.plan.arcs().len()
        );
        assert!(r.gap <= 1e-8 * (1.0 + r.primal_value));
    }
}
