//! Runs the built-in chart suite through `transform` and prints how far the
//! dark result's contrast score drifts from the light original.
//!
//!     cargo run --release -p duskify --example contrast_drift -- [w_lc w_cc w_ac [t0]]

use duskify::samples::chart_suite;
use duskify::{transform, SaConfig, TransformOptions, Weights};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let arg = |i: usize, default: f64| args.get(i).copied().unwrap_or(default);
    let weights = Weights::new(arg(0, 1.0), arg(1, 1.0), arg(2, 1.0));
    let t0 = arg(3, SaConfig::default().t0);

    let mut worst: f64 = 0.0;
    for chart in chart_suite(400, 300) {
        let opts = TransformOptions {
            k: chart.k,
            weights,
            annealing: SaConfig { t0, ..SaConfig::default() },
            ..TransformOptions::default()
        };
        let out = transform(&chart.image, &opts).expect("sample charts have foreground");
        let m = out.metrics;
        let drift = m.dark.contrast_score - m.light.contrast_score;
        worst = worst.max(drift.abs());
        println!(
            "{:16} light={:.2} dark={:.2} drift={:+.2} dE={:.1} energy {:.2} -> {:.2}",
            chart.name,
            m.light.contrast_score,
            m.dark.contrast_score,
            drift,
            m.dark.color_difference,
            out.outcome.initial_energy,
            out.outcome.best.energy,
        );
    }
    println!("worst drift {worst:.2}");
}
