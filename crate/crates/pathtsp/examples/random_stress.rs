//! Seeded random-metric stress run: solve, decompose, certify, and round a
//! batch of random instances, tracking the worst certified ratio seen.
//!
//! ```bash
//! cargo run --release --example random_stress
//! ```

use pathtsp::christofides::best_of_many;
use pathtsp::corpus::random_metric_instance;
use pathtsp::decomp::decompose;
use pathtsp::lp::solve_lp1;
use pathtsp::narrow::{certificate_report, make_params};
use pathtsp::rational::{format_rational, rat, to_f64, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = make_params(rat(4, 9))?;
    let mut worst: Option<Rational> = None;
    for seed in 0..25u64 {
        let n = 5 + (seed % 4) as usize;
        let inst = random_metric_instance(n, seed)?;
        let lp = solve_lp1(&inst)?;
        let dec = decompose(&inst, &lp.x)?;
        let report = certificate_report(&inst, &lp.x, &dec, &params)?;
        let result = best_of_many(&inst, &lp.x, &dec)?;
        assert!(report.all_trees_feasible);
        assert!(result.best.cost <= rat(8, 5) * lp.value.clone());
        if worst.as_ref().map_or(true, |w| report.certified_ratio > *w) {
            worst = Some(report.certified_ratio.clone());
        }
        println!(
            "seed {seed:>2} n {n}: LP {:>6}, {} trees, certified ratio {:.4}, best path {}",
            format_rational(&lp.value),
            dec.len(),
            to_f64(&report.certified_ratio),
            format_rational(&result.best.cost),
        );
    }
    let worst = worst.expect("at least one instance ran");
    println!("worst certified ratio: {} ~ {:.4}", format_rational(&worst), to_f64(&worst));
    assert!(worst <= rat(8, 5));
    Ok(())
}
