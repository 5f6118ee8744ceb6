//! The full certification ledger of the eight-vertex counterexample: the
//! instance on which the extended good-spanning-tree bound fails and a
//! legitimate decomposition tree overshoots 3/2 of the LP value.
//!
//! ```bash
//! cargo run --release --example counterexample_tour
//! ```

use pathtsp::corpus::{builtin_hb, build_good_spanning_tree, verify_counterexample_hb};
use pathtsp::rational::format_rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_counterexample_hb()?;
    for check in &report.checks {
        println!("[{}] {}", if check.pass { "pass" } else { "FAIL" }, check.name);
        println!("       {}", check.detail);
    }
    assert!(report.all_pass);

    // A closer look at the good tree: per-part spanning trees plus cheapest
    // connectors between consecutive parts of the narrow-cut partition.
    let (support, x) = builtin_hb();
    let complete = support.metric_completion()?;
    let good = build_good_spanning_tree(&complete, &x)?;
    println!("\ngood spanning tree detail:");
    for (i, part) in good.parts.iter().enumerate() {
        println!("  part {i}: {part:?}");
    }
    for ((u, v), c) in &good.connectors {
        println!("  connector {u}-{v} at cost {}", format_rational(c));
    }
    println!(
        "  inside {} + connectors = {} > LP value {}",
        format_rational(&good.inside_cost),
        format_rational(&good.total_cost),
        format_rational(&good.lp_value)
    );
    Ok(())
}
