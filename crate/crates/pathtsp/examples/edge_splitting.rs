//! Connectivity-preserving edge splitting: find an admissible pairing at a
//! vertex of a small multigraph, then watch the full transformation carry
//! the counterexample optimum from the partition relaxation to the path
//! relaxation without increasing cost.
//!
//! ```bash
//! cargo run --release --example edge_splitting
//! ```

use pathtsp::corpus::builtin_hb;
use pathtsp::lp::solve_lp4;
use pathtsp::rational::format_rational;
use pathtsp::transform::{lp4_to_lp1, split_at_vertex, Multigraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Doubled 4-cycle: every vertex has degree 4 and every cut at least 4.
    let mut m = Multigraph::new(4);
    for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        m.set_multiplicity(u, v, 2);
    }
    let pairing = split_at_vertex(&m, 1, 2)?;
    println!("admissible pairing at vertex 1 preserving 2-edge-connectivity:");
    for (a, b) in &pairing {
        println!("  split ({a},1),(1,{b}) -> ({a},{b})");
    }

    // Full transformation on the counterexample: the partition-relaxation
    // optimum maps to a path-relaxation solution of the same cost.
    let (support, _) = builtin_hb();
    let lp4 = solve_lp4(&support)?;
    println!("partition relaxation optimum {}", format_rational(&lp4.value));
    let x1 = lp4_to_lp1(&support, &lp4.x)?;
    let complete = support.metric_completion()?;
    let cost = x1.cost(&complete).unwrap();
    println!("transformed path-relaxation solution costs {}", format_rational(&cost));
    assert!(cost <= lp4.value);
    Ok(())
}
