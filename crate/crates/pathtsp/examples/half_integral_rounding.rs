//! Round a half-integral relaxation optimum to a Hamiltonian path within
//! 3/2 of its cost. The half-integral vector comes from transforming the
//! all-ones integral solution on the 8-cycle through edge splitting.
//!
//! ```bash
//! cargo run --release --example half_integral_rounding
//! ```

use pathtsp::christofides::round_half_integral;
use pathtsp::corpus::gap_cycle;
use pathtsp::decomp::decompose;
use pathtsp::instance::EdgeVector;
use pathtsp::rational::{format_rational, rat_int};
use pathtsp::transform::lp4_to_lp1;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cycle = gap_cycle(4)?; // C_8 with antipodal endpoints
    let ones = EdgeVector::from_entries((0..8).map(|i| ((i, (i + 1) % 8), rat_int(1))));
    println!("integral partition-relaxation solution of cost {}", format_rational(&ones.cost(&cycle).unwrap()));

    let half = lp4_to_lp1(&cycle, &ones)?;
    println!("transformed vector (half-integral by construction):");
    for ((u, v), val) in half.iter() {
        println!("  {u}-{v}: {}", format_rational(val));
    }

    let complete = cycle.metric_completion()?;
    let dec = decompose(&complete, &half)?;
    let rounding = round_half_integral(&complete, &half, &dec)?;
    println!(
        "rounded path {:?} of cost {} (certified bound {})",
        rounding.result.best.order,
        format_rational(&rounding.result.best.cost),
        format_rational(&rounding.bound)
    );
    assert!(rounding.result.best.cost <= rounding.bound);
    Ok(())
}
