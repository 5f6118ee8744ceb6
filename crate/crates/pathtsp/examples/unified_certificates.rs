//! Run the unified-correction certificate at the three reference
//! parameter settings and print the exact ledger each one establishes.
//!
//! ```bash
//! cargo run --release --example unified_certificates
//! ```

use pathtsp::corpus::builtin_hb;
use pathtsp::decomp::decompose;
use pathtsp::narrow::{certificate_report, make_params};
use pathtsp::rational::{format_rational, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (support, x) = builtin_hb();
    let complete = support.metric_completion()?;
    let dec = decompose(&complete, &x)?;

    for beta in [rat(2, 5), rat(4, 9), rat(9, 20)] {
        let params = make_params(beta.clone())?;
        let report = certificate_report(&complete, &x, &dec, &params)?;
        println!(
            "beta {} (alpha {}, tau {}):",
            format_rational(&params.beta),
            format_rational(&params.alpha),
            format_rational(&params.tau)
        );
        println!(
            "  every one of {} trees feasible for the T-join polyhedron: {}",
            report.trees_checked, report.all_trees_feasible
        );
        println!(
            "  E[c(F)] = {} <= E[c(f)] = {}",
            format_rational(&report.expected_tjoin_cost),
            format_rational(&report.expected_unified_cost)
        );
        println!(
            "  quadratic-layer bound {}",
            format_rational(&report.aks_bound)
        );
        match &report.sebo_bound {
            Some(b) => println!("  path-layer bound {} (h = {})",
                format_rational(b),
                report.sebo_h.as_ref().map(format_rational).unwrap_or_default()),
            None => println!("  path-layer bound ~{:.6} (h irrational here)", report.sebo_bound_float),
        }
        println!(
            "  certified total bound {} => ratio {} (within 8/5: {})",
            format_rational(&report.certified_total_bound),
            format_rational(&report.certified_ratio),
            report.ratio_le_8_5
        );
        assert!(report.all_trees_feasible);
    }
    Ok(())
}
