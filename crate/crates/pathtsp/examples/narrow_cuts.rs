//! Extract narrow-cut chains at several thresholds and check both exact
//! cost inequalities, including the constructive bijection certificate.
//!
//! ```bash
//! cargo run --release --example narrow_cuts
//! ```

use pathtsp::corpus::builtin_hb;
use pathtsp::decomp::decompose;
use pathtsp::narrow::{check_ineq_expected_path, check_ineq_sum_eq_le_cx, narrow_cuts};
use pathtsp::rational::{format_rational, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (support, x) = builtin_hb();
    let complete = support.metric_completion()?;

    for tau in [rat(1, 1), rat(3, 4), rat(1, 2)] {
        let chain = narrow_cuts(&complete, &x, &tau)?;
        println!("tau = {}: {} narrow cuts", format_rational(&tau), chain.len());
        for (i, cut) in chain.cuts().iter().enumerate() {
            let (u, v) = chain.min_edges()[i];
            println!(
                "  {cut} value {} cheapest crossing edge {u}-{v} at {}",
                format_rational(&chain.values()[i]),
                format_rational(&chain.min_edge_costs()[i]),
            );
        }
    }

    // The two chain inequalities at tau = 1, certified exactly.
    let chain = narrow_cuts(&complete, &x, &rat(1, 1))?;
    let dec = decompose(&complete, &x)?;
    let first = check_ineq_sum_eq_le_cx(&complete, &x, &chain)?;
    println!(
        "sum of cheapest crossing edges {} <= c(x) = {}: {}",
        format_rational(&first.lhs),
        format_rational(&first.rhs),
        first.pass
    );
    let second = check_ineq_expected_path(&complete, &x, &dec, &chain)?;
    println!(
        "weighted sum {} <= E[c(P)] = {}: {}",
        format_rational(&second.lhs),
        format_rational(&second.rhs),
        second.pass
    );
    assert!(first.pass && second.pass);
    Ok(())
}
