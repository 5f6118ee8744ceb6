//! Decompose the counterexample optimum into an exact convex combination
//! of spanning trees and query the induced sampling distribution.
//!
//! ```bash
//! cargo run --release --example tree_decomposition
//! ```

use pathtsp::corpus::builtin_hb;
use pathtsp::decomp::{decompose, is_in_some_decomposition};
use pathtsp::rational::format_rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (support, x) = builtin_hb();
    let complete = support.metric_completion()?;

    let dec = decompose(&complete, &x)?;
    println!("{} trees in the decomposition:", dec.len());
    for (lambda, tree) in dec.terms() {
        let edges: Vec<String> = tree.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        println!("  lambda {} ; {}", format_rational(lambda), edges.join(" "));
    }

    // The weighted indicators re-sum to the decomposed vector exactly.
    dec.validate(&x)?;
    println!("re-summation matches the vector edge by edge");

    // Each tree passes the tightness membership criterion.
    for (_, tree) in dec.terms() {
        assert!(is_in_some_decomposition(&complete, &x, tree)?);
    }
    println!("every tree is tight wherever the vector is tight");

    // Exact distribution queries: expectation of the cost functional
    // reproduces the LP value by linearity.
    let expected_cost = dec.expectation(|t| t.cost(&complete).expect("support edges exist"));
    println!("E[c(J)] = {}", format_rational(&expected_cost));
    assert_eq!(expected_cost, x.cost(&complete).unwrap());

    // Sampling is deterministic per seed.
    let a = dec.sample(7);
    let b = dec.sample(7);
    assert_eq!(a, b);
    println!("seeded sampling is reproducible");
    Ok(())
}
