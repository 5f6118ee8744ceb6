//! Solve both LP relaxations of the s-t path TSP on the built-in
//! counterexample and confirm they agree exactly, with a verified dual.
//!
//! ```bash
//! cargo run --release --example lp_relaxations
//! ```

use pathtsp::corpus::{builtin_hb, hb_paper_dual};
use pathtsp::lp::{solve_lp1, solve_lp4, verify_dual_certificate};
use pathtsp::rational::format_rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (support, x) = builtin_hb();
    let complete = support.metric_completion()?;

    let lp1 = solve_lp1(&complete)?;
    println!("path Held-Karp relaxation optimum: {}", format_rational(&lp1.value));
    println!("generated cut constraints: {}", lp1.active_constraints.len());
    for g in &lp1.active_constraints {
        println!("  {}", g.describe());
    }

    let lp4 = solve_lp4(&support)?;
    println!("partition relaxation optimum:      {}", format_rational(&lp4.value));
    assert_eq!(lp1.value, lp4.value, "the two relaxations share their optimal value");

    // The printed dual certifies optimality of the shipped vector by
    // complementary slackness, with the exact same objective.
    let dual = hb_paper_dual();
    let report = verify_dual_certificate(&complete, &x, &dual)?;
    println!(
        "dual certificate: {} (primal {}, dual {})",
        if report.pass { "verified" } else { "REJECTED" },
        format_rational(&report.primal_value),
        format_rational(&report.dual_value),
    );
    assert!(report.pass);
    Ok(())
}
