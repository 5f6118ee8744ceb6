//! The tight integral gap family: unit-cost cycles with antipodal
//! endpoints. The integral optimum of the path relaxation grows like three
//! times the half-length while the partition relaxation stays at the cycle
//! length, approaching the 3/2 bound from below.
//!
//! ```bash
//! cargo run --release --example integrality_ratio
//! ```

use pathtsp::corpus::{gap_cycle, unit_path};
use pathtsp::rational::{format_rational, to_f64};
use pathtsp::transform::check_ratio_theorem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("unit path (both optima coincide, ratio 1):");
    let report = check_ratio_theorem(&unit_path(5)?)?;
    println!(
        "  opt4 {} opt1 {} ratio {}",
        format_rational(&report.opt_int_lp4),
        format_rational(&report.opt_int_lp1),
        format_rational(&report.ratio)
    );

    println!("cycle family (ratio climbs toward 3/2):");
    let mut last = None;
    for l in 2..=5 {
        let inst = gap_cycle(l)?;
        let report = check_ratio_theorem(&inst)?;
        println!(
            "  l = {l}: opt4 {:>2} opt1 {:>2} ratio {} ~ {:.3}  sandwich ok: {}  constructive {} ok: {}",
            format_rational(&report.opt_int_lp4),
            format_rational(&report.opt_int_lp1),
            format_rational(&report.ratio),
            to_f64(&report.ratio),
            report.sandwich_ok,
            format_rational(&report.constructive_cost),
            report.constructive_ok,
        );
        if let Some(prev) = last {
            assert!(report.ratio >= prev, "ratios must be nondecreasing in l");
        }
        last = Some(report.ratio.clone());
    }
    Ok(())
}
