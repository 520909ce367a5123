//! Convergence of integral / log N toward 1/(6 log 2) = 0.240449... along
//! the radical-inverse family N = (4^r - 1)/3; the indices where the
//! discrepancy of the radical-inverse sequence grows fastest.
//!
//!     cargo run -p nutdisc --example ratio_limit

use nutdisc::drivers::{scan_ratios, RatioFamily};
use nutdisc::gf2::MatrixSpec;
use nutdisc::report::Cell;
use nutdisc::sequence::DEFAULT_POINT_BUDGET;

fn main() -> nutdisc::Result<()> {
    let limit = 1.0 / (6.0 * 2f64.ln());
    let out = scan_ratios(
        &MatrixSpec::Identity,
        &RatioFamily::BandSeries {
            alpha: 1,
            r_max: 30,
        },
        1.0,
        DEFAULT_POINT_BUDGET,
        64,
    )?;
    println!("{:>3} {:>22} {:>12} {:>10}", "r", "N", "ratio", "vs limit");
    for (i, row) in out.report.rows().iter().enumerate().skip(1) {
        if i % 3 != 2 && i != 29 {
            continue;
        }
        let ratio = match &row[4] {
            Cell::Float(v) => *v,
            _ => unreachable!(),
        };
        println!(
            "{:>3} {:>22} {ratio:>12.6} {:>+9.2}%",
            i + 1,
            row[0].to_string(),
            100.0 * (ratio - limit) / limit
        );
    }
    println!("limit: {limit:.6}");
    Ok(())
}
