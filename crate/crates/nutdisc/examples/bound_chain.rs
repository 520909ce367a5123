//! The norm bound chain L_p <= sup <= s2(N) and the digit-sum bound
//! L_p <= c_p * s2(N) with c_p = 1/sqrt(3) for p in [1,2].
//!
//! Indices with few binary digits force low discrepancy; the chain makes
//! that exact. The scan checks every N up to the limit and reports any
//! violation row by row.
//!
//!     cargo run -p nutdisc --example bound_chain

use nutdisc::drivers::scan_bounds;
use nutdisc::gf2::MatrixSpec;
use nutdisc::sequence::DEFAULT_POINT_BUDGET;

fn main() -> nutdisc::Result<()> {
    for spec in [MatrixSpec::Identity, MatrixSpec::UpperOnes] {
        let out = scan_bounds(&spec, 256, 2.0, DEFAULT_POINT_BUDGET, 16)?;
        println!(
            "{}: {} rows, all bounds hold: {}",
            spec.render(),
            out.report.rows().len(),
            out.passed
        );
        // indices of the form 2^m and 2^m - 1 sit at the two extremes of
        // the digit sum yet both have low discrepancy
        for i in [63usize, 64, 127, 128] {
            println!(
                "  N={:>3}  s2={:>2}  sup={}",
                out.report.cell(i - 1, "N").to_string(),
                out.report.cell(i - 1, "s2").to_string(),
                out.report.cell(i - 1, "linf"),
            );
        }
    }
    Ok(())
}
