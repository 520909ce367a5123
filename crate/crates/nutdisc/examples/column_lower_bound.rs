//! Growth of the discrepancy integral for column-constant matrices.
//!
//! At the tailored indices N_a the integral magnitude grows like a third
//! of the number of zero pattern bits, with a sign that alternates with
//! the leading pattern bit. The driver cross-checks the fast closed form
//! against materialized points and lower-bounds L_p by |integral|.
//!
//!     cargo run -p nutdisc --example column_lower_bound

use nutdisc::drivers::verify_column_family;
use nutdisc::families::{a_stats, column_family_index};
use nutdisc::gf2::BitPattern;
use nutdisc::sequence::DEFAULT_POINT_BUDGET;

fn main() -> nutdisc::Result<()> {
    let a = BitPattern::parse("01")?;
    println!("pattern 01 (zeros at the odd positions):");
    for m in [5usize, 10, 15] {
        let s = a_stats(&a, m);
        println!(
            "  m = {m}: N_a = {}, zeros {} ones {} min zero gap {:?}",
            column_family_index(&a, m as u32)?,
            s.l0,
            s.l1,
            s.d0
        );
    }

    let out = verify_column_family(&a, 2..=16, 1.0, DEFAULT_POINT_BUDGET)?;
    print!("{}", out.report.to_csv_string());
    println!("residual bounded and L_p >= |integral|: {}", out.passed);

    // a pattern with adjacent zeros violates the gap precondition and is
    // reported rather than silently skipped
    let bad = BitPattern::parse("1001")?;
    let out = verify_column_family(&bad, 2..=8, 1.0, DEFAULT_POINT_BUDGET)?;
    let flagged = out
        .report
        .rows()
        .iter()
        .filter(|r| r[2].to_string() == "precondition_violation")
        .count();
    println!(
        "\npattern 1001: {flagged} of {} rows flagged",
        out.report.rows().len()
    );
    Ok(())
}
