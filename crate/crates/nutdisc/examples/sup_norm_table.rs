//! The sup norm of radical-inverse prefixes against the binary digit sum,
//! for N = 1..127; the digit sum dominates the sup norm at every N, and
//! both fluctuate heavily with the binary structure of N.
//!
//! Writes CSV to stdout, ready for external plotting:
//!
//!     cargo run -p nutdisc --example sup_norm_table > table.csv

use nutdisc::drivers::linf_digit_sum_table;

fn main() -> nutdisc::Result<()> {
    let table = linf_digit_sum_table(127)?;
    print!("{}", table.to_csv_string());
    Ok(())
}
