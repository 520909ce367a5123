//! Generate digital sequences from the built-in matrix families and print
//! them exactly.
//!
//!     cargo run -p nutdisc --example generate_points

use nutdisc::gf2::{BitPattern, MatrixSpec};
use nutdisc::sequence::{element, prefix};

fn main() -> nutdisc::Result<()> {
    // the identity matrix yields the base-2 radical-inverse sequence
    let identity = MatrixSpec::Identity.build(32)?;
    println!("radical inverse, first 8 points:");
    for x in prefix(&identity, 8)?.points() {
        println!("  {x}  ({})", x.to_decimal_string(5));
    }

    // the all-ones upper triangle permutes each dyadic block differently
    let upper = MatrixSpec::UpperOnes.build(32)?;
    println!("\nall-ones upper triangle, first 8 points:");
    for x in prefix(&upper, 8)?.points() {
        println!("  {x}  ({})", x.to_decimal_string(5));
    }

    // a column-constant matrix from the pattern 0,1,0,1,...
    let alternating = MatrixSpec::Column(BitPattern::parse("01")?).build(32)?;
    println!("\ncolumn pattern 01, elements 40..48:");
    for n in 40..48 {
        println!("  x_{n} = {}", element(&alternating, n)?);
    }

    // single elements are cheap at any index below 2^M
    let far = element(&identity, (1 << 31) + 5)?;
    println!("\nradical inverse at n = 2^31 + 5: {far}");
    Ok(())
}
