//! The fast path for the signed discrepancy integral.
//!
//! A prefix of N = 2^{n1} + ... + 2^{nr} points splits into r shifted
//! dyadic lattices; the integral is r/2 minus the scaled shift offsets,
//! computed from O(r * n1) row parities with no point enumeration. This
//! example shows the block structure and cross-checks the closed form
//! against the enumerated sum.
//!
//!     cargo run -p nutdisc --example fast_integral

use num_bigint::BigUint;
use nutdisc::discrepancy::signed_integral_direct;
use nutdisc::gf2::MatrixSpec;
use nutdisc::sequence::prefix;
use nutdisc::shift::{delta_shift, signed_integral_fast, BinaryDecomposition};

fn main() -> nutdisc::Result<()> {
    let c = MatrixSpec::Identity.build(64)?;
    let n = 21u64;
    let d = BinaryDecomposition::of_u64(n)?;
    println!("N = {n} = {:?} (exponents), r = {}", d.exponents(), d.r());

    for i in 1..=d.r() {
        let s = delta_shift(&c, &d, i)?;
        println!(
            "block {i}: lattice of 2^{} points, offset delta = {}, scaled 2^n*delta = {}",
            d.exponents()[i - 1],
            s.offset,
            s.scaled_offset,
        );
    }

    let fast = signed_integral_fast(&c, &BigUint::from(n))?;
    let direct = signed_integral_direct(&prefix(&c, n)?);
    println!("closed form: {fast}");
    println!("enumerated : {direct}");
    assert_eq!(fast, direct);

    // the closed form scales to indices far beyond any point budget
    let huge = (BigUint::from(1u8) << 120u32) + BigUint::from(12345u32);
    let value = signed_integral_fast(&MatrixSpec::band(3)?.build(128)?, &huge)?;
    println!("band:3 at N = 2^120 + 12345: integral = {value}");
    Ok(())
}
