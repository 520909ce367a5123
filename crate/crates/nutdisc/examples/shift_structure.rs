//! The digital-shift structure behind the fast integral: every prefix
//! decomposes into shifted dyadic lattices, and per-block shift vectors
//! obey a flip relation against the final block's vector.
//!
//!     cargo run -p nutdisc --example shift_structure

use nutdisc::gf2::{BitPattern, MatrixSpec};
use nutdisc::sequence::element;
use nutdisc::shift::{delta_shift, sigma_flip_check, sigma_r_vector, BinaryDecomposition};

fn main() -> nutdisc::Result<()> {
    let c = MatrixSpec::Column(BitPattern::parse("01")?).build(32)?;
    let n = 43u64;
    let d = BinaryDecomposition::of_u64(n)?;

    println!("N = {n}, exponents {:?}", d.exponents());
    println!(
        "sigma_r (rows {}..={}): {:?}",
        d.nr() + 1,
        d.n1() + 1,
        sigma_r_vector(&c, &d)?
    );
    for i in 1..=d.r() {
        let s = delta_shift(&c, &d, i)?;
        println!("block {i}: sigma = {:?}, delta = {}", s.sigma, s.offset);
    }
    println!("flip relation holds: {}", sigma_flip_check(&c, &d)?);

    // the decomposition is literal: block points are a shifted lattice
    let d2 = delta_shift(&c, &d, 2)?;
    let base = 1u64 << d.n1();
    println!(
        "\nblock 2 starts at index {base}, lattice step 2^-{}:",
        d.exponents()[1]
    );
    let mut pts: Vec<_> = (base..base + (1 << d.exponents()[1]))
        .map(|idx| element(&c, idx).unwrap())
        .collect();
    pts.sort();
    for (k, x) in pts.iter().enumerate() {
        println!(
            "  {k:>2}/{} + {} = {x}",
            1u64 << d.exponents()[1],
            d2.offset
        );
    }
    Ok(())
}
