//! Exact L_p discrepancy of sequence prefixes.
//!
//! The discrepancy function of N points is piecewise linear, so every norm
//! has a closed form over the sorted points: integer p comes out as an
//! exact rational (of the p-th power), the sup norm as an exact rational.
//!
//!     cargo run -p nutdisc --example discrepancy_norms

use num_rational::BigRational;
use nutdisc::discrepancy::{delta_at, linf_norm, lp_norm};
use nutdisc::gf2::MatrixSpec;
use nutdisc::sequence::prefix;

fn main() -> nutdisc::Result<()> {
    let c = MatrixSpec::Identity.build(32)?;

    println!("radical-inverse prefixes:");
    println!("{:>4} {:>12} {:>14} {:>10}", "N", "L1", "L2^2", "sup");
    for n in [1u64, 2, 3, 4, 21, 64, 100] {
        let ps = prefix(&c, n)?;
        let l1 = lp_norm(&ps, 1.0)?.exact.unwrap();
        let l2_sq = lp_norm(&ps, 2.0)?.exact_power.unwrap();
        let sup = linf_norm(&ps)?;
        println!("{n:>4} {l1:>12} {l2_sq:>14} {sup:>10}");
    }

    // fractional exponents use the same closed form in floating point
    let ps = prefix(&c, 21)?;
    for p in [1.5, 2.5, 8.0] {
        println!(
            "L_{p} of the first 21 points = {:.12}",
            lp_norm(&ps, p)?.value
        );
    }

    // the discrepancy function itself, at exact arguments
    let t = BigRational::new(3.into(), 4.into());
    println!("delta(3/4) over 21 points = {}", delta_at(&ps, &t)?);
    Ok(())
}
