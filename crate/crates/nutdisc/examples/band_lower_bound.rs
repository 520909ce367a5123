//! Linear growth of the discrepancy integral along the band-matrix family.
//!
//! For the band matrix of width alpha and indices N = (2^{2ar} - 1)/(2^{2a} - 1)
//! the integral grows linearly in r. The driver tabulates the exact values
//! against two linear rates: the advertised 2^(a-1)/(2^(2a)-1) and the
//! exact slope 2^(a-1)/(2^a+1) that the shift pattern sums to (they agree
//! at alpha = 1).
//!
//!     cargo run -p nutdisc --example band_lower_bound

use nutdisc::drivers::verify_band_family;
use nutdisc::families::band_family_slope;

fn main() -> nutdisc::Result<()> {
    for alpha in [1u32, 2, 3] {
        let out = verify_band_family(alpha, 1..=14)?;
        println!(
            "alpha = {alpha}: exact slope {} per unit r",
            band_family_slope(alpha)?
        );
        print!("{}", out.report.to_csv_string());
        println!(
            "advertised-rate residual bounded: {}\n",
            if out.passed {
                "yes"
            } else {
                "no (see slope_deviation column)"
            }
        );
    }
    Ok(())
}
