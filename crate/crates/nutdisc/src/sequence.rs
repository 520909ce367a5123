//! Element and prefix generation for digital sequences.

use crate::dyadic::{DyadicRational, PointSet};
use crate::error::{Error, Result};
use crate::gf2::{bits_lsb, Gf2Matrix};

/// Default cap on materialized prefixes. Larger counts are served by the
/// fast signed-integral path, which never enumerates points.
pub const DEFAULT_POINT_BUDGET: u64 = 1 << 22;

/// The n-th sequence element: apply the generator matrix to the base-2
/// digits of n and read the output digits as a binary fraction.
pub fn element(c: &Gf2Matrix, n: u64) -> Result<DyadicRational> {
    let digits = bits_lsb(n);
    if digits.len() > c.dim() {
        return Err(Error::IndexOutOfRange {
            index: n.to_string(),
            limit: format!("2^{}", c.dim()),
        });
    }
    Ok(DyadicRational::from_output_digits(&c.apply(&digits)?))
}

/// First `n` elements in index order.
pub fn prefix(c: &Gf2Matrix, n: u64) -> Result<PointSet> {
    prefix_with_budget(c, n, DEFAULT_POINT_BUDGET)
}

pub fn prefix_with_budget(c: &Gf2Matrix, n: u64, budget: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::Domain("prefix length must be >= 1".into()));
    }
    if n > budget {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget,
        });
    }
    let mut points = Vec::with_capacity(n as usize);
    for i in 0..n {
        points.push(element(c, i)?);
    }
    Ok(PointSet::from_points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::MatrixSpec;
    use num_bigint::BigUint;

    fn dy(num: u64, exp: u32) -> DyadicRational {
        DyadicRational::new(BigUint::from(num), exp).unwrap()
    }

    #[test]
    fn radical_inverse_elements() {
        let c = MatrixSpec::Identity.build(16).unwrap();
        assert_eq!(element(&c, 5).unwrap(), dy(5, 3));
        assert_eq!(element(&c, 0).unwrap(), DyadicRational::zero());
        let u = MatrixSpec::UpperOnes.build(16).unwrap();
        assert_eq!(element(&u, 0).unwrap(), DyadicRational::zero());
        assert_eq!(element(&u, 3).unwrap(), dy(1, 2));
    }

    #[test]
    fn prefixes_in_index_order() {
        let c = MatrixSpec::Identity.build(16).unwrap();
        let ps = prefix(&c, 4).unwrap();
        assert_eq!(
            ps.points(),
            &[DyadicRational::zero(), dy(1, 1), dy(1, 2), dy(3, 2)]
        );
        let u = MatrixSpec::UpperOnes.build(16).unwrap();
        let ps = prefix(&u, 4).unwrap();
        assert_eq!(
            ps.points(),
            &[DyadicRational::zero(), dy(1, 1), dy(3, 2), dy(1, 2)]
        );
    }

    #[test]
    fn power_of_two_prefix_is_a_lattice_permutation() {
        let c = MatrixSpec::Identity.build(16).unwrap();
        for m in 0..=10u32 {
            let ps = prefix(&c, 1 << m).unwrap();
            let expected: Vec<DyadicRational> = (0..1u64 << m)
                .map(|k| DyadicRational::new(BigUint::from(k), m).unwrap())
                .collect();
            assert_eq!(ps.sorted(), &expected[..], "m = {m}");
        }
    }

    #[test]
    fn range_and_budget_errors() {
        let c = MatrixSpec::Identity.build(4).unwrap();
        assert!(matches!(
            element(&c, 16).unwrap_err(),
            Error::IndexOutOfRange { .. }
        ));
        assert!(element(&c, 15).is_ok());
        assert!(matches!(
            prefix_with_budget(&c, 9, 8).unwrap_err(),
            Error::BudgetExceeded {
                requested: 9,
                budget: 8
            }
        ));
    }
}
