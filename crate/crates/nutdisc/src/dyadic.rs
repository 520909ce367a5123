//! Exact dyadic rationals k/2^e in [0, 1) and multisets of them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Exact point value k/2^e with 0 <= k < 2^e. Stored normalized, k odd or
/// zero, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigUint,
    exp: u32,
}

impl DyadicRational {
    pub fn zero() -> Self {
        DyadicRational {
            num: BigUint::zero(),
            exp: 0,
        }
    }

    /// k/2^e, normalized; rejects values outside [0, 1).
    pub fn new(num: BigUint, exp: u32) -> Result<Self> {
        if num.bits() > exp as u64 {
            return Err(Error::Domain(format!("{num}/2^{exp} lies outside [0, 1)")));
        }
        Ok(Self::normalized(num, exp))
    }

    fn normalized(mut num: BigUint, mut exp: u32) -> Self {
        if num.is_zero() {
            exp = 0;
        } else {
            let twos = num.trailing_zeros().unwrap_or(0).min(exp as u64) as u32;
            num >>= twos;
            exp -= twos;
        }
        DyadicRational { num, exp }
    }

    /// Reads output digits y_1, y_2, ... (index 0 first) as the binary
    /// fraction y_1/2 + y_2/4 + ...
    pub fn from_output_digits(digits: &BitVector) -> Self {
        let len = digits.len();
        let mut num = BigUint::zero();
        for j in 0..len {
            if digits.get(j) {
                num.set_bit((len - 1 - j) as u64, true);
            }
        }
        Self::normalized(num, len as u32)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.num.clone()),
            BigInt::one() << self.exp as usize,
        )
    }

    pub fn to_f64(&self) -> f64 {
        // exponent stays small in practice; fall back through the rational
        // form if the direct route loses the value
        let n = self.num.to_f64().unwrap_or(f64::NAN);
        let scaled = n / 2f64.powi(self.exp as i32);
        if scaled.is_finite() {
            scaled
        } else {
            self.to_rational().to_f64().unwrap_or(f64::NAN)
        }
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded
    /// half-up. Exact integer arithmetic throughout.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scaled = &self.num * BigUint::from(10u32).pow(digits as u32);
        let half = if self.exp > 0 {
            BigUint::one() << (self.exp - 1) as usize
        } else {
            BigUint::zero()
        };
        let rounded = (scaled + half) >> self.exp as usize;
        let s = rounded.to_string();
        if digits == 0 {
            return s;
        }
        let padded = format!("{s:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        format!("{int_part}.{frac_part}")
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare k1/2^e1 with k2/2^e2 by lifting to the common exponent;
        // only the coarser side needs shifting
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => self.num.cmp(&other.num),
            Ordering::Less => (&self.num << (other.exp - self.exp) as usize).cmp(&other.num),
            Ordering::Greater => self
                .num
                .cmp(&(&other.num << (self.exp - other.exp) as usize)),
        }
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, BigUint::one() << self.exp as usize)
    }
}

/// Multiset of dyadic points in generation order; the sorted view is
/// computed once, on demand.
#[derive(Debug)]
pub struct PointSet {
    points: Vec<DyadicRational>,
    sorted: OnceLock<Vec<DyadicRational>>,
}

impl PointSet {
    pub fn from_points(points: Vec<DyadicRational>) -> Self {
        PointSet {
            points,
            sorted: OnceLock::new(),
        }
    }

    /// Builds from points that are already nondecreasing, reusing them as
    /// the sorted view. The caller is responsible for the order.
    pub fn from_sorted_points(points: Vec<DyadicRational>) -> Self {
        debug_assert!(points.is_sorted());
        let ps = PointSet {
            points: points.clone(),
            sorted: OnceLock::new(),
        };
        let _ = ps.sorted.set(points);
        ps
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in generation order.
    pub fn points(&self) -> &[DyadicRational] {
        &self.points
    }

    /// Nondecreasing view, cached after the first call.
    pub fn sorted(&self) -> &[DyadicRational] {
        self.sorted.get_or_init(|| {
            let mut v = self.points.clone();
            v.sort_unstable();
            v
        })
    }

    /// Largest exponent over all points; 0 for the empty set.
    pub fn max_exponent(&self) -> u32 {
        self.points.iter().map(|p| p.exp).max().unwrap_or(0)
    }
}

impl Clone for PointSet {
    fn clone(&self) -> Self {
        PointSet::from_points(self.points.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(num: u64, exp: u32) -> DyadicRational {
        DyadicRational::new(BigUint::from(num), exp).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(dy(4, 8), dy(1, 6));
        assert_eq!(dy(0, 13), DyadicRational::zero());
        assert_eq!(dy(6, 4), dy(3, 3));
        assert!(DyadicRational::new(BigUint::from(8u32), 3).is_err());
    }

    #[test]
    fn ordering_crosses_exponents() {
        assert!(dy(1, 2) < dy(3, 3)); // 1/4 < 3/8
        assert!(dy(1, 1) > dy(3, 3)); // 1/2 > 3/8
        assert_eq!(dy(2, 2).cmp(&dy(1, 1)), Ordering::Equal);
    }

    #[test]
    fn digit_fraction_round_trip() {
        let v = BitVector::from_bits(&[1, 0, 1]); // 1/2 + 1/8
        assert_eq!(DyadicRational::from_output_digits(&v), dy(5, 3));
        let z = BitVector::from_bits(&[0, 0]);
        assert_eq!(
            DyadicRational::from_output_digits(&z),
            DyadicRational::zero()
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(dy(5, 3).to_string(), "5/8");
        assert_eq!(DyadicRational::zero().to_string(), "0/1");
        assert_eq!(dy(5, 3).to_decimal_string(4), "0.6250");
        assert_eq!(dy(1, 1).to_decimal_string(0), "1");
        assert_eq!(dy(1, 2).to_decimal_string(1), "0.3"); // 0.25 rounds up
    }

    #[test]
    fn sorted_view_cached() {
        let ps = PointSet::from_points(vec![dy(3, 2), DyadicRational::zero(), dy(1, 1)]);
        assert_eq!(ps.sorted(), &[DyadicRational::zero(), dy(1, 1), dy(3, 2)]);
        assert_eq!(ps.points()[0], dy(3, 2)); // generation order untouched
        assert_eq!(ps.max_exponent(), 2);
    }
}
