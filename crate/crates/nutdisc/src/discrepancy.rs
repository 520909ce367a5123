//! Exact evaluation of the discrepancy function and its L_p norms.
//!
//! For N sorted points the discrepancy function is piecewise linear with
//! slope -N and a unit up-jump at every point, so each norm reduces to a
//! closed-form sum over the pieces. With dyadic breakpoints everything is
//! rational: integer p is evaluated in exact arithmetic, fractional p in
//! floating point via the same antiderivative.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dyadic::PointSet;
use crate::error::{Error, Result};

/// Piecewise description of the discrepancy function of a point multiset:
/// sorted scaled breakpoints plus the sentinels 0 and 1. On the piece
/// (x_(i), x_(i+1)] the function is i - N*t.
pub struct DiscrepancyProfile {
    n: u64,
    scale_exp: u32,
    scaled: Scaled,
}

enum Scaled {
    /// breakpoint numerators over 2^scale_exp, sorted ascending
    Small(Vec<u128>),
    Big(Vec<BigUint>),
}

/// Numerators stay within i128 headroom on this path.
const SMALL_LIMIT_BITS: u64 = 120;

impl DiscrepancyProfile {
    pub fn new(ps: &PointSet) -> Self {
        let n = ps.len() as u64;
        let scale_exp = ps.max_exponent();
        let nbits = 64 - n.leading_zeros() as u64;
        let small = nbits + scale_exp as u64 <= SMALL_LIMIT_BITS;
        let scaled = if small {
            Scaled::Small(
                ps.sorted()
                    .iter()
                    .map(|p| {
                        p.numerator().to_u128().expect("within small limit")
                            << (scale_exp - p.exponent())
                    })
                    .collect(),
            )
        } else {
            Scaled::Big(
                ps.sorted()
                    .iter()
                    .map(|p| p.numerator() << (scale_exp - p.exponent()) as usize)
                    .collect(),
            )
        };
        DiscrepancyProfile {
            n,
            scale_exp,
            scaled,
        }
    }

    pub fn point_count(&self) -> u64 {
        self.n
    }

    /// Common denominator exponent of the breakpoints.
    pub fn scale_exponent(&self) -> u32 {
        self.scale_exp
    }

    /// Visits every nonempty piece with the scaled one-sided limits of the
    /// discrepancy function: `f(upper, lower)` where upper is the limit at
    /// the left end and lower the value at the right end, both times
    /// 2^scale_exp. Pieces of zero length are skipped.
    fn for_each_piece_small<F: FnMut(i128, i128)>(&self, mut f: F) {
        let pts = match &self.scaled {
            Scaled::Small(v) => v,
            Scaled::Big(_) => unreachable!("small visitor on big profile"),
        };
        let s: i128 = 1i128 << self.scale_exp;
        let n = self.n as i128;
        let mut lo: i128 = 0;
        for i in 0..=pts.len() {
            let hi: i128 = if i < pts.len() { pts[i] as i128 } else { s };
            if hi > lo {
                let count = i as i128;
                f(count * s - n * lo, count * s - n * hi);
            }
            lo = hi;
        }
    }

    fn for_each_piece_big<F: FnMut(BigInt, BigInt)>(&self, mut f: F) {
        let pts: Vec<BigInt> = match &self.scaled {
            Scaled::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Scaled::Big(v) => v.iter().map(|x| BigInt::from(x.clone())).collect(),
        };
        let s = BigInt::one() << self.scale_exp as usize;
        let n = BigInt::from(self.n);
        let mut lo = BigInt::zero();
        for i in 0..=pts.len() {
            let hi = if i < pts.len() {
                pts[i].clone()
            } else {
                s.clone()
            };
            if hi > lo {
                let count = BigInt::from(i as u64);
                f(&count * &s - &n * &lo, &count * &s - &n * &hi);
            }
            lo = hi;
        }
    }

    fn is_small(&self) -> bool {
        matches!(self.scaled, Scaled::Small(_))
    }
}

/// Result of an L_p norm evaluation.
///
/// `value` is always populated. For integer p the p-th power of the norm is
/// an exact rational and is carried in `exact_power`; when the norm itself
/// is rational (p = 1 and the sup norm) it is also carried in `exact`.
#[derive(Clone, Debug)]
pub struct NormResult {
    pub p: f64,
    pub exact: Option<BigRational>,
    pub exact_power: Option<BigRational>,
    pub value: f64,
}

/// Discrepancy function at `t`: points strictly below t, minus N*t.
pub fn delta_at(ps: &PointSet, t: &BigRational) -> Result<BigRational> {
    if t < &BigRational::zero() || t > &BigRational::one() {
        return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
    }
    let count = ps
        .sorted()
        .iter()
        .take_while(|p| &p.to_rational() < t)
        .count();
    Ok(BigRational::from(BigInt::from(count as u64))
        - BigRational::from(BigInt::from(ps.len() as u64)) * t)
}

/// Signed integral of the discrepancy function: sum of (1/2 - x) over all
/// points, exactly.
pub fn signed_integral_direct(ps: &PointSet) -> BigRational {
    let profile = DiscrepancyProfile::new(ps);
    let n = ps.len() as u64;
    let e = profile.scale_exp;
    match &profile.scaled {
        Scaled::Small(pts) => {
            let total: u128 = pts.iter().sum();
            let num = BigInt::from((n as u128) << e) - BigInt::from(2u8) * BigInt::from(total);
            BigRational::new(num, BigInt::one() << (e + 1) as usize)
        }
        Scaled::Big(pts) => {
            let total: BigUint = pts.iter().sum();
            let num = BigInt::from(BigUint::from(n) << e as usize)
                - BigInt::from(2u8) * BigInt::from(total);
            BigRational::new(num, BigInt::one() << (e + 1) as usize)
        }
    }
}

/// Same integral evaluated piece by piece through the antiderivative
/// G(u) = u^2 / 2; agrees with `signed_integral_direct` exactly.
pub fn signed_integral_pieces(ps: &PointSet) -> BigRational {
    let profile = DiscrepancyProfile::new(ps);
    let n = ps.len() as u64;
    if n == 0 {
        return BigRational::zero();
    }
    let mut acc = BigInt::zero();
    profile.for_each_piece_big(|a, b| {
        acc += &a * &a - &b * &b;
    });
    // integral = sum (a^2 - b^2) / (2 * N * S^2)
    let den = (BigInt::from(n) << 1) << (2 * profile.scale_exp as usize);
    BigRational::new(acc, den)
}

/// L_p norm of the discrepancy function for finite p >= 1.
///
/// Integer p is computed in exact rational arithmetic through the signed
/// antiderivative F(u) = sign(u) |u|^(p+1) / (p+1); other p use the same
/// formula in floating point. Use `linf_norm` for the sup norm.
pub fn lp_norm(ps: &PointSet, p: f64) -> Result<NormResult> {
    if ps.is_empty() {
        return Err(Error::Domain("L_p norm of an empty point set".into()));
    }
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Domain(format!(
            "p = {p} not supported: need finite p >= 1 (sup norm has its own entry point)"
        )));
    }
    if p.fract() == 0.0 && p <= u32::MAX as f64 {
        lp_norm_integer(ps, p as u32)
    } else {
        lp_norm_float(ps, p)
    }
}

fn lp_norm_integer(ps: &PointSet, p: u32) -> Result<NormResult> {
    let profile = DiscrepancyProfile::new(ps);
    let n = profile.n;
    let k = p + 1;
    let mut acc_big = BigInt::zero();

    if profile.is_small() {
        // |u| <= N * 2^scale; the i128 power route needs k * bits to fit
        let ubits = 64 - n.leading_zeros() + profile.scale_exp;
        if (k as u64) * (ubits as u64) <= 126 {
            let mut acc: i128 = 0;
            profile.for_each_piece_small(|a, b| {
                let term = signed_pow_i128(a, k) - signed_pow_i128(b, k);
                match acc.checked_add(term) {
                    Some(v) => acc = v,
                    None => {
                        acc_big += BigInt::from(acc);
                        acc = term;
                    }
                }
            });
            acc_big += BigInt::from(acc);
        } else {
            profile.for_each_piece_small(|a, b| {
                acc_big +=
                    signed_pow_big(&BigInt::from(a), k) - signed_pow_big(&BigInt::from(b), k);
            });
        }
    } else {
        profile.for_each_piece_big(|a, b| {
            acc_big += signed_pow_big(&a, k) - signed_pow_big(&b, k);
        });
    }

    let den = BigInt::from(k)
        * BigInt::from(n)
        * (BigInt::one() << (profile.scale_exp as usize * k as usize));
    let power = BigRational::new(acc_big, den);
    debug_assert!(!power.is_negative());
    let value = power.to_f64().unwrap_or(f64::NAN).powf(1.0 / p as f64);
    Ok(NormResult {
        p: p as f64,
        exact: (p == 1).then(|| power.clone()),
        exact_power: Some(power),
        value,
    })
}

fn lp_norm_float(ps: &PointSet, p: f64) -> Result<NormResult> {
    let profile = DiscrepancyProfile::new(ps);
    let s = 2f64.powi(profile.scale_exp as i32);
    let f = |u: f64| u.signum() * u.abs().powf(p + 1.0);
    let mut acc = 0.0f64;
    if profile.is_small() {
        profile.for_each_piece_small(|a, b| {
            acc += f(a as f64 / s) - f(b as f64 / s);
        });
    } else {
        profile.for_each_piece_big(|a, b| {
            acc += f(a.to_f64().unwrap_or(f64::NAN) / s) - f(b.to_f64().unwrap_or(f64::NAN) / s);
        });
    }
    let power = acc / ((p + 1.0) * profile.n as f64);
    Ok(NormResult {
        p,
        exact: None,
        exact_power: None,
        value: power.powf(1.0 / p),
    })
}

/// Essential supremum of |discrepancy|, exact. The sup is approached as a
/// one-sided limit at up-jumps; the limit value is returned.
pub fn linf_norm(ps: &PointSet) -> Result<BigRational> {
    if ps.is_empty() {
        return Err(Error::Domain("sup norm of an empty point set".into()));
    }
    let profile = DiscrepancyProfile::new(ps);
    if profile.is_small() {
        let mut max: u128 = 0;
        profile.for_each_piece_small(|a, b| {
            max = max.max(a.unsigned_abs()).max(b.unsigned_abs());
        });
        Ok(BigRational::new(
            BigInt::from(max),
            BigInt::one() << profile.scale_exp as usize,
        ))
    } else {
        let mut max = BigInt::zero();
        profile.for_each_piece_big(|a, b| {
            let m = a.abs().max(b.abs());
            if m > max {
                max = m;
            }
        });
        Ok(BigRational::new(
            max,
            BigInt::one() << profile.scale_exp as usize,
        ))
    }
}

#[inline]
fn signed_pow_i128(u: i128, k: u32) -> i128 {
    let mut acc: i128 = 1;
    let a = u.abs();
    for _ in 0..k {
        acc *= a;
    }
    if u < 0 {
        -acc
    } else {
        acc
    }
}

fn signed_pow_big(u: &BigInt, k: u32) -> BigInt {
    let m = BigInt::from(u.magnitude().pow(k));
    if u.is_negative() {
        -m
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::DyadicRational;
    use crate::gf2::MatrixSpec;
    use crate::sequence::prefix;
    use proptest::prelude::*;

    fn dy(num: u64, exp: u32) -> DyadicRational {
        DyadicRational::new(BigUint::from(num), exp).unwrap()
    }

    fn set(points: &[(u64, u32)]) -> PointSet {
        PointSet::from_points(points.iter().map(|&(n, e)| dy(n, e)).collect())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn delta_values() {
        let p = set(&[(0, 0), (1, 1)]);
        assert_eq!(delta_at(&p, &rat(1, 2)).unwrap(), rat(0, 1));
        assert_eq!(delta_at(&p, &rat(3, 4)).unwrap(), rat(1, 2));
        let single = set(&[(0, 0)]);
        assert_eq!(delta_at(&single, &rat(1, 1)).unwrap(), rat(0, 1));
        assert!(delta_at(&single, &rat(3, 2)).is_err());
    }

    #[test]
    fn signed_integral_examples() {
        assert_eq!(signed_integral_direct(&set(&[(0, 0)])), rat(1, 2));
        assert_eq!(signed_integral_direct(&set(&[(0, 0), (1, 1)])), rat(1, 2));

        // first 21 radical-inverse points, cross-checked against a plain
        // rational summation oracle
        let c = MatrixSpec::Identity.build(16).unwrap();
        let ps = prefix(&c, 21).unwrap();
        let oracle: BigRational = ps
            .points()
            .iter()
            .map(|x| rat(1, 2) - x.to_rational())
            .sum();
        assert_eq!(oracle, rat(39, 32));
        assert_eq!(signed_integral_direct(&ps), rat(39, 32));
    }

    #[test]
    fn lp_examples() {
        let p2 = set(&[(0, 0), (1, 1)]);
        let r = lp_norm(&p2, 2.0).unwrap();
        assert_eq!(r.exact_power.unwrap(), rat(1, 3));
        assert!((r.value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let r = lp_norm(&p2, 1.0).unwrap();
        assert_eq!(r.exact.unwrap(), rat(1, 2));

        let c = MatrixSpec::Identity.build(16).unwrap();
        let ps = prefix(&c, 4).unwrap();
        assert_eq!(lp_norm(&ps, 1.0).unwrap().exact.unwrap(), rat(1, 2));
    }

    #[test]
    fn linf_examples() {
        assert_eq!(linf_norm(&set(&[(0, 0)])).unwrap(), rat(1, 1));
        let c = MatrixSpec::Identity.build(16).unwrap();
        assert_eq!(linf_norm(&prefix(&c, 3).unwrap()).unwrap(), rat(3, 2));
        for m in 0..=8u32 {
            let v = linf_norm(&prefix(&c, 1 << m).unwrap()).unwrap();
            assert!(v <= rat(1, 1), "sup norm {v} > 1 at N = 2^{m}");
        }
    }

    #[test]
    fn domain_errors() {
        let p = set(&[(0, 0)]);
        assert!(lp_norm(&p, 0.5).is_err());
        assert!(lp_norm(&p, f64::INFINITY).is_err());
        let empty = PointSet::from_points(vec![]);
        assert!(lp_norm(&empty, 2.0).is_err());
        assert!(linf_norm(&empty).is_err());
    }

    #[test]
    fn duplicates_are_multiset_jumps() {
        // two copies of 0: delta is 2 - 2t on (0, 1]
        let p = set(&[(0, 0), (0, 0)]);
        assert_eq!(linf_norm(&p).unwrap(), rat(2, 1));
        assert_eq!(lp_norm(&p, 1.0).unwrap().exact.unwrap(), rat(1, 1));
        assert_eq!(signed_integral_direct(&p), rat(1, 1));
        assert_eq!(signed_integral_pieces(&p), rat(1, 1));
    }

    #[test]
    fn wide_exponents_take_the_big_path() {
        // exponent 150 exceeds the i128 headroom; all engines must agree
        // with the rational ground truth on the wide route
        let fine = DyadicRational::new(BigUint::one(), 150).unwrap();
        let ps = PointSet::from_points(vec![fine.clone(), dy(1, 1)]);
        assert!(!DiscrepancyProfile::new(&ps).is_small());

        let ground_truth = rat(1, 1) - fine.to_rational() - rat(1, 2); // sum of 1/2 - x
        assert_eq!(signed_integral_direct(&ps), ground_truth);
        assert_eq!(signed_integral_pieces(&ps), ground_truth);

        // the tiny point barely perturbs the {0, 1/2} reference values
        let l1 = lp_norm(&ps, 1.0).unwrap();
        assert!((l1.value - 0.5).abs() < 1e-12);
        let l2 = lp_norm(&ps, 2.0).unwrap();
        assert!((l2.value - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let frac = lp_norm(&ps, 2.5).unwrap();
        assert!(frac.value > l2.value - 1e-12);
        // the piece above 1/2 still reaches the one-sided limit 1 exactly
        assert_eq!(linf_norm(&ps).unwrap(), rat(1, 1));
    }

    #[test]
    fn dense_grid_lower_bounds_the_sup_norm() {
        // |delta| sampled on a fine grid stays below the essential sup and
        // approaches it to within the grid resolution times the slope
        let c = MatrixSpec::Identity.build(16).unwrap();
        for n in [1u64, 3, 7, 21, 50] {
            let ps = prefix(&c, n).unwrap();
            let sup = linf_norm(&ps).unwrap().to_f64().unwrap();
            let xs: Vec<f64> = ps.sorted().iter().map(|p| p.to_f64()).collect();
            let grid = 1 << 16;
            let mut best = 0.0f64;
            let mut below = 0usize;
            for g in 0..grid {
                let t = (g as f64 + 0.5) / grid as f64;
                while below < xs.len() && xs[below] < t {
                    below += 1;
                }
                best = best.max((below as f64 - n as f64 * t).abs());
            }
            assert!(
                best <= sup + 1e-9,
                "grid max {best} above sup {sup} at N={n}"
            );
            assert!(
                sup - best <= (n as f64 + 1.0) / grid as f64,
                "grid max {best} too far below sup {sup} at N={n}"
            );
        }
    }

    #[test]
    fn adjacent_prefix_sup_norms_differ_by_at_most_one() {
        let c = MatrixSpec::Identity.build(16).unwrap();
        let mut prev = linf_norm(&prefix(&c, 1).unwrap()).unwrap();
        for n in 2..=200u64 {
            let cur = linf_norm(&prefix(&c, n).unwrap()).unwrap();
            let diff = (&cur - &prev).abs();
            assert!(diff <= rat(1, 1), "jump {diff} at N = {n}");
            prev = cur;
        }
    }

    proptest! {
        #[test]
        fn piecewise_signed_integral_matches_direct(
            raw in proptest::collection::vec((0u64..1 << 12, 0u32..=12), 1..40)
        ) {
            let pts: Vec<DyadicRational> = raw
                .into_iter()
                .map(|(k, e)| DyadicRational::new(BigUint::from(k & ((1u64 << e) - 1)), e).unwrap())
                .collect();
            let ps = PointSet::from_points(pts);
            prop_assert_eq!(signed_integral_pieces(&ps), signed_integral_direct(&ps));
        }

        #[test]
        fn norms_are_monotone_in_p(
            raw in proptest::collection::vec((0u64..1 << 10, 0u32..=10), 1..24)
        ) {
            let pts: Vec<DyadicRational> = raw
                .into_iter()
                .map(|(k, e)| DyadicRational::new(BigUint::from(k & ((1u64 << e) - 1)), e).unwrap())
                .collect();
            let ps = PointSet::from_points(pts);
            let l1 = lp_norm(&ps, 1.0).unwrap().value;
            let l17 = lp_norm(&ps, 1.7).unwrap().value;
            let l2 = lp_norm(&ps, 2.0).unwrap().value;
            let l3 = lp_norm(&ps, 3.0).unwrap().value;
            let linf = linf_norm(&ps).unwrap().to_f64().unwrap();
            let eps = 1e-9;
            prop_assert!(l1 <= l17 + eps);
            prop_assert!(l17 <= l2 + eps);
            prop_assert!(l2 <= l3 + eps);
            prop_assert!(l3 <= linf + eps);
            // |signed integral| <= L_1
            let int = signed_integral_direct(&ps).abs();
            let l1_exact = lp_norm(&ps, 1.0).unwrap().exact.unwrap();
            prop_assert!(int <= l1_exact);
        }
    }
}
