//! Exact power-of-two scaling and the overflow-free product
//! `2^(n-1) · ∏ (t - x_i)` used by the first barycentric formula.
//!
//! The main entry point is [`scaled_product`]. It multiplies the factors
//! nearest to `t` one at a time, renormalizing after each, and the remaining
//! ones in groups of [`GROUP`] with one renormalization per group. All
//! renormalizations are multiplications by powers of two, so they add no
//! rounding error. [`naive_product`], [`logsum_product`] and
//! [`grouped_logs_product`] are the baselines it is benchmarked against.

use std::f64::consts::LN_2;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::nodes::{BracketIndex, NodeSet};

/// Factors multiplied between two renormalizations in the bulk of the product.
pub const GROUP: usize = 20;

/// Minimum number of factors on each side of `t` that are renormalized
/// individually. Together with [`GROUP`] this keeps every partial product
/// away from underflow for degrees up to [`MAX_DEGREE`].
pub const SLACK: usize = 6;

/// Largest degree for which the grouping constants are known to be safe.
pub const MAX_DEGREE: usize = 1_000_000_000;

/// A binary64 significand together with an unbounded power-of-two exponent.
///
/// The represented value is `significand · 2^exponent`. The significand is
/// either zero (and then so is the exponent) or lies in `±[0.5, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    significand: f64,
    exponent: i64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        significand: 0.0,
        exponent: 0,
    };

    /// Builds `significand · 2^exponent` for any finite significand,
    /// renormalizing it.
    pub fn new(significand: f64, exponent: i64) -> Result<Self> {
        let s = split(significand)?;
        if s.is_zero() {
            return Ok(Self::ZERO);
        }
        Ok(ScaledValue {
            significand: s.significand,
            exponent: s.exponent + exponent,
        })
    }

    pub fn significand(&self) -> f64 {
        self.significand
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.significand == 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.significand < 0.0
    }

    /// Collapses to binary64. Overflow to infinity and underflow of a nonzero
    /// value to zero are reported as range errors.
    pub fn to_f64(&self) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let r = ldexp(self.significand, self.exponent);
        if r.is_infinite() {
            return Err(Error::Range(format!("{self} overflows binary64")));
        }
        if r == 0.0 {
            return Err(Error::Range(format!("{self} underflows binary64")));
        }
        Ok(r)
    }

    /// Collapses to binary64 with IEEE overflow and underflow semantics.
    pub fn to_f64_lossy(&self) -> f64 {
        ldexp(self.significand, self.exponent)
    }

    /// `self · x`, rounded once.
    pub fn mul_f64(self, x: f64) -> Result<Self> {
        Self::new(self.significand * x, self.exponent)
    }

    /// `self · other`, rounded once.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        // the product of two normalized significands is in [0.25, 1) and exact
        // up to one rounding; it cannot overflow or underflow
        let (m, e) = frexp(self.significand * other.significand);
        if m == 0.0 {
            return Self::ZERO;
        }
        ScaledValue {
            significand: m,
            exponent: self.exponent + other.exponent + e,
        }
    }

    /// `x / self`, rounded once.
    pub fn recip_mul(self, x: f64) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("division by a zero product"));
        }
        Self::new(x / self.significand, -self.exponent)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        ScaledValue {
            significand: -self.significand,
            exponent: self.exponent,
        }
    }

    /// `log2 |self|`, approximately; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.significand.abs().log2() + self.exponent as f64
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}*2^{}", self.significand, self.exponent)
    }
}

/// Splits a finite `x` into a normalized significand and exponent with
/// `significand · 2^exponent == x` exactly.
pub fn split(x: f64) -> Result<ScaledValue> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("cannot split {x}")));
    }
    let (significand, exponent) = frexp(x);
    Ok(ScaledValue {
        significand,
        exponent,
    })
}

/// Returns `2^k · x`, failing unless the result is exactly representable.
pub fn scale_exact(x: f64, k: i64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("cannot scale {x}")));
    }
    if x == 0.0 {
        return Ok(x);
    }
    let r = ldexp(x, k);
    if r.is_infinite() {
        return Err(Error::Range(format!("2^{k} * {x:e} overflows")));
    }
    if r == 0.0 || ldexp(r, -k) != x {
        return Err(Error::Range(format!("2^{k} * {x:e} underflows")));
    }
    Ok(r)
}

/// `frexp` for finite `x`: `(m, e)` with `m ∈ ±[0.5, 1)` and `x = m · 2^e`,
/// or `(0, 0)` for zero. Non-finite inputs are returned unchanged.
pub(crate) fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: move into the normal range first
        let (m, e) = frexp(x * pow2(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff_u64 << 52)) | (1022_u64 << 52));
    (m, biased - 1022)
}

/// `2^k · x` with a single IEEE rounding, like C's `scalbln`.
pub(crate) fn ldexp(x: f64, k: i64) -> f64 {
    if x == 0.0 || !x.is_finite() || k == 0 {
        return x;
    }
    let (m, e) = frexp(x);
    let target = e.saturating_add(k);
    if target > 1024 {
        return f64::INFINITY.copysign(x);
    }
    if target == 1024 {
        return (2.0 * m) * pow2(1023);
    }
    if target >= -1021 {
        return m * pow2(target as i32);
    }
    if target < -1076 {
        return 0.0_f64.copysign(x);
    }
    // m · 2^(target + 600) is normal; the final multiplication rounds once
    (m * pow2((target + 600) as i32)) * pow2(-600)
}

/// `2^e` for a normal exponent `-1022 <= e <= 1023`.
pub(crate) fn pow2(e: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Strategy used to evaluate `2^(n-1) · ∏ (t - x_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductStrategy {
    Naive,
    Scaling,
    LogSum,
    GroupedLogs,
}

impl ProductStrategy {
    pub const ALL: [ProductStrategy; 4] = [
        ProductStrategy::Naive,
        ProductStrategy::Scaling,
        ProductStrategy::LogSum,
        ProductStrategy::GroupedLogs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProductStrategy::Naive => "naive",
            ProductStrategy::Scaling => "scaling",
            ProductStrategy::LogSum => "logsum",
            ProductStrategy::GroupedLogs => "grouped-logs",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    /// Evaluates the product. The naive strategy is returned as a plain
    /// binary64 because it may overflow or underflow.
    pub fn evaluate(&self, t: f64, nodes: &NodeSet) -> Result<ProductValue> {
        Ok(match self {
            ProductStrategy::Naive => ProductValue::Plain(naive_product(t, nodes)),
            ProductStrategy::Scaling => ProductValue::Scaled(scaled_product(t, nodes)?),
            ProductStrategy::LogSum => ProductValue::Scaled(logsum_product(t, nodes)?),
            ProductStrategy::GroupedLogs => ProductValue::Scaled(grouped_logs_product(t, nodes)?),
        })
    }
}

/// Result of one of the product strategies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProductValue {
    Plain(f64),
    Scaled(ScaledValue),
}

fn check_product_args(t: f64, nodes: &NodeSet) -> Result<BracketIndex> {
    if nodes.degree() > MAX_DEGREE {
        return Err(domain(format!(
            "degree {} exceeds the supported maximum {MAX_DEGREE}",
            nodes.degree()
        )));
    }
    nodes.bracket(t)
}

/// Overflow- and underflow-free evaluation of `2^(n-1) · ∏_{i=0}^{n} (t - x_i)`.
///
/// Factors are taken from the bracket of `t` outward: first the left ones in
/// decreasing index order, then the right ones in increasing order.
pub fn scaled_product(t: f64, nodes: &NodeSet) -> Result<ScaledValue> {
    let k = match check_product_args(t, nodes)? {
        BracketIndex::Node(_) => return Ok(ScaledValue::ZERO),
        BracketIndex::Interior(k) => k,
    };
    let mut renorm = FrexpRenorm {
        exp: nodes.degree() as i64 - 1,
    };
    let prod = walk_product(t, nodes.values(), k + 1, k + 1, &mut renorm);
    Ok(renorm.finish(prod))
}

/// `2^(n-1) · ∏_{j != i} (x_i - x_j)`, the denominator of the first formula
/// weights, with the same grouping as [`scaled_product`].
pub(crate) fn scaled_product_excluding(xs: &[f64], i: usize) -> ScaledValue {
    let mut renorm = FrexpRenorm {
        exp: xs.len() as i64 - 2,
    };
    let prod = walk_product(xs[i], xs, i, i + 1, &mut renorm);
    renorm.finish(prod)
}

/// Straight product `∏ (t - x_i)` in index order followed by the factor
/// `2^(n-1)`, with no protection against overflow or underflow.
pub fn naive_product(t: f64, nodes: &NodeSet) -> f64 {
    let prod: f64 = nodes.values().iter().map(|&x| t - x).product();
    prod * 2f64.powi((nodes.degree() as i32).saturating_sub(1))
}

/// The product computed as `exp(Σ log |t - x_i|)` with the sign tracked
/// separately.
pub fn logsum_product(t: f64, nodes: &NodeSet) -> Result<ScaledValue> {
    if let BracketIndex::Node(_) = check_product_args(t, nodes)? {
        return Ok(ScaledValue::ZERO);
    }
    let mut log = (nodes.degree() as f64 - 1.0) * LN_2;
    let mut negative = false;
    for &x in nodes.values() {
        let d = t - x;
        negative ^= d < 0.0;
        log += d.abs().ln();
    }
    from_log(negative, log)
}

/// [`scaled_product`] with each renormalization replaced by moving
/// `log |prod|` into an accumulator.
pub fn grouped_logs_product(t: f64, nodes: &NodeSet) -> Result<ScaledValue> {
    let k = match check_product_args(t, nodes)? {
        BracketIndex::Node(_) => return Ok(ScaledValue::ZERO),
        BracketIndex::Interior(k) => k,
    };
    let mut renorm = LogRenorm {
        log: (nodes.degree() as f64 - 1.0) * LN_2,
    };
    let prod = walk_product(t, nodes.values(), k + 1, k + 1, &mut renorm);
    // prod is ±1 after the last renormalization
    from_log(prod < 0.0, renorm.log + prod.abs().ln())
}

/// `±exp(log)` as a scaled value, splitting the power of two out of the
/// exponential so it cannot overflow.
fn from_log(negative: bool, log: f64) -> Result<ScaledValue> {
    if log == f64::NEG_INFINITY {
        return Ok(ScaledValue::ZERO);
    }
    if !log.is_finite() {
        return Err(Error::Range(format!("log-sum product is {log}")));
    }
    let k = (log / LN_2).floor();
    let v = (log - k * LN_2).exp();
    ScaledValue::new(if negative { -v } else { v }, k as i64)
}

trait Renorm {
    fn renorm(&mut self, prod: f64) -> f64;
}

struct FrexpRenorm {
    exp: i64,
}

impl FrexpRenorm {
    fn finish(&self, prod: f64) -> ScaledValue {
        if prod == 0.0 {
            return ScaledValue::ZERO;
        }
        ScaledValue {
            significand: prod,
            exponent: self.exp,
        }
    }
}

impl Renorm for FrexpRenorm {
    #[inline]
    fn renorm(&mut self, prod: f64) -> f64 {
        let (m, e) = frexp(prod);
        self.exp += e;
        m
    }
}

struct LogRenorm {
    log: f64,
}

impl Renorm for LogRenorm {
    #[inline]
    fn renorm(&mut self, prod: f64) -> f64 {
        self.log += prod.abs().ln();
        prod.signum()
    }
}

/// Number of factors renormalized one at a time on a side with `len` factors.
#[inline]
fn individual_count(len: usize) -> usize {
    let r = len % GROUP;
    if r >= SLACK {
        r
    } else if len > SLACK {
        r + GROUP
    } else {
        len
    }
}

/// Multiplies `t - xs[j]` for `j < left_len` (descending) and then for
/// `j >= right_start` (ascending).
fn walk_product<R: Renorm>(
    t: f64,
    xs: &[f64],
    left_len: usize,
    right_start: usize,
    renorm: &mut R,
) -> f64 {
    let mut prod = 1.0;

    let mut idx = left_len;
    for _ in 0..individual_count(left_len) {
        idx -= 1;
        prod = renorm.renorm(prod * (t - xs[idx]));
    }
    debug_assert_eq!(idx % GROUP, 0);
    while idx > 0 {
        for x in xs[idx - GROUP..idx].iter().rev() {
            prod *= t - x;
        }
        idx -= GROUP;
        prod = renorm.renorm(prod);
    }

    let right_len = xs.len() - right_start;
    let mut idx = right_start;
    for _ in 0..individual_count(right_len) {
        prod = renorm.renorm(prod * (t - xs[idx]));
        idx += 1;
    }
    debug_assert_eq!((xs.len() - idx) % GROUP, 0);
    while idx < xs.len() {
        for x in &xs[idx..idx + GROUP] {
            prod *= t - x;
        }
        idx += GROUP;
        prod = renorm.renorm(prod);
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nodes(values: &[f64]) -> NodeSet {
        NodeSet::from_values(values.to_vec()).unwrap()
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(0.0).unwrap(), ScaledValue::ZERO);
        let one = split(1.0).unwrap();
        assert_eq!((one.significand(), one.exponent()), (0.5, 1));
        let m3 = split(-3.0).unwrap();
        assert_eq!((m3.significand(), m3.exponent()), (-0.75, 2));
        assert_eq!(-0.75 * 4.0, -3.0);
        assert!(split(f64::NAN).is_err());
        assert!(split(f64::INFINITY).is_err());
    }

    #[test]
    fn split_subnormal() {
        let tiny = f64::from_bits(1);
        let s = split(tiny).unwrap();
        assert_eq!((s.significand(), s.exponent()), (0.5, -1073));
    }

    #[test]
    fn scale_exact_examples() {
        assert_eq!(scale_exact(0.75, 2).unwrap(), 3.0);
        assert_eq!(scale_exact(1.0, -3).unwrap(), 0.125);
        assert_eq!(scale_exact(-123.456, 0).unwrap(), -123.456);
        assert!(matches!(scale_exact(1.0, 1024), Err(Error::Range(_))));
        assert!(matches!(scale_exact(1.5, -1074), Err(Error::Range(_))));
        assert_eq!(scale_exact(1.0, -1074).unwrap(), f64::from_bits(1));
    }

    #[test]
    fn ldexp_rounds_once_into_subnormals() {
        // 1.5 * 2^-1074 is a tie between one and two ulps; ties go to even
        assert_eq!(ldexp(1.5, -1074), f64::from_bits(2));
        assert_eq!(ldexp(1.0, -1075), 0.0);
        assert_eq!(ldexp(0.75, 2000), f64::INFINITY);
        assert_eq!(ldexp(f64::MAX / 4.0, 2), f64::MAX);
        assert_eq!(split(f64::MAX).unwrap().to_f64().unwrap(), f64::MAX);
        assert_eq!(ldexp(0.5, 1024), 2f64.powi(1023));
    }

    #[test]
    fn scaled_value_collapse() {
        let v = ScaledValue::new(0.5, 2000).unwrap();
        assert!(matches!(v.to_f64(), Err(Error::Range(_))));
        assert_eq!(v.to_f64_lossy(), f64::INFINITY);
        let w = ScaledValue::new(0.5, -2000).unwrap();
        assert!(w.to_f64().is_err());
        assert_eq!(v.mul(w).to_f64().unwrap(), 0.25);
        assert_eq!(v.recip_mul(3.0).unwrap().mul(v).to_f64().unwrap(), 3.0);
    }

    #[test]
    fn product_examples() {
        let two = nodes(&[-1.0, 1.0]);
        assert_eq!(scaled_product(0.0, &two).unwrap().to_f64().unwrap(), -1.0);
        let three = nodes(&[-1.0, 0.0, 1.0]);
        let p = scaled_product(0.5, &three).unwrap();
        // 2 * 1.5 * 0.5 * (-0.5)
        assert_eq!(p.to_f64().unwrap(), -0.75);
        assert_eq!(naive_product(0.5, &three), -0.75);
        let l = logsum_product(0.5, &three).unwrap().to_f64().unwrap();
        assert!((l + 0.75).abs() <= 1e-13 * 0.75);
        let g = grouped_logs_product(0.5, &three).unwrap().to_f64().unwrap();
        assert!((g + 0.75).abs() <= 1e-13 * 0.75);
    }

    #[test]
    fn node_hits_give_exact_zero() {
        let three = nodes(&[-1.0, 0.0, 1.0]);
        for t in [-1.0, 0.0, 1.0] {
            assert_eq!(scaled_product(t, &three).unwrap(), ScaledValue::ZERO);
            assert_eq!(naive_product(t, &three), 0.0);
            assert!(logsum_product(t, &three).unwrap().is_zero());
            assert!(grouped_logs_product(t, &three).unwrap().is_zero());
        }
    }

    #[test]
    fn product_domain() {
        let three = nodes(&[-1.0, 0.0, 1.0]);
        assert!(matches!(scaled_product(1.5, &three), Err(Error::Domain(_))));
        assert!(matches!(
            scaled_product(f64::NAN, &three),
            Err(Error::Domain(_))
        ));
        assert!(naive_product(2.0, &three).is_finite());
    }

    #[test]
    fn individual_counts() {
        assert_eq!(individual_count(1), 1);
        assert_eq!(individual_count(6), 6);
        assert_eq!(individual_count(7), 7);
        assert_eq!(individual_count(20), 20);
        assert_eq!(individual_count(21), 21);
        assert_eq!(individual_count(26), 6);
        assert_eq!(individual_count(45), 25);
        assert_eq!(individual_count(1000), 20);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn split_scale_round_trip(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let s = split(x).unwrap();
            prop_assert!(s.is_zero() || (0.5..1.0).contains(&s.significand().abs()));
            let back = scale_exact(s.significand(), s.exponent()).unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
