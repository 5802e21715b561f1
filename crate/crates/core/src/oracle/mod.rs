//! High precision reference values.
//!
//! Every binary64 input (nodes, samples, evaluation points) is taken as an
//! exact number and the quantity of interest is evaluated with at least 106
//! significand bits. Precisions up to 106 bits use the double-double type
//! [`Dd`]; anything above that uses the arbitrary precision [`Mp`].

pub mod dd;
pub mod mp;
mod stats;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use dd::Dd;
pub use mp::Mp;
pub use stats::{collect_stats, ErrorMode, ErrorStats, StatsCollector};

use crate::error::{Error, Result};
use crate::fp_scaled::{ProductValue, ScaledValue};
use crate::nodes::NodeSet;
use crate::weights::gamma;

/// Precision of the double-double backend and the default oracle precision.
pub const DD_BITS: usize = 106;
/// Largest accepted oracle precision.
pub const MAX_BITS: usize = 1 << 16;
/// Environment variable overriding the oracle precision.
pub const BITS_ENV: &str = "BARYSTABLE_ORACLE_BITS";

/// Arithmetic shared by the oracle backends.
pub trait HiReal:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, bits: usize) -> Self;

    fn zero(bits: usize) -> Self {
        Self::from_f64(0.0, bits)
    }

    fn one(bits: usize) -> Self {
        Self::from_f64(1.0, bits)
    }

    /// Exact `a - b`.
    fn from_diff(a: f64, b: f64, bits: usize) -> Self {
        Self::from_f64(a, bits) - Self::from_f64(b, bits)
    }

    fn to_f64(&self) -> f64;

    /// `(hi, lo)` with `hi` the nearest binary64 and `lo` the nearest binary64
    /// to the remainder.
    fn to_parts(&self) -> (f64, f64);

    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn pi(bits: usize) -> Self;

    /// Exponent `e` with `|self| / 2^e` in `[0.5, 1)`, up to one unit.
    fn exponent(&self) -> i64;

    /// `2^k · self`, exact.
    fn ldexp(&self, k: i64) -> Self;

    fn mul_f64(&self, x: f64) -> Self;

    /// `sin(num · π / den)`.
    fn sin_pi_frac(num: i64, den: i64, bits: usize) -> Self;

    /// `cos(num · π / den)`, computed from a rounded argument `num · π / den`
    /// rather than the exact reduction of [`HiReal::sin_pi_frac`].
    fn cos_pi_frac(num: i64, den: i64, bits: usize) -> Self {
        let x = Self::pi(bits).mul_f64(num as f64) / Self::from_f64(den as f64, bits);
        x.cos()
    }

    fn into_value(self) -> HiPrecValue;
}

impl HiReal for Dd {
    fn from_f64(x: f64, _bits: usize) -> Self {
        Dd::new(x)
    }
    fn from_diff(a: f64, b: f64, _bits: usize) -> Self {
        Dd::from_diff(a, b)
    }
    fn to_f64(&self) -> f64 {
        Dd::to_f64(*self)
    }
    fn to_parts(&self) -> (f64, f64) {
        let hi = self.hi + self.lo;
        (hi, (self.hi - hi) + self.lo)
    }
    fn abs(&self) -> Self {
        Dd::abs(*self)
    }
    fn is_zero(&self) -> bool {
        Dd::is_zero(*self)
    }
    fn sqrt(&self) -> Self {
        Dd::sqrt(*self)
    }
    fn sin(&self) -> Self {
        Dd::sin(*self)
    }
    fn cos(&self) -> Self {
        Dd::cos(*self)
    }
    fn pi(_bits: usize) -> Self {
        Dd::PI
    }
    fn exponent(&self) -> i64 {
        Dd::exponent(*self)
    }
    fn ldexp(&self, k: i64) -> Self {
        Dd::ldexp(*self, k)
    }
    fn mul_f64(&self, x: f64) -> Self {
        Dd::mul_f64(*self, x)
    }
    fn sin_pi_frac(num: i64, den: i64, _bits: usize) -> Self {
        Dd::sin_pi_frac(num, den)
    }
    fn into_value(self) -> HiPrecValue {
        HiPrecValue::Dd(self)
    }
}

impl HiReal for Mp {
    fn from_f64(x: f64, bits: usize) -> Self {
        Mp::from_f64(x, bits)
    }
    fn to_f64(&self) -> f64 {
        Mp::to_f64(self)
    }
    fn to_parts(&self) -> (f64, f64) {
        let hi = Mp::to_f64(self);
        let lo = (self.clone() - Mp::from_f64(hi, self.precision())).to_f64();
        (hi, lo)
    }
    fn abs(&self) -> Self {
        Mp::abs(self)
    }
    fn is_zero(&self) -> bool {
        Mp::is_zero(self)
    }
    fn sqrt(&self) -> Self {
        Mp::sqrt(self)
    }
    fn sin(&self) -> Self {
        Mp::sin(self)
    }
    fn cos(&self) -> Self {
        Mp::cos(self)
    }
    fn pi(bits: usize) -> Self {
        Mp::pi(bits)
    }
    fn exponent(&self) -> i64 {
        Mp::exponent(self)
    }
    fn ldexp(&self, k: i64) -> Self {
        Mp::ldexp(self, k)
    }
    fn mul_f64(&self, x: f64) -> Self {
        self.clone() * Mp::from_f64(x, self.precision())
    }
    fn sin_pi_frac(num: i64, den: i64, bits: usize) -> Self {
        // reduce num/den modulo 2 exactly first
        let num = num.rem_euclid(2 * den);
        let x = Mp::pi(bits + 16).mul_f64(num as f64) / Mp::from_i64(den, bits + 16);
        let s = x.sin();
        Mp::from_f64(0.0, bits) + s
    }
    fn into_value(self) -> HiPrecValue {
        HiPrecValue::Mp(self)
    }
}

/// A value computed by the oracle.
#[derive(Clone, Debug)]
pub enum HiPrecValue {
    Dd(Dd),
    Mp(Mp),
}

impl HiPrecValue {
    /// Nearest binary64 (up to the last bit for the double-double backend).
    pub fn to_f64(&self) -> f64 {
        match self {
            HiPrecValue::Dd(v) => v.to_f64(),
            HiPrecValue::Mp(v) => v.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HiPrecValue::Dd(v) => v.is_zero(),
            HiPrecValue::Mp(v) => v.is_zero(),
        }
    }

    /// `|computed - self|`, or `+inf` for a non-finite `computed`.
    pub fn abs_error(&self, computed: f64) -> f64 {
        if !computed.is_finite() {
            return f64::INFINITY;
        }
        match self {
            HiPrecValue::Dd(v) => (Dd::new(computed) - *v).abs().to_f64(),
            HiPrecValue::Mp(v) => (Mp::from_f64(computed, v.precision()) - v.clone())
                .abs()
                .to_f64(),
        }
    }

    /// `|computed - self| / |self|`. A nonzero or non-finite `computed`
    /// against a zero reference is an infinite relative error.
    pub fn rel_error(&self, computed: f64) -> f64 {
        if !computed.is_finite() {
            return f64::INFINITY;
        }
        if self.is_zero() {
            return if computed == 0.0 { 0.0 } else { f64::INFINITY };
        }
        match self {
            HiPrecValue::Dd(v) => ((Dd::new(computed) - *v) / *v).abs().to_f64(),
            HiPrecValue::Mp(v) => {
                let c = Mp::from_f64(computed, v.precision());
                ((c - v.clone()) / v.clone()).abs().to_f64()
            }
        }
    }

    /// Relative difference `|self - other| / |other|` between two oracle
    /// values, evaluated at the larger of their precisions.
    pub fn rel_diff(&self, other: &HiPrecValue) -> f64 {
        let bits = self.bits().max(other.bits()) + 64;
        let a = self.to_mp(bits);
        let b = other.to_mp(bits);
        if b.is_zero() {
            return if a.is_zero() { 0.0 } else { f64::INFINITY };
        }
        ((a - b.clone()) / b).abs().to_f64()
    }

    pub fn bits(&self) -> usize {
        match self {
            HiPrecValue::Dd(_) => DD_BITS,
            HiPrecValue::Mp(v) => v.precision(),
        }
    }

    fn to_mp(&self, bits: usize) -> Mp {
        match self {
            HiPrecValue::Dd(v) => Mp::from_f64(v.hi, bits) + Mp::from_f64(v.lo, bits),
            HiPrecValue::Mp(v) => Mp::from_f64(0.0, bits) + v.clone(),
        }
    }
}

/// `2^(n-1) · ∏ (t - x_i)` in oracle precision, kept as a significand in
/// `±[0.5, 1)` and an unbounded exponent.
#[derive(Clone, Debug)]
pub struct OracleProduct {
    pub significand: HiPrecValue,
    pub exponent: i64,
}

impl OracleProduct {
    pub fn is_zero(&self) -> bool {
        self.significand.is_zero()
    }

    /// Relative error of a computed scaled product.
    pub fn rel_error(&self, computed: &ScaledValue) -> f64 {
        if self.is_zero() {
            return if computed.is_zero() {
                0.0
            } else {
                f64::INFINITY
            };
        }
        if computed.is_zero() {
            return 1.0;
        }
        let shift = computed.exponent() - self.exponent;
        if shift.abs() > 900 {
            return f64::INFINITY;
        }
        let c = computed.significand() * 2f64.powi(shift as i32);
        self.significand.rel_error(c)
    }

    /// Relative error of any product strategy result; non-finite binary64
    /// results count as infinite errors and underflow to zero as 1.
    pub fn rel_error_value(&self, computed: &ProductValue) -> f64 {
        match computed {
            ProductValue::Scaled(v) => self.rel_error(v),
            ProductValue::Plain(x) => {
                if !x.is_finite() {
                    f64::INFINITY
                } else {
                    let v = ScaledValue::new(*x, 0).expect("finite");
                    self.rel_error(&v)
                }
            }
        }
    }
}

/// Functions sampled at the nodes and used as references in error
/// measurements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFunction {
    /// `sin(t)`.
    Sin,
    /// `sin(ω t)`.
    SinScaled(f64),
    /// `1 / (1 + 25 t²)`.
    Runge,
    /// A constant.
    Constant(f64),
}

impl TestFunction {
    pub fn parse(s: &str) -> Option<TestFunction> {
        match s {
            "sin" => Some(TestFunction::Sin),
            "runge" => Some(TestFunction::Runge),
            _ => {
                if let Some(w) = s.strip_prefix("sin-scaled:") {
                    w.parse()
                        .ok()
                        .filter(|w: &f64| w.is_finite())
                        .map(TestFunction::SinScaled)
                } else if let Some(c) = s.strip_prefix("constant:") {
                    c.parse()
                        .ok()
                        .filter(|c: &f64| c.is_finite())
                        .map(TestFunction::Constant)
                } else {
                    None
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TestFunction::Sin => "sin".into(),
            TestFunction::SinScaled(w) => format!("sin-scaled:{w}"),
            TestFunction::Runge => "runge".into(),
            TestFunction::Constant(c) => format!("constant:{c}"),
        }
    }

    fn eval_in<R: HiReal>(&self, x: f64, bits: usize) -> R {
        match *self {
            TestFunction::Sin => R::from_f64(x, bits).sin(),
            TestFunction::SinScaled(w) => R::from_f64(x, bits).mul_f64(w).sin(),
            TestFunction::Runge => {
                let x = R::from_f64(x, bits);
                let d = R::one(bits) + (x.clone() * x).mul_f64(25.0);
                R::one(bits) / d
            }
            TestFunction::Constant(c) => R::from_f64(c, bits),
        }
    }
}

macro_rules! dispatch {
    ($oracle:expr, $r:ident => $body:expr) => {
        if $oracle.bits <= $crate::oracle::DD_BITS {
            type $r = $crate::oracle::Dd;
            $body
        } else {
            type $r = $crate::oracle::Mp;
            $body
        }
    };
}
pub(crate) use dispatch;

/// High precision evaluator with a fixed working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub(crate) bits: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { bits: DD_BITS }
    }
}

impl Oracle {
    pub fn new(bits: usize) -> Result<Self> {
        if !(DD_BITS..=MAX_BITS).contains(&bits) {
            return Err(Error::Config(format!(
                "oracle precision must be between {DD_BITS} and {MAX_BITS} bits, got {bits}"
            )));
        }
        Ok(Oracle { bits })
    }

    /// Reads the precision from `BARYSTABLE_ORACLE_BITS`, defaulting to 106.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BITS_ENV) {
            Ok(s) => {
                let bits = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{BITS_ENV}={s:?} is not a bit count")))?;
                Self::new(bits)
            }
            Err(std::env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(Error::Config(format!("{BITS_ENV}: {e}"))),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn from_f64(&self, x: f64) -> HiPrecValue {
        dispatch!(self, R => <R as HiReal>::from_f64(x, self.bits).into_value())
    }

    /// The second barycentric formula with simplified weights for the given
    /// nodes and samples. Returns `f_i` at a node.
    pub fn interpolant(&self, t: f64, nodes: &NodeSet, f: &[f64]) -> HiPrecValue {
        dispatch!(self, R => interpolant_in::<R>(t, nodes.values(), f, self.bits).into_value())
    }

    /// `q(t) = Σ γ_i / (t - x_i)`.
    pub fn q(&self, t: f64, nodes: &NodeSet) -> HiPrecValue {
        dispatch!(self, R => weighted_sum_in::<R>(t, nodes.values(), None, self.bits).into_value())
    }

    /// `p(t) = Σ γ_i f_i / (t - x_i)`.
    pub fn p(&self, t: f64, nodes: &NodeSet, f: &[f64]) -> HiPrecValue {
        dispatch!(self, R => weighted_sum_in::<R>(t, nodes.values(), Some(f), self.bits).into_value())
    }

    /// `2^(n-1) · ∏ (t - x_i)`.
    pub fn product(&self, t: f64, nodes: &NodeSet) -> OracleProduct {
        dispatch!(self, R => {
            let (s, e) = product_in::<R>(t, nodes.values(), self.bits);
            OracleProduct { significand: s.into_value(), exponent: e }
        })
    }

    /// `Σ values`.
    pub fn sum(&self, values: &[f64]) -> HiPrecValue {
        dispatch!(self, R => sum_in::<R>(values, self.bits).into_value())
    }

    /// `sin(num · π / den)`.
    pub fn sin_pi_frac(&self, num: i64, den: i64) -> HiPrecValue {
        dispatch!(self, R => <R as HiReal>::sin_pi_frac(num, den, self.bits).into_value())
    }

    /// `sin(num · π / den)` as its two leading binary64 parts.
    pub fn sin_pi_frac_parts(&self, num: i64, den: i64) -> (f64, f64) {
        dispatch!(self, R => <R as HiReal>::sin_pi_frac(num, den, self.bits).to_parts())
    }

    /// The exact Chebyshev point `-cos(i π / n)`.
    pub fn chebyshev_node(&self, i: usize, n: usize) -> HiPrecValue {
        dispatch!(self, R => chebyshev_in::<R>(i, n, self.bits).into_value())
    }

    /// `f(x)`.
    pub fn function(&self, f: TestFunction, x: f64) -> HiPrecValue {
        dispatch!(self, R => f.eval_in::<R>(x, self.bits).into_value())
    }

    /// `f(x)` rounded to binary64: the samples handed to the evaluators.
    pub fn sample(&self, f: TestFunction, x: f64) -> f64 {
        self.function(f, x).to_f64()
    }

    pub fn samples(&self, f: TestFunction, nodes: &NodeSet) -> Vec<f64> {
        nodes.values().iter().map(|&x| self.sample(f, x)).collect()
    }
}

pub(crate) fn chebyshev_in<R: HiReal>(i: usize, n: usize, bits: usize) -> R {
    -R::cos_pi_frac(i as i64, n as i64, bits)
}

fn node_hit(t: f64, xs: &[f64]) -> Option<usize> {
    let k = xs.partition_point(|&x| x < t);
    (k < xs.len() && xs[k] == t).then_some(k)
}

pub(crate) fn interpolant_in<R: HiReal>(t: f64, xs: &[f64], f: &[f64], bits: usize) -> R {
    if let Some(i) = node_hit(t, xs) {
        return R::from_f64(f[i], bits);
    }
    let n = xs.len() - 1;
    let mut p = R::zero(bits);
    let mut q = R::zero(bits);
    for (i, (&x, &fi)) in xs.iter().zip(f).enumerate() {
        let term = R::from_f64(gamma(i, n), bits) / R::from_diff(t, x, bits);
        p = p + term.mul_f64(fi);
        q = q + term;
    }
    p / q
}

pub(crate) fn weighted_sum_in<R: HiReal>(t: f64, xs: &[f64], f: Option<&[f64]>, bits: usize) -> R {
    let n = xs.len() - 1;
    let mut acc = R::zero(bits);
    for (i, &x) in xs.iter().enumerate() {
        let w = gamma(i, n) * f.map_or(1.0, |f| f[i]);
        acc = acc + R::from_f64(w, bits) / R::from_diff(t, x, bits);
    }
    acc
}

pub(crate) fn product_in<R: HiReal>(t: f64, xs: &[f64], bits: usize) -> (R, i64) {
    const RENORM: usize = 8;
    let mut acc = R::one(bits);
    let mut exp = xs.len() as i64 - 2;
    for chunk in xs.chunks(RENORM) {
        for &x in chunk {
            acc = acc * R::from_diff(t, x, bits);
        }
        if acc.is_zero() {
            return (R::zero(bits), 0);
        }
        let e = acc.exponent();
        acc = acc.ldexp(-e);
        exp += e;
    }
    // normalize exactly into [0.5, 1)
    let half = R::from_f64(0.5, bits);
    while acc.abs() < half {
        acc = acc.ldexp(1);
        exp -= 1;
    }
    while acc.abs() >= R::one(bits) {
        acc = acc.ldexp(-1);
        exp += 1;
    }
    (acc, exp)
}

pub(crate) fn sum_in<R: HiReal>(values: &[f64], bits: usize) -> R {
    values
        .iter()
        .fold(R::zero(bits), |acc, &v| acc + R::from_f64(v, bits))
}
