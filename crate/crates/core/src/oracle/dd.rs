//! Double-double arithmetic: an unevaluated sum `hi + lo` of two binary64
//! values with `|lo| <= ulp(hi)/2`, giving about 106 significand bits.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::fp_scaled::{frexp, ldexp};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

// π and π/2 split into non-overlapping binary64 parts
const PI_HI: f64 = std::f64::consts::PI;
const PI_LO: f64 = 1.2246467991473532e-16;
const PI_2_A: f64 = std::f64::consts::FRAC_PI_2;
const PI_2_B: f64 = 6.123233995736766e-17;
const PI_2_C: f64 = -1.4973849048591698e-33;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134217729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: PI_HI,
        lo: PI_LO,
    };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact `a + b`.
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact `a - b`.
    pub fn from_diff(a: f64, b: f64) -> Dd {
        Self::from_sum(a, -b)
    }

    /// Exact `a · b` barring overflow and underflow.
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn square(self) -> Dd {
        self * self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::new(f64::NAN)
            };
        }
        let s = self.hi.sqrt();
        let r = self - Dd::from_prod(s, s);
        Dd::new(s).add_f64(r.hi / (2.0 * s))
    }

    /// `2^k · self`, exact while both parts stay normal.
    pub fn ldexp(self, k: i64) -> Dd {
        Dd {
            hi: ldexp(self.hi, k),
            lo: ldexp(self.lo, k),
        }
    }

    /// Exponent `e` with `|self| / 2^e ∈ [0.5, 1)`, up to the rounding of
    /// `hi`; 0 for zero.
    pub fn exponent(self) -> i64 {
        frexp(self.hi).1
    }

    /// Rounds towards -∞ to an integer.
    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Dd { hi: h, lo: l }
        } else {
            Dd::new(hi)
        }
    }

    pub fn sin(self) -> Dd {
        let (j, r) = reduce_half_pi(self);
        quadrant_sin(j, r)
    }

    pub fn cos(self) -> Dd {
        let (j, r) = reduce_half_pi(self);
        quadrant_sin(j + 1, r)
    }

    /// `sin(num · π / den)`, with the argument reduced exactly in integer
    /// arithmetic.
    pub fn sin_pi_frac(num: i64, den: i64) -> Dd {
        assert!(den > 0, "sin_pi_frac needs a positive denominator");
        // num/den = (j + f)/2 with j = round(2 num / den), |f| <= 1/2
        let num2 = 2 * num as i128;
        let den = den as i128;
        let j = (2 * num2 + den).div_euclid(2 * den);
        let rem = num2 - j * den;
        // r = rem · π / (2 den), |r| <= π/4
        let frac = Dd::new(rem as f64) / Dd::new((2 * den) as f64);
        quadrant_sin(j as i64, frac * Dd::PI)
    }
}

/// `x = j·π/2 + r` with `|r| <= π/4` (approximately).
fn reduce_half_pi(x: Dd) -> (i64, Dd) {
    let j = (x.hi / PI_2_A).round();
    if j == 0.0 {
        return (0, x);
    }
    let r = x - Dd::from_prod(j, PI_2_A);
    let r = r - Dd::from_prod(j, PI_2_B);
    let r = r - Dd::from_prod(j, PI_2_C);
    (j as i64, r)
}

/// `sin(j·π/2 + r)` for `|r| <= π/4`.
fn quadrant_sin(j: i64, r: Dd) -> Dd {
    match j.rem_euclid(4) {
        0 => sin_taylor(r),
        1 => cos_taylor(r),
        2 => -sin_taylor(r),
        _ => -cos_taylor(r),
    }
}

fn sin_taylor(r: Dd) -> Dd {
    let r2 = r.square();
    // Σ (-1)^k r^(2k+1) / (2k+1)!, Horner from k = 15
    let mut acc = Dd::ONE;
    for k in (1..=15).rev() {
        let d = ((2 * k) * (2 * k + 1)) as f64;
        acc = Dd::ONE - (r2 * acc) / Dd::new(d);
    }
    acc * r
}

fn cos_taylor(r: Dd) -> Dd {
    let r2 = r.square();
    let mut acc = Dd::ONE;
    for k in (1..=15).rev() {
        let d = ((2 * k - 1) * (2 * k)) as f64;
        acc = Dd::ONE - (r2 * acc) / Dd::new(d);
    }
    acc
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}
