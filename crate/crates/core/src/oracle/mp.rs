//! Arbitrary precision backend on top of `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::fp_scaled::ldexp;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// A binary floating-point number with a fixed number of significand bits.
/// Binary operations round to the larger precision of their operands.
#[derive(Clone, Debug)]
pub struct Mp {
    v: BigFloat,
    p: usize,
}

impl Mp {
    pub fn from_f64(x: f64, p: usize) -> Mp {
        Mp {
            v: BigFloat::from_f64(x, p.max(64)),
            p,
        }
    }

    pub fn from_i64(x: i64, p: usize) -> Mp {
        Mp {
            v: BigFloat::from_i64(x, p.max(64)),
            p,
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn pi(p: usize) -> Mp {
        let v = CONSTS.with(|c| c.borrow_mut().pi(p, RM));
        Mp { v, p }
    }

    pub fn sin(&self) -> Mp {
        let v = CONSTS.with(|c| self.v.sin(self.p, RM, &mut c.borrow_mut()));
        Mp { v, p: self.p }
    }

    pub fn cos(&self) -> Mp {
        let v = CONSTS.with(|c| self.v.cos(self.p, RM, &mut c.borrow_mut()));
        Mp { v, p: self.p }
    }

    pub fn sqrt(&self) -> Mp {
        Mp {
            v: self.v.sqrt(self.p, RM),
            p: self.p,
        }
    }

    pub fn abs(&self) -> Mp {
        Mp {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    /// Exponent `e` with `|self| / 2^e ∈ [0.5, 1)`; 0 for zero.
    pub fn exponent(&self) -> i64 {
        if self.v.is_zero() {
            return 0;
        }
        self.v.exponent().map_or(0, i64::from)
    }

    /// `2^k · self`, exact.
    pub fn ldexp(&self, k: i64) -> Mp {
        if self.v.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = self.exponent() + k;
        v.set_exponent(e.try_into().expect("exponent within range"));
        Mp { v, p: self.p }
    }

    /// Nearest binary64, with round-half-to-even; values outside the
    /// binary64 range go to zero or infinity.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let words = self.v.mantissa_digits().expect("finite value");
        // words are little endian; the top word carries the leading bit
        let top = *words.last().expect("nonempty mantissa");
        let sticky = words[..words.len() - 1].iter().any(|&w| w != 0);
        // bit 0 is far below the rounding position, so it acts as a sticky bit
        let m = top | u64::from(sticky);
        let r = ldexp(m as f64, self.exponent() - 64);
        if self.v.sign() == Some(Sign::Neg) {
            -r
        } else {
            r
        }
    }
}

impl Add for Mp {
    type Output = Mp;
    fn add(self, b: Mp) -> Mp {
        let p = self.p.max(b.p);
        Mp {
            v: self.v.add(&b.v, p, RM),
            p,
        }
    }
}

impl Sub for Mp {
    type Output = Mp;
    fn sub(self, b: Mp) -> Mp {
        let p = self.p.max(b.p);
        Mp {
            v: self.v.sub(&b.v, p, RM),
            p,
        }
    }
}

impl Mul for Mp {
    type Output = Mp;
    fn mul(self, b: Mp) -> Mp {
        let p = self.p.max(b.p);
        Mp {
            v: self.v.mul(&b.v, p, RM),
            p,
        }
    }
}

impl Div for Mp {
    type Output = Mp;
    fn div(self, b: Mp) -> Mp {
        let p = self.p.max(b.p);
        Mp {
            v: self.v.div(&b.v, p, RM),
            p,
        }
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp {
            v: self.v.neg(),
            p: self.p,
        }
    }
}

impl PartialEq for Mp {
    fn eq(&self, other: &Mp) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Mp) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}
