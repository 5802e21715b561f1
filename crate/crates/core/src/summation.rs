//! Summation strategies and their error model constants.
//!
//! A method with constant `σ_n` returns `Σ (1 + δ_i σ_n ε) a_i` with
//! `|δ_i| <= 1` for a sum of `n + 1` terms.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummationMethod {
    /// Left-to-right recursive summation.
    Naive,
    /// Kahan's compensated summation.
    Kahan,
}

impl SummationMethod {
    pub const ALL: [SummationMethod; 2] = [SummationMethod::Naive, SummationMethod::Kahan];

    /// The model constant `σ_n` for `n + 1` terms.
    pub fn sigma(&self, n: usize) -> f64 {
        match self {
            SummationMethod::Naive => n.max(1) as f64,
            SummationMethod::Kahan => 2.01,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SummationMethod::Naive => "naive",
            SummationMethod::Kahan => "kahan",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn accumulator(&self) -> Accumulator {
        Accumulator {
            method: *self,
            sum: 0.0,
            comp: 0.0,
        }
    }

    /// Sums `values` in order.
    pub fn sum<I: IntoIterator<Item = f64>>(&self, values: I) -> f64 {
        let mut acc = self.accumulator();
        for v in values {
            acc.add(v);
        }
        acc.value()
    }
}

impl fmt::Display for SummationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Streaming sum for one of the [`SummationMethod`]s.
#[derive(Clone, Copy, Debug)]
pub struct Accumulator {
    method: SummationMethod,
    sum: f64,
    comp: f64,
}

impl Accumulator {
    #[inline]
    pub fn add(&mut self, x: f64) {
        match self.method {
            SummationMethod::Naive => self.sum += x,
            SummationMethod::Kahan => {
                let y = x - self.comp;
                let t = self.sum + y;
                self.comp = (t - self.sum) - y;
                self.sum = t;
            }
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// `sum(values, method)`.
pub fn sum(values: &[f64], method: SummationMethod) -> f64 {
    method.sum(values.iter().copied())
}
