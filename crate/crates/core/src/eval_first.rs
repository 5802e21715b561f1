//! The first barycentric formula
//! `a(t) = ((-1)^n / n) · 2^(n-1) ∏ (t - x_i) · Σ w_i f_i / (t - x_i)`.
//!
//! With the weights `ν` computed from the actual nodes this is the
//! interpolating polynomial. With the simplified weights it only agrees with
//! the second formula for exact Chebyshev points, and node rounding errors
//! are amplified by a factor that grows like `n²` near the ends of the
//! interval.

use crate::error::{Error, Result};
use crate::eval_second::{check_samples, SampleVector};
use crate::fp_scaled::{scaled_product, ScaledValue};
use crate::nodes::{BracketIndex, NodeSet};
use crate::summation::SummationMethod;
use crate::weights::{WeightScheme, WeightVariant};

pub fn eval_first(
    t: f64,
    nodes: &NodeSet,
    f: &SampleVector,
    w: &WeightScheme,
    method: SummationMethod,
) -> Result<f64> {
    check_samples(nodes, f)?;
    if w.variant() == WeightVariant::Lambda {
        return Err(Error::Precondition(
            "the first formula takes simplified or ν weights".into(),
        ));
    }
    let n = nodes.degree();
    if w.degree() != n {
        return Err(Error::InvalidInput(format!(
            "weights of degree {} for nodes of degree {n}",
            w.degree()
        )));
    }
    if let BracketIndex::Node(i) = nodes.bracket(t)? {
        return Ok(f.values()[i]);
    }
    let mut s = method.accumulator();
    for (i, (&x, &fi)) in nodes.values().iter().zip(f.values()).enumerate() {
        s.add((w.weight(i) * fi) / (t - x));
    }
    let prod = scaled_product(t, nodes)?.mul_f64(s.value())?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let a = ScaledValue::new(sign * prod.significand() / n as f64, prod.exponent())?;
    a.to_f64()
}
