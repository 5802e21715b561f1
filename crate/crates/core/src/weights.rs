//! Barycentric weights: the simplified `γ`, the closed form `λ` for exact
//! Chebyshev points, and the first formula weights `ν` computed from the
//! actual nodes.

use std::fmt;
use std::path::Path;

use crate::error::{domain, Error, Result};
use crate::fp_scaled::{scaled_product_excluding, ScaledValue};
use crate::hexfloat::{parse_lines, render_lines};
use crate::nodes::NodeSet;

const FILE_MAGIC: &str = "barystable-weights";

/// `γ_i`: 1/2 at the ends, alternating ±1 in between, with `γ_i` of sign
/// `(-1)^i`.
#[inline]
pub fn gamma(i: usize, n: usize) -> f64 {
    let s = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    if i == 0 || i == n {
        0.5 * s
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightVariant {
    Simplified,
    Lambda,
    Nu,
}

impl WeightVariant {
    pub fn name(&self) -> &'static str {
        match self {
            WeightVariant::Simplified => "simplified",
            WeightVariant::Lambda => "lambda",
            WeightVariant::Nu => "nu",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            WeightVariant::Simplified,
            WeightVariant::Lambda,
            WeightVariant::Nu,
        ]
        .into_iter()
        .find(|v| v.name() == s)
    }
}

impl fmt::Display for WeightVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weights `w_0, ..., w_n`. Simplified weights are generated on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightScheme {
    variant: WeightVariant,
    n: usize,
    values: Option<Vec<f64>>,
}

impl WeightScheme {
    /// The simplified weights `γ`.
    pub fn simplified(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("weights need degree at least 1"));
        }
        Ok(WeightScheme {
            variant: WeightVariant::Simplified,
            n,
            values: None,
        })
    }

    /// `λ_i = ∏_{j≠i} 1/(x_i - x_j)` for exact Chebyshev points, from the
    /// closed form. Fails once `2^(n-2)/n` leaves the binary64 range.
    pub fn lambda_exact_chebyshev(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("weights need degree at least 1"));
        }
        let sign = |odd: bool| if odd { -1.0 } else { 1.0 };
        let scaled =
            |s: f64, e: i64| -> Result<f64> { ScaledValue::new(s / n as f64, e)?.to_f64() };
        let mut values = Vec::with_capacity(n + 1);
        values.push(scaled(sign(n % 2 == 1), n as i64 - 2)?);
        for i in 1..n {
            values.push(scaled(sign((n - i) % 2 == 1), n as i64 - 1)?);
        }
        values.push(scaled(1.0, n as i64 - 2)?);
        Ok(WeightScheme {
            variant: WeightVariant::Lambda,
            n,
            values: Some(values),
        })
    }

    /// `ν_i = (-1)^n n / (2^(n-1) ∏_{j≠i} (x_i - x_j))`, the weights for which
    /// the first formula reproduces the interpolating polynomial at the given
    /// nodes. Costs `Θ(n²)`.
    pub fn compute_nu(nodes: &NodeSet) -> Result<Self> {
        let xs = nodes.values();
        let n = nodes.degree();
        let num = if n.is_multiple_of(2) {
            n as f64
        } else {
            -(n as f64)
        };
        let values = (0..=n)
            .map(|i| {
                let d = scaled_product_excluding(xs, i);
                if d.is_zero() {
                    return Err(domain(format!("duplicate node at index {i}")));
                }
                d.recip_mul(num)?.to_f64()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightScheme {
            variant: WeightVariant::Nu,
            n,
            values: Some(values),
        })
    }

    /// Wraps explicit weight values.
    pub fn from_values(variant: WeightVariant, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("need at least two weights".into()));
        }
        if values.iter().any(|w| !w.is_finite() || *w == 0.0) {
            return Err(Error::InvalidInput(
                "weights must be finite and nonzero".into(),
            ));
        }
        if values.windows(2).any(|w| (w[0] > 0.0) == (w[1] > 0.0)) {
            return Err(Error::InvalidInput("weight signs must alternate".into()));
        }
        Ok(WeightScheme {
            variant,
            n: values.len() - 1,
            values: Some(values),
        })
    }

    pub fn variant(&self) -> WeightVariant {
        self.variant
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        match &self.values {
            Some(v) => v[i],
            None => gamma(i, self.n),
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.weight(i)).collect()
    }

    pub fn to_text(&self) -> String {
        render_lines(
            &format!("{FILE_MAGIC} v1 variant={} n={}", self.variant, self.n),
            &self.to_vec(),
        )
    }

    pub fn from_text(text: &str, path: &Path) -> Result<Self> {
        let file = parse_lines(text, path, FILE_MAGIC)?;
        let bad = |message: String| Error::Format {
            path: path.to_path_buf(),
            line: 1,
            message,
        };
        let variant = file
            .field("variant")
            .and_then(WeightVariant::parse)
            .ok_or_else(|| bad("header lacks a known variant=<name>".into()))?;
        let n: usize = file
            .field("n")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("header lacks n=<degree>".into()))?;
        if file.values.len() != n + 1 {
            return Err(bad(format!(
                "expected {} weights, found {}",
                n + 1,
                file.values.len()
            )));
        }
        Self::from_values(variant, file.values)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text, path)
    }
}
