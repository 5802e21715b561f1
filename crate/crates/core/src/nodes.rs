//! Interpolation nodes, and Chebyshev points of the second kind rounded so
//! that the sums the stable evaluator forms are exact.

use std::fmt;
use std::path::Path;

use crate::error::{domain, Error, Result};
use crate::fp_scaled::{frexp, ldexp, MAX_DEGREE};
use crate::hexfloat::{parse_lines, render_lines};
use crate::oracle::{Dd, Oracle};

const FILE_MAGIC: &str = "barystable-nodes";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    RoundedChebyshev,
    UserSupplied,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::RoundedChebyshev => "rounded-chebyshev",
            NodeKind::UserSupplied => "user-supplied",
        })
    }
}

/// Position of an evaluation point relative to the nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketIndex {
    /// `values[k] < t < values[k + 1]`.
    Interior(usize),
    /// `t == values[i]`.
    Node(usize),
}

/// Sorted nodes `-1 = x_0 < x_1 < ... < x_n = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    values: Vec<f64>,
    kind: NodeKind,
    exact_sums: bool,
}

impl NodeSet {
    /// Validates user supplied nodes and scans them for exact sums.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least two nodes, got {}",
                values.len()
            )));
        }
        if values[0] != -1.0 || values[values.len() - 1] != 1.0 {
            return Err(Error::InvalidInput(
                "nodes must start at -1 and end at 1".into(),
            ));
        }
        if let Some(i) = values
            .windows(2)
            .position(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidInput(format!(
                "nodes are not strictly increasing at index {}",
                i + 1
            )));
        }
        let exact_sums = exact_sum_failures(&values) == 0;
        Ok(NodeSet {
            values,
            kind: NodeKind::UserSupplied,
            exact_sums,
        })
    }

    /// Rounded Chebyshev points of degree `n`; see
    /// [`generate_rounded_chebyshev`].
    pub fn rounded_chebyshev(n: usize, oracle: &Oracle) -> Result<Self> {
        generate_rounded_chebyshev(n, oracle)
    }

    /// Number of nodes minus one.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    /// Whether adjacent sums, `2 + x_1` and `2 - x_{n-1}` are exact.
    pub fn has_exact_sums(&self) -> bool {
        self.exact_sums
    }

    /// Locates `t` by binary search.
    pub fn bracket(&self, t: f64) -> Result<BracketIndex> {
        bracket(t, self)
    }

    pub fn to_text(&self) -> String {
        render_lines(
            &format!("{FILE_MAGIC} v1 n={}", self.degree()),
            &self.values,
        )
    }

    /// Parses the node file format. The result is user supplied.
    pub fn from_text(text: &str, path: &Path) -> Result<Self> {
        let file = parse_lines(text, path, FILE_MAGIC)?;
        let n: usize = file
            .field("n")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Format {
                path: path.to_path_buf(),
                line: 1,
                message: "header lacks n=<degree>".into(),
            })?;
        if file.values.len() != n + 1 {
            return Err(Error::Format {
                path: path.to_path_buf(),
                line: file.values.len() + 1,
                message: format!("expected {} nodes, found {}", n + 1, file.values.len()),
            });
        }
        Self::from_values(file.values)
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

    /// `max_i |x_i + cos(iπ/n)| / |cos(iπ/n)|` against the oracle, skipping
    /// the node at zero.
    pub fn max_relative_deviation(&self, oracle: &Oracle) -> f64 {
        let n = self.degree();
        (0..=n)
            .filter(|&i| 2 * i != n)
            .map(|i| oracle.chebyshev_node(i, n).rel_error(self.values[i]))
            .fold(0.0, f64::max)
    }
}

/// Number of inexact sums among `x_i + x_{i+1}`, `2 + x_1` and `2 - x_{n-1}`.
pub fn exact_sum_failures(values: &[f64]) -> usize {
    let n = values.len() - 1;
    let inexact = |a: f64, b: f64| {
        let s = a + b;
        !(s - a == b && s - b == a)
    };
    let adjacent = values.windows(2).filter(|w| inexact(w[0], w[1])).count();
    adjacent + usize::from(inexact(2.0, values[1])) + usize::from(inexact(2.0, -values[n - 1]))
}

/// Chebyshev points of the second kind `-cos(iπ/n)`, rounded from a
/// reference sine so that the nodes are antisymmetric and every sum the
/// stable evaluator forms is exact.
///
/// Walking from the top node down, a node gets a significand that is a
/// multiple of four when it is the first one below the current power of two
/// (which is then halved), and an even significand otherwise.
pub fn generate_rounded_chebyshev(n: usize, oracle: &Oracle) -> Result<NodeSet> {
    if n == 0 || n > MAX_DEGREE {
        return Err(domain(format!(
            "degree must be in 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let mut values = vec![0.0; n + 1];
    values[0] = -1.0;
    values[n] = 1.0;
    let (mut lo, mut hi) = (0usize, n);
    let mut d = n as i64;
    let mut power = 1.0;
    loop {
        lo += 1;
        hi -= 1;
        if lo >= hi {
            break;
        }
        d -= 2;
        let (yh, yl) = oracle.sin_pi_frac_parts(d, 2 * n as i64);
        let y = Dd { hi: yh, lo: yl };
        let xn = if yh < power || (yh == power && yl < 0.0) {
            power /= 2.0;
            round_to_multiple_of_four(y)
        } else {
            round_to_even(y)
        };
        values[hi] = xn;
        values[lo] = -xn;
    }
    if lo == hi {
        values[lo] = 0.0;
    }
    if exact_sum_failures(&values) != 0 {
        return Err(Error::Invariant(format!(
            "rounded Chebyshev nodes of degree {n} have inexact sums"
        )));
    }
    Ok(NodeSet {
        values,
        kind: NodeKind::RoundedChebyshev,
        exact_sums: true,
    })
}

/// `(m, e)` with `m = floor(y · 2^(53 - e))` a 53-bit integer and
/// `y ∈ [2^(e-1), 2^e)`.
fn truncated_significand(y: Dd) -> (i64, i64) {
    assert!(y.hi > 0.0, "rounding needs a positive value");
    let (mh, mut e) = frexp(y.hi);
    if mh == 0.5 && y.lo < 0.0 {
        e -= 1;
    }
    let hs = ldexp(y.hi, 53 - e) as i64;
    (hs - i64::from(y.lo < 0.0), e)
}

/// The binary64 with an even 53-bit significand obtained by truncating `y`
/// and rounding an odd result up.
pub fn round_to_even(y: Dd) -> f64 {
    let (mut m, e) = truncated_significand(y);
    if m & 1 == 1 {
        m += 1;
    }
    ldexp(m as f64, e - 53)
}

/// The binary64 whose 53-bit significand is a multiple of four obtained by
/// truncating `y` and adjusting the last two bits: 1 goes down, 2 and 3 go up.
pub fn round_to_multiple_of_four(y: Dd) -> f64 {
    let (mut m, e) = truncated_significand(y);
    match m & 3 {
        1 => m -= 1,
        2 => m += 2,
        3 => m += 1,
        _ => {}
    }
    ldexp(m as f64, e - 53)
}

/// Binary search for `t` among the nodes.
pub fn bracket(t: f64, nodes: &NodeSet) -> Result<BracketIndex> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(domain(format!("evaluation point {t} is outside [-1, 1]")));
    }
    let xs = nodes.values();
    let k = xs.partition_point(|&x| x <= t) - 1;
    Ok(if xs[k] == t {
        BracketIndex::Node(k)
    } else {
        BracketIndex::Interior(k)
    })
}
