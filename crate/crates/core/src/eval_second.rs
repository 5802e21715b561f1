//! The second barycentric formula `b(t) = p(t) / q(t)` with
//! `p(t) = Σ w_i f_i / (t - x_i)` and `q(t) = Σ w_i / (t - x_i)`.
//!
//! [`eval_naive`] sums both series directly. [`eval_stable`] uses the
//! simplified weights and regroups both series into sums of positive
//! coefficients `q_k` times bounded values `p_k`: the terms for indices `0`
//! and `n` (or `0, 1` and `n - 1, n`) are merged into boundary terms, and the
//! remaining indices are paired off so that
//!
//! ```text
//! γ_{j-1} / (t - x_{j-1}) + γ_j / (t - x_j) = ±ξ_j,
//! ξ_j = (x_j - x_{j-1}) / ((t - x_j)(t - x_{j-1})) > 0,
//! ```
//!
//! with the pairing chosen so that no pair straddles `t`. Numerator and
//! denominator share the coefficients, so `b̂` is a weighted average of the
//! computed `p_k`.

use std::path::Path;

use crate::error::{domain, Error, Result};
use crate::hexfloat::{parse_lines, render_lines};
use crate::nodes::{BracketIndex, NodeSet};
use crate::summation::SummationMethod;
use crate::weights::{gamma, WeightScheme};

/// Samples `f_0, ..., f_n` of the interpolated function.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleVector {
    values: Vec<f64>,
}

impl SampleVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("empty sample vector".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!("sample {i} is not finite")));
        }
        Ok(SampleVector { values })
    }

    /// `f(x_i)` at every node.
    pub fn from_fn(nodes: &NodeSet, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(nodes.values().iter().map(|&x| f(x)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `max_i |f_i|`.
    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn to_text(&self) -> String {
        render_lines(
            &format!("{SAMPLES_MAGIC} v1 n={}", self.values.len() - 1),
            &self.values,
        )
    }

    pub fn from_text(text: &str, path: &Path) -> Result<Self> {
        let file = parse_lines(text, path, SAMPLES_MAGIC)?;
        let bad = |line: usize, message: String| Error::Format {
            path: path.to_path_buf(),
            line,
            message,
        };
        let n: usize = file
            .field("n")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(1, "header lacks n=<degree>".into()))?;
        if file.values.len() != n + 1 {
            return Err(bad(
                file.values.len() + 1,
                format!("expected {} samples, found {}", n + 1, file.values.len()),
            ));
        }
        Self::new(file.values)
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

const SAMPLES_MAGIC: &str = "barystable-samples";

pub(crate) fn check_samples(nodes: &NodeSet, f: &SampleVector) -> Result<()> {
    if f.len() != nodes.len() {
        return Err(Error::InvalidInput(format!(
            "{} samples for {} nodes",
            f.len(),
            nodes.len()
        )));
    }
    Ok(())
}

/// The textbook second formula with arbitrary weights.
pub fn eval_naive(
    t: f64,
    nodes: &NodeSet,
    f: &SampleVector,
    w: &WeightScheme,
    method: SummationMethod,
) -> Result<f64> {
    check_samples(nodes, f)?;
    if w.degree() != nodes.degree() {
        return Err(Error::InvalidInput(format!(
            "weights of degree {} for nodes of degree {}",
            w.degree(),
            nodes.degree()
        )));
    }
    if let BracketIndex::Node(i) = nodes.bracket(t)? {
        return Ok(f.values()[i]);
    }
    let mut p = method.accumulator();
    let mut q = method.accumulator();
    for (i, (&x, &fi)) in nodes.values().iter().zip(f.values()).enumerate() {
        let wi = w.weight(i);
        let d = t - x;
        p.add((wi * fi) / d);
        q.add(wi / d);
    }
    let q = q.value();
    if q == 0.0 || !q.is_finite() {
        return Err(Error::Evaluation(format!(
            "denominator q({t}) evaluated to {q}"
        )));
    }
    Ok(p.value() / q)
}

/// `θ(u, v, x, y) = (2(1 + x)u - (x - y)v) / ((2 + y) + x)`, evaluated in
/// the order of the parentheses.
#[inline]
pub fn theta(u: f64, v: f64, x: f64, y: f64) -> f64 {
    (2.0 * (1.0 + x) * u - (x - y) * v) / ((2.0 + y) + x)
}

/// `φ(u, v, x, y, z, w) = (u + v)/2 + (x - y)((u - v)/(z - w))`, evaluated in
/// the order of the parentheses. `y` should be the exact midpoint of `z`
/// and `w`.
#[inline]
pub fn phi(u: f64, v: f64, x: f64, y: f64, z: f64, w: f64) -> f64 {
    (u + v) / 2.0 + (x - y) * ((u - v) / (z - w))
}

/// [`phi`] with the degenerate interval `z == w` rejected.
pub fn phi_checked(u: f64, v: f64, x: f64, y: f64, z: f64, w: f64) -> Result<f64> {
    if z == w {
        return Err(domain("φ needs z != w"));
    }
    Ok(phi(u, v, x, y, z, w))
}

/// `η(y, z) = ((2 + z) + y) / (2(y - z)(1 + y))`, times `scale`.
#[inline]
fn eta(y: f64, z: f64, scale: f64) -> f64 {
    (((2.0 + z) + y) * scale) / (2.0 * (y - z) * (1.0 + y))
}

/// Boundary term covering index 0 (`α`) or indices 0 and 1 (`β`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerTerm {
    Alpha,
    Beta,
}

/// Boundary term covering index `n` (`ω`) or indices `n - 1` and `n` (`ψ`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperTerm {
    Omega,
    Psi,
}

/// How the indices are grouped for `t ∈ (x_k, x_{k+1})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Layout {
    pub n: usize,
    pub k: usize,
    /// `+1` for even `k`, `-1` for odd `k`.
    pub sign: f64,
    pub lower: LowerTerm,
    pub upper: UpperTerm,
    /// Interior pairs are `(j - 1, j)` for `j = first, first + 2, ...`.
    pub first: usize,
    pub pairs: usize,
}

impl Layout {
    pub fn new(n: usize, k: usize) -> Layout {
        debug_assert!(k < n);
        let (lower, covered, sign) = if k.is_multiple_of(2) {
            (LowerTerm::Alpha, 1, 1.0)
        } else {
            (LowerTerm::Beta, 2, -1.0)
        };
        let rest = n + 1 - covered;
        let (upper, pairs) = if rest % 2 == 1 {
            (UpperTerm::Omega, (rest - 1) / 2)
        } else {
            (UpperTerm::Psi, (rest - 2) / 2)
        };
        Layout {
            n,
            k,
            sign,
            lower,
            upper,
            first: covered + 1,
            pairs,
        }
    }

    /// Number of coefficients `q_k`, at most `⌊(n + 1)/2⌋ + 1`.
    pub fn term_count(&self) -> usize {
        self.pairs + 2
    }

    /// Indices `j` of the interior coefficients `ξ_j`.
    pub fn interior(&self) -> impl Iterator<Item = usize> {
        let first = self.first;
        (0..self.pairs).map(move |i| first + 2 * i)
    }
}

/// Computes every `(q_k, p_k)` in summation order and hands it to `emit`.
/// `p_k` is 0 when `f` is `None`. All coefficients carry the extra factor
/// `scale`, a power of two.
#[inline]
fn for_each_term(
    t: f64,
    xs: &[f64],
    f: Option<&[f64]>,
    layout: &Layout,
    scale: f64,
    mut emit: impl FnMut(f64, f64),
) -> Result<()> {
    let n = layout.n;
    let fv = |i: usize| f.map_or(0.0, |f| f[i]);
    let check = |q: f64| -> Result<f64> {
        if q > 0.0 {
            Ok(q)
        } else {
            Err(Error::Invariant(format!(
                "nonpositive coefficient {q:e} at t = {t:e}"
            )))
        }
    };

    match layout.lower {
        LowerTerm::Alpha => emit(check(scale / (2.0 * (1.0 + t)))?, fv(0)),
        LowerTerm::Beta => {
            let q = check(eta(t, xs[1], scale))?;
            let p = if f.is_some() {
                theta(fv(1), fv(0), t, xs[1])
            } else {
                0.0
            };
            emit(q, p);
        }
    }
    for j in layout.interior() {
        let (xj, xm) = (xs[j], xs[j - 1]);
        let q = check((((xj - xm) * scale) / (t - xj)) / (t - xm))?;
        let p = if f.is_some() {
            phi(fv(j), fv(j - 1), t, (xj + xm) / 2.0, xj, xm)
        } else {
            0.0
        };
        emit(q, p);
    }
    match layout.upper {
        UpperTerm::Omega => emit(check(scale / (2.0 * (1.0 - t)))?, fv(n)),
        UpperTerm::Psi => {
            let q = check(eta(-t, -xs[n - 1], scale))?;
            let p = if f.is_some() {
                theta(fv(n - 1), fv(n), -t, -xs[n - 1])
            } else {
                0.0
            };
            emit(q, p);
        }
    }
    Ok(())
}

/// Coefficients of the positive-term decomposition at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct TermDecomposition {
    pub layout: Layout,
    /// `q₋, ξ_{j_1}, ..., ξ_{j_l}, q₊`.
    pub q: Vec<f64>,
    /// The paired `p₋, φ_{j_1}, ..., φ_{j_l}, p₊`; empty from [`q_terms`].
    pub p: Vec<f64>,
}

impl TermDecomposition {
    /// `q(t) = s Σ q_k`.
    pub fn q_value(&self, method: SummationMethod) -> f64 {
        self.layout.sign * method.sum(self.q.iter().copied())
    }

    /// `p(t) = s Σ q_k p_k`.
    pub fn p_value(&self, method: SummationMethod) -> f64 {
        self.layout.sign * method.sum(self.q.iter().zip(&self.p).map(|(q, p)| q * p))
    }

    /// Interior indices `j` in the order of `q[1..]`.
    pub fn interior_indices(&self) -> Vec<usize> {
        self.layout.interior().collect()
    }
}

fn interior_bracket(t: f64, nodes: &NodeSet) -> Result<usize> {
    match nodes.bracket(t)? {
        BracketIndex::Interior(k) => Ok(k),
        BracketIndex::Node(i) => Err(domain(format!("t = {t} is node {i}"))),
    }
}

fn require_exact_sums(nodes: &NodeSet) -> Result<()> {
    if !nodes.has_exact_sums() {
        return Err(Error::Precondition(
            "the stable evaluator needs nodes with exact adjacent sums".into(),
        ));
    }
    Ok(())
}

fn decompose(t: f64, nodes: &NodeSet, f: Option<&[f64]>) -> Result<TermDecomposition> {
    require_exact_sums(nodes)?;
    let k = interior_bracket(t, nodes)?;
    let layout = Layout::new(nodes.degree(), k);
    let mut q = Vec::with_capacity(layout.term_count());
    let mut p = Vec::with_capacity(if f.is_some() { layout.term_count() } else { 0 });
    for_each_term(t, nodes.values(), f, &layout, 1.0, |qk, pk| {
        q.push(qk);
        if f.is_some() {
            p.push(pk);
        }
    })?;
    Ok(TermDecomposition { layout, q, p })
}

/// The denominator coefficients at a point strictly between two nodes.
pub fn q_terms(t: f64, nodes: &NodeSet) -> Result<TermDecomposition> {
    decompose(t, nodes, None)
}

/// The denominator coefficients together with the paired numerator values.
pub fn p_terms(t: f64, nodes: &NodeSet, f: &SampleVector) -> Result<TermDecomposition> {
    check_samples(nodes, f)?;
    decompose(t, nodes, Some(f.values()))
}

/// Scale applied to all coefficients when the unscaled sums overflow, which
/// can only happen for `t` extremely close to a node at zero.
const RESCALE: f64 = f64::from_bits((1023 - 600) << 52);

/// Stable evaluation of the second formula with simplified weights.
pub fn eval_stable(
    t: f64,
    nodes: &NodeSet,
    f: &SampleVector,
    method: SummationMethod,
) -> Result<f64> {
    require_exact_sums(nodes)?;
    check_samples(nodes, f)?;
    let k = match nodes.bracket(t)? {
        BracketIndex::Node(i) => return Ok(f.values()[i]),
        BracketIndex::Interior(k) => k,
    };
    let layout = Layout::new(nodes.degree(), k);
    let (p, q) = stable_sums(t, nodes.values(), f.values(), &layout, method, 1.0)?;
    let (p, q) = if p.is_finite() && q.is_finite() {
        (p, q)
    } else {
        stable_sums(t, nodes.values(), f.values(), &layout, method, RESCALE)?
    };
    Ok((layout.sign * p) / (layout.sign * q))
}

fn stable_sums(
    t: f64,
    xs: &[f64],
    f: &[f64],
    layout: &Layout,
    method: SummationMethod,
    scale: f64,
) -> Result<(f64, f64)> {
    let mut p = method.accumulator();
    let mut q = method.accumulator();
    for_each_term(t, xs, Some(f), layout, scale, |qk, pk| {
        q.add(qk);
        p.add(qk * pk);
    })?;
    Ok((p.value(), q.value()))
}

/// Second formula with simplified weights, the numerator summed directly and
/// the denominator from the positive-term decomposition. Needs only
/// `2 + x_1` and `2 - x_{n-1}` to be exact.
pub fn eval_stable_denominator(
    t: f64,
    nodes: &NodeSet,
    f: &SampleVector,
    method: SummationMethod,
) -> Result<f64> {
    check_samples(nodes, f)?;
    let xs = nodes.values();
    let n = nodes.degree();
    if n >= 2 && (2.0 + xs[1] - 2.0 != xs[1] || 2.0 - xs[n - 1] - 2.0 != -xs[n - 1]) {
        return Err(Error::Precondition(
            "2 + x_1 and 2 - x_(n-1) must be exact".into(),
        ));
    }
    let k = match nodes.bracket(t)? {
        BracketIndex::Node(i) => return Ok(f.values()[i]),
        BracketIndex::Interior(k) => k,
    };
    let layout = Layout::new(n, k);
    let mut q = method.accumulator();
    for_each_term(t, xs, None, &layout, 1.0, |qk, _| q.add(qk))?;
    let mut p = method.accumulator();
    for (i, (&x, &fi)) in xs.iter().zip(f.values()).enumerate() {
        p.add((gamma(i, n) * fi) / (t - x));
    }
    Ok(p.value() / (layout.sign * q.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use crate::EPS;
    use proptest::prelude::*;

    fn three() -> NodeSet {
        NodeSet::from_values(vec![-1.0, 0.0, 1.0]).unwrap()
    }

    fn bump() -> SampleVector {
        SampleVector::new(vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn sample_file_round_trip() {
        let f = SampleVector::new(vec![0.1, -2.5, 1e-300]).unwrap();
        let text = f.to_text();
        assert!(text.starts_with("# barystable-samples v1 n=2\n"));
        assert_eq!(SampleVector::from_text(&text, Path::new("mem")).unwrap(), f);
        let short = text.lines().take(3).collect::<Vec<_>>().join("\n");
        assert!(matches!(
            SampleVector::from_text(&short, Path::new("mem")),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn naive_examples() {
        let nodes = three();
        let w = WeightScheme::simplified(2).unwrap();
        let m = SummationMethod::Naive;
        assert_eq!(eval_naive(0.0, &nodes, &bump(), &w, m).unwrap(), 1.0);
        let ones = SampleVector::new(vec![1.0; 3]).unwrap();
        for t in [-0.9, -0.3, 0.2, 0.77] {
            let b = eval_naive(t, &nodes, &ones, &w, m).unwrap();
            assert!((b - 1.0).abs() <= 4.0 * EPS);
        }
        let b = eval_naive(-0.5, &nodes, &bump(), &w, m).unwrap();
        assert!((b - 0.75).abs() <= 1e-15);
        assert!(matches!(
            eval_naive(1.5, &nodes, &bump(), &w, m),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let nodes = three();
        let d = q_terms(-0.5, &nodes).unwrap();
        assert_eq!(d.layout.lower, LowerTerm::Alpha);
        assert_eq!(d.layout.upper, UpperTerm::Psi);
        assert_eq!(d.layout.sign, 1.0);
        assert_eq!(d.q[0], 1.0);
        assert!((d.q[1] - 5.0 / 3.0).abs() <= 2.0 * EPS);
        assert!((d.q_value(SummationMethod::Naive) - 8.0 / 3.0).abs() <= 4.0 * EPS);

        let d = q_terms(0.5, &nodes).unwrap();
        assert_eq!(
            (d.layout.lower, d.layout.upper),
            (LowerTerm::Beta, UpperTerm::Omega)
        );
        assert_eq!(d.layout.sign, -1.0);
        assert!((d.q[0] - 5.0 / 3.0).abs() <= 2.0 * EPS);
        assert_eq!(d.q[1], 1.0);
        assert!((d.q_value(SummationMethod::Naive) + 8.0 / 3.0).abs() <= 4.0 * EPS);

        let d = p_terms(-0.5, &nodes, &bump()).unwrap();
        assert_eq!(d.p[0], 0.0);
        assert!((d.p[1] - 1.2).abs() <= 2.0 * EPS);
        let p = d.p_value(SummationMethod::Naive);
        assert!((p - 2.0).abs() <= 4.0 * EPS);
        assert!(matches!(q_terms(0.0, &nodes), Err(Error::Domain(_))));
    }

    #[test]
    fn layout_matches_parity_table() {
        // k even, n = 2l
        let l = Layout::new(8, 2);
        assert_eq!(
            (l.lower, l.upper, l.sign),
            (LowerTerm::Alpha, UpperTerm::Psi, 1.0)
        );
        assert_eq!(l.interior().collect::<Vec<_>>(), [2, 4, 6]);
        // k even, n = 2l + 1
        let l = Layout::new(9, 4);
        assert_eq!((l.lower, l.upper), (LowerTerm::Alpha, UpperTerm::Omega));
        assert_eq!(l.interior().collect::<Vec<_>>(), [2, 4, 6, 8]);
        // k odd, n = 2l
        let l = Layout::new(8, 3);
        assert_eq!(
            (l.lower, l.upper, l.sign),
            (LowerTerm::Beta, UpperTerm::Omega, -1.0)
        );
        assert_eq!(l.interior().collect::<Vec<_>>(), [3, 5, 7]);
        // k odd, n = 2l + 1
        let l = Layout::new(9, 1);
        assert_eq!((l.lower, l.upper), (LowerTerm::Beta, UpperTerm::Psi));
        assert_eq!(l.interior().collect::<Vec<_>>(), [3, 5, 7]);
        // degree one
        let l = Layout::new(1, 0);
        assert_eq!(
            (l.lower, l.upper, l.pairs),
            (LowerTerm::Alpha, UpperTerm::Omega, 0)
        );
        for n in 1..40 {
            for k in 0..n {
                assert!(Layout::new(n, k).term_count() <= n.div_ceil(2) + 1);
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(1.0, 0.0, 0.5, 0.0), 1.2);
        for &(u, v, y) in &[(0.3, -7.0, 0.25), (-2.0, 5.0, -0.75)] {
            assert_eq!(theta(u, v, y, y), u);
        }
        assert_eq!(theta(0.625, 0.625, 0.5, -0.25), 0.625);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1.0, 0.0, 0.5, 0.25, 0.5, 0.0), 1.0);
        assert_eq!(phi(0.3, 0.3, 0.9, 0.1, 0.5, -0.3), 0.3);
        assert_eq!(phi(0.5, 0.25, 0.1, 0.1, 0.2, 0.0), 0.375);
        assert!(phi_checked(1.0, 0.0, 0.5, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn stable_examples() {
        let nodes = three();
        let m = SummationMethod::Naive;
        assert_eq!(eval_stable(0.0, &nodes, &bump(), m).unwrap(), 1.0);
        let b = eval_stable(-0.5, &nodes, &bump(), m).unwrap();
        assert!((b - 0.75).abs() <= 2.0 * EPS);
        let user = NodeSet::from_values(vec![-1.0, 0.1, 1.0]).unwrap();
        let err = eval_stable(0.5, &user, &bump(), m);
        assert!(matches!(err, Err(Error::Precondition(_))));
        let short = SampleVector::new(vec![1.0]).unwrap();
        assert!(eval_stable(0.5, &nodes, &short, m).is_err());
        assert!(SampleVector::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn stable_survives_points_next_to_a_zero_node() {
        let nodes = NodeSet::rounded_chebyshev(10, &Oracle::default()).unwrap();
        let f = SampleVector::from_fn(&nodes, |x| x.cos()).unwrap();
        for t in [f64::from_bits(1), 1e-310, -1e-300, 1e-200] {
            for m in SummationMethod::ALL {
                let b = eval_stable(t, &nodes, &f, m).unwrap();
                assert!((b - 1.0).abs() <= 1e-15, "t = {t:e}: {b}");
            }
        }
    }

    #[test]
    fn constant_reproduction() {
        let o = Oracle::default();
        for n in [1, 2, 3, 10, 101] {
            let nodes = NodeSet::rounded_chebyshev(n, &o).unwrap();
            let f = SampleVector::new(vec![1.0; n + 1]).unwrap();
            for i in 0..200 {
                let t = -1.0 + 2.0 * (i as f64 + 0.37) / 200.0;
                for m in SummationMethod::ALL {
                    let b = eval_stable(t, &nodes, &f, m).unwrap();
                    assert!((b - 1.0).abs() <= 8.0 * EPS, "n={n} t={t}: {b}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn decomposition_matches_naive(n in 1usize..200, u in 0.0f64..1.0) {
            let nodes = NodeSet::rounded_chebyshev(n, &Oracle::default()).unwrap();
            let t = -1.0 + 2.0 * u;
            prop_assume!(matches!(nodes.bracket(t).unwrap(), BracketIndex::Interior(_)));
            let d = q_terms(t, &nodes).unwrap();
            prop_assert!(d.q.iter().all(|&q| q > 0.0));
            let w = WeightScheme::simplified(n).unwrap();
            let q_naive = SummationMethod::Kahan.sum(
                nodes.values().iter().enumerate().map(|(i, &x)| w.weight(i) / (t - x)));
            let q = d.q_value(SummationMethod::Kahan);
            prop_assert!((q - q_naive).abs() <= 1e-11 * q_naive.abs());
        }

        #[test]
        fn stable_denominator_variant_agrees(n in 2usize..100, u in 0.0f64..1.0) {
            let nodes = NodeSet::rounded_chebyshev(n, &Oracle::default()).unwrap();
            let f = SampleVector::from_fn(&nodes, |x| (2.0 * x).sin()).unwrap();
            let t = -1.0 + 2.0 * u;
            let a = eval_stable(t, &nodes, &f, SummationMethod::Kahan).unwrap();
            let b = eval_stable_denominator(t, &nodes, &f, SummationMethod::Kahan).unwrap();
            prop_assert!((a - b).abs() <= 1e-13);
        }
    }
}
