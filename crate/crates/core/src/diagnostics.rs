//! Error observables: divided differences, the a priori error bounds of the
//! second formula, and the node-rounding diagnostics `α_{n,k}`, `δ_{n,k}`,
//! `s_{n,k}` and `σ(s_{n,k})` that explain the instability of the first
//! formula near a node.
//!
//! Everything here is evaluated in oracle precision and rounded once.

use crate::error::{domain, Error, Result};
use crate::eval_second::{check_samples, SampleVector};
use crate::nodes::NodeSet;
use crate::oracle::{chebyshev_in, dispatch, HiReal, Oracle};
use crate::weights::gamma;
use crate::EPS;

/// `Δf_i = (f_i - f_{i-1}) / (x_i - x_{i-1})` for `i = 1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DividedDifferences {
    pub values: Vec<f64>,
    pub norm: f64,
}

pub fn divided_differences(
    nodes: &NodeSet,
    f: &SampleVector,
    oracle: &Oracle,
) -> Result<DividedDifferences> {
    check_samples(nodes, f)?;
    let (xs, fs) = (nodes.values(), f.values());
    let values: Vec<f64> = dispatch!(oracle, R => (1..xs.len())
        .map(|i| {
            let num = <R as HiReal>::from_diff(fs[i], fs[i - 1], oracle.bits);
            let den = <R as HiReal>::from_diff(xs[i], xs[i - 1], oracle.bits);
            (num / den).to_f64()
        })
        .collect());
    let norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(DividedDifferences { values, norm })
}

/// Absolute forward error bound of the stable evaluator:
/// `(45.6‖f‖ + 37.4‖Δf‖ + 6.2‖f‖σ_m + 4.1‖Δf‖σ_m) ε`.
pub fn forward_bound_from_norms(f_norm: f64, df_norm: f64, sigma_m: f64) -> f64 {
    (45.6 * f_norm + 37.4 * df_norm + 6.2 * f_norm * sigma_m + 4.1 * df_norm * sigma_m) * EPS
}

/// [`forward_bound_from_norms`] with `‖Δf‖` measured from the data.
pub fn forward_bound(
    f: &SampleVector,
    nodes: &NodeSet,
    sigma_m: f64,
    oracle: &Oracle,
) -> Result<f64> {
    let df = divided_differences(nodes, f, oracle)?;
    Ok(forward_bound_from_norms(f.norm_inf(), df.norm, sigma_m))
}

/// Per-sample backward error bound of the stable evaluator:
/// `(16.6 + 2.1σ_m) max{|f_{i-1}| + |f_i|, |f_i| + |f_{i+1}|} ε` with
/// `f_{-1} = f_{n+1} = 0`.
pub fn backward_bound_per_index(f: &SampleVector, sigma_m: f64) -> Vec<f64> {
    let fs = f.values();
    let at = |i: usize| fs.get(i).map_or(0.0, |v| v.abs());
    let c = (16.6 + 2.1 * sigma_m) * EPS;
    (0..fs.len())
        .map(|i| {
            let left = if i == 0 { 0.0 } else { at(i - 1) };
            c * (at(i) + left).max(at(i) + at(i + 1))
        })
        .collect()
}

/// Per-sample backward error bound of the naive numerator over the
/// decomposed denominator: `(8.1 + 1.1σ_n + 1.1σ_m)|f_i| ε`.
pub fn backward_bound_decomposed_denominator(
    f: &SampleVector,
    sigma_n: f64,
    sigma_m: f64,
) -> Vec<f64> {
    let c = (8.1 + 1.1 * sigma_n + 1.1 * sigma_m) * EPS;
    f.values().iter().map(|v| c * v.abs()).collect()
}

/// Whether `computed` is the exact interpolant at `t` of samples within
/// `radius[i]` of `f_i`. Returns `|b q - p| / Σ |γ_i| r_i / |t - x_i|`, so
/// a value at most 1 means some admissible perturbation exists.
#[allow(clippy::clone_on_copy)]
pub fn backward_residual_ratio(
    t: f64,
    computed: f64,
    nodes: &NodeSet,
    f: &SampleVector,
    radius: &[f64],
    oracle: &Oracle,
) -> Result<f64> {
    check_samples(nodes, f)?;
    let (xs, fs) = (nodes.values(), f.values());
    if radius.len() != xs.len() {
        return Err(Error::InvalidInput(format!(
            "{} radii for {} nodes",
            radius.len(),
            xs.len()
        )));
    }
    if !computed.is_finite() {
        return Ok(f64::INFINITY);
    }
    if let Some(k) = xs.iter().position(|&x| x == t) {
        let r = (computed - fs[k]).abs();
        return Ok(if r == 0.0 { 0.0 } else { r / radius[k] });
    }
    let n = xs.len() - 1;
    let bits = oracle.bits;
    Ok(dispatch!(oracle, R => {
        let mut resid = R::zero(bits);
        let mut cap = R::zero(bits);
        for i in 0..=n {
            let g = gamma(i, n);
            let d = <R as HiReal>::from_diff(t, xs[i], bits);
            resid = resid + <R as HiReal>::from_diff(computed, fs[i], bits).mul_f64(g) / d.clone();
            cap = cap + R::from_f64(radius[i] * g.abs(), bits) / d.abs();
        }
        let r = resid.abs();
        if r.is_zero() {
            0.0
        } else {
            (r / cap).to_f64()
        }
    }))
}

/// `‖f'‖ + 2‖δ‖ / min gap`, the bound on `‖Δf‖` for samples
/// `f_i = f(x_i) + δ_i` of a differentiable `f`.
pub fn divided_difference_bound(nodes: &NodeSet, fprime_norm: f64, delta_norm: f64) -> f64 {
    let gap = nodes
        .values()
        .windows(2)
        .fold(f64::INFINITY, |g, w| g.min(w[1] - w[0]));
    fprime_norm + 2.0 * delta_norm / gap
}

/// The node-rounding diagnostics at `(n, k, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticReport {
    pub n: usize,
    pub k: usize,
    pub t: f64,
    pub alpha_nk: f64,
    /// `δ_{n,k}(t)`.
    pub delta_nk: f64,
    /// `δ_{n,k}(x̂_k)`.
    pub delta_nk_node: f64,
    pub s_nk: f64,
    pub s_nk_over_n2eps: f64,
    pub sigma_estimate: f64,
}

/// Reference nodes the rounded ones are measured against.
#[derive(Clone, Copy, Debug)]
pub enum Reference<'a> {
    /// `x_i = -cos(iπ/n)` to oracle precision.
    Chebyshev,
    /// Explicit binary64 values, taken as exact.
    Explicit(&'a [f64]),
}

fn reference_in<R: HiReal>(reference: Reference, n: usize, bits: usize) -> Result<Vec<R>> {
    match reference {
        Reference::Chebyshev => Ok((0..=n).map(|i| chebyshev_in::<R>(i, n, bits)).collect()),
        Reference::Explicit(xs) if xs.len() == n + 1 => {
            Ok(xs.iter().map(|&x| R::from_f64(x, bits)).collect())
        }
        Reference::Explicit(xs) => Err(Error::InvalidInput(format!(
            "{} reference nodes for degree {n}",
            xs.len()
        ))),
    }
}

fn check_index(nodes: &NodeSet, k: usize) -> Result<()> {
    let n = nodes.degree();
    if k == 0 || k >= n {
        return Err(domain(format!("node index {k} outside 1..{n}")));
    }
    Ok(())
}

fn alpha_delta_in<R: HiReal>(xh: &[f64], x: &[R], k: usize, t: f64, bits: usize) -> (R, R) {
    let mut alpha = R::zero(bits);
    let mut delta = R::zero(bits);
    let tk = R::from_f64(t, bits) - x[k].clone();
    for i in (0..x.len()).filter(|&i| i != k) {
        let gap = x[i].clone() - x[k].clone();
        alpha = alpha + ((R::from_f64(xh[i], bits) - x[i].clone()) / gap.clone()).abs();
        delta = delta + (tk.clone() / gap).abs();
    }
    (alpha, delta)
}

fn s_nk_in<R: HiReal>(xh: &[f64], x: &[R], f: &[f64], k: usize, bits: usize) -> R {
    let n = x.len() - 1;
    let gk = gamma(k, n) * f[k];
    let dk = R::from_f64(xh[k], bits) - x[k].clone();
    let mut acc = R::zero(bits);
    for i in (0..=n).filter(|&i| i != k) {
        let di = R::from_f64(xh[i], bits) - x[i].clone();
        let gi = gamma(i, n) * f[i];
        let num = di.mul_f64(gk) + dk.clone().mul_f64(gi);
        acc = acc + num / (x[k].clone() - x[i].clone());
    }
    acc / R::from_f64(gk, bits)
}

fn sigma_in<R: HiReal>(x: &[R], f: &[f64], k: usize, bits: usize) -> R {
    let n = x.len() - 1;
    let gk = R::from_f64(gamma(k, n) * f[k], bits);
    let mut squares = R::zero(bits);
    let mut cross = R::zero(bits);
    for i in (0..=n).filter(|&i| i != k) {
        let gap = x[k].clone() - x[i].clone();
        let r = x[i].clone() / gap.clone();
        squares = squares + r.clone() * r;
        cross = cross + x[k].clone().mul_f64(gamma(i, n) * f[i]) / gap;
    }
    let cross = cross / gk;
    (squares + cross.clone() * cross).sqrt().mul_f64(EPS)
}

/// `(α_{n,k}(x̂), δ_{n,k}(t))` against the exact Chebyshev points.
pub fn alpha_delta(nodes: &NodeSet, k: usize, t: f64, oracle: &Oracle) -> Result<(f64, f64)> {
    alpha_delta_against(nodes, k, t, Reference::Chebyshev, oracle)
}

pub fn alpha_delta_against(
    nodes: &NodeSet,
    k: usize,
    t: f64,
    reference: Reference,
    oracle: &Oracle,
) -> Result<(f64, f64)> {
    check_index(nodes, k)?;
    let bits = oracle.bits;
    dispatch!(oracle, R => {
        let x = reference_in::<R>(reference, nodes.degree(), bits)?;
        let (a, d) = alpha_delta_in(nodes.values(), &x, k, t, bits);
        Ok((a.to_f64(), d.to_f64()))
    })
}

fn check_f(nodes: &NodeSet, f: &SampleVector, k: usize) -> Result<()> {
    check_samples(nodes, f)?;
    check_index(nodes, k)?;
    if f.values()[k] == 0.0 {
        return Err(domain(format!("f_{k} is zero")));
    }
    Ok(())
}

/// `s_{n,k}(x̂)` and `s_{n,k}(x̂) / (n² ε)`.
pub fn s_nk(nodes: &NodeSet, f: &SampleVector, k: usize, oracle: &Oracle) -> Result<(f64, f64)> {
    s_nk_against(nodes, f, k, Reference::Chebyshev, oracle)
}

#[allow(clippy::clone_on_copy)]
pub fn s_nk_against(
    nodes: &NodeSet,
    f: &SampleVector,
    k: usize,
    reference: Reference,
    oracle: &Oracle,
) -> Result<(f64, f64)> {
    check_f(nodes, f, k)?;
    let bits = oracle.bits;
    let n = nodes.degree();
    dispatch!(oracle, R => {
        let x = reference_in::<R>(reference, n, bits)?;
        let s = s_nk_in(nodes.values(), &x, f.values(), k, bits);
        let scaled = s.clone() / R::from_f64(n as f64, bits).mul_f64(n as f64).mul_f64(EPS);
        Ok((s.to_f64(), scaled.to_f64()))
    })
}

/// The standard deviation of `s_{n,k}` when the rounding errors are
/// independent with deviation `|x_i| ε`.
pub fn sigma_s_estimate(
    nodes: &NodeSet,
    f: &SampleVector,
    k: usize,
    oracle: &Oracle,
) -> Result<f64> {
    check_f(nodes, f, k)?;
    let bits = oracle.bits;
    dispatch!(oracle, R => {
        let x = reference_in::<R>(Reference::Chebyshev, nodes.degree(), bits)?;
        Ok(sigma_in(&x, f.values(), k, bits).to_f64())
    })
}

/// All diagnostics at once, sharing the reference nodes.
pub fn diagnose(
    nodes: &NodeSet,
    f: &SampleVector,
    k: usize,
    t: f64,
    reference: Reference,
    oracle: &Oracle,
) -> Result<DiagnosticReport> {
    check_f(nodes, f, k)?;
    let bits = oracle.bits;
    let n = nodes.degree();
    let xh = nodes.values();
    dispatch!(oracle, R => {
        let x = reference_in::<R>(reference, n, bits)?;
        let (alpha, delta) = alpha_delta_in(xh, &x, k, t, bits);
        let (_, delta_node) = alpha_delta_in(xh, &x, k, xh[k], bits);
        let s = s_nk_in(xh, &x, f.values(), k, bits);
        let n2eps = R::from_f64(n as f64, bits).mul_f64(n as f64).mul_f64(EPS);
        Ok(DiagnosticReport {
            n,
            k,
            t,
            alpha_nk: alpha.to_f64(),
            delta_nk: delta.to_f64(),
            delta_nk_node: delta_node.to_f64(),
            s_nk: s.to_f64(),
            s_nk_over_n2eps: (s / n2eps).to_f64(),
            sigma_estimate: sigma_in(&x, f.values(), k, bits).to_f64(),
        })
    })
}
