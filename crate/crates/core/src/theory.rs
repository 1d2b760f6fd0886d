//! Closed-form parameter settings and guarantees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryParams {
    /// `P = max(⌈√(1+m)⌉, k)`.
    pub p_cap: usize,
    /// `p = max(ℓ − 1, k)`.
    pub p: usize,
    /// `ℓ = P + 1`.
    pub ell: usize,
    pub beta: f64,
    pub gamma: f64,
}

/// Smallest integer `q` with `q² >= x`.
fn ceil_sqrt(x: usize) -> usize {
    let mut q = (x as f64).sqrt() as usize;
    while q * q < x {
        q += 1;
    }
    while q > 0 && (q - 1) * (q - 1) >= x {
        q -= 1;
    }
    q
}

pub fn theory_params(k: usize, m: usize, eps: f64) -> Result<TheoryParams> {
    if k == 0 || m == 0 {
        return Err(Error::Parameter(format!(
            "need k, m >= 1, got k = {k}, m = {m}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let p_cap = ceil_sqrt(1 + m).max(k);
    let ell = p_cap + 1;
    let p = (ell - 1).max(k);
    let denom = (p + 1) as f64 + m as f64 * (1.0 - eps);
    let beta = (1.0 - eps) * (1.0 - 1.0 / ell as f64 - eps) / denom;
    let gamma = (p + 1) as f64 / denom;
    if beta <= 0.0 {
        return Err(Error::Parameter(format!(
            "eps = {eps} is too large for ell = {ell} (beta = {beta} <= 0)"
        )));
    }
    Ok(TheoryParams {
        p_cap,
        p,
        ell,
        beta,
        gamma,
    })
}

/// Both terms of the lower bound `f(S) >= coefficient · OPT`, and the
/// resulting approximation ratio `1 / coefficient`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxBound {
    pub structural_term: f64,
    pub enumeration_term: f64,
    pub coefficient: f64,
    pub ratio: f64,
}

pub fn approx_bound(k: usize, m: usize, eps: f64, c_enum: usize, r: u64) -> ApproxBound {
    let (k, m, c) = (k as f64, m as f64, c_enum as f64);
    let p_cap = ceil_sqrt(1 + m as usize).max(k as usize) as f64;
    let one = 1.0 - eps;
    let structural_term = one * one * (1.0 - 2.0 * eps) / (k + m + 3.0 + 2.0 * (m + 1.0).sqrt());
    let enumeration_term = ((c - eps) * (p_cap + 1.0) + (c - 1.0) * m * one - c * one.powi(3))
        / (r as f64 * (p_cap + 1.0 + m * one));
    let coefficient = structural_term + enumeration_term;
    ApproxBound {
        structural_term,
        enumeration_term,
        coefficient,
        ratio: 1.0 / coefficient,
    }
}

/// `(1+ε)(k+m+3+2√(m+1))`, the ratio for general non-negative objectives.
pub fn ratio_nonmonotone(k: usize, m: usize, eps: f64) -> f64 {
    let (k, m) = (k as f64, m as f64);
    (1.0 + eps) * (k + m + 3.0 + 2.0 * (m + 1.0).sqrt())
}

/// `(1+ε)(k+m+1)`, the ratio for monotone objectives.
pub fn ratio_monotone(k: usize, m: usize, eps: f64) -> f64 {
    (1.0 + eps) * (k + m + 1) as f64
}

/// Largest acceleration `α` for which the randomized variant keeps its
/// guarantee.
pub fn alpha_bound(p: usize, m: usize, eps: f64) -> f64 {
    let (p, m) = (p as f64, m as f64);
    let one = 1.0 - eps;
    one * (p + 1.0 - one * one) / (eps * (p + 1.0) + m * one)
}

/// `1 − exp(−r·t_c/n)`: chance that one of `t_c` random seeds lies in an
/// optimal solution of size `r`.
pub fn success_probability(r: usize, n: usize, t_c: usize) -> f64 {
    1.0 - (-(r as f64) * t_c as f64 / n as f64).exp()
}
