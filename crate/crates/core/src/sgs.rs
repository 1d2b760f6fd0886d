//! Simultaneous greedy over `ℓ` disjoint candidate sets with a density
//! ratio and a decreasing threshold.
//!
//! An element `a` joins candidate `i` when `S_i ∪ {a}` is independent, its
//! marginal gain `z(a | S_i)` is at least `max(τ, ρ · Σ_j c_j(a))`, and
//! `S_i ∪ {a}` fits every knapsack row. A pair that passes the first two
//! tests but overflows a knapsack latches the violation flag, which drives
//! the density-ratio search one level up.

use std::fmt;

use log::{log_enabled, trace, Level};

use crate::error::{Error, Result};
use crate::knapsack::Knapsack;
use crate::matroid::Matroid;
use crate::oracle::{Conditioned, Element};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgsParams {
    /// Number of disjoint candidate solutions.
    pub ell: usize,
    /// Density ratio.
    pub rho: f64,
    pub eps: f64,
    /// Skip pairs whose last computed gain is already below the bar. Gains
    /// only shrink as a candidate grows, so this never changes the outcome
    /// for a submodular objective.
    pub lazy: bool,
    pub record_trace: bool,
}

impl SgsParams {
    pub fn new(ell: usize, rho: f64, eps: f64) -> Result<Self> {
        let p = Self {
            ell,
            rho,
            eps,
            lazy: true,
            record_trace: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell == 0 {
            return Err(Error::Parameter("ell must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Parameter(format!(
                "eps must lie in (0, 1), got {}",
                self.eps
            )));
        }
        if !(self.rho.is_finite() && self.rho >= 0.0) {
            return Err(Error::Parameter(format!(
                "rho must be non-negative, got {}",
                self.rho
            )));
        }
        Ok(())
    }
}

/// One insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub t: usize,
    pub element: Element,
    pub candidate: usize,
    pub gain: f64,
    pub tau: f64,
    pub density: f64,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} e={} i={} gain={} tau={} dens={}",
            self.t, self.element, self.candidate, self.gain, self.tau, self.density
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SgsOutcome {
    /// Highest-valued candidate, ascending ids.
    pub best: Vec<Element>,
    /// `z(best)`.
    pub best_value: f64,
    /// `f(base ∪ best)` as returned by the oracle.
    pub best_raw_value: f64,
    /// All `ℓ` candidates in insertion order.
    pub candidates: Vec<Vec<Element>>,
    pub violated: bool,
    pub oracle_calls: u64,
    /// Threshold rounds executed.
    pub rounds: usize,
    pub trace: Vec<TraceStep>,
}

/// Runs the subroutine on `ground` with objective `z`, the (contracted)
/// matroid and normalized knapsack of the reduced instance.
///
/// The starting threshold `𝒱` is the largest `z({e})` over elements of
/// `ground` that are feasible on their own.
pub fn knapsack_sgs(
    z: &Conditioned<'_>,
    ground: &[Element],
    matroid: &dyn Matroid,
    costs: &Knapsack,
    params: &SgsParams,
) -> Result<SgsOutcome> {
    params.validate()?;
    let singles = singleton_values(z, ground, matroid, costs);
    let v_max = max_value(&singles);
    let mut out = run(z, ground, matroid, costs, params, v_max)?;
    out.oracle_calls += singles.len() as u64;
    Ok(out)
}

/// `z({e})` for each singleton-feasible `e` in `ground`, one oracle call each.
pub(crate) fn singleton_values(
    z: &Conditioned<'_>,
    ground: &[Element],
    matroid: &dyn Matroid,
    costs: &Knapsack,
) -> Vec<(Element, f64)> {
    ground
        .iter()
        .filter(|&&e| matroid.is_independent(&[e]) && costs.is_feasible(&[e]))
        .map(|&e| (e, z.value(&[e])))
        .collect()
}

pub(crate) fn max_value(singles: &[(Element, f64)]) -> f64 {
    singles
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max)
}

struct Candidate {
    members: Vec<Element>,
    raw_value: f64,
    load: Vec<f64>,
}

/// The subroutine with a precomputed `𝒱`.
pub(crate) fn run(
    z: &Conditioned<'_>,
    ground: &[Element],
    matroid: &dyn Matroid,
    costs: &Knapsack,
    params: &SgsParams,
    v_max: f64,
) -> Result<SgsOutcome> {
    params.validate()?;
    let ell = params.ell;
    let m = costs.m();
    let mut ground = ground.to_vec();
    ground.sort_unstable();
    ground.dedup();

    let base_value = z.base_value();
    let mut cands: Vec<Candidate> = (0..ell)
        .map(|_| Candidate {
            members: Vec::new(),
            raw_value: base_value,
            load: vec![0.0; m],
        })
        .collect();
    let mut violated = false;
    let mut calls = 0u64;
    let mut rounds = 0;
    let mut trace_steps = Vec::new();

    if !ground.is_empty() && v_max > 0.0 {
        let n = ground.len() as f64;
        let floor = params.eps * v_max / n;
        let mut alive = vec![true; ground.len()];
        let mut upper = vec![f64::INFINITY; ground.len() * ell];
        let mut scratch = Vec::new();
        let mut t = 1;
        let mut tau = v_max;
        while tau > floor {
            rounds += 1;
            for pos in 0..ground.len() {
                if !alive[pos] {
                    continue;
                }
                let a = ground[pos];
                let density = params.rho * costs.total_cost(a);
                let bar = tau.max(density);
                for i in 0..ell {
                    if params.lazy && upper[pos * ell + i] < bar {
                        continue;
                    }
                    let cand = &cands[i];
                    scratch.clear();
                    scratch.extend_from_slice(&cand.members);
                    scratch.push(a);
                    if !matroid.is_independent(&scratch) {
                        continue;
                    }
                    let raw = z.raw(&scratch);
                    calls += 1;
                    let gain = raw - cand.raw_value;
                    upper[pos * ell + i] = gain;
                    if gain < bar {
                        continue;
                    }
                    let fits = (0..m).all(|j| costs.fits(j, cand.load[j] + costs.cost(j, a)));
                    if !fits {
                        violated = true;
                        continue;
                    }
                    let step = TraceStep {
                        t,
                        element: a,
                        candidate: i,
                        gain,
                        tau,
                        density,
                    };
                    if log_enabled!(Level::Trace) {
                        trace!("{step}");
                    }
                    if params.record_trace {
                        trace_steps.push(step);
                    }
                    let cand = &mut cands[i];
                    cand.members.push(a);
                    cand.raw_value = raw;
                    for (j, load) in cand.load.iter_mut().enumerate() {
                        *load += costs.cost(j, a);
                    }
                    alive[pos] = false;
                    t += 1;
                    break;
                }
            }
            tau *= 1.0 - params.eps;
        }
    }

    let best_idx = (0..ell).fold(0, |best, i| {
        if cands[i].raw_value > cands[best].raw_value {
            i
        } else {
            best
        }
    });
    let mut best = cands[best_idx].members.clone();
    best.sort_unstable();
    let best_raw_value = cands[best_idx].raw_value;
    Ok(SgsOutcome {
        best,
        best_value: best_raw_value - base_value,
        best_raw_value,
        candidates: cands.into_iter().map(|c| c.members).collect(),
        violated,
        oracle_calls: calls,
        rounds,
        trace: trace_steps,
    })
}
