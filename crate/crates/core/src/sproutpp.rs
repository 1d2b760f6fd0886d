//! Randomized enumeration of single-element seeds with a value filter and
//! a smoothed density search.
//!
//! Seeds are drawn without replacement from the feasible singletons. Only
//! seeds worth at least `(1 − α)` of the best singleton are expanded, and
//! only those count against the budget `t_c`. The draw sequence is fixed
//! by the seed before any expansion runs, so expansions can run in
//! parallel without changing the result.

use std::collections::HashMap;
use std::time::Instant;

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{canonical, Instance};
use crate::oracle::{Conditioned, Element, ValueOracle};
use crate::record::ResultRecord;
use crate::search::{smooth_search_density, GridParams, SeedContext};
use crate::sprout::SeedRun;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SproutPPParams {
    /// Number of seeds to expand.
    pub t_counter: usize,
    /// Acceleration: seeds below `(1 − α)·f(e*)` are skipped.
    pub alpha: f64,
    /// Smoothing of the density search; `μ = 1` is plain bisection.
    pub mu: f64,
    pub ell: usize,
    pub delta: f64,
    pub eps: f64,
    pub beta: f64,
    pub gamma: f64,
    pub seed: u64,
    pub lazy: bool,
}

impl SproutPPParams {
    /// Experiment defaults: `t_c = ⌈n/5⌉`, `α = 0.5`, `μ = 1`, `ℓ = 2`,
    /// `δ = ε = 0.25`, `β = 5e-4`, `γ = 1e-6`.
    pub fn empirical(n: usize, seed: u64) -> Self {
        Self {
            t_counter: n.div_ceil(5).max(1),
            alpha: 0.5,
            mu: 1.0,
            ell: 2,
            delta: 0.25,
            eps: 0.25,
            beta: 5e-4,
            gamma: 1e-6,
            seed,
            lazy: true,
        }
    }

    pub fn grid(&self) -> GridParams {
        GridParams {
            ell: self.ell,
            delta: self.delta,
            eps: self.eps,
            beta: self.beta,
            gamma: self.gamma,
            c_enum: 1,
            lazy: self.lazy,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid().validate()?;
        if self.t_counter == 0 {
            return Err(Error::Parameter("t_counter must be at least 1".into()));
        }
        if !(self.mu.is_finite() && self.mu >= 1.0) {
            return Err(Error::Parameter(format!(
                "mu must be at least 1, got {}",
                self.mu
            )));
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::Parameter(format!(
                "alpha must lie in [0, 1), got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// The feasible singleton of largest value, smallest id on ties.
pub fn best_single(inst: &Instance, oracle: &ValueOracle) -> Result<(Element, f64)> {
    let values = singleton_values(inst, oracle);
    argmax_single(&values).ok_or(Error::EmptyInstance)
}

fn singleton_values(inst: &Instance, oracle: &ValueOracle) -> Vec<(Element, f64)> {
    inst.feasible_singletons()
        .into_iter()
        .map(|e| (e, oracle.evaluate(&[e])))
        .collect()
}

fn argmax_single(values: &[(Element, f64)]) -> Option<(Element, f64)> {
    values
        .iter()
        .copied()
        .fold(None, |best, (e, v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((e, v)),
        })
}

/// Draws elements of a pool uniformly without replacement. Draw `i` uses
/// its own ChaCha8 stream of the root seed, so the sequence depends only on
/// the seed and the pool.
#[derive(Debug, Clone)]
pub struct RandomEnumerator {
    seed: u64,
    remaining: Vec<Element>,
    visited: Vec<Element>,
}

impl RandomEnumerator {
    pub fn new(pool: Vec<Element>, seed: u64) -> Self {
        Self {
            seed,
            remaining: pool,
            visited: Vec::new(),
        }
    }

    pub fn visited(&self) -> &[Element] {
        &self.visited
    }

    pub fn remaining(&self) -> usize {
        self.remaining.len()
    }
}

impl Iterator for RandomEnumerator {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.remaining.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.visited.len() as u64);
        let e = self
            .remaining
            .swap_remove(rng.gen_range(0..self.remaining.len()));
        self.visited.push(e);
        Some(e)
    }
}

#[derive(Debug, Clone)]
pub struct SproutPPRun {
    pub record: ResultRecord,
    pub best_single: (Element, f64),
    /// Every drawn seed, in draw order.
    pub visited: Vec<Element>,
    /// Drawn seeds that passed the filter, in draw order.
    pub expanded: Vec<Element>,
    pub seeds: Vec<SeedRun>,
}

pub fn sproutpp(inst: &Instance, params: &SproutPPParams) -> Result<ResultRecord> {
    Ok(sproutpp_run(inst, params)?.record)
}

pub fn sproutpp_run(inst: &Instance, params: &SproutPPParams) -> Result<SproutPPRun> {
    params.validate()?;
    let started = Instant::now();
    let oracle = inst.oracle();
    let singles = singleton_values(inst, &oracle);
    let (e_star, f_star) = argmax_single(&singles).ok_or(Error::EmptyInstance)?;
    let value_of: HashMap<Element, f64> = singles.iter().copied().collect();
    let pool: Vec<Element> = singles.iter().map(|&(e, _)| e).collect();

    // Draw the seed sequence up front. A seed that fails the filter is still
    // marked as drawn but does not consume the counter. The loop also stops
    // once every feasible singleton has been drawn.
    let mut draws = RandomEnumerator::new(pool.clone(), params.seed);
    let mut expanded = Vec::new();
    let threshold = (1.0 - params.alpha) * f_star;
    while expanded.len() < params.t_counter {
        let Some(e) = draws.next() else { break };
        if value_of[&e] >= threshold {
            expanded.push(e);
        }
    }

    let runs = expanded
        .par_iter()
        .map(|&e| {
            let local = oracle.fork();
            let run = run_seed(inst, &local, &pool, e, value_of[&e], params)?;
            debug!(
                "A=[{e}] best={} probes={}",
                run.search.best_value,
                run.search.probes.len()
            );
            Ok(run)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: (Vec<Element>, f64) = (vec![e_star], f_star);
    let mut first = true;
    for run in &runs {
        oracle.absorb(run.oracle_calls);
        if first || run.search.best_value > best.1 {
            best = (run.search.best.clone(), run.search.best_value);
            first = false;
        }
    }

    let mut record =
        ResultRecord::new("sproutpp", canonical(&best.0), best.1, oracle.calls()).timed(started);
    record.seed = Some(params.seed);
    record.visited = Some(draws.visited().len());
    record.filter_passed = Some(expanded.len());
    Ok(SproutPPRun {
        record,
        best_single: (e_star, f_star),
        visited: draws.visited().to_vec(),
        expanded,
        seeds: runs,
    })
}

fn run_seed(
    inst: &Instance,
    oracle: &ValueOracle,
    pool: &[Element],
    e: Element,
    f_e: f64,
    params: &SproutPPParams,
) -> Result<SeedRun> {
    let z = Conditioned::with_value(oracle, &[e], f_e);
    let ground: Vec<Element> = pool.iter().copied().filter(|&x| x != e).collect();
    let ground_size = ground.len();
    let search = match SeedContext::new(inst, z, ground, &HashMap::new())? {
        Some(ctx) => smooth_search_density(&ctx, &params.grid(), params.mu)?,
        None => crate::search::SearchOutcome::seeded(&[e], f_e),
    };
    Ok(SeedRun {
        base: vec![e],
        base_value: f_e,
        ground_size,
        search,
        oracle_calls: oracle.calls(),
    })
}

/// Elements of a known optimal set that break `(1+α)·f(a) >= f(e*)`.
/// Purely diagnostic: the algorithm never checks this.
pub fn assumption_violations(
    inst: &Instance,
    opt_set: &[Element],
    alpha: f64,
) -> Result<Vec<Element>> {
    let oracle = inst.oracle();
    let (_, f_star) = best_single(inst, &oracle)?;
    Ok(opt_set
        .iter()
        .copied()
        .filter(|&a| (1.0 + alpha) * oracle.evaluate(&[a]) < f_star)
        .collect())
}
