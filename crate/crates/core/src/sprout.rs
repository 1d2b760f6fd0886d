//! Partial enumeration over feasible seed sets of size `C`, each followed
//! by a density-ratio bisection around the simultaneous greedy.

use std::collections::HashMap;
use std::time::Instant;

use log::debug;
use rayon::prelude::*;

use crate::error::Result;
use crate::instance::{canonical, Instance};
use crate::oracle::{Conditioned, Element, ValueOracle};
use crate::record::ResultRecord;
use crate::search::{binary_search_density, GridParams, SearchOutcome, SeedContext};
use crate::theory::theory_params;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SproutParams {
    /// Seed-set size `C`.
    pub c_enum: usize,
    pub ell: usize,
    pub delta: f64,
    pub eps: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lazy: bool,
}

impl SproutParams {
    /// `C = 1`, `δ = ε`, and `ℓ`, `β`, `γ` from the guarantee's proof.
    /// Instances without knapsack rows are treated as `m = 1`.
    pub fn theory(k: usize, m: usize, eps: f64) -> Result<Self> {
        let t = theory_params(k.max(1), m.max(1), eps)?;
        Ok(Self {
            c_enum: 1,
            ell: t.ell,
            delta: eps,
            eps,
            beta: t.beta,
            gamma: t.gamma,
            lazy: true,
        })
    }

    /// The settings used for the max-cut and movie experiments.
    pub fn empirical() -> Self {
        Self {
            c_enum: 1,
            ell: 2,
            delta: 0.25,
            eps: 0.25,
            beta: 5e-4,
            gamma: 1e-6,
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
            c_enum: self.c_enum,
            lazy: self.lazy,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid().validate()
    }
}

/// Elements outside `base` whose marginal value is at most `f(A)/C`.
pub fn reduced_ground_set(
    oracle: &ValueOracle,
    pool: &[Element],
    base: &[Element],
    c_enum: usize,
) -> Vec<Element> {
    let z = Conditioned::new(oracle, base);
    reduce_with_values(&z, pool, c_enum)
        .into_iter()
        .map(|(e, _)| e)
        .collect()
}

fn reduce_with_values(z: &Conditioned<'_>, pool: &[Element], c_enum: usize) -> Vec<(Element, f64)> {
    let f_a = z.base_value();
    pool.iter()
        .filter(|e| !z.base().contains(e))
        .map(|&e| (e, z.value(&[e])))
        .filter(|&(_, v)| c_enum as f64 * v <= f_a)
        .collect()
}

/// All feasible sets of exactly `size` elements drawn from `pool`, in
/// lexicographic order, plus the feasible nonempty sets met on the way.
fn enumerate(
    inst: &Instance,
    pool: &[Element],
    size: usize,
) -> (Vec<Vec<Element>>, Vec<Vec<Element>>) {
    fn dfs(
        inst: &Instance,
        pool: &[Element],
        start: usize,
        size: usize,
        cur: &mut Vec<Element>,
        full: &mut Vec<Vec<Element>>,
        partial: &mut Vec<Vec<Element>>,
    ) {
        if cur.len() == size {
            full.push(cur.clone());
            return;
        }
        if !cur.is_empty() {
            partial.push(cur.clone());
        }
        for idx in start..pool.len() {
            cur.push(pool[idx]);
            if inst.is_feasible(cur) {
                dfs(inst, pool, idx + 1, size, cur, full, partial);
            }
            cur.pop();
        }
    }
    let mut full = Vec::new();
    let mut partial = Vec::new();
    dfs(
        inst,
        pool,
        0,
        size,
        &mut Vec::new(),
        &mut full,
        &mut partial,
    );
    (full, partial)
}

/// Feasible seed sets of size `size`, lexicographic.
pub fn enumerate_seeds(inst: &Instance, size: usize) -> Vec<Vec<Element>> {
    enumerate(inst, &inst.feasible_singletons(), size).0
}

#[derive(Debug, Clone)]
pub struct SeedRun {
    pub base: Vec<Element>,
    pub base_value: f64,
    pub ground_size: usize,
    pub search: SearchOutcome,
    pub oracle_calls: u64,
}

#[derive(Debug, Clone)]
pub struct SproutRun {
    pub record: ResultRecord,
    pub seeds: Vec<SeedRun>,
}

pub fn sprout(inst: &Instance, params: &SproutParams) -> Result<ResultRecord> {
    Ok(sprout_run(inst, params)?.record)
}

pub fn sprout_run(inst: &Instance, params: &SproutParams) -> Result<SproutRun> {
    params.validate()?;
    let started = Instant::now();
    let oracle = inst.oracle();
    let pool = inst.feasible_singletons();
    let (seeds, partial) = enumerate(inst, &pool, params.c_enum);

    let runs = seeds
        .par_iter()
        .map(|base| {
            let local = oracle.fork();
            let run = run_seed(inst, &local, &pool, base, params)?;
            debug!(
                "A={:?} best={} probes={}",
                base,
                run.search.best_value,
                run.search.probes.len()
            );
            Ok(run)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: (Vec<Element>, f64) = (Vec::new(), f64::NEG_INFINITY);
    for run in &runs {
        oracle.absorb(run.oracle_calls);
        if run.search.best_value > best.1 {
            best = (run.search.best.clone(), run.search.best_value);
        }
    }
    if runs.is_empty() {
        // No feasible seed of the requested size: fall back to the best
        // smaller feasible set met during enumeration.
        best = (Vec::new(), oracle.evaluate(&[]));
        for set in &partial {
            let v = oracle.evaluate(set);
            if v > best.1 {
                best = (set.clone(), v);
            }
        }
    }
    let record =
        ResultRecord::new("sprout", canonical(&best.0), best.1, oracle.calls()).timed(started);
    Ok(SproutRun {
        record,
        seeds: runs,
    })
}

fn run_seed(
    inst: &Instance,
    oracle: &ValueOracle,
    pool: &[Element],
    base: &[Element],
    params: &SproutParams,
) -> Result<SeedRun> {
    let z = Conditioned::new(oracle, base);
    let base_value = z.base_value();
    let kept = reduce_with_values(&z, pool, params.c_enum);
    let known: HashMap<Element, f64> = kept.iter().copied().collect();
    let ground: Vec<Element> = kept.iter().map(|&(e, _)| e).collect();
    let ground_size = ground.len();
    let search = match SeedContext::new(inst, z, ground, &known)? {
        Some(ctx) => binary_search_density(&ctx, &params.grid())?,
        None => SearchOutcome::seeded(base, base_value),
    };
    Ok(SeedRun {
        base: base.to_vec(),
        base_value,
        ground_size,
        search,
        oracle_calls: oracle.calls(),
    })
}
