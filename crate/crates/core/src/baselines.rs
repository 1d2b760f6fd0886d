//! Comparators and the exhaustive optimum used to check every algorithm.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{canonical, Instance, TheoryBounds};
use crate::oracle::{Conditioned, Element, ValueOracle};
use crate::record::ResultRecord;
use crate::search::{binary_search_density, SeedContext};
use crate::sprout::SproutParams;

/// Largest ground set searched without a size cap.
pub const BRUTE_FORCE_MAX_N: usize = 24;
/// Largest number of candidate subsets searched with a size cap.
pub const BRUTE_FORCE_MAX_SETS: u128 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub opt_set: Vec<Element>,
    pub opt_value: f64,
    pub sets_examined: u64,
    pub oracle_calls: u64,
}

impl BruteForceResult {
    pub fn bounds(&self) -> TheoryBounds {
        TheoryBounds {
            opt_value: self.opt_value,
            opt_size: self.opt_set.len(),
        }
    }
}

fn binomial_prefix(n: usize, cap: usize) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for i in 0..=cap.min(n) {
        total = total.saturating_add(term);
        term = term.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Exact optimum over feasible subsets (of at most `size_cap` elements).
/// Ties go to the lexicographically first set.
pub fn brute_force(inst: &Instance, size_cap: Option<usize>) -> Result<BruteForceResult> {
    let n = inst.n();
    match size_cap {
        None if n > BRUTE_FORCE_MAX_N => {
            return Err(Error::TooLarge(format!(
                "n = {n} exceeds {BRUTE_FORCE_MAX_N} without a size cap"
            )))
        }
        Some(cap) if binomial_prefix(n, cap) > BRUTE_FORCE_MAX_SETS => {
            return Err(Error::TooLarge(format!(
                "n = {n} with size cap {cap} gives more than {BRUTE_FORCE_MAX_SETS} sets"
            )))
        }
        _ => {}
    }
    let cap = size_cap.unwrap_or(n);
    let oracle = inst.oracle();
    let pool = inst.feasible_singletons();
    let mut best = BruteForceResult {
        opt_set: Vec::new(),
        opt_value: oracle.evaluate(&[]),
        sets_examined: 1,
        oracle_calls: 0,
    };

    fn dfs(
        inst: &Instance,
        oracle: &ValueOracle,
        pool: &[Element],
        start: usize,
        cap: usize,
        cur: &mut Vec<Element>,
        best: &mut BruteForceResult,
    ) {
        if cur.len() == cap {
            return;
        }
        for idx in start..pool.len() {
            cur.push(pool[idx]);
            if inst.is_feasible(cur) {
                let v = oracle.evaluate(cur);
                best.sets_examined += 1;
                if v > best.opt_value {
                    best.opt_value = v;
                    best.opt_set = cur.clone();
                }
                dfs(inst, oracle, pool, idx + 1, cap, cur, best);
            }
            cur.pop();
        }
    }
    dfs(inst, &oracle, &pool, 0, cap, &mut Vec::new(), &mut best);
    best.oracle_calls = oracle.calls();
    Ok(best)
}

/// Greedy restricted to `pool`: add the feasible element of largest positive
/// gain (smallest id on ties) until none is left.
fn greedy_on(inst: &Instance, oracle: &ValueOracle, pool: &[Element]) -> (Vec<Element>, f64) {
    let mut set: Vec<Element> = Vec::new();
    let mut value = oracle.evaluate(&set);
    let mut candidates = pool.to_vec();
    candidates.sort_unstable();
    loop {
        let mut pick: Option<(usize, f64)> = None;
        let mut with = set.clone();
        for (idx, &e) in candidates.iter().enumerate() {
            with.push(e);
            if inst.is_feasible(&with) {
                let v = oracle.evaluate(&with);
                let gain = v - value;
                if gain > 0.0 && pick.is_none_or(|(_, best)| v > best) {
                    pick = Some((idx, v));
                }
            }
            with.pop();
        }
        let Some((idx, v)) = pick else { break };
        set.push(candidates.remove(idx));
        value = v;
    }
    (set, value)
}

pub fn greedy(inst: &Instance) -> ResultRecord {
    let started = Instant::now();
    let oracle = inst.oracle();
    let (set, value) = greedy_on(inst, &oracle, &inst.feasible_singletons());
    ResultRecord::new("greedy", canonical(&set), value, oracle.calls()).timed(started)
}

/// Runs greedy `rounds` times, each on the elements no earlier round
/// selected, and keeps the best round.
pub fn repeated_greedy(inst: &Instance, rounds: usize) -> Result<ResultRecord> {
    if rounds == 0 {
        return Err(Error::Parameter("rounds must be at least 1".into()));
    }
    let started = Instant::now();
    let oracle = inst.oracle();
    let mut pool = inst.feasible_singletons();
    let mut best: Option<(Vec<Element>, f64)> = None;
    for _ in 0..rounds {
        let (set, value) = greedy_on(inst, &oracle, &pool);
        pool.retain(|e| !set.contains(e));
        if best.as_ref().is_none_or(|(_, bv)| value > *bv) {
            best = Some((set, value));
        }
        if pool.is_empty() {
            break;
        }
    }
    let (set, value) = best.expect("at least one round runs");
    Ok(ResultRecord::new("rp_greedy", canonical(&set), value, oracle.calls()).timed(started))
}

/// The density-ratio bisection around the simultaneous greedy on the whole
/// instance, without seed enumeration. The `γ·f(A)` correction vanishes.
pub fn density_search_sgs(inst: &Instance, params: &SproutParams) -> Result<ResultRecord> {
    let grid = crate::search::GridParams {
        gamma: 0.0,
        ..params.grid()
    };
    grid.validate()?;
    let started = Instant::now();
    let oracle = inst.oracle();
    let z = Conditioned::new(&oracle, &[]);
    let ground = inst.feasible_singletons();
    let ctx = SeedContext::new(inst, z, ground, &Default::default())?
        .expect("the empty set never exhausts a budget");
    let search = binary_search_density(&ctx, &grid)?;
    Ok(ResultRecord::new("dssgs", search.best, search.best_value, oracle.calls()).timed(started))
}
