//! Per-seed pipeline shared by the enumeration algorithms: contract the
//! constraints by a seed set `A`, then search a geometric grid of density
//! ratios, running the simultaneous greedy once per probe.

use std::collections::HashMap;

use log::debug;

use crate::error::{Error, Result};
use crate::instance::{canonical, Instance};
use crate::knapsack::{reduce_knapsack, Knapsack};
use crate::matroid::{Matroid, MatroidIntersection};
use crate::oracle::{Conditioned, Element};
use crate::sgs::{self, SgsOutcome, SgsParams};

/// Parameters of the density grid and the inner greedy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridParams {
    pub ell: usize,
    pub delta: f64,
    pub eps: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Divisor of the `γ·f(A)` correction.
    pub c_enum: usize,
    pub lazy: bool,
}

impl GridParams {
    pub fn validate(&self) -> Result<()> {
        SgsParams::new(self.ell, 0.0, self.eps)?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Parameter(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::Parameter(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::Parameter(format!(
                "gamma must be non-negative, got {}",
                self.gamma
            )));
        }
        if self.c_enum == 0 {
            return Err(Error::Parameter("c_enum must be at least 1".into()));
        }
        Ok(())
    }
}

/// `ρ = β·𝒱·(1+δ)^b + γ·f(A)/C`.
pub fn density_ratio(
    beta: f64,
    v_max: f64,
    delta: f64,
    b: i64,
    gamma: f64,
    f_a: f64,
    c_enum: usize,
) -> f64 {
    beta * v_max * (1.0 + delta).powi(b as i32) + gamma * f_a / c_enum as f64
}

/// Upper grid index `⌈ln|N'| / δ⌉`.
pub fn upper_index(ground_size: usize, delta: f64) -> i64 {
    if ground_size == 0 {
        return 0;
    }
    ((ground_size as f64).ln() / delta).ceil() as i64
}

/// Moves the endpoint selected by `violated` a `(1 − 1/μ)` fraction of its
/// distance back from the probe `b`: the lower end when the knapsack was
/// violated, the upper end otherwise.
pub fn smooth_update(b: f64, violated: bool, old_endpoint: f64, mu: f64) -> f64 {
    let sign = if violated { -1.0 } else { 1.0 };
    b + sign * (1.0 - 1.0 / mu) * (old_endpoint - b).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub b: i64,
    pub rho: f64,
    pub violated: bool,
    /// `f(A ∪ S_K)`.
    pub value: f64,
    /// Interval after the update.
    pub lower: f64,
    pub upper: f64,
    /// Result reused from an earlier probe at the same grid index.
    pub cached: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// `A ∪ S_A`, ascending.
    pub best: Vec<Element>,
    pub best_value: f64,
    /// Every `A ∪ S_K` seen, starting with `A` itself.
    pub collected: Vec<(Vec<Element>, f64)>,
    pub probes: Vec<Probe>,
}

impl SearchOutcome {
    pub(crate) fn seeded(base: &[Element], base_value: f64) -> Self {
        Self {
            best: canonical(base),
            best_value: base_value,
            collected: vec![(canonical(base), base_value)],
            probes: Vec::new(),
        }
    }

    fn collect(&mut self, base: &[Element], out: &SgsOutcome) {
        let mut set = base.to_vec();
        set.extend_from_slice(&out.best);
        let set = canonical(&set);
        if out.best_raw_value > self.best_value {
            self.best = set.clone();
            self.best_value = out.best_raw_value;
        }
        self.collected.push((set, out.best_raw_value));
    }
}

/// The instance seen from a seed set `A`: objective `z_A`, reduced ground
/// set, contracted matroids and renormalized knapsack.
#[derive(Debug)]
pub struct SeedContext<'a> {
    pub z: Conditioned<'a>,
    pub ground: Vec<Element>,
    pub matroid: MatroidIntersection,
    pub knapsack: Knapsack,
    /// Largest `z_A({e})` over singleton-feasible `e` in the ground set.
    pub v_max: f64,
}

impl<'a> SeedContext<'a> {
    /// `known` holds `z_A({e})` values the caller already computed; any other
    /// value needed for `𝒱` costs one oracle call. Returns `None` when `A`
    /// uses up a whole knapsack budget.
    pub fn new(
        inst: &Instance,
        z: Conditioned<'a>,
        ground: Vec<Element>,
        known: &HashMap<Element, f64>,
    ) -> Result<Option<Self>> {
        let matroid = inst.matroids().contract(z.base())?;
        let knapsack = match reduce_knapsack(inst.knapsack(), z.base()) {
            Ok(k) => k,
            Err(Error::Reduction { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut v_max = f64::NEG_INFINITY;
        for &e in &ground {
            if matroid.is_independent(&[e]) && knapsack.is_feasible(&[e]) {
                let v = match known.get(&e) {
                    Some(&v) => v,
                    None => z.value(&[e]),
                };
                v_max = v_max.max(v);
            }
        }
        Ok(Some(Self {
            z,
            ground,
            matroid,
            knapsack,
            v_max,
        }))
    }

    fn probe(&self, params: &GridParams, b: i64) -> Result<(f64, SgsOutcome)> {
        let rho = density_ratio(
            params.beta,
            self.v_max,
            params.delta,
            b,
            params.gamma,
            self.z.base_value(),
            params.c_enum,
        );
        let sgs_params = SgsParams {
            lazy: params.lazy,
            ..SgsParams::new(params.ell, rho, params.eps)?
        };
        let out = sgs::run(
            &self.z,
            &self.ground,
            &self.matroid,
            &self.knapsack,
            &sgs_params,
            self.v_max,
        )?;
        Ok((rho, out))
    }

    fn searchable(&self) -> bool {
        !self.ground.is_empty() && self.v_max > 0.0
    }
}

/// Bisection over integer grid indices: a violated probe raises the lower
/// end, a clean one lowers the upper end.
pub fn binary_search_density(ctx: &SeedContext<'_>, params: &GridParams) -> Result<SearchOutcome> {
    params.validate()?;
    let base = ctx.z.base();
    let mut outcome = SearchOutcome::seeded(base, ctx.z.base_value());
    if !ctx.searchable() {
        return Ok(outcome);
    }
    let mut lower: i64 = 1;
    let mut upper = upper_index(ctx.ground.len(), params.delta);
    while (lower - upper).abs() > 1 {
        let b = (lower + upper + 1).div_euclid(2);
        let (rho, out) = ctx.probe(params, b)?;
        if out.violated {
            lower = b;
        } else {
            upper = b;
        }
        outcome.collect(base, &out);
        outcome.probes.push(Probe {
            b,
            rho,
            violated: out.violated,
            value: out.best_raw_value,
            lower: lower as f64,
            upper: upper as f64,
            cached: false,
        });
    }
    Ok(outcome)
}

/// Bisection with real-valued endpoints that move only part of the way to
/// each probe. Repeated grid indices reuse the earlier result; the search
/// stops once an update leaves the interval unchanged.
pub fn smooth_search_density(
    ctx: &SeedContext<'_>,
    params: &GridParams,
    mu: f64,
) -> Result<SearchOutcome> {
    params.validate()?;
    if !(mu >= 1.0 && mu.is_finite()) {
        return Err(Error::Parameter(format!("mu must be at least 1, got {mu}")));
    }
    let base = ctx.z.base();
    let mut outcome = SearchOutcome::seeded(base, ctx.z.base_value());
    if !ctx.searchable() {
        return Ok(outcome);
    }
    let mut seen: HashMap<i64, (f64, bool, f64)> = HashMap::new();
    let mut lower = 1.0;
    let mut upper = upper_index(ctx.ground.len(), params.delta) as f64;
    while (lower - upper).abs() > 1.0 {
        let b = ((lower + upper + 1.0) / 2.0).floor() as i64;
        let (rho, violated, value, cached) = match seen.get(&b) {
            Some(&(rho, violated, value)) => (rho, violated, value, true),
            None => {
                let (rho, out) = ctx.probe(params, b)?;
                outcome.collect(base, &out);
                seen.insert(b, (rho, out.violated, out.best_raw_value));
                (rho, out.violated, out.best_raw_value, false)
            }
        };
        let before = (lower, upper);
        if violated {
            lower = smooth_update(b as f64, true, lower, mu);
        } else {
            upper = smooth_update(b as f64, false, upper, mu);
        }
        outcome.probes.push(Probe {
            b,
            rho,
            violated,
            value,
            lower,
            upper,
            cached,
        });
        if before == (lower, upper) {
            debug!("smooth search stalled at [{lower}, {upper}]");
            break;
        }
    }
    Ok(outcome)
}
