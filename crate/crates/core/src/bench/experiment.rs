use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::maxcut::{gen_er_graph, maxcut_spec, MaxCutConfig};
use super::movies::{movie_spec, read_movies, synthetic_movies, MovieConfig};
use crate::baselines::{density_search_sgs, greedy, repeated_greedy};
use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceSpec};
use crate::objectives::MatroidSpec;
use crate::record::ResultRecord;
use crate::sprout::{sprout, SproutParams};
use crate::sproutpp::{sproutpp, SproutPPParams};

pub const CSV_HEADER: [&str; 9] = [
    "sweep_kind",
    "sweep_value",
    "algo",
    "repeat",
    "seed",
    "value",
    "oracle_calls",
    "wall_ms",
    "set",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Sprout,
    SproutPP,
    Greedy,
    RepeatedGreedy,
    DensitySearchSgs,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sprout => "sprout",
            Self::SproutPP => "sproutpp",
            Self::Greedy => "greedy",
            Self::RepeatedGreedy => "rp_greedy",
            Self::DensitySearchSgs => "dssgs",
        }
    }

    pub fn is_randomized(self) -> bool {
        self == Self::SproutPP
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sprout" => Self::Sprout,
            "sproutpp" => Self::SproutPP,
            "greedy" => Self::Greedy,
            "rp_greedy" => Self::RepeatedGreedy,
            "dssgs" => Self::DensitySearchSgs,
            "fantom" => return Err(Error::Config("fantom is not available".into())),
            other => return Err(Error::Config(format!("unknown algorithm {other:?}"))),
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional overrides on top of the experiment defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamOverrides {
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub ell: Option<usize>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub c_enum: Option<usize>,
    pub tc: Option<usize>,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    /// Rounds of repeated greedy; defaults to `ℓ`.
    pub rounds: Option<usize>,
}

impl ParamOverrides {
    pub fn sprout(&self, base: SproutParams) -> SproutParams {
        SproutParams {
            c_enum: self.c_enum.unwrap_or(base.c_enum),
            ell: self.ell.unwrap_or(base.ell),
            delta: self.delta.unwrap_or(base.delta),
            eps: self.eps.unwrap_or(base.eps),
            beta: self.beta.unwrap_or(base.beta),
            gamma: self.gamma.unwrap_or(base.gamma),
            lazy: base.lazy,
        }
    }

    pub fn sproutpp(&self, base: SproutPPParams) -> SproutPPParams {
        SproutPPParams {
            t_counter: self.tc.unwrap_or(base.t_counter),
            alpha: self.alpha.unwrap_or(base.alpha),
            mu: self.mu.unwrap_or(base.mu),
            ell: self.ell.unwrap_or(base.ell),
            delta: self.delta.unwrap_or(base.delta),
            eps: self.eps.unwrap_or(base.eps),
            beta: self.beta.unwrap_or(base.beta),
            gamma: self.gamma.unwrap_or(base.gamma),
            ..base
        }
    }

    pub fn rounds(&self) -> usize {
        self.rounds
            .or(self.ell)
            .unwrap_or(SproutParams::empirical().ell)
    }
}

fn default_p() -> f64 {
    0.01
}

fn default_rows() -> usize {
    300
}

fn default_dim() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceSource {
    /// Erdős–Rényi max-cut. The graph seed defaults to the experiment seed.
    Maxcut {
        n: usize,
        #[serde(default = "default_p")]
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        graph_seed: Option<u64>,
        #[serde(default)]
        config: MaxCutConfig,
    },
    /// Movie recommendation from a CSV, or synthetic rows when `csv` is absent.
    Movies {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csv: Option<PathBuf>,
        #[serde(default = "default_rows")]
        synthetic_rows: usize,
        #[serde(default = "default_dim")]
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        data_seed: Option<u64>,
        #[serde(default)]
        config: MovieConfig,
    },
    File {
        path: PathBuf,
    },
}

impl InstanceSource {
    pub fn spec(&self, seed: u64) -> Result<InstanceSpec> {
        match self {
            Self::Maxcut {
                n,
                p,
                graph_seed,
                config,
            } => Ok(maxcut_spec(
                &gen_er_graph(*n, *p, graph_seed.unwrap_or(seed)),
                config,
            )),
            Self::Movies {
                csv,
                synthetic_rows,
                dim,
                data_seed,
                config,
            } => {
                let rows = match csv {
                    Some(path) => read_movies(std::fs::File::open(path)?)?,
                    None => synthetic_movies(*synthetic_rows, *dim, data_seed.unwrap_or(seed)),
                };
                movie_spec(&rows, config)
            }
            Self::File { path } => InstanceSpec::load(path),
        }
    }

    fn resolve(&mut self, dir: &Path) {
        let path = match self {
            Self::Movies { csv: Some(p), .. } | Self::File { path: p } => p,
            _ => return,
        };
        if path.is_relative() {
            *path = dir.join(&*path);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    /// Each knapsack budget is multiplied by the fraction.
    BudgetFractions(Vec<f64>),
    /// Every uniform matroid gets this cap.
    CardinalityCaps(Vec<usize>),
}

impl Sweep {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::BudgetFractions(_) => "budget_fraction",
            Self::CardinalityCaps(_) => "cardinality_cap",
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Self::BudgetFractions(v) => v.clone(),
            Self::CardinalityCaps(v) => v.iter().map(|&c| c as f64).collect(),
        }
    }

    /// `points` evenly spaced fractions from `lo` to `hi`.
    pub fn budget_grid(lo: f64, hi: f64, points: usize) -> Self {
        let step = if points > 1 {
            (hi - lo) / (points - 1) as f64
        } else {
            0.0
        };
        Self::BudgetFractions((0..points).map(|i| lo + step * i as f64).collect())
    }
}

impl Default for Sweep {
    fn default() -> Self {
        Self::budget_grid(0.64, 1.0, 10)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance_spec: InstanceSource,
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub params: ParamOverrides,
    #[serde(default)]
    pub sweep: Sweep,
    pub repeats: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file; relative data paths are taken from its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::from_json(&std::fs::read_to_string(path)?)?;
        if let Some(dir) = path.parent() {
            cfg.instance_spec.resolve(dir);
        }
        Ok(cfg)
    }

    pub fn algorithms(&self) -> Result<Vec<Algorithm>> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("algorithm list is empty".into()));
        }
        self.algorithms.iter().map(|a| a.parse()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.algorithms()?;
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be at least 1".into()));
        }
        match &self.sweep {
            Sweep::BudgetFractions(v) if v.is_empty() => {
                return Err(Error::Config("empty budget sweep".into()))
            }
            Sweep::BudgetFractions(v) => {
                if let Some(f) = v.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
                    return Err(Error::Config(format!("budget fraction {f} outside (0, 1]")));
                }
            }
            Sweep::CardinalityCaps(v) if v.is_empty() => {
                return Err(Error::Config("empty cardinality sweep".into()))
            }
            Sweep::CardinalityCaps(v) => {
                if v.contains(&0) {
                    return Err(Error::Config("cardinality caps must be at least 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of records `run_experiment` produces.
    pub fn expected_rows(&self) -> Result<usize> {
        let per_point: usize = self
            .algorithms()?
            .iter()
            .map(|a| if a.is_randomized() { self.repeats } else { 1 })
            .sum();
        Ok(per_point * self.sweep.values().len())
    }
}

/// Seed for repeat `repeat` of a randomized algorithm.
pub fn derived_seed(seed: u64, repeat: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repeat as u64);
    rng.next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub sweep_kind: &'static str,
    pub sweep_value: f64,
    pub repeat: usize,
    pub record: ResultRecord,
}

fn sweep_instances(cfg: &ExperimentConfig, spec: &InstanceSpec) -> Result<Vec<Instance>> {
    match &cfg.sweep {
        Sweep::BudgetFractions(fracs) => {
            let base = spec.build()?;
            fracs
                .iter()
                .map(|&f| base.with_knapsack(base.knapsack().with_budget_fraction(f)?))
                .collect()
        }
        Sweep::CardinalityCaps(caps) => caps
            .iter()
            .map(|&cap| {
                let mut s = spec.clone();
                for m in &mut s.matroids {
                    if let MatroidSpec::Uniform { cap: c } = m {
                        *c = cap;
                    }
                }
                s.build()
            })
            .collect(),
    }
}

fn run_one(
    inst: &Instance,
    algo: Algorithm,
    params: &ParamOverrides,
    seed: u64,
) -> Result<ResultRecord> {
    match algo {
        Algorithm::Sprout => {
            let p = params.sprout(SproutParams::empirical());
            p.validate()?;
            sprout(inst, &p)
        }
        Algorithm::SproutPP => {
            let p = params.sproutpp(SproutPPParams::empirical(inst.n(), seed));
            sproutpp(inst, &p)
        }
        Algorithm::Greedy => Ok(greedy(inst)),
        Algorithm::RepeatedGreedy => repeated_greedy(inst, params.rounds()),
        Algorithm::DensitySearchSgs => {
            density_search_sgs(inst, &params.sprout(SproutParams::empirical()))
        }
    }
}

/// Runs every (sweep point, algorithm, repeat) task in parallel and returns
/// records ordered by sweep point, then algorithm as listed, then repeat.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let algos = cfg.algorithms()?;
    let spec = cfg.instance_spec.spec(cfg.seed)?;
    let instances = sweep_instances(cfg, &spec)?;
    let values = cfg.sweep.values();
    let mut tasks = Vec::new();
    for (point, &value) in values.iter().enumerate() {
        for &algo in &algos {
            let repeats = if algo.is_randomized() { cfg.repeats } else { 1 };
            for repeat in 0..repeats {
                tasks.push((point, value, algo, repeat));
            }
        }
    }
    let kind = cfg.sweep.kind();
    tasks
        .into_par_iter()
        .map(|(point, value, algo, repeat)| {
            let seed = derived_seed(cfg.seed, repeat);
            let mut record = run_one(&instances[point], algo, &cfg.params, seed)?;
            if !algo.is_randomized() {
                record.seed = None;
            }
            Ok(ExperimentRecord {
                sweep_kind: kind,
                sweep_value: value,
                repeat,
                record,
            })
        })
        .collect()
}

/// Writes the result CSV. `wall_ms` stays blank unless `timing` is set, so
/// repeated runs produce identical bytes.
pub fn write_csv(records: &[ExperimentRecord], writer: impl Write, timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let set = r
            .record
            .set
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let wall = match (timing, r.record.wall_ms) {
            (true, Some(ms)) => format!("{ms:.3}"),
            _ => String::new(),
        };
        w.write_record([
            r.sweep_kind.to_string(),
            r.sweep_value.to_string(),
            r.record.algo.clone(),
            r.repeat.to_string(),
            r.record.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.record.value.to_string(),
            r.record.oracle_calls.to_string(),
            wall,
            set,
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub sweep_value: f64,
    pub algo: String,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation; zero for a single run.
    pub std: f64,
    pub mean_oracle_calls: f64,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>8.4}  {:<10} {:>12.4} ± {:<10.4} calls {:.0} (n={})",
            self.sweep_value, self.algo, self.mean, self.std, self.mean_oracle_calls, self.runs
        )
    }
}

/// Mean and spread per (sweep point, algorithm), in record order.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<Summary> {
    let mut groups: Vec<((f64, &str), Vec<&ResultRecord>)> = Vec::new();
    for r in records {
        let key = (r.sweep_value, r.record.algo.as_str());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, g)) => g.push(&r.record),
            None => groups.push((key, vec![&r.record])),
        }
    }
    groups
        .into_iter()
        .map(|((sweep_value, algo), g)| {
            let n = g.len() as f64;
            let mean = g.iter().map(|r| r.value).sum::<f64>() / n;
            let var = if g.len() > 1 {
                g.iter().map(|r| (r.value - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            Summary {
                sweep_value,
                algo: algo.to_string(),
                runs: g.len(),
                mean,
                std: var.sqrt(),
                mean_oracle_calls: g.iter().map(|r| r.oracle_calls as f64).sum::<f64>() / n,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(algorithms: &[&str]) -> ExperimentConfig {
        ExperimentConfig {
            instance_spec: InstanceSource::Maxcut {
                n: 40,
                p: 0.1,
                graph_seed: None,
                config: MaxCutConfig::default(),
            },
            algorithms: algorithms.iter().map(|a| a.to_string()).collect(),
            params: ParamOverrides::default(),
            sweep: Sweep::BudgetFractions(vec![0.64, 1.0]),
            repeats: 3,
            seed: 5,
        }
    }

    #[test]
    fn default_grid() {
        let Sweep::BudgetFractions(v) = Sweep::default() else {
            panic!()
        };
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], 0.64);
        assert!((v[9] - 1.0).abs() < 1e-12);
        assert!((v[1] - 0.68).abs() < 1e-12);
    }

    #[test]
    fn unknown_and_empty_algorithms() {
        assert!(matches!(
            config(&["nope"]).validate(),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            config(&["fantom"]).validate(),
            Err(Error::Config(_))
        ));
        assert!(matches!(config(&[]).validate(), Err(Error::Config(_))));
        let mut c = config(&["greedy"]);
        c.repeats = 0;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.repeats = 1;
        c.sweep = Sweep::BudgetFractions(vec![1.5]);
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn row_counts_and_seeds() {
        let cfg = config(&["greedy", "sproutpp"]);
        let records = run_experiment(&cfg).unwrap();
        assert_eq!(records.len(), cfg.expected_rows().unwrap());
        assert_eq!(records.len(), 2 * (1 + 3));
        let seeds: Vec<u64> = records
            .iter()
            .filter(|r| r.sweep_value == 0.64 && r.record.algo == "sproutpp")
            .map(|r| r.record.seed.unwrap())
            .collect();
        assert_eq!(seeds.len(), 3);
        assert!(seeds[0] != seeds[1] && seeds[1] != seeds[2] && seeds[0] != seeds[2]);
        let order: Vec<(f64, &str, usize)> = records
            .iter()
            .map(|r| (r.sweep_value, r.record.algo.as_str(), r.repeat))
            .collect();
        assert_eq!(order[0], (0.64, "greedy", 0));
        assert_eq!(order[1], (0.64, "sproutpp", 0));
        assert_eq!(order[4], (1.0, "greedy", 0));
    }

    #[test]
    fn single_deterministic_point() {
        let mut cfg = config(&["greedy"]);
        cfg.sweep = Sweep::BudgetFractions(vec![1.0]);
        assert_eq!(run_experiment(&cfg).unwrap().len(), 1);
    }

    #[test]
    fn records_feasible_at_their_point() {
        let cfg = config(&["greedy", "rp_greedy", "dssgs", "sprout", "sproutpp"]);
        let records = run_experiment(&cfg).unwrap();
        let spec = cfg.instance_spec.spec(cfg.seed).unwrap();
        let insts = sweep_instances(&cfg, &spec).unwrap();
        for r in &records {
            let point = if r.sweep_value == 0.64 { 0 } else { 1 };
            assert!(insts[point].is_feasible(&r.record.set), "{r:?}");
        }
    }

    #[test]
    fn csv_is_reproducible() {
        let cfg = config(&["greedy", "sproutpp"]);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&run_experiment(&cfg).unwrap(), &mut a, false).unwrap();
        write_csv(&run_experiment(&cfg).unwrap(), &mut b, false).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        assert_eq!(text.lines().count(), 1 + cfg.expected_rows().unwrap());
    }

    #[test]
    fn cardinality_sweep_sets_cap() {
        let mut cfg = config(&["greedy"]);
        cfg.sweep = Sweep::CardinalityCaps(vec![1, 3]);
        let records = run_experiment(&cfg).unwrap();
        assert_eq!(records[0].sweep_kind, "cardinality_cap");
        assert!(records[0].record.set.len() <= 1);
        assert!(records[1].record.set.len() <= 3);
    }

    #[test]
    fn summary_statistics() {
        let mk = |v: f64| ExperimentRecord {
            sweep_kind: "budget_fraction",
            sweep_value: 1.0,
            repeat: 0,
            record: ResultRecord::new("x", vec![], v, 2),
        };
        let s = summarize(&[mk(1.0), mk(3.0)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mean, 2.0);
        assert!((s[0].std - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(summarize(&[mk(4.0)])[0].std, 0.0);
    }

    #[test]
    fn config_json_shape() {
        let text = r#"{
            "instance_spec": {"kind": "maxcut", "n": 30},
            "algorithms": ["greedy"],
            "sweep": {"cardinality_caps": [4, 10]},
            "repeats": 2,
            "seed": 1
        }"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(cfg.sweep, Sweep::CardinalityCaps(vec![4, 10]));
        assert!(matches!(cfg.instance_spec, InstanceSource::Maxcut { p, .. } if p == 0.01));
        assert!(ExperimentConfig::from_json(r#"{"algorithms": []}"#).is_err());
    }
}
