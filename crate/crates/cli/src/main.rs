//! `sprout` command-line tool: run one algorithm, sweep a benchmark,
//! solve small instances exactly, or generate instances.
//!
//! Only machine-readable output goes to stdout; logs go to stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use sprout::baselines::{brute_force, density_search_sgs, greedy, repeated_greedy};
use sprout::bench::{
    gen_er_graph, maxcut_spec, movie_spec, run_experiment, summarize, synthetic_movies, write_csv,
    write_movies, ExperimentConfig, MaxCutConfig, MovieConfig, ParamOverrides,
};
use sprout::sprout::{sprout, SproutParams};
use sprout::sproutpp::{sproutpp, SproutPPParams};
use sprout::theory::theory_params;
use sprout::{Error, Instance, InstanceSpec, ResultRecord};

#[derive(Debug, Parser)]
#[command(
    name = "sprout",
    version,
    about = "Submodular maximization under matroid and knapsack constraints"
)]
struct Cli {
    /// More log output on stderr (-v info, -vv debug, -vvv trace).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one algorithm on an instance file and print its result record.
    Run(RunArgs),
    /// Run an experiment sweep and write the result CSV.
    Bench(BenchArgs),
    /// Exhaustive optimum of a small instance.
    Brute(BruteArgs),
    /// Generate a graph, a movie table or an instance file.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Sprout,
    Sproutpp,
    Greedy,
    #[value(name = "rp_greedy")]
    RpGreedy,
    Dssgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// `ℓ`, `β`, `γ` from the approximation guarantee.
    Theory,
    /// The settings used in the experiments.
    Empirical,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long = "c-enum")]
    c_enum: Option<usize>,
    /// Number of seeds SPROUT++ expands.
    #[arg(long)]
    tc: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Rounds of repeated greedy.
    #[arg(long)]
    rounds: Option<usize>,
}

impl ParamArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            eps: self.eps,
            delta: self.delta,
            ell: self.ell,
            beta: self.beta,
            gamma: self.gamma,
            c_enum: self.c_enum,
            tc: self.tc,
            alpha: self.alpha,
            mu: self.mu,
            rounds: self.rounds,
        }
    }

    fn merge(&self, base: ParamOverrides) -> ParamOverrides {
        let o = self.overrides();
        ParamOverrides {
            eps: o.eps.or(base.eps),
            delta: o.delta.or(base.delta),
            ell: o.ell.or(base.ell),
            beta: o.beta.or(base.beta),
            gamma: o.gamma.or(base.gamma),
            c_enum: o.c_enum.or(base.c_enum),
            tc: o.tc.or(base.tc),
            alpha: o.alpha.or(base.alpha),
            mu: o.mu.or(base.mu),
            rounds: o.rounds.or(base.rounds),
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, env = "SUBMOD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "theory")]
    preset: Preset,
    #[command(flatten)]
    params: ParamArgs,
    /// Write the record here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,
    /// Keep wall-clock time in the output (breaks byte-for-byte reproducibility).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Experiment config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Result CSV path; without it the CSV goes to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, env = "SUBMOD_SEED")]
    seed: Option<u64>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct BruteArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Only consider sets of at most this many elements.
    #[arg(long)]
    size_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Erdős–Rényi graph as an edge list, or a max-cut instance.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.01)]
        p: f64,
        #[arg(long, env = "SUBMOD_SEED", default_value_t = 0)]
        seed: u64,
        /// Emit a max-cut instance JSON instead of the edge list.
        #[arg(long)]
        as_instance: bool,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long, default_value_t = 100.0)]
        degree_budget: f64,
        #[arg(long, default_value_t = 40.0)]
        digit_budget: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random movie table in the ingest CSV format, or a movie instance.
    SyntheticMovies {
        #[arg(long, default_value_t = 300)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        dim: usize,
        #[arg(long, env = "SUBMOD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        as_instance: bool,
        /// Add the second release-year knapsack.
        #[arg(long)]
        third_knapsack: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::EmptyInstance => 3,
        Error::TooLarge(_) => 4,
        _ => 2,
    }
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_instance(path: &Path) -> sprout::Result<Instance> {
    let inst = InstanceSpec::load(path)?.build()?;
    info!(
        "loaded {} (n={}, k={}, m={})",
        path.display(),
        inst.n(),
        inst.k(),
        inst.m()
    );
    Ok(inst)
}

fn sprout_params(
    inst: &Instance,
    preset: Preset,
    o: &ParamOverrides,
) -> sprout::Result<SproutParams> {
    let base = match preset {
        Preset::Theory => SproutParams::theory(inst.k(), inst.m(), o.eps.unwrap_or(0.25))?,
        Preset::Empirical => SproutParams::empirical(),
    };
    Ok(o.sprout(base))
}

fn sproutpp_params(
    inst: &Instance,
    preset: Preset,
    o: &ParamOverrides,
    seed: u64,
) -> sprout::Result<SproutPPParams> {
    let mut base = SproutPPParams::empirical(inst.n(), seed);
    if preset == Preset::Theory {
        let eps = o.eps.unwrap_or(base.eps);
        let t = theory_params(inst.k().max(1), inst.m().max(1), eps)?;
        base = SproutPPParams {
            ell: t.ell,
            beta: t.beta,
            gamma: t.gamma,
            eps,
            delta: eps,
            ..base
        };
    }
    Ok(o.sproutpp(base))
}

fn cmd_run(args: &RunArgs) -> sprout::Result<()> {
    let inst = load_instance(&args.instance)?;
    if inst.feasible_singletons().is_empty() {
        return Err(Error::EmptyInstance);
    }
    let o = args.params.overrides();
    let record = match args.algo {
        Algo::Sprout => sprout(&inst, &sprout_params(&inst, args.preset, &o)?)?,
        Algo::Sproutpp => sproutpp(&inst, &sproutpp_params(&inst, args.preset, &o, args.seed)?)?,
        Algo::Greedy => greedy(&inst),
        Algo::RpGreedy => repeated_greedy(&inst, o.rounds())?,
        Algo::Dssgs => density_search_sgs(&inst, &sprout_params(&inst, args.preset, &o)?)?,
    };
    let record = if args.timing {
        record
    } else {
        record.without_timing()
    };
    let mut out = output(args.out.as_deref())?;
    if args.pretty {
        write_pretty(&mut out, &record)?;
    } else {
        serde_json::to_writer(&mut out, &record)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn write_pretty(out: &mut dyn Write, r: &ResultRecord) -> io::Result<()> {
    writeln!(out, "algorithm     {}", r.algo)?;
    writeln!(out, "value         {}", r.value)?;
    writeln!(out, "set           {:?}", r.set)?;
    writeln!(out, "oracle calls  {}", r.oracle_calls)?;
    if let Some(seed) = r.seed {
        writeln!(out, "seed          {seed}")?;
    }
    if let Some(ms) = r.wall_ms {
        writeln!(out, "wall time     {ms:.1} ms")?;
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> sprout::Result<()> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.params = args.params.merge(cfg.params);
    cfg.validate()?;
    info!(
        "running {} records over {} sweep points",
        cfg.expected_rows()?,
        cfg.sweep.values().len()
    );
    let records = run_experiment(&cfg)?;
    let summary = summarize(&records);
    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&records, &mut w, args.timing)?;
            w.flush()?;
            let mut out = io::stdout().lock();
            if args.pretty {
                writeln!(
                    out,
                    "{:>8}  {:<10} {:>12}   {:<10}",
                    "sweep", "algo", "mean", "std"
                )?;
                for s in &summary {
                    writeln!(out, "{s}")?;
                }
            } else {
                for s in &summary {
                    serde_json::to_writer(&mut out, s)?;
                    writeln!(out)?;
                }
            }
        }
        None => {
            write_csv(&records, io::stdout().lock(), args.timing)?;
            for s in &summary {
                eprintln!("{s}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BruteOutput {
    value: f64,
    set: Vec<usize>,
    sets_examined: u64,
    oracle_calls: u64,
}

fn cmd_brute(args: &BruteArgs) -> sprout::Result<()> {
    let inst = load_instance(&args.instance)?;
    let r = brute_force(&inst, args.size_cap)?;
    let payload = BruteOutput {
        value: r.opt_value,
        set: r.opt_set,
        sets_examined: r.sets_examined,
        oracle_calls: r.oracle_calls,
    };
    let mut out = output(args.out.as_deref())?;
    if args.pretty {
        serde_json::to_writer_pretty(&mut out, &payload)?;
    } else {
        serde_json::to_writer(&mut out, &payload)?;
    }
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> sprout::Result<()> {
    match &args.kind {
        GenKind::Er {
            n,
            p,
            seed,
            as_instance,
            cap,
            degree_budget,
            digit_budget,
            out,
        } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Parameter(format!("p must lie in [0, 1], got {p}")));
            }
            let g = gen_er_graph(*n, *p, *seed);
            let mut w = output(out.as_deref())?;
            if *as_instance {
                let cfg = MaxCutConfig {
                    cap: *cap,
                    degree_budget: *degree_budget,
                    digit_budget: *digit_budget,
                };
                writeln!(w, "{}", maxcut_spec(&g, &cfg).to_json())?;
            } else {
                w.write_all(g.to_edge_list().as_bytes())?;
            }
            w.flush()?;
        }
        GenKind::SyntheticMovies {
            rows,
            dim,
            seed,
            as_instance,
            third_knapsack,
            out,
        } => {
            let movies = synthetic_movies(*rows, *dim, *seed);
            let mut w = output(out.as_deref())?;
            if *as_instance {
                let cfg = MovieConfig {
                    use_third_knapsack: *third_knapsack,
                    ..Default::default()
                };
                writeln!(w, "{}", movie_spec(&movies, &cfg)?.to_json())?;
            } else {
                write_movies(&movies, &mut w)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .target(env_logger::Target::Stderr)
        .init();

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }

    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Brute(a) => cmd_brute(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
