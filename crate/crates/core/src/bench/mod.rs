//! Instance generators, dataset ingestion and experiment sweeps.

mod experiment;
mod maxcut;
mod movies;
mod small;

pub use experiment::{
    derived_seed, run_experiment, summarize, write_csv, Algorithm, ExperimentConfig,
    ExperimentRecord, InstanceSource, ParamOverrides, Summary, Sweep, CSV_HEADER,
};
pub use maxcut::{build_maxcut_instance, gen_er_graph, maxcut_spec, MaxCutConfig};
pub use movies::{
    build_movie_instance, movie_spec, read_movies, synthetic_movies, write_movies, MovieConfig,
    MovieRow,
};
pub use small::{small_spec, SmallKind};
