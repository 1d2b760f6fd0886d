//! Submodular maximization under the intersection of `k` matroids and `m`
//! knapsack constraints.
//!
//! The main entry points are [`sprout::sprout`], which enumerates every
//! feasible seed set of a given size, and [`sproutpp::sproutpp`], which
//! expands a random sample of good single-element seeds. Both grow the rest
//! of the solution with the simultaneous greedy in [`sgs`], searching for a
//! density ratio that balances objective value against knapsack usage.
//!
//! [`baselines`] holds the comparators and an exhaustive solver, and
//! [`bench`] builds the max-cut and movie-recommendation experiments.

pub mod baselines;
pub mod bench;
pub mod error;
pub mod instance;
pub mod knapsack;
pub mod matroid;
pub mod objectives;
pub mod oracle;
pub mod record;
pub mod search;
pub mod sgs;
pub mod sprout;
pub mod sproutpp;
pub mod theory;

pub use error::{Error, Result};
pub use instance::{Instance, InstanceSpec};
pub use oracle::{Element, Objective, ValueOracle};
pub use record::ResultRecord;
