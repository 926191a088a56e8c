//! Energy-optimal joint offloading, broadcasting and computing for two users
//! exchanging computation results through a two-way relay with an edge server.
//!
//! For a fixed relay power the optimal task partition is found from the KKT
//! conditions of the offload split ([`inner`]) and a two-case analysis of the
//! partition ([`partition`]); a one-dimensional search over the relay power
//! ([`search`]) completes the solution. [`oracle`] is an independent grid
//! search used to verify it, and [`sweep`] runs Monte-Carlo deadline sweeps.

// `!(x > 0.0)` style guards reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod inner;
pub mod model;
pub mod oracle;
pub mod partition;
pub mod search;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
pub use inner::{split_budget, InnerSolution};
pub use model::{
    check_feasible, evaluate_schedule, ChannelRealization, EnergyBreakdown, Schedule, SystemParams, Verdict, Violation,
};
pub use oracle::{brute_force, validate, OracleConfig, OracleResult, ValidationReport};
pub use partition::{solve_given_pr, CandidateLabel, CandidateResult};
pub use search::{solve, solve_all, solve_baseline, OptimalSolution, Scheme, SearchConfig};
pub use special::lambert_w0;
pub use sweep::{run_sweep, SweepConfig, SweepRecord, SweepResult};
