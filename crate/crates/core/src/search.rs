//! One-dimensional search over the relay transmit power, and the two
//! baseline schemes that fix the partition.
//!
//! The energy as a function of `P_r` is the pointwise minimum of the five
//! candidate families of [`crate::partition`]. Each family is sampled on a
//! log-spaced grid and then refined by golden-section search around its own
//! best grid point, so a family that wins only in a narrow window is not lost
//! when another family has the better grid sample.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{candidate_given_pr, candidates_given_pr, CandidateLabel, CandidateResult};
use crate::model::{ChannelRealization, EnergyBreakdown, Schedule, SystemParams};
use std::fmt;
use std::str::FromStr;

/// Partition strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Jointly optimized partition.
    Proposed,
    /// Every task bit is computed at the relay, `alpha1 = alpha2 = 1`.
    RelayComputing,
    /// Every task bit is computed at the users, `alpha1 = alpha2 = 0`.
    LocalComputing,
}

impl Scheme {
    /// Fixed reporting order.
    pub const ALL: [Scheme; 3] = [Scheme::Proposed, Scheme::RelayComputing, Scheme::LocalComputing];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::RelayComputing => "relay_computing",
            Scheme::LocalComputing => "local_computing",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.as_str() == s)
            .ok_or_else(|| Error::InvalidParams {
                name: "scheme",
                reason: format!("unknown scheme `{s}`"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub pr_min: f64,
    pub pr_max: f64,
    pub grid_points: usize,
    pub refine_iters: usize,
    pub scheme: Scheme,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            pr_min: 1e-4,
            pr_max: 10.0,
            grid_points: 200,
            refine_iters: 40,
            scheme: Scheme::Proposed,
        }
    }
}

impl SearchConfig {
    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.pr_min > 0.0 && self.pr_min < self.pr_max && self.pr_max.is_finite()) {
            return Err(Error::InvalidParams {
                name: "pr_min/pr_max",
                reason: format!("need 0 < pr_min < pr_max, got [{}, {}]", self.pr_min, self.pr_max),
            });
        }
        if self.grid_points < 16 {
            return Err(Error::InvalidParams {
                name: "grid_points",
                reason: format!("need at least 16, got {}", self.grid_points),
            });
        }
        Ok(())
    }

    /// Log-spaced relay powers from `pr_min` to `pr_max`, both included.
    pub fn grid(&self) -> Vec<f64> {
        log_grid(self.pr_min, self.pr_max, self.grid_points)
    }
}

pub(crate) fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (a + (b - a) * i as f64 / last).exp(),
        })
        .collect()
}

/// Best schedule found for a scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalSolution {
    pub schedule: Schedule,
    pub energy: EnergyBreakdown,
    pub scheme: Scheme,
    pub candidate_label: CandidateLabel,
}

impl OptimalSolution {
    fn from_candidate(c: CandidateResult, scheme: Scheme) -> Self {
        Self {
            schedule: c.schedule,
            energy: c.energy,
            scheme,
            candidate_label: c.label,
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimization of `f` on `[a, b]`.
///
/// Returns the best point evaluated and its value; non-finite values count as
/// `+inf`, so a partly infeasible bracket still converges to the feasible side.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let mut best = if fd < fc { (d, fd) } else { (c, fc) };
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

fn better(a: Option<CandidateResult>, b: CandidateResult) -> Option<CandidateResult> {
    match a {
        Some(a) if a.energy.total <= b.energy.total => Some(a),
        _ => Some(b),
    }
}

/// Grid search plus golden-section refinement of one candidate family.
///
/// `grid_values[i]` must be the family's result at `grid[i]`.
fn refine_family(
    params: &SystemParams,
    chan: &ChannelRealization,
    config: &SearchConfig,
    grid: &[f64],
    grid_values: &[Option<CandidateResult>],
    label: CandidateLabel,
) -> Option<CandidateResult> {
    let mut best_idx: Option<usize> = None;
    for (i, v) in grid_values.iter().enumerate() {
        if let Some(v) = v {
            if best_idx.is_none_or(|j| v.energy.total < grid_values[j].unwrap().energy.total) {
                best_idx = Some(i);
            }
        }
    }
    let idx = best_idx?;
    let mut best = grid_values[idx];
    // alpha1 = 1 does not broadcast; its energy does not depend on the relay power.
    if label == CandidateLabel::AlphaOne || config.refine_iters == 0 {
        return best;
    }
    let lo = grid[idx.saturating_sub(1)].ln();
    let hi = grid[(idx + 1).min(grid.len() - 1)].ln();
    let mut refined: Option<CandidateResult> = None;
    golden_section(
        |log_pr| match candidate_given_pr(params, chan, log_pr.exp(), label) {
            Ok(c) => {
                let e = c.energy.total;
                refined = better(refined, c);
                e
            }
            Err(_) => f64::INFINITY,
        },
        lo,
        hi,
        config.refine_iters,
    );
    if let Some(r) = refined {
        if r.energy.total < best.unwrap().energy.total {
            best = Some(r);
        }
    }
    best
}

fn infeasible(params: &SystemParams, scheme: Scheme) -> Error {
    Error::Infeasible(format!(
        "no relay power in the search range meets deadline {} with scheme {scheme}",
        params.deadline
    ))
}

fn family_optima(
    params: &SystemParams,
    chan: &ChannelRealization,
    config: &SearchConfig,
) -> Vec<Option<CandidateResult>> {
    let grid = config.grid();
    let evaluated: Vec<Vec<Option<CandidateResult>>> = grid
        .par_iter()
        .map(|&pr| {
            candidates_given_pr(params, chan, pr)
                .into_iter()
                .map(|(_, c)| c.ok())
                .collect()
        })
        .collect();
    CandidateLabel::ALL
        .par_iter()
        .enumerate()
        .map(|(f, &label)| {
            let column: Vec<Option<CandidateResult>> = evaluated.iter().map(|row| row[f]).collect();
            refine_family(params, chan, config, &grid, &column, label)
        })
        .collect()
}

fn proposed_from_families(params: &SystemParams, families: &[Option<CandidateResult>]) -> Result<OptimalSolution> {
    let mut best: Option<CandidateResult> = None;
    for c in families.iter().flatten() {
        if best.is_none_or(|b| c.energy.total < b.energy.total) {
            best = Some(*c);
        }
    }
    best.map(|c| OptimalSolution::from_candidate(c, Scheme::Proposed))
        .ok_or_else(|| infeasible(params, Scheme::Proposed))
}

fn relay_computing(params: &SystemParams, chan: &ChannelRealization) -> Result<OptimalSolution> {
    let c = candidate_given_pr(params, chan, 0.0, CandidateLabel::AlphaOne)
        .map_err(|_| infeasible(params, Scheme::RelayComputing))?;
    Ok(OptimalSolution::from_candidate(c, Scheme::RelayComputing))
}

/// Minimum-energy schedule for the configured scheme.
pub fn solve(params: &SystemParams, chan: &ChannelRealization, config: &SearchConfig) -> Result<OptimalSolution> {
    params.validate()?;
    chan.validate()?;
    config.validate()?;
    if config.scheme != Scheme::Proposed {
        return solve_baseline(params, chan, config.scheme, config);
    }
    proposed_from_families(params, &family_optima(params, chan, config))
}

/// All three schemes in [`Scheme::ALL`] order, sharing one relay power search.
///
/// Results are identical to calling [`solve`] and [`solve_baseline`]
/// separately: the local-computing baseline is the lowest-`alpha1` family of
/// the proposed search, evaluated by the same code.
pub fn solve_all(
    params: &SystemParams,
    chan: &ChannelRealization,
    config: &SearchConfig,
) -> Result<[Result<OptimalSolution>; 3]> {
    params.validate()?;
    chan.validate()?;
    config.validate()?;
    let families = family_optima(params, chan, config);
    let local = families[0]
        .map(|c| OptimalSolution::from_candidate(c, Scheme::LocalComputing))
        .ok_or_else(|| infeasible(params, Scheme::LocalComputing));
    Ok([
        proposed_from_families(params, &families),
        relay_computing(params, chan),
        local,
    ])
}

/// Minimum-energy schedule for a fixed-partition baseline.
///
/// Relay computing needs no relay power search. Local computing uses the
/// lowest admissible `alpha1` (zero when `L1 <= L2`) and searches the relay
/// power exactly as the proposed scheme does for that candidate family.
pub fn solve_baseline(
    params: &SystemParams,
    chan: &ChannelRealization,
    scheme: Scheme,
    config: &SearchConfig,
) -> Result<OptimalSolution> {
    params.validate()?;
    chan.validate()?;
    config.validate()?;
    match scheme {
        Scheme::Proposed => Err(Error::InvalidParams {
            name: "scheme",
            reason: "solve_baseline takes relay_computing or local_computing".into(),
        }),
        Scheme::RelayComputing => relay_computing(params, chan),
        Scheme::LocalComputing => {
            let grid = config.grid();
            let label = CandidateLabel::AlphaZero;
            let values: Vec<Option<CandidateResult>> = grid
                .par_iter()
                .map(|&pr| candidate_given_pr(params, chan, pr, label).ok())
                .collect();
            refine_family(params, chan, config, &grid, &values, label)
                .map(|c| OptimalSolution::from_candidate(c, scheme))
                .ok_or_else(|| infeasible(params, scheme))
        }
    }
}
