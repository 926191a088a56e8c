//! Brute-force reference solver.
//!
//! Enumerates relay power, partition and offload split on a grid and
//! evaluates the system model directly. It shares nothing with the KKT-based
//! solver except the model functions, so agreement between the two is an
//! independent check of the closed forms.
//!
//! The grid is three-dimensional: the coding coupling fixes `alpha2` from
//! `alpha1`, and the offload budget is always spent completely (`tau2` is
//! whatever the deadline leaves). [`brute_force_with_slack`] drops the second
//! assumption on a small four-dimensional grid to check it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    broadcast_quantities, compute_times_and_energies, evaluate_schedule, offload_energy, power_for_duration,
    ChannelRealization, EnergyBreakdown, Schedule, SystemParams,
};
use crate::search::{log_grid, solve, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub pr_points: usize,
    pub alpha_points: usize,
    pub tau_points: usize,
    pub pr_min: f64,
    pub pr_max: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            pr_points: 128,
            alpha_points: 128,
            tau_points: 128,
            pr_min: 1e-4,
            pr_max: 10.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("pr_points", self.pr_points),
            ("alpha_points", self.alpha_points),
            ("tau_points", self.tau_points),
        ] {
            if n < 32 {
                return Err(Error::InvalidParams {
                    name,
                    reason: format!("oracle grids need at least 32 points, got {n}"),
                });
            }
        }
        if !(self.pr_min > 0.0 && self.pr_min < self.pr_max) {
            return Err(Error::InvalidParams {
                name: "pr_min/pr_max",
                reason: format!("need 0 < pr_min < pr_max, got [{}, {}]", self.pr_min, self.pr_max),
            });
        }
        Ok(())
    }

    /// A grid that contains every point of this one and twice as many intervals.
    pub fn refined(&self) -> Self {
        Self {
            pr_points: 2 * self.pr_points - 1,
            alpha_points: 2 * self.alpha_points - 1,
            tau_points: 2 * self.tau_points + 1,
            ..*self
        }
    }

    fn alpha_grid(&self, params: &SystemParams) -> Vec<f64> {
        let lo = params.alpha1_min();
        let last = (self.alpha_points - 1) as f64;
        (0..self.alpha_points)
            .map(|i| match i {
                0 => lo,
                i if i == self.alpha_points - 1 => 1.0,
                i => lo + (1.0 - lo) * i as f64 / last,
            })
            .collect()
    }
}

/// Minimum found by the brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub schedule: Schedule,
    pub energy: EnergyBreakdown,
}

/// Grid point `(pr, alpha1)` with everything except the offload split fixed.
struct Slice {
    alpha1: f64,
    alpha2: f64,
    tau3: f64,
    tau4: f64,
    tau_hat: f64,
    /// `E3 + 2 Cu + Cr`.
    fixed_energy: f64,
}

fn slice(params: &SystemParams, chan: &ChannelRealization, pr: f64, alpha1: f64) -> Option<Slice> {
    let bc = broadcast_quantities(params, chan, pr, alpha1).ok()?;
    if !bc.is_feasible() {
        return None;
    }
    let alpha2 = params.alpha2_for(alpha1);
    let load = compute_times_and_energies(params, alpha1, alpha2, bc.tau3);
    let tau4 = load.t_user.max(load.t_relay);
    let tau_hat = params.deadline - bc.tau3 - tau4;
    if !(tau_hat > 0.0) {
        return None;
    }
    Some(Slice {
        alpha1,
        alpha2,
        tau3: bc.tau3,
        tau4,
        tau_hat,
        fixed_energy: bc.e3 + 2.0 * load.cu + load.cr,
    })
}

#[derive(Clone, Copy)]
struct Best {
    energy: f64,
    pr: f64,
    alpha1: f64,
    tau1: f64,
    tau2: f64,
}

fn keep_first_min(acc: Option<Best>, next: Option<Best>) -> Option<Best> {
    match (acc, next) {
        (Some(a), Some(b)) if b.energy < a.energy => Some(b),
        (None, b) => b,
        (a, _) => a,
    }
}

fn finish(params: &SystemParams, chan: &ChannelRealization, best: Best) -> Result<OracleResult> {
    let b = params.bandwidth;
    let s = slice(params, chan, best.pr, best.alpha1).expect("argmin lies on a feasible slice");
    let schedule = Schedule {
        alpha1: s.alpha1,
        alpha2: s.alpha2,
        tau1: best.tau1,
        tau2: best.tau2,
        tau3: s.tau3,
        tau4: s.tau4,
        power_user1: power_for_duration(best.tau1, params.task_bits_1, chan.gamma_1f, b)?,
        power_user2: power_for_duration(best.tau2, params.task_bits_2, chan.gamma_2f, b)?,
        power_relay: best.pr,
    };
    let energy = evaluate_schedule(params, chan, &schedule)?;
    Ok(OracleResult { schedule, energy })
}

fn no_feasible_point(params: &SystemParams) -> Error {
    Error::Infeasible(format!("no oracle grid point meets deadline {}", params.deadline))
}

/// Minimizes the total energy over a `(P_r, alpha1, tau1)` grid.
///
/// Relay powers are log-spaced, `alpha1` is uniform over its admissible range
/// including both ends, and `tau1` takes the interior points `j/(n+1)` of the
/// offload budget. Ties keep the lowest grid index.
pub fn brute_force(params: &SystemParams, chan: &ChannelRealization, config: &OracleConfig) -> Result<OracleResult> {
    params.validate()?;
    chan.validate()?;
    config.validate()?;
    let b = params.bandwidth;
    let alphas = config.alpha_grid(params);
    let n = config.tau_points;
    let per_pr: Vec<Option<Best>> = log_grid(config.pr_min, config.pr_max, config.pr_points)
        .into_par_iter()
        .map(|pr| {
            let mut best: Option<Best> = None;
            for &alpha1 in &alphas {
                let Some(s) = slice(params, chan, pr, alpha1) else {
                    continue;
                };
                for j in 1..=n {
                    let tau1 = s.tau_hat * j as f64 / (n + 1) as f64;
                    let tau2 = s.tau_hat - tau1;
                    let (Ok(e1), Ok(e2)) = (
                        offload_energy(tau1, params.task_bits_1, chan.gamma_1f, b),
                        offload_energy(tau2, params.task_bits_2, chan.gamma_2f, b),
                    ) else {
                        continue;
                    };
                    let energy = e1 + e2 + s.fixed_energy;
                    if energy.is_finite() && best.is_none_or(|x| energy < x.energy) {
                        best = Some(Best {
                            energy,
                            pr,
                            alpha1,
                            tau1,
                            tau2,
                        });
                    }
                }
            }
            best
        })
        .collect();
    let best = per_pr.into_iter().fold(None, keep_first_min).ok_or_else(|| no_feasible_point(params))?;
    finish(params, chan, best)
}

/// Brute force with the offload budget as an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlackResult {
    pub result: OracleResult,
    /// `(tau1 + tau2) / tau_hat` at the minimum; 1 when the whole budget is used.
    pub budget_used: f64,
}

/// Four-dimensional brute force over `(P_r, alpha1, tau1, tau2)` with
/// `tau1 + tau2 <= tau_hat`, where both durations take the points
/// `j/(n+1)` of the budget.
pub fn brute_force_with_slack(
    params: &SystemParams,
    chan: &ChannelRealization,
    config: &OracleConfig,
) -> Result<SlackResult> {
    params.validate()?;
    chan.validate()?;
    config.validate()?;
    let b = params.bandwidth;
    let alphas = config.alpha_grid(params);
    let n = config.tau_points;
    let step = |s: &Slice, j: usize| s.tau_hat * j as f64 / (n + 1) as f64;
    let per_pr: Vec<Option<(Best, f64)>> = log_grid(config.pr_min, config.pr_max, config.pr_points)
        .into_par_iter()
        .map(|pr| {
            let mut best: Option<(Best, f64)> = None;
            for &alpha1 in &alphas {
                let Some(s) = slice(params, chan, pr, alpha1) else {
                    continue;
                };
                for j in 1..=n {
                    for m in 1..=(n + 1 - j) {
                        let tau1 = step(&s, j);
                        let tau2 = step(&s, m);
                        let (Ok(e1), Ok(e2)) = (
                            offload_energy(tau1, params.task_bits_1, chan.gamma_1f, b),
                            offload_energy(tau2, params.task_bits_2, chan.gamma_2f, b),
                        ) else {
                            continue;
                        };
                        let energy = e1 + e2 + s.fixed_energy;
                        if energy.is_finite() && best.is_none_or(|(x, _)| energy < x.energy) {
                            let used = (j + m) as f64 / (n + 1) as f64;
                            best = Some((
                                Best {
                                    energy,
                                    pr,
                                    alpha1,
                                    tau1,
                                    tau2,
                                },
                                used,
                            ));
                        }
                    }
                }
            }
            best
        })
        .collect();
    let mut best: Option<(Best, f64)> = None;
    for x in per_pr.into_iter().flatten() {
        if best.is_none_or(|(b, _)| x.0.energy < b.energy) {
            best = Some(x);
        }
    }
    let (best, budget_used) = best.ok_or_else(|| no_feasible_point(params))?;
    Ok(SlackResult {
        result: finish(params, chan, best)?,
        budget_used,
    })
}

/// Closed-form solver against brute force on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub closed_form_energy: f64,
    pub oracle_energy: f64,
    /// `closed_form / oracle - 1`; negative when the closed form beats the grid.
    pub gap: f64,
    pub rel_tol: f64,
    pub passed: bool,
}

impl ValidationReport {
    /// Passes when `closed_form <= oracle (1 + rel_tol)`.
    pub fn compare(closed_form_energy: f64, oracle_energy: f64, rel_tol: f64) -> Self {
        let gap = closed_form_energy / oracle_energy - 1.0;
        Self {
            closed_form_energy,
            oracle_energy,
            gap,
            rel_tol,
            passed: closed_form_energy <= oracle_energy * (1.0 + rel_tol),
        }
    }
}

/// Runs the proposed solver and the brute force with explicit configurations.
pub fn validate_with(
    params: &SystemParams,
    chan: &ChannelRealization,
    rel_tol: f64,
    search: &SearchConfig,
    oracle: &OracleConfig,
) -> Result<ValidationReport> {
    let closed = solve(params, chan, search)?;
    let reference = brute_force(params, chan, oracle)?;
    Ok(ValidationReport::compare(closed.energy.total, reference.energy.total, rel_tol))
}

/// [`validate_with`] using the default search and the 128^3 oracle grid.
pub fn validate(params: &SystemParams, chan: &ChannelRealization, rel_tol: f64) -> Result<ValidationReport> {
    validate_with(params, chan, rel_tol, &SearchConfig::default(), &OracleConfig::default())
}
