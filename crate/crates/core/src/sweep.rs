//! Monte-Carlo deadline sweeps over i.i.d. Rayleigh fading.
//!
//! Channel draws use ChaCha8 with one stream per trial: the generator is
//! seeded with `ChaCha8Rng::seed_from_u64(seed)`, switched to stream
//! `trial_index`, and yields the power gains of the links in the order
//! user-1 forward, user-2 forward, user-1 backward, user-2 backward. A trial
//! therefore sees the same channels regardless of how trials are scheduled,
//! and every scheme and deadline reuses them.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelRealization, SystemParams};
use crate::search::{solve_all, OptimalSolution, Scheme, SearchConfig};

pub const CSV_HEADER: &str = "deadline_T,scheme,mean_energy,feasible_fraction,n_trials,seed";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
    pub n_trials: usize,
    pub seed: u64,
    /// Mean power gain `E|h|^2` of every link.
    pub avg_power_loss: f64,
    pub params: SystemParams,
    pub search: SearchConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            t_min: 0.7,
            t_max: 1.5,
            t_points: 9,
            n_trials: 500,
            seed: 1,
            avg_power_loss: 1e-6,
            params: SystemParams::default(),
            search: SearchConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_max >= self.t_min && self.t_max.is_finite()) {
            return Err(Error::InvalidParams {
                name: "t_min/t_max",
                reason: format!("need 0 < t_min <= t_max, got [{}, {}]", self.t_min, self.t_max),
            });
        }
        if self.t_points < 2 {
            return Err(Error::InvalidParams {
                name: "t_points",
                reason: format!("need at least 2 deadlines, got {}", self.t_points),
            });
        }
        if self.n_trials == 0 {
            return Err(Error::InvalidParams {
                name: "n_trials",
                reason: "need at least one trial".into(),
            });
        }
        if !(self.avg_power_loss > 0.0 && self.avg_power_loss.is_finite()) {
            return Err(Error::InvalidParams {
                name: "avg_power_loss",
                reason: format!("must be > 0, got {}", self.avg_power_loss),
            });
        }
        self.params.validate()?;
        self.search.validate()
    }

    /// Evenly spaced deadlines from `t_min` to `t_max`, rounded to picoseconds
    /// so that grid values print cleanly.
    pub fn deadlines(&self) -> Vec<f64> {
        let last = (self.t_points - 1) as f64;
        (0..self.t_points)
            .map(|i| {
                let t = self.t_min + (self.t_max - self.t_min) * i as f64 / last;
                (t * 1e12).round() / 1e12
            })
            .collect()
    }
}

/// Draws one Rayleigh channel realization: each `|h|^2` is exponential with
/// mean `avg_power_loss`.
pub fn sample_channels<R: Rng + ?Sized>(rng: &mut R, avg_power_loss: f64, noise_power: f64) -> ChannelRealization {
    let mut draw = || {
        let h: f64 = rng.sample(Exp1);
        h * avg_power_loss
    };
    let (h1f, h2f, h1b, h2b) = (draw(), draw(), draw(), draw());
    ChannelRealization::from_power_gains(h1f, h2f, h1b, h2b, noise_power)
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Channels of one trial.
pub fn trial_channels(seed: u64, trial: u64, avg_power_loss: f64, noise_power: f64) -> ChannelRealization {
    sample_channels(&mut trial_rng(seed, trial), avg_power_loss, noise_power)
}

/// One point of the energy-versus-deadline curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    #[serde(rename = "deadline_T")]
    pub deadline: f64,
    pub scheme: Scheme,
    /// Mean over feasible trials; NaN when no trial was feasible.
    pub mean_energy: f64,
    pub feasible_fraction: f64,
    pub n_trials: usize,
    pub seed: u64,
}

/// Records plus the per-trial energies they were averaged from.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub deadlines: Vec<f64>,
    /// `solutions[deadline][trial][scheme]` in [`Scheme::ALL`] order; `None` when infeasible.
    pub solutions: Vec<Vec<[Option<OptimalSolution>; 3]>>,
    pub channels: Vec<ChannelRealization>,
    /// T ascending, then schemes in [`Scheme::ALL`] order.
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    /// Total energy of one trial, `None` when infeasible.
    pub fn energy(&self, deadline: usize, trial: usize, scheme: Scheme) -> Option<f64> {
        let s = Scheme::ALL.iter().position(|&x| x == scheme).expect("scheme listed in Scheme::ALL");
        self.solutions[deadline][trial][s].map(|sol| sol.energy.total)
    }
}

/// Solves every (deadline, trial, scheme) combination and aggregates.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let deadlines = config.deadlines();
    let channels: Vec<ChannelRealization> = (0..config.n_trials as u64)
        .map(|t| trial_channels(config.seed, t, config.avg_power_loss, config.params.noise_power))
        .collect();

    let jobs: Vec<(usize, usize)> = (0..deadlines.len())
        .flat_map(|d| (0..channels.len()).map(move |t| (d, t)))
        .collect();
    let solved: Vec<[Option<OptimalSolution>; 3]> = jobs
        .par_iter()
        .map(|&(d, t)| {
            let params = config.params.with_deadline(deadlines[d]);
            solve_all(&params, &channels[t], &config.search).map(|all| all.map(|r| r.ok()))
        })
        .collect::<Result<_>>()?;

    let solutions: Vec<Vec<[Option<OptimalSolution>; 3]>> =
        solved.chunks(channels.len()).map(|c| c.to_vec()).collect();
    let mut records = Vec::with_capacity(deadlines.len() * 3);
    for (d, &deadline) in deadlines.iter().enumerate() {
        for (s, scheme) in Scheme::ALL.into_iter().enumerate() {
            let mut sum = 0.0;
            let mut feasible = 0usize;
            for trial in &solutions[d] {
                if let Some(sol) = &trial[s] {
                    sum += sol.energy.total;
                    feasible += 1;
                }
            }
            records.push(SweepRecord {
                deadline,
                scheme,
                mean_energy: if feasible > 0 { sum / feasible as f64 } else { f64::NAN },
                feasible_fraction: feasible as f64 / channels.len() as f64,
                n_trials: channels.len(),
                seed: config.seed,
            });
        }
    }
    Ok(SweepResult {
        deadlines,
        solutions,
        channels,
        records,
    })
}

/// Writes records as CSV with the fixed header.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.deadline, r.scheme, r.mean_energy, r.feasible_fraction, r.n_trials, r.seed
        )?;
    }
    Ok(())
}
