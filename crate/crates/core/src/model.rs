//! Physical and energy model of the two-user two-way relay MEC system.
//!
//! Time is split into four slots: user 1 offloads (`tau1`), user 2 offloads
//! (`tau2`), the relay broadcasts the cross-computed task bits with network
//! coding (`tau3`), and the nodes finish computing (`tau4`). The relay can
//! compute during the broadcast slot as well.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance between stored powers and powers recomputed from durations.
pub const POWER_REL_TOL: f64 = 1e-9;

/// Static scenario constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// System bandwidth in Hz.
    #[serde(rename = "bandwidth_B")]
    pub bandwidth: f64,
    /// Noise power at relay and users, in W.
    #[serde(rename = "noise_power_sigma2")]
    pub noise_power: f64,
    #[serde(rename = "task_bits_L1")]
    pub task_bits_1: f64,
    #[serde(rename = "task_bits_L2")]
    pub task_bits_2: f64,
    #[serde(rename = "cycles_per_bit_k")]
    pub cycles_per_bit: f64,
    /// Effective capacitance coefficient of the user CPUs.
    #[serde(rename = "eff_cap_user_eta_u")]
    pub eff_cap_user: f64,
    #[serde(rename = "eff_cap_relay_eta_r")]
    pub eff_cap_relay: f64,
    /// User CPU speed in cycles/s.
    #[serde(rename = "cpu_user_Fu")]
    pub cpu_user: f64,
    #[serde(rename = "cpu_relay_Fr")]
    pub cpu_relay: f64,
    /// Delay budget of the whole exchange, in s.
    #[serde(rename = "deadline_T")]
    pub deadline: f64,
}

impl Default for SystemParams {
    /// The reference scenario: 1 MHz, 1e-9 W noise, 1.8e5-bit tasks,
    /// 1e3 cycles/bit, eta = 1e-28, 0.3 GHz users, 0.6 GHz relay, T = 1 s.
    fn default() -> Self {
        Self {
            bandwidth: 1e6,
            noise_power: 1e-9,
            task_bits_1: 1.8e5,
            task_bits_2: 1.8e5,
            cycles_per_bit: 1e3,
            eff_cap_user: 1e-28,
            eff_cap_relay: 1e-28,
            cpu_user: 0.3e9,
            cpu_relay: 0.6e9,
            deadline: 1.0,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("bandwidth_B", self.bandwidth),
            ("noise_power_sigma2", self.noise_power),
            ("cycles_per_bit_k", self.cycles_per_bit),
            ("eff_cap_user_eta_u", self.eff_cap_user),
            ("eff_cap_relay_eta_r", self.eff_cap_relay),
            ("cpu_user_Fu", self.cpu_user),
            ("cpu_relay_Fr", self.cpu_relay),
            ("deadline_T", self.deadline),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams {
                    name,
                    reason: format!("must be finite and > 0, got {value}"),
                });
            }
        }
        for (name, value) in [("task_bits_L1", self.task_bits_1), ("task_bits_L2", self.task_bits_2)] {
            if !(value.is_finite() && value >= 1.0) {
                return Err(Error::InvalidParams {
                    name,
                    reason: format!("must be at least one bit, got {value}"),
                });
            }
        }
        Ok(())
    }

    pub fn with_deadline(mut self, deadline: f64) -> Self {
        self.deadline = deadline;
        self
    }

    /// Lowest admissible `alpha1`: the coupling `(1-a1) L1 = (1-a2) L2` with
    /// `a2 >= 0` forces `a1 >= 1 - L2/L1`.
    pub fn alpha1_min(&self) -> f64 {
        (1.0 - self.task_bits_2 / self.task_bits_1).max(0.0)
    }

    /// `alpha2` implied by `alpha1` through the coding coupling.
    pub fn alpha2_for(&self, alpha1: f64) -> f64 {
        if self.task_bits_1 == self.task_bits_2 {
            return alpha1;
        }
        1.0 - (1.0 - alpha1) * self.task_bits_1 / self.task_bits_2
    }

    /// Bits each user receives from the relay in the broadcast slot.
    pub fn broadcast_bits(&self, alpha1: f64) -> f64 {
        (1.0 - alpha1) * self.task_bits_1
    }

    /// Bits computed at the relay, `a1 L1 + a2 L2`.
    pub fn relay_bits(&self, alpha1: f64, alpha2: f64) -> f64 {
        alpha1 * self.task_bits_1 + alpha2 * self.task_bits_2
    }

    /// Relay computing time for all its bits, `k (a1 L1 + a2 L2) / Fr`.
    pub fn relay_compute_time(&self, relay_bits: f64) -> f64 {
        self.cycles_per_bit * relay_bits / self.cpu_relay
    }

    /// Energy per bit computed at a user, `k eta_u Fu^2`.
    pub fn user_energy_per_bit(&self) -> f64 {
        self.cycles_per_bit * self.eff_cap_user * self.cpu_user * self.cpu_user
    }

    /// Energy per bit computed at the relay, `k eta_r Fr^2`.
    pub fn relay_energy_per_bit(&self) -> f64 {
        self.cycles_per_bit * self.eff_cap_relay * self.cpu_relay * self.cpu_relay
    }
}

/// Channel power gains normalized to the noise power, in 1/W.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub gamma_1f: f64,
    pub gamma_2f: f64,
    pub gamma_1b: f64,
    pub gamma_2b: f64,
}

impl ChannelRealization {
    pub fn new(gamma_1f: f64, gamma_2f: f64, gamma_1b: f64, gamma_2b: f64) -> Result<Self> {
        let chan = Self {
            gamma_1f,
            gamma_2f,
            gamma_1b,
            gamma_2b,
        };
        chan.validate()?;
        Ok(chan)
    }

    /// All four links at the same gain.
    pub fn uniform(gamma: f64) -> Self {
        Self {
            gamma_1f: gamma,
            gamma_2f: gamma,
            gamma_1b: gamma,
            gamma_2b: gamma,
        }
    }

    /// Gains from raw power gains `|h|^2` and the noise power.
    pub fn from_power_gains(h1f: f64, h2f: f64, h1b: f64, h2b: f64, noise_power: f64) -> Self {
        Self {
            gamma_1f: h1f / noise_power,
            gamma_2f: h2f / noise_power,
            gamma_1b: h1b / noise_power,
            gamma_2b: h2b / noise_power,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, g) in [
            ("gamma_1f", self.gamma_1f),
            ("gamma_2f", self.gamma_2f),
            ("gamma_1b", self.gamma_1b),
            ("gamma_2b", self.gamma_2b),
        ] {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::InvalidParams {
                    name,
                    reason: format!("channel gain must be finite and > 0, got {g}"),
                });
            }
        }
        Ok(())
    }

    /// Gain of the weaker backward link; it sets the common broadcast rate.
    pub fn gamma_b(&self) -> f64 {
        self.gamma_1b.min(self.gamma_2b)
    }

    pub fn forward(&self) -> [f64; 2] {
        [self.gamma_1f, self.gamma_2f]
    }
}

/// A full decision vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub alpha1: f64,
    pub alpha2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub tau3: f64,
    pub tau4: f64,
    #[serde(rename = "power_user1_P1")]
    pub power_user1: f64,
    #[serde(rename = "power_user2_P2")]
    pub power_user2: f64,
    #[serde(rename = "power_relay_Pr")]
    pub power_relay: f64,
}

impl Schedule {
    pub fn total_duration(&self) -> f64 {
        self.tau1 + self.tau2 + self.tau3 + self.tau4
    }
}

/// The five energy terms and their total, in J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub e1_offload: f64,
    pub e2_offload: f64,
    pub e3_broadcast: f64,
    /// Computing energy of one user; both users compute the same number of bits.
    pub cu_local: f64,
    pub cr_relay: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(e1: f64, e2: f64, e3: f64, cu: f64, cr: f64) -> Self {
        Self {
            e1_offload: e1,
            e2_offload: e2,
            e3_broadcast: e3,
            cu_local: cu,
            cr_relay: cr,
            total: e1 + e2 + e3 + 2.0 * cu + cr,
        }
    }
}

fn check_nonneg(what: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

fn check_pos(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}

/// Shannon rate `B log2(1 + P gamma)` in bits/s.
pub fn offload_rate(power: f64, gamma: f64, bandwidth: f64) -> Result<f64> {
    check_nonneg("offload_rate power", power)?;
    check_pos("offload_rate gamma", gamma)?;
    check_pos("offload_rate bandwidth", bandwidth)?;
    Ok(bandwidth * (power * gamma).ln_1p() / LN_2)
}

/// Transmit power that delivers `bits` in `tau` seconds: `(2^(L/(B tau)) - 1) / gamma`.
pub fn power_for_duration(tau: f64, bits: f64, gamma: f64, bandwidth: f64) -> Result<f64> {
    check_pos("power_for_duration tau", tau)?;
    check_nonneg("power_for_duration bits", bits)?;
    check_pos("power_for_duration gamma", gamma)?;
    check_pos("power_for_duration bandwidth", bandwidth)?;
    Ok((bits * LN_2 / (bandwidth * tau)).exp_m1() / gamma)
}

/// Transmit energy `tau (2^(L/(B tau)) - 1) / gamma`, the perspective of the
/// inverse rate function and hence convex in `tau`.
pub fn offload_energy(tau: f64, bits: f64, gamma: f64, bandwidth: f64) -> Result<f64> {
    Ok(tau * power_for_duration(tau, bits, gamma, bandwidth)?)
}

/// Result of the network-coded broadcast slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Broadcast {
    pub tau3: f64,
    pub e3: f64,
    /// Common rate, limited by the weaker backward link.
    pub rate: f64,
}

impl Broadcast {
    /// False when there are bits to send but the relay is silent.
    pub fn is_feasible(&self) -> bool {
        self.tau3.is_finite()
    }
}

/// Duration and energy of the broadcast slot for a given relay power and `alpha1`.
///
/// With zero relay power and bits left to broadcast, `tau3` and `e3` come back
/// infinite rather than as an error.
pub fn broadcast_quantities(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    alpha1: f64,
) -> Result<Broadcast> {
    check_nonneg("broadcast power_relay", power_relay)?;
    if !(0.0..=1.0).contains(&alpha1) {
        return Err(Error::Domain {
            what: "broadcast alpha1",
            value: alpha1,
        });
    }
    let rate = offload_rate(power_relay, chan.gamma_b(), params.bandwidth)?;
    let bits = params.broadcast_bits(alpha1);
    if bits == 0.0 {
        return Ok(Broadcast {
            tau3: 0.0,
            e3: 0.0,
            rate,
        });
    }
    if rate == 0.0 {
        return Ok(Broadcast {
            tau3: f64::INFINITY,
            e3: f64::INFINITY,
            rate,
        });
    }
    let tau3 = bits / rate;
    Ok(Broadcast {
        tau3,
        e3: tau3 * power_relay,
        rate,
    })
}

/// Computing times and energies of the users and the relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeLoad {
    /// Time each user spends on the bits it received, in s.
    pub t_user: f64,
    /// Relay computing time left after the broadcast slot, clamped at zero.
    pub t_relay: f64,
    /// Energy of one user.
    pub cu: f64,
    pub cr: f64,
}

pub fn compute_times_and_energies(params: &SystemParams, alpha1: f64, alpha2: f64, tau3: f64) -> ComputeLoad {
    let user_bits = params.broadcast_bits(alpha1);
    let relay_bits = params.relay_bits(alpha1, alpha2);
    let k = params.cycles_per_bit;
    ComputeLoad {
        t_user: k * user_bits / params.cpu_user,
        t_relay: (params.relay_compute_time(relay_bits) - tau3).max(0.0),
        cu: user_bits * params.user_energy_per_bit(),
        cr: relay_bits * params.relay_energy_per_bit(),
    }
}

fn check_power(what: &'static str, stored: f64, recomputed: f64) -> Result<()> {
    let scale = stored.abs().max(recomputed.abs());
    if (stored - recomputed).abs() <= POWER_REL_TOL * scale {
        Ok(())
    } else {
        Err(Error::Inconsistent {
            what,
            stored,
            recomputed,
        })
    }
}

/// Recomputes every energy term of a schedule from its durations.
///
/// Stored powers must agree with the powers implied by the durations.
pub fn evaluate_schedule(
    params: &SystemParams,
    chan: &ChannelRealization,
    schedule: &Schedule,
) -> Result<EnergyBreakdown> {
    let b = params.bandwidth;
    let p1 = power_for_duration(schedule.tau1, params.task_bits_1, chan.gamma_1f, b)?;
    let p2 = power_for_duration(schedule.tau2, params.task_bits_2, chan.gamma_2f, b)?;
    check_power("power_user1_P1", schedule.power_user1, p1)?;
    check_power("power_user2_P2", schedule.power_user2, p2)?;

    let bits = params.broadcast_bits(schedule.alpha1);
    if bits > 0.0 {
        let pr = power_for_duration(schedule.tau3, bits, chan.gamma_b(), b)?;
        check_power("power_relay_Pr", schedule.power_relay, pr)?;
    }
    let e1 = schedule.tau1 * p1;
    let e2 = schedule.tau2 * p2;
    let e3 = schedule.tau3 * schedule.power_relay;
    let load = compute_times_and_energies(params, schedule.alpha1, schedule.alpha2, schedule.tau3);
    Ok(EnergyBreakdown::new(e1, e2, e3, load.cu, load.cr))
}

/// A constraint a schedule breaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    Coupling { residual_bits: f64 },
    AlphaBounds { alpha1: f64, alpha2: f64 },
    Negative { field: &'static str, value: f64 },
    Deadline { total: f64, deadline: f64 },
    /// `tau4` shorter than the computing time it must cover.
    ComputeTime { tau4: f64, required: f64 },
    /// A slot cannot carry its bits at the stored power.
    Rate { slot: &'static str, delivered_bits: f64, required_bits: f64 },
}

/// Outcome of [`check_feasible`].
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks coupling, box constraints, nonnegativity, rate delivery and the deadline.
///
/// `tol_abs` is the slack in seconds allowed on time constraints.
pub fn check_feasible(
    params: &SystemParams,
    chan: &ChannelRealization,
    schedule: &Schedule,
    tol_abs: f64,
) -> Verdict {
    let mut violations = Vec::new();
    let s = schedule;

    let residual_bits = (1.0 - s.alpha1) * params.task_bits_1 - (1.0 - s.alpha2) * params.task_bits_2;
    if !(residual_bits.abs() <= 1e-12 * params.task_bits_1) {
        violations.push(Violation::Coupling { residual_bits });
    }
    if !((0.0..=1.0).contains(&s.alpha1) && (0.0..=1.0).contains(&s.alpha2)) {
        violations.push(Violation::AlphaBounds {
            alpha1: s.alpha1,
            alpha2: s.alpha2,
        });
    }
    for (field, value) in [
        ("tau1", s.tau1),
        ("tau2", s.tau2),
        ("tau3", s.tau3),
        ("tau4", s.tau4),
        ("power_user1_P1", s.power_user1),
        ("power_user2_P2", s.power_user2),
        ("power_relay_Pr", s.power_relay),
    ] {
        if !(value >= 0.0) {
            violations.push(Violation::Negative { field, value });
        }
    }

    let total = s.total_duration();
    if !(total <= params.deadline + tol_abs) {
        violations.push(Violation::Deadline {
            total,
            deadline: params.deadline,
        });
    }

    let load = compute_times_and_energies(params, s.alpha1, s.alpha2, s.tau3);
    let required = load.t_user.max(load.t_relay);
    if !(s.tau4 + tol_abs >= required) {
        violations.push(Violation::ComputeTime { tau4: s.tau4, required });
    }

    let b = params.bandwidth;
    let slots = [
        ("tau1", s.tau1, s.power_user1, chan.gamma_1f, params.task_bits_1),
        ("tau2", s.tau2, s.power_user2, chan.gamma_2f, params.task_bits_2),
        ("tau3", s.tau3, s.power_relay, chan.gamma_b(), params.broadcast_bits(s.alpha1)),
    ];
    for (slot, tau, power, gamma, bits) in slots {
        if bits <= 0.0 {
            continue;
        }
        let delivered = match offload_rate(power.max(0.0), gamma, b) {
            Ok(rate) => rate * tau,
            Err(_) => 0.0,
        };
        if !(delivered >= bits * (1.0 - POWER_REL_TOL)) {
            violations.push(Violation::Rate {
                slot,
                delivered_bits: delivered,
                required_bits: bits,
            });
        }
    }
    Verdict { violations }
}
