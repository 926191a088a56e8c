//! Optimal task partition for a fixed relay transmit power.
//!
//! With `P_r` fixed, the energy splits into a constant, the offload energy
//! `xi = E1 + E2` and a term `varphi * (a1 L1 + a2 L2)` that is linear in the
//! relay load. The partition boundary `alpha1 = 1 - phi` separates the region
//! where the users' computing time sets `tau4` (case A, `t_u >= t_r`) from the
//! region where the relay does (case B, `t_u <= t_r`). Inside each region the
//! sign of `varphi` decides whether the optimum sits on the boundary or at an
//! interior stationary point, which is found by a fixed-point bisection on the
//! budget multiplier `theta` of the inner split.
//!
//! The optimum is the best of five candidates: the lowest admissible
//! `alpha1`, `alpha1 = 1`, the boundary, and the two interior points.

use std::f64::consts::LN_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::{solution_at_theta, split_budget, InnerSolution};
use crate::model::{
    broadcast_quantities, compute_times_and_energies, evaluate_schedule, offload_rate, power_for_duration,
    ChannelRealization, EnergyBreakdown, Schedule, SystemParams,
};
use crate::special::lambert_w0_shifted;

const MAX_EXPANSIONS: usize = 200;
const MAX_BISECTIONS: usize = 200;
const FIXED_POINT_TOL: f64 = 1e-11;

/// Quantities of the two-case analysis that depend on the relay power only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseCoefficients {
    /// The case boundary is `alpha1 = 1 - phi`.
    pub phi: f64,
    /// Net energy per bit moved from the users to the relay, in J/bit.
    pub varphi: f64,
    /// `1/r_b + k/Fu`: delay per broadcast bit in case A, in s/bit.
    pub omega: f64,
    /// `-2 k L1 / Fr`: derivative of `tau1 + tau2` with respect to `alpha1` in case B, in s.
    pub omega_tilde: f64,
    /// Energy that does not depend on the partition, in J.
    pub psi_const: f64,
    /// Broadcast rate of the weaker backward link, in bits/s.
    pub rate_b: f64,
}

/// `phi = [k (L1 + L2)/Fr] / [L1 (k/Fu + 1/r_b + 2k/Fr)]`.
pub fn compute_phi(params: &SystemParams, rate_b: f64) -> f64 {
    let k = params.cycles_per_bit;
    let num = k * (params.task_bits_1 + params.task_bits_2) / params.cpu_relay;
    let den = params.task_bits_1 * (k / params.cpu_user + 1.0 / rate_b + 2.0 * k / params.cpu_relay);
    num / den
}

/// `varphi = k eta_r Fr^2 - k eta_u Fu^2 - P_r / (2 r_b)`.
pub fn compute_varphi(params: &SystemParams, power_relay: f64, rate_b: f64) -> f64 {
    params.relay_energy_per_bit() - params.user_energy_per_bit() - power_relay / (2.0 * rate_b)
}

impl CaseCoefficients {
    /// Fails when the relay power gives no broadcast rate.
    pub fn new(params: &SystemParams, chan: &ChannelRealization, power_relay: f64) -> Result<Self> {
        let rate_b = offload_rate(power_relay, chan.gamma_b(), params.bandwidth)?;
        if !(rate_b > 0.0) {
            return Err(Error::Infeasible(format!("no broadcast rate at relay power {power_relay}")));
        }
        let k = params.cycles_per_bit;
        Ok(Self {
            phi: compute_phi(params, rate_b),
            varphi: compute_varphi(params, power_relay, rate_b),
            omega: 1.0 / rate_b + k / params.cpu_user,
            omega_tilde: -2.0 * k * params.task_bits_1 / params.cpu_relay,
            psi_const: (params.task_bits_1 + params.task_bits_2)
                * (params.user_energy_per_bit() + power_relay / (2.0 * rate_b)),
            rate_b,
        })
    }

    /// `alpha1` on the case boundary `t_u = t_r`.
    pub fn boundary_alpha1(&self) -> f64 {
        1.0 - self.phi
    }
}

/// Which of the five candidate partitions produced a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateLabel {
    /// Lowest admissible `alpha1`; zero when `L1 <= L2`.
    AlphaZero,
    AlphaOne,
    AlphaPhiBoundary,
    CaseAInterior,
    CaseBInterior,
}

impl CandidateLabel {
    pub const ALL: [CandidateLabel; 5] = [
        CandidateLabel::AlphaZero,
        CandidateLabel::AlphaOne,
        CandidateLabel::AlphaPhiBoundary,
        CandidateLabel::CaseAInterior,
        CandidateLabel::CaseBInterior,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CandidateLabel::AlphaZero => "alpha_zero",
            CandidateLabel::AlphaOne => "alpha_one",
            CandidateLabel::AlphaPhiBoundary => "alpha_phi_boundary",
            CandidateLabel::CaseAInterior => "case_a_interior",
            CandidateLabel::CaseBInterior => "case_b_interior",
        }
    }
}

impl fmt::Display for CandidateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A feasible candidate schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateResult {
    pub label: CandidateLabel,
    pub alpha1: f64,
    pub schedule: Schedule,
    pub energy: EnergyBreakdown,
    /// Budget multiplier of the inner split.
    pub theta: f64,
}

/// Which side of the case boundary a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Users' computing time sets `tau4`.
    A,
    /// Relay computing time sets `tau4`.
    B,
}

/// Builds the full schedule for a given `alpha1` and relay power.
///
/// The offload budget is whatever the deadline leaves after broadcasting and
/// computing, and it is always spent completely.
pub fn schedule_for_alpha(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    alpha1: f64,
) -> Result<(Schedule, EnergyBreakdown, InnerSolution)> {
    let bc = broadcast_quantities(params, chan, power_relay, alpha1)?;
    if !bc.is_feasible() {
        return Err(Error::Infeasible("relay cannot broadcast at zero power".into()));
    }
    let alpha2 = params.alpha2_for(alpha1);
    let load = compute_times_and_energies(params, alpha1, alpha2, bc.tau3);
    let tau4 = load.t_user.max(load.t_relay);
    let tau_hat = params.deadline - bc.tau3 - tau4;
    if !(tau_hat > 0.0) {
        return Err(Error::Infeasible(format!(
            "deadline {} leaves no offload time at alpha1 = {alpha1}",
            params.deadline
        )));
    }
    let inner = split_budget(tau_hat, chan, params)?;
    let b = params.bandwidth;
    let schedule = Schedule {
        alpha1,
        alpha2,
        tau1: inner.tau1,
        tau2: inner.tau2,
        tau3: bc.tau3,
        tau4,
        power_user1: power_for_duration(inner.tau1, params.task_bits_1, chan.gamma_1f, b)?,
        power_user2: power_for_duration(inner.tau2, params.task_bits_2, chan.gamma_2f, b)?,
        power_relay,
    };
    let energy = evaluate_schedule(params, chan, &schedule)?;
    if !energy.total.is_finite() {
        return Err(Error::Infeasible(format!("energy overflow at alpha1 = {alpha1}")));
    }
    Ok((schedule, energy, inner))
}

/// Offload budget `tau1 + tau2` implied by `alpha1` under the given case.
///
/// Case A: `T - omega (1 - a1) L1`; case B: `T - k (2 a1 L1 - L1 + L2) / Fr`.
pub fn case_budget(params: &SystemParams, coeffs: &CaseCoefficients, alpha1: f64, case: Case) -> f64 {
    match case {
        Case::A => params.deadline - coeffs.omega * (1.0 - alpha1) * params.task_bits_1,
        Case::B => {
            params.deadline
                - params.cycles_per_bit
                    * (2.0 * alpha1 * params.task_bits_1 - params.task_bits_1 + params.task_bits_2)
                    / params.cpu_relay
        }
    }
}

/// `d tau_i / d alpha1` for both users, given the inner sensitivities.
fn chi(params: &SystemParams, coeffs: &CaseCoefficients, inner: &InnerSolution, case: Case) -> [f64; 2] {
    let scale = match case {
        Case::A => coeffs.omega * params.task_bits_1,
        Case::B => coeffs.omega_tilde,
    };
    let sum = inner.vartheta1 + inner.vartheta2;
    [scale * inner.vartheta1 / sum, scale * inner.vartheta2 / sum]
}

/// `2^(L/(B tau)) (L ln2/(B tau) - 1) / gamma`, the part of `-dE/dtau` that
/// the stationarity condition solves for.
fn slope_core(tau: f64, bits: f64, gamma: f64, bandwidth: f64) -> f64 {
    let a = bits * LN_2 / (bandwidth * tau);
    a.exp() * (a - 1.0) / gamma
}

fn xi_gradient(params: &SystemParams, chan: &ChannelRealization, inner: &InnerSolution, coeffs: &CaseCoefficients, case: Case) -> f64 {
    let b = params.bandwidth;
    let chi = chi(params, coeffs, inner, case);
    let terms = [
        (chi[0], inner.tau1, params.task_bits_1, chan.gamma_1f),
        (chi[1], inner.tau2, params.task_bits_2, chan.gamma_2f),
    ];
    terms
        .iter()
        .map(|&(c, tau, bits, gamma)| -c * slope_core(tau, bits, gamma, b) - c / gamma)
        .sum()
}

/// Closed-form `d xi / d alpha1` in case A, where `tau1 + tau2 = T - omega (1 - a1) L1`.
pub fn xi_gradient_case_a(
    params: &SystemParams,
    chan: &ChannelRealization,
    inner: &InnerSolution,
    power_relay: f64,
) -> Result<f64> {
    let coeffs = CaseCoefficients::new(params, chan, power_relay)?;
    Ok(xi_gradient(params, chan, inner, &coeffs, Case::A))
}

/// Closed-form `d xi / d alpha1` in case B, where `tau1 + tau2 = T - k (2 a1 L1 - L1 + L2) / Fr`.
pub fn xi_gradient_case_b(
    params: &SystemParams,
    chan: &ChannelRealization,
    inner: &InnerSolution,
    power_relay: f64,
) -> Result<f64> {
    let coeffs = CaseCoefficients::new(params, chan, power_relay)?;
    Ok(xi_gradient(params, chan, inner, &coeffs, Case::B))
}

/// Sign-carrying residual of the interior fixed point at `theta`, together
/// with the user-2 duration the stationarity condition asks for.
///
/// The residual is `W(gamma_2f lambda / (e chi_2)) - W((theta gamma_2f - 1)/e)`,
/// both sides evaluated through [`lambert_w0_shifted`]. When the left argument
/// falls below `-1/e` the left side does not exist and the residual is
/// reported as `-inf` (theta too large).
fn fixed_point_residual(
    theta: f64,
    params: &SystemParams,
    chan: &ChannelRealization,
    coeffs: &CaseCoefficients,
    case: Case,
) -> Result<(f64, InnerSolution, f64)> {
    let inner = solution_at_theta(theta, params, chan)?;
    let b = params.bandwidth;
    let [chi1, chi2] = chi(params, coeffs, &inner, case);
    let g1 = chan.gamma_1f;
    let g2 = chan.gamma_2f;
    let lambda = 2.0 * coeffs.varphi * params.task_bits_1
        - chi1 * slope_core(inner.tau1, params.task_bits_1, g1, b)
        - chi1 / g1
        - chi2 / g2;
    // e * arg + 1 for arg = gamma_2f lambda / (e chi_2)
    let lhs_shifted = 1.0 + g2 * lambda / chi2;
    if lhs_shifted.is_nan() {
        return Err(Error::Domain {
            what: "interior fixed point",
            value: theta,
        });
    }
    let rhs = lambert_w0_shifted(theta * g2)?;
    if lhs_shifted < 0.0 {
        return Ok((f64::NEG_INFINITY, inner, f64::INFINITY));
    }
    let lhs = lambert_w0_shifted(lhs_shifted)?;
    if !lhs.is_finite() {
        return Ok((f64::INFINITY, inner, 0.0));
    }
    let tau2 = params.task_bits_2 * LN_2 / (b * lhs);
    Ok((lhs - rhs, inner, tau2))
}

/// Solves the interior stationarity condition of one case by bisection over
/// `theta`, returning the unclipped `alpha1` and the multiplier.
pub fn interior_fixed_point(
    params: &SystemParams,
    chan: &ChannelRealization,
    coeffs: &CaseCoefficients,
    case: Case,
    theta_start: f64,
) -> Result<(f64, f64)> {
    let residual = |theta: f64| fixed_point_residual(theta, params, chan, coeffs, case).map(|r| r.0);
    let start = if theta_start > 0.0 && theta_start.is_finite() { theta_start } else { 1e-3 };
    let (mut lo, mut hi) = (start, start);
    let mut r_lo = residual(lo)?;
    let mut r_hi = r_lo;
    let mut expansions = 0;
    while !(r_lo > 0.0) {
        hi = lo;
        r_hi = r_lo;
        lo *= 0.5;
        r_lo = residual(lo)?;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoRoot("interior fixed point"));
        }
    }
    while !(r_hi < 0.0) {
        lo = hi;
        r_lo = r_hi;
        hi *= 2.0;
        r_hi = residual(hi)?;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoRoot("interior fixed point"));
        }
    }
    debug_assert!(r_lo > 0.0 && r_hi < 0.0);

    let mut theta = lo;
    for _ in 0..MAX_BISECTIONS {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        let r_mid = residual(mid)?;
        theta = mid;
        if r_mid.abs() <= FIXED_POINT_TOL {
            break;
        }
        if r_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let (_, inner, tau2_stationary) = fixed_point_residual(theta, params, chan, coeffs, case)?;
    let spent = params.deadline - inner.tau1 - tau2_stationary;
    let alpha1 = match case {
        Case::A => 1.0 - spent / (coeffs.omega * params.task_bits_1),
        Case::B => {
            let k = params.cycles_per_bit;
            -(spent + k * (params.task_bits_1 - params.task_bits_2) / params.cpu_relay) / coeffs.omega_tilde
        }
    };
    Ok((alpha1, theta))
}

/// Case-A interior candidate, clipped to `[alpha1_min, 1 - phi]`.
///
/// `None` when `varphi <= 0` (the boundary is optimal) or the case-A region is empty.
pub fn case_a_interior(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    theta_start: f64,
) -> Result<Option<f64>> {
    let coeffs = CaseCoefficients::new(params, chan, power_relay)?;
    let upper = coeffs.boundary_alpha1();
    let lower = params.alpha1_min();
    if !(coeffs.varphi > 0.0) || upper <= lower {
        return Ok(None);
    }
    let (alpha1, _) = interior_fixed_point(params, chan, &coeffs, Case::A, theta_start)?;
    Ok(Some(alpha1.max(lower).min(upper)))
}

/// Case-B interior candidate, clipped to `[max(1 - phi, alpha1_min), 1]`.
///
/// `None` when `varphi >= 0` (the boundary is optimal).
pub fn case_b_interior(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    theta_start: f64,
) -> Result<Option<f64>> {
    let coeffs = CaseCoefficients::new(params, chan, power_relay)?;
    if !(coeffs.varphi < 0.0) {
        return Ok(None);
    }
    let lower = coeffs.boundary_alpha1().max(params.alpha1_min());
    let (alpha1, _) = interior_fixed_point(params, chan, &coeffs, Case::B, theta_start)?;
    Ok(Some(alpha1.min(1.0).max(lower)))
}

fn build(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    label: CandidateLabel,
    alpha1: f64,
) -> Result<CandidateResult> {
    let (schedule, energy, inner) = schedule_for_alpha(params, chan, power_relay, alpha1)?;
    Ok(CandidateResult {
        label,
        alpha1,
        schedule,
        energy,
        theta: inner.theta,
    })
}

fn not_applicable(label: CandidateLabel) -> Error {
    Error::Infeasible(format!("candidate {label} does not apply at this relay power"))
}

/// Evaluates every candidate at a relay power, in [`CandidateLabel::ALL`] order.
pub fn candidates_given_pr(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
) -> Vec<(CandidateLabel, Result<CandidateResult>)> {
    let mut out = Vec::with_capacity(5);
    let lower = params.alpha1_min();
    out.push((CandidateLabel::AlphaZero, build(params, chan, power_relay, CandidateLabel::AlphaZero, lower)));
    out.push((CandidateLabel::AlphaOne, build(params, chan, power_relay, CandidateLabel::AlphaOne, 1.0)));

    let coeffs = match CaseCoefficients::new(params, chan, power_relay) {
        Ok(c) => c,
        Err(e) => {
            for label in &CandidateLabel::ALL[2..] {
                out.push((*label, Err(e.clone())));
            }
            return out;
        }
    };
    let boundary = coeffs.boundary_alpha1().max(lower).min(1.0);
    let boundary_result = build(params, chan, power_relay, CandidateLabel::AlphaPhiBoundary, boundary);
    let theta_start = boundary_result.as_ref().map(|c| c.theta).unwrap_or(1e-3);
    out.push((CandidateLabel::AlphaPhiBoundary, boundary_result));

    let a = case_a_interior(params, chan, power_relay, theta_start).and_then(|alpha| {
        let alpha = alpha.ok_or_else(|| not_applicable(CandidateLabel::CaseAInterior))?;
        build(params, chan, power_relay, CandidateLabel::CaseAInterior, alpha)
    });
    out.push((CandidateLabel::CaseAInterior, a));
    let b = case_b_interior(params, chan, power_relay, theta_start).and_then(|alpha| {
        let alpha = alpha.ok_or_else(|| not_applicable(CandidateLabel::CaseBInterior))?;
        build(params, chan, power_relay, CandidateLabel::CaseBInterior, alpha)
    });
    out.push((CandidateLabel::CaseBInterior, b));
    out
}

/// Evaluates a single candidate at a relay power.
pub fn candidate_given_pr(
    params: &SystemParams,
    chan: &ChannelRealization,
    power_relay: f64,
    label: CandidateLabel,
) -> Result<CandidateResult> {
    match label {
        CandidateLabel::AlphaZero => build(params, chan, power_relay, label, params.alpha1_min()),
        CandidateLabel::AlphaOne => build(params, chan, power_relay, label, 1.0),
        _ => {
            let coeffs = CaseCoefficients::new(params, chan, power_relay)?;
            let boundary = coeffs.boundary_alpha1().max(params.alpha1_min()).min(1.0);
            if label == CandidateLabel::AlphaPhiBoundary {
                return build(params, chan, power_relay, label, boundary);
            }
            let theta_start = split_start(params, chan, power_relay, boundary);
            let alpha = if label == CandidateLabel::CaseAInterior {
                case_a_interior(params, chan, power_relay, theta_start)?
            } else {
                case_b_interior(params, chan, power_relay, theta_start)?
            };
            let alpha = alpha.ok_or_else(|| not_applicable(label))?;
            build(params, chan, power_relay, label, alpha)
        }
    }
}

fn split_start(params: &SystemParams, chan: &ChannelRealization, power_relay: f64, alpha1: f64) -> f64 {
    schedule_for_alpha(params, chan, power_relay, alpha1)
        .map(|(_, _, inner)| inner.theta)
        .unwrap_or(1e-3)
}

/// Best feasible candidate at a relay power. Ties go to the earlier label.
pub fn solve_given_pr(params: &SystemParams, chan: &ChannelRealization, power_relay: f64) -> Result<CandidateResult> {
    let mut best: Option<CandidateResult> = None;
    for (_, candidate) in candidates_given_pr(params, chan, power_relay) {
        if let Ok(c) = candidate {
            if best.is_none_or(|b| c.energy.total < b.energy.total) {
                best = Some(c);
            }
        }
    }
    best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no feasible partition for deadline {} at relay power {power_relay}",
            params.deadline
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SystemParams {
        SystemParams::default()
    }

    #[test]
    fn phi_examples() {
        let p = params();
        let phi = compute_phi(&p, 6_658_211.482_751_79);
        assert!((phi - 0.488_983_890_969_015).abs() < 1e-12);
        assert!((compute_phi(&p, f64::INFINITY) - 0.5).abs() < 1e-15);
        let mut fast = p;
        fast.cpu_relay = 1e30;
        assert!(compute_phi(&fast, 1e7) < 1e-15);
    }

    #[test]
    fn varphi_examples() {
        let p = params();
        let v = compute_varphi(&p, 0.1, 6_658_211.482_751_79);
        assert!((v - 1.949_047_583_881_56e-8).abs() < 1e-20);
        let mut same = p;
        same.cpu_relay = same.cpu_user;
        assert_eq!(compute_varphi(&same, 0.0, 1e6), 0.0);
        let rate = offload_rate(100.0, 1000.0, 1e6).unwrap();
        assert!(compute_varphi(&p, 100.0, rate) < 0.0);
    }

    #[test]
    fn energy_decomposes_into_psi_xi_zeta() {
        let p = params();
        let chan = ChannelRealization::new(800.0, 1300.0, 900.0, 1500.0).unwrap();
        let pr = 0.2;
        let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
        for alpha1 in [0.0, 0.3, 0.7, 1.0] {
            let (s, e, inner) = schedule_for_alpha(&p, &chan, pr, alpha1).unwrap();
            let xi = inner.offload_energy(&p, &chan).unwrap();
            let zeta = coeffs.varphi * p.relay_bits(s.alpha1, s.alpha2);
            let rebuilt = coeffs.psi_const + xi + zeta;
            assert!(((rebuilt - e.total) / e.total).abs() < 1e-12, "alpha1={alpha1}");
        }
    }

    #[test]
    fn boundary_budgets_coincide() {
        let p = params();
        let chan = ChannelRealization::uniform(1000.0);
        let coeffs = CaseCoefficients::new(&p, &chan, 0.1).unwrap();
        let a = coeffs.boundary_alpha1();
        let ta = case_budget(&p, &coeffs, a, Case::A);
        let tb = case_budget(&p, &coeffs, a, Case::B);
        assert!((ta - tb).abs() < 1e-12);
        // Closed form of the boundary budget: T - phi omega L1.
        assert!((ta - (p.deadline - coeffs.phi * coeffs.omega * p.task_bits_1)).abs() < 1e-12);
    }

    #[test]
    fn relay_only_schedule_needs_deadline_above_compute_time() {
        let p = params().with_deadline(0.5);
        let chan = ChannelRealization::uniform(1000.0);
        assert!(schedule_for_alpha(&p, &chan, 0.1, 1.0).is_err());
        let p = params().with_deadline(0.7);
        let (s, _, _) = schedule_for_alpha(&p, &chan, 0.1, 1.0).unwrap();
        assert_eq!(s.tau3, 0.0);
        assert!((s.tau4 - 0.6).abs() < 1e-12);
    }

    #[test]
    fn interior_candidates_respect_clipping() {
        let chan = ChannelRealization::new(700.0, 1200.0, 300.0, 2000.0).unwrap();
        for t in [0.7, 0.9, 1.2] {
            let p = params().with_deadline(t);
            for pr in [1e-3, 0.05, 0.5, 5.0] {
                let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
                if let Some(a) = case_a_interior(&p, &chan, pr, 1e-3).unwrap() {
                    assert!(a >= 0.0 && a <= coeffs.boundary_alpha1());
                }
                if let Some(b) = case_b_interior(&p, &chan, pr, 1e-3).unwrap() {
                    assert!(b >= coeffs.boundary_alpha1() && b <= 1.0);
                }
            }
        }
    }

    #[test]
    fn symmetric_instance_gives_symmetric_partition() {
        let p = params();
        let chan = ChannelRealization::uniform(1000.0);
        let best = solve_given_pr(&p, &chan, 0.1).unwrap();
        assert_eq!(best.schedule.alpha1, best.schedule.alpha2);
        assert!((best.schedule.tau1 - best.schedule.tau2).abs() < 1e-12);
    }
}
