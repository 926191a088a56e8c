//! Optimal split of a total offloading time between the two users.
//!
//! For a fixed budget `tau1 + tau2 = tau_hat` the offload energy
//! `E1 + E2` is convex and the KKT conditions give each duration in closed
//! form in terms of the budget multiplier `theta`:
//!
//! ```text
//! tau_i(theta) = L_i ln2 / (B (W0((theta gamma_i - 1) / e) + 1))
//! ```
//!
//! `tau_i` is strictly decreasing in `theta`, so the budget is met by bisection.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::model::{offload_energy, ChannelRealization, SystemParams};
use crate::special::lambert_w0_shifted;

const THETA_LO: f64 = 1e-12;
const THETA_HI: f64 = 1e-2;
const MAX_EXPANSIONS: usize = 200;
const MAX_BISECTIONS: usize = 400;
/// Relative tolerance on `tau1 + tau2 - tau_hat`.
pub const BUDGET_REL_TOL: f64 = 1e-12;

/// Optimal split of an offload budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerSolution {
    pub tau1: f64,
    pub tau2: f64,
    /// Budget multiplier, i.e. the marginal energy saved per extra second of budget.
    pub theta: f64,
    /// `d tau1 / d theta` at `theta`.
    pub vartheta1: f64,
    pub vartheta2: f64,
}

impl InnerSolution {
    pub fn budget(&self) -> f64 {
        self.tau1 + self.tau2
    }

    /// `E1 + E2` at this split.
    pub fn offload_energy(&self, params: &SystemParams, chan: &ChannelRealization) -> Result<f64> {
        let b = params.bandwidth;
        Ok(offload_energy(self.tau1, params.task_bits_1, chan.gamma_1f, b)?
            + offload_energy(self.tau2, params.task_bits_2, chan.gamma_2f, b)?)
    }
}

/// KKT duration for one user at multiplier `theta`.
pub fn tau_of_theta(theta: f64, gamma: f64, bits: f64, bandwidth: f64) -> Result<f64> {
    if !(theta > 0.0) {
        return Err(Error::Domain {
            what: "tau_of_theta theta",
            value: theta,
        });
    }
    // W((theta gamma - 1)/e) + 1
    let u = lambert_w0_shifted(theta * gamma)?;
    Ok(bits * LN_2 / (bandwidth * u))
}

/// `d tau / d theta` of [`tau_of_theta`].
///
/// With `z = (theta gamma - 1)/e` and `W' = 1 / (e^W (1 + W))` this is
/// `-L gamma ln2 / (e B (1 + W)^3 e^W) = -L gamma ln2 / (B u^3 e^u)`, `u = 1 + W`.
pub fn theta_sensitivity(theta: f64, gamma: f64, bits: f64, bandwidth: f64) -> Result<f64> {
    if !(theta > 0.0) {
        return Err(Error::Domain {
            what: "theta_sensitivity theta",
            value: theta,
        });
    }
    let u = lambert_w0_shifted(theta * gamma)?;
    Ok(-bits * gamma * LN_2 / (bandwidth * u * u * u * u.exp()))
}

/// `d E / d tau` of the offload energy,
/// `-(2^(L/(B tau)) (L ln2/(B tau) - 1) + 1) / gamma`.
///
/// At a KKT split this equals `-theta` for both users.
pub fn energy_slope(tau: f64, bits: f64, gamma: f64, bandwidth: f64) -> f64 {
    let a = bits * LN_2 / (bandwidth * tau);
    -(a.exp() * (a - 1.0) + 1.0) / gamma
}

fn budget_of(theta: f64, params: &SystemParams, chan: &ChannelRealization) -> Result<f64> {
    let b = params.bandwidth;
    Ok(tau_of_theta(theta, chan.gamma_1f, params.task_bits_1, b)?
        + tau_of_theta(theta, chan.gamma_2f, params.task_bits_2, b)?)
}

/// Builds the split produced by a given multiplier, without a budget target.
pub fn solution_at_theta(theta: f64, params: &SystemParams, chan: &ChannelRealization) -> Result<InnerSolution> {
    let b = params.bandwidth;
    Ok(InnerSolution {
        tau1: tau_of_theta(theta, chan.gamma_1f, params.task_bits_1, b)?,
        tau2: tau_of_theta(theta, chan.gamma_2f, params.task_bits_2, b)?,
        theta,
        vartheta1: theta_sensitivity(theta, chan.gamma_1f, params.task_bits_1, b)?,
        vartheta2: theta_sensitivity(theta, chan.gamma_2f, params.task_bits_2, b)?,
    })
}

/// Splits `tau_hat` between the two offload slots so that `E1 + E2` is minimal.
///
/// The returned durations add up to `tau_hat` exactly; `tau1` is the KKT
/// duration at the returned `theta` and `tau2` absorbs the bisection residual,
/// which is below `BUDGET_REL_TOL * tau_hat`.
pub fn split_budget(tau_hat: f64, chan: &ChannelRealization, params: &SystemParams) -> Result<InnerSolution> {
    if !(tau_hat > 0.0) || !tau_hat.is_finite() {
        return Err(Error::Infeasible(format!(
            "offload budget must be positive, got {tau_hat}"
        )));
    }
    let residual = |theta: f64| budget_of(theta, params, chan).map(|sum| sum - tau_hat);

    let mut lo = THETA_LO;
    let mut hi = THETA_HI;
    let mut r_lo = residual(lo)?;
    let mut r_hi = residual(hi)?;
    let mut expansions = 0;
    while r_lo < 0.0 {
        hi = lo;
        r_hi = r_lo;
        lo *= 0.5;
        r_lo = residual(lo)?;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoRoot("offload budget multiplier"));
        }
    }
    while r_hi > 0.0 {
        lo = hi;
        r_lo = r_hi;
        hi *= 2.0;
        r_hi = residual(hi)?;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::NoRoot("offload budget multiplier"));
        }
    }

    let tol = BUDGET_REL_TOL * tau_hat;
    let mut theta = if r_lo.abs() <= r_hi.abs() { lo } else { hi };
    for _ in 0..MAX_BISECTIONS {
        if r_lo.abs() <= tol {
            theta = lo;
            break;
        }
        if r_hi.abs() <= tol {
            theta = hi;
            break;
        }
        // Geometric midpoint: theta spans many decades across channel draws.
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            theta = if r_lo.abs() <= r_hi.abs() { lo } else { hi };
            break;
        }
        let r_mid = residual(mid)?;
        if r_mid > 0.0 {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
        theta = mid;
    }

    let mut sol = solution_at_theta(theta, params, chan)?;
    let tau2 = tau_hat - sol.tau1;
    if tau2 > 0.0 {
        sol.tau2 = tau2;
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    const L: f64 = 1.8e5;
    const B: f64 = 1e6;

    #[test]
    fn tau_at_branch_values() {
        // theta gamma = 1 puts the argument at W(0) = 0.
        let t = tau_of_theta(1e-3, 1000.0, L, B).unwrap();
        assert!((t - 0.124_766_492_500_79).abs() < 1e-13);
        // argument e gives W = 1.
        let theta = (1.0 + E * E) / 1000.0;
        let t = tau_of_theta(theta, 1000.0, L, B).unwrap();
        assert!((t - L * LN_2 / (2.0 * B)).abs() < 1e-13);
        assert!(tau_of_theta(0.0, 1000.0, L, B).is_err());
    }

    #[test]
    fn tau_decreasing_in_theta() {
        for &theta in &[1e-6, 1e-4, 1e-3, 0.1, 10.0] {
            assert!(tau_of_theta(2.0 * theta, 1000.0, L, B).unwrap() < tau_of_theta(theta, 1000.0, L, B).unwrap());
        }
    }

    #[test]
    fn sensitivity_matches_finite_difference() {
        for &(theta, gamma, bits) in &[(1e-3, 1000.0, L), (5e-4, 1000.0, L), (2e-2, 37.0, 9e4), (1e-5, 3e4, 2.5e5)] {
            let d = theta_sensitivity(theta, gamma, bits, B).unwrap();
            assert!(d < 0.0);
            let h = 1e-6 * theta;
            let fd = (tau_of_theta(theta + h, gamma, bits, B).unwrap() - tau_of_theta(theta - h, gamma, bits, B).unwrap())
                / (2.0 * h);
            assert!(((d - fd) / fd).abs() < 1e-6, "theta={theta} analytic={d} fd={fd}");
        }
        let v1 = theta_sensitivity(1e-3, 1000.0, L, B).unwrap();
        let v2 = theta_sensitivity(1e-3, 400.0, L, B).unwrap();
        let ratio = v1 / (v1 + v2);
        assert!(ratio > 0.0 && ratio < 1.0);
    }

    #[test]
    fn kkt_slope_equals_minus_theta() {
        for &theta in &[1e-4, 1e-3, 0.05] {
            let t = tau_of_theta(theta, 1000.0, L, B).unwrap();
            let slope = energy_slope(t, L, 1000.0, B);
            assert!((slope + theta).abs() <= 1e-9 * theta, "theta={theta} slope={slope}");
        }
    }

    #[test]
    fn symmetric_split() {
        let params = SystemParams::default();
        let chan = crate::model::ChannelRealization::uniform(1000.0);
        let sol = split_budget(0.25, &chan, &params).unwrap();
        assert!((sol.tau1 - 0.125).abs() < 1e-12);
        assert!((sol.tau2 - 0.125).abs() < 1e-12);
        assert_eq!(sol.budget(), 0.25);
        assert!(sol.vartheta1 < 0.0 && sol.vartheta2 < 0.0);
    }

    #[test]
    fn rejects_empty_budget() {
        let params = SystemParams::default();
        let chan = crate::model::ChannelRealization::uniform(1000.0);
        assert!(matches!(split_budget(0.0, &chan, &params), Err(Error::Infeasible(_))));
        assert!(split_budget(-1.0, &chan, &params).is_err());
    }

    #[test]
    fn extreme_budgets_bracket() {
        let params = SystemParams::default();
        let chan = crate::model::ChannelRealization::new(3.0, 2e5, 1.0, 1.0).unwrap();
        for &tau_hat in &[5e-3, 0.05, 2.0, 50.0] {
            let sol = split_budget(tau_hat, &chan, &params).unwrap();
            assert!((sol.budget() - tau_hat).abs() <= 1e-12 * tau_hat);
            let t1 = tau_of_theta(sol.theta, chan.gamma_1f, params.task_bits_1, params.bandwidth).unwrap();
            let t2 = tau_of_theta(sol.theta, chan.gamma_2f, params.task_bits_2, params.bandwidth).unwrap();
            assert_eq!(t1, sol.tau1);
            assert!(((t2 - sol.tau2) / t2).abs() < 1e-10, "tau_hat={tau_hat} t1={t1} t2={t2} stored={}", sol.tau2);
        }
    }
}
