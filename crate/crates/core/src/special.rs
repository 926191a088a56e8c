//! Principal branch of the Lambert W function.
//!
//! `W0(x)` is the solution `w >= -1` of `w * exp(w) = x` for `x >= -1/e`.
//! The initial guess comes from the branch-point series near `-1/e`, a
//! `ln(1 + x)` style rational guess on the middle range and the asymptotic
//! expansion for large `x`; Halley's iteration polishes it.

use crate::error::{Error, Result};

/// `1/e` split into a double and its rounding error, so that `x + 1/e` keeps
/// its relative accuracy close to the branch point.
const INV_E_HI: f64 = 0.367_879_441_171_442_33;
const INV_E_LO: f64 = -1.242_875_367_278_836_3e-17;

/// Absolute slack below `-1/e` that is still accepted and clamped to the branch point.
pub const DOMAIN_SLACK: f64 = 1e-15;

const MAX_ITER: usize = 50;
const REL_TOL: f64 = 1e-14;

/// Principal-branch Lambert W.
///
/// Returns a domain error for `x < -1/e - DOMAIN_SLACK` and for NaN. Arguments
/// inside the slack are treated as the branch point and map to `-1`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            what: "lambert_w0",
            value: x,
        });
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    // Distance to the branch point, x + 1/e.
    let dist = (x + INV_E_HI) + INV_E_LO;
    if dist < -DOMAIN_SLACK {
        return Err(Error::Domain {
            what: "lambert_w0",
            value: x,
        });
    }
    if dist <= 0.0 {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x, dist);
    // Near the branch point the series is already accurate to a few ulps and
    // Halley's denominator vanishes.
    if dist < 1e-10 {
        return Ok(w);
    }
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= REL_TOL * w.abs().max(1.0) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

fn initial_guess(x: f64, dist: f64) -> f64 {
    if dist < 0.05 {
        // Series in p = sqrt(2 (e x + 1)) around the branch point.
        let p = (2.0 * std::f64::consts::E * dist).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))))
    } else if x < 3.0 {
        // Exact at x = 0 with the right slope, and within ~20% elsewhere on this range.
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1)
    }
}

/// `1 + W0((c - 1) / e)` for `c >= 0`, accurate near the branch point.
///
/// Forming `(c - 1)/e` loses the relative precision of a small `c`, and with
/// it most digits of `W + 1`. Here `u = 1 + W` is found directly from
/// `1 - (1 - u) e^u = c`, with the left side summed as a series for small `u`.
pub fn lambert_w0_shifted(c: f64) -> Result<f64> {
    if c.is_nan() || c < -DOMAIN_SLACK {
        return Err(Error::Domain {
            what: "lambert_w0_shifted",
            value: c,
        });
    }
    if c <= 0.0 {
        return Ok(0.0);
    }
    if c > 0.5 {
        return Ok(1.0 + lambert_w0((c - 1.0) / std::f64::consts::E)?);
    }
    // Branch-point series with p = sqrt(2 (e x + 1)) = sqrt(2 c).
    let p = (2.0 * c).sqrt();
    let mut u = p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
    for _ in 0..MAX_ITER {
        let eu = u.exp();
        let f = one_minus_one_minus_u_exp_u(u) - c;
        let d1 = u * eu;
        let d2 = (u + 1.0) * eu;
        let newton = f / d1;
        let step = newton / (1.0 - 0.5 * newton * d2 / d1);
        if !step.is_finite() {
            break;
        }
        u -= step;
        if step.abs() <= REL_TOL * u.abs() {
            break;
        }
    }
    Ok(u)
}

/// `1 - (1 - u) e^u`, summed as `sum_{n>=2} (n-1) u^n / n!` when `|u|` is small.
fn one_minus_one_minus_u_exp_u(u: f64) -> f64 {
    if u.abs() > 0.5 {
        return 1.0 + (u - 1.0) * u.exp();
    }
    let mut term = u; // u^n / n!
    let mut sum = 0.0;
    for n in 2..40 {
        term *= u / n as f64;
        let add = (n - 1) as f64 * term;
        sum += add;
        if add.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}
