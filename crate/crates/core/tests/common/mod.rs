#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twr_mec::model::offload_energy;
use twr_mec::{ChannelRealization, SystemParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gains spread over two decades around the reference mean of 1e3.
pub fn random_channels(rng: &mut ChaCha8Rng) -> ChannelRealization {
    let mut g = || 10f64.powf(rng.gen_range(1.5..3.5));
    ChannelRealization::new(g(), g(), g(), g()).unwrap()
}

/// `E1 + E2` minimized over an `n`-point uniform grid of `tau1 in (0, tau_hat)`.
pub fn grid_split_energy(params: &SystemParams, chan: &ChannelRealization, tau_hat: f64, n: usize) -> (f64, f64) {
    let b = params.bandwidth;
    let mut best = (f64::INFINITY, 0.0);
    for j in 1..=n {
        let t1 = tau_hat * j as f64 / (n + 1) as f64;
        let e = offload_energy(t1, params.task_bits_1, chan.gamma_1f, b).unwrap()
            + offload_energy(tau_hat - t1, params.task_bits_2, chan.gamma_2f, b).unwrap();
        if e < best.0 {
            best = (e, t1);
        }
    }
    best
}

/// Golden-section-free ternary refinement of the split, used as a sharper
/// oracle than the grid when tolerances are tight.
pub fn ternary_split_energy(params: &SystemParams, chan: &ChannelRealization, tau_hat: f64) -> f64 {
    let b = params.bandwidth;
    let f = |t1: f64| {
        offload_energy(t1, params.task_bits_1, chan.gamma_1f, b).unwrap()
            + offload_energy(tau_hat - t1, params.task_bits_2, chan.gamma_2f, b).unwrap()
    };
    let (mut lo, mut hi) = (0.0, tau_hat);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f(0.5 * (lo + hi))
}

/// Energy minimized over a uniform `(alpha1, tau1)` grid at a fixed relay power,
/// using only the model equations. `alpha1` spans `[lo, hi]` inclusive.
pub fn grid_partition_energy(
    params: &SystemParams,
    chan: &ChannelRealization,
    pr: f64,
    (lo, hi): (f64, f64),
    n_alpha: usize,
    n_tau: usize,
) -> Option<(f64, f64)> {
    use twr_mec::model::{broadcast_quantities, compute_times_and_energies};
    let b = params.bandwidth;
    let mut best: Option<(f64, f64)> = None;
    for i in 0..n_alpha {
        let alpha1 = if i + 1 == n_alpha { hi } else { lo + (hi - lo) * i as f64 / (n_alpha - 1) as f64 };
        let bc = broadcast_quantities(params, chan, pr, alpha1).unwrap();
        let alpha2 = params.alpha2_for(alpha1);
        let load = compute_times_and_energies(params, alpha1, alpha2, bc.tau3);
        let tau_hat = params.deadline - bc.tau3 - load.t_user.max(load.t_relay);
        if tau_hat <= 0.0 {
            continue;
        }
        for j in 1..=n_tau {
            let t1 = tau_hat * j as f64 / (n_tau + 1) as f64;
            let e = offload_energy(t1, params.task_bits_1, chan.gamma_1f, b).unwrap()
                + offload_energy(tau_hat - t1, params.task_bits_2, chan.gamma_2f, b).unwrap()
                + bc.e3
                + 2.0 * load.cu
                + load.cr;
            if best.is_none_or(|(x, _)| e < x) {
                best = Some((e, alpha1));
            }
        }
    }
    best
}
