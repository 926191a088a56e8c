//! Shared fixtures for the criterion benches.

use twr_mec::sweep::trial_channels;
use twr_mec::{ChannelRealization, SystemParams};

/// Reference scenario at deadline `t`.
pub fn params(t: f64) -> SystemParams {
    SystemParams::default().with_deadline(t)
}

/// A handful of seeded Rayleigh draws at the reference mean gain.
pub fn channels(n: u64) -> Vec<ChannelRealization> {
    (0..n).map(|i| trial_channels(2024, i, 1e-6, 1e-9)).collect()
}
