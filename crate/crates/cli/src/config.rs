//! Flat JSON configuration shared by all subcommands.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{Map, Value};
use twr_mec::{ChannelRealization, SearchConfig, SweepConfig, SystemParams};

const CHANNEL_KEYS: [&str; 4] = ["gamma_1f", "gamma_2f", "gamma_1b", "gamma_2b"];

#[derive(Deserialize)]
struct SweepScalars {
    t_min: f64,
    t_max: f64,
    t_points: usize,
    n_trials: usize,
    seed: u64,
    avg_power_loss: f64,
}

#[derive(Deserialize)]
struct Gammas {
    gamma_1f: f64,
    gamma_2f: f64,
    gamma_1b: f64,
    gamma_2b: f64,
}

/// Everything a run needs after merging defaults, the config file and flags.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub sweep: SweepConfig,
    /// Fixed channel gains, if the file gives them.
    pub channels: Option<ChannelRealization>,
}

impl Resolved {
    pub fn params(&self) -> SystemParams {
        self.sweep.params
    }
}

fn defaults() -> Map<String, Value> {
    let d = SweepConfig::default();
    let mut map = Map::new();
    for part in [serde_json::to_value(d.params), serde_json::to_value(d.search)] {
        if let Value::Object(fields) = part.expect("config types serialize to objects") {
            map.extend(fields);
        }
    }
    for (key, value) in [
        ("t_min", Value::from(d.t_min)),
        ("t_max", Value::from(d.t_max)),
        ("t_points", Value::from(d.t_points)),
        ("n_trials", Value::from(d.n_trials)),
        ("seed", Value::from(d.seed)),
        ("avg_power_loss", Value::from(d.avg_power_loss)),
    ] {
        map.insert(key.to_string(), value);
    }
    map
}

/// Reads `path` (if any) over the defaults. Unknown keys are rejected.
pub fn load(path: Option<&Path>) -> Result<Map<String, Value>> {
    let mut map = defaults();
    let Some(path) = path else {
        return Ok(map);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let file: Map<String, Value> =
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    for (key, value) in file {
        if !map.contains_key(&key) && !CHANNEL_KEYS.contains(&key.as_str()) {
            bail!("unknown config key `{key}` in {}", path.display());
        }
        map.insert(key, value);
    }
    Ok(map)
}

/// Applies a flag override when the flag was given.
pub fn set<T: Into<Value>>(map: &mut Map<String, Value>, key: &str, value: Option<T>) {
    if let Some(v) = value {
        map.insert(key.to_string(), v.into());
    }
}

pub fn resolve(map: Map<String, Value>) -> Result<Resolved> {
    let value = Value::Object(map);
    let params: SystemParams = serde_json::from_value(value.clone()).context("invalid system parameters")?;
    let search: SearchConfig = serde_json::from_value(value.clone()).context("invalid search settings")?;
    let s: SweepScalars = serde_json::from_value(value.clone()).context("invalid sweep settings")?;
    let present = CHANNEL_KEYS.iter().filter(|k| value.get(**k).is_some()).count();
    let channels = match present {
        0 => None,
        4 => {
            let g: Gammas = serde_json::from_value(value).context("invalid channel gains")?;
            Some(ChannelRealization::new(g.gamma_1f, g.gamma_2f, g.gamma_1b, g.gamma_2b)?)
        }
        _ => bail!("give all of {} or none", CHANNEL_KEYS.join(", ")),
    };
    let sweep = SweepConfig {
        t_min: s.t_min,
        t_max: s.t_max,
        t_points: s.t_points,
        n_trials: s.n_trials,
        seed: s.seed,
        avg_power_loss: s.avg_power_loss,
        params,
        search,
    };
    sweep.validate()?;
    Ok(Resolved { sweep, channels })
}
