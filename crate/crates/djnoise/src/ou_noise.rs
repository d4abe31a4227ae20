//! Ornstein-Uhlenbeck noise trajectories.
//!
//! The process is sampled with the exact discrete update
//!
//! ```text
//! v[k+1] = v[k] * exp(-dt/tau_c) + sigma * sqrt(1 - exp(-2 dt/tau_c)) * z
//! ```
//!
//! with `z` a standard normal draw and `v[0]` drawn from the stationary
//! distribution N(0, sigma^2). This reproduces the stationary autocovariance
//! `sigma^2 * exp(-m dt/tau_c)` at every lag `m` for any step size, unlike
//! an Euler-Maruyama scheme. Trajectory values convert to circuit phase
//! errors as `phi[k] = v[k] * dt`.

use crate::rng::RngStream;
use crate::{Error, Result};

/// OU process parameters. `sigma_ou` is the stationary standard deviation,
/// `tau_c` the correlation time and `dt` the sampling step, with `tau_c`
/// and `dt` in the same arbitrary time unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OUParams {
    pub sigma_ou: f64,
    pub tau_c: f64,
    pub dt: f64,
}

/// Default sampling step.
pub const DEFAULT_DT: f64 = 0.1;

impl OUParams {
    pub fn new(sigma_ou: f64, tau_c: f64, dt: f64) -> Result<Self> {
        if sigma_ou.is_nan() || sigma_ou < 0.0 {
            return Err(Error::Argument(format!("sigma_ou must be >= 0, got {sigma_ou}")));
        }
        if tau_c.is_nan() || tau_c <= 0.0 {
            return Err(Error::Argument(format!("tau_c must be > 0, got {tau_c}")));
        }
        if dt.is_nan() || dt <= 0.0 {
            return Err(Error::Argument(format!("dt must be > 0, got {dt}")));
        }
        Ok(OUParams { sigma_ou, tau_c, dt })
    }

    pub fn with_default_dt(sigma_ou: f64, tau_c: f64) -> Result<Self> {
        Self::new(sigma_ou, tau_c, DEFAULT_DT)
    }

    /// Per-step decay factor exp(-dt/tau_c).
    pub fn decay(&self) -> f64 {
        (-self.dt / self.tau_c).exp()
    }
}

/// One sampled realization of the OU process.
#[derive(Clone, Debug)]
pub struct OUTrajectory {
    pub values: Vec<f64>,
    pub params: OUParams,
}

/// One draw from the stationary distribution N(0, sigma^2).
pub fn sample_stationary(params: &OUParams, rng: &mut RngStream) -> f64 {
    params.sigma_ou * rng.normal()
}

/// Exact one-step update from `current`.
pub fn step(params: &OUParams, current: f64, rng: &mut RngStream) -> f64 {
    let decay = params.decay();
    let diffusion = params.sigma_ou * (1.0 - decay * decay).sqrt();
    current * decay + diffusion * rng.normal()
}

/// Sample a trajectory of `length` values, the first stationary and the
/// rest by the exact update. Consumes exactly `length` normal draws.
pub fn generate_trajectory(
    params: &OUParams,
    length: usize,
    rng: &mut RngStream,
) -> Result<OUTrajectory> {
    if length == 0 {
        return Err(Error::Argument("trajectory length must be >= 1".into()));
    }
    let mut values = Vec::with_capacity(length);
    values.push(sample_stationary(params, rng));
    for _ in 1..length {
        let next = step(params, values[values.len() - 1], rng);
        values.push(next);
    }
    Ok(OUTrajectory {
        values,
        params: *params,
    })
}

/// Phase errors phi[k] = v[k] * dt, in radians.
pub fn phases_from_trajectory(traj: &OUTrajectory) -> Vec<f64> {
    traj.values.iter().map(|v| v * traj.params.dt).collect()
}

/// Normalized sample autocorrelation of `samples` at the given lag,
/// using the mean-centered biased estimator.
pub fn estimate_autocorrelation(samples: &[f64], lag: usize) -> Result<f64> {
    if samples.len() <= lag + 1 {
        return Err(Error::Argument(format!(
            "need more than {} samples for lag {lag}, got {}",
            lag + 1,
            samples.len()
        )));
    }
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
    if var == 0.0 {
        // Constant series: correlation is conventionally 1 at lag 0.
        return Ok(if lag == 0 { 1.0 } else { 0.0 });
    }
    let cov: f64 = (0..n - lag)
        .map(|i| (samples[i] - mean) * (samples[i + lag] - mean))
        .sum();
    Ok(cov / var)
}
