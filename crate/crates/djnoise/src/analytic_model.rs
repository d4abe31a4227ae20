//! Closed-form fidelity predictions for both noise models.
//!
//! For the balanced oracle with injected phases, the success probability of
//! one noisy run is cos^2(theta/2) with theta the sum of the first two slot
//! phases; the third slot precedes a computational-basis measurement and
//! drops out. The slot phases are jointly Gaussian with the stationary OU
//! covariance, so theta ~ N(0, V) with
//!
//! ```text
//! V = 2 (dt sigma)^2 (1 + exp(-dt/tau_c))
//! ```
//!
//! Gaussian moments then give the mean fidelity (1 + e^{-V/2})/2 and the
//! per-trajectory spread in closed form. The Markovian channel multiplies
//! the query-qubit coherence by sqrt(1-lambda) per application, two of
//! which matter, so its fidelity is exactly 1 - lambda/2.

use crate::ou_noise::OUParams;
use crate::{Error, Result};

/// Mean fidelity and per-trajectory standard deviation predicted for one
/// OU sweep point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticPrediction {
    pub mean_fidelity: f64,
    pub per_trajectory_std: f64,
}

impl AnalyticPrediction {
    /// Second moment E[F^2] of the per-trajectory fidelity.
    pub fn second_moment(&self) -> f64 {
        self.per_trajectory_std.powi(2) + self.mean_fidelity.powi(2)
    }

    /// Predicted standard error of a Monte Carlo mean over `n_traj`
    /// trajectories with `n_shots` shots each: trajectory spread plus the
    /// binomial shot-noise term E[p(1-p)]/n_shots, in quadrature.
    pub fn predicted_standard_error(&self, n_traj: usize, n_shots: usize) -> f64 {
        let traj_var = self.per_trajectory_std.powi(2);
        let shot_var = (self.mean_fidelity - self.second_moment()).max(0.0) / n_shots as f64;
        ((traj_var + shot_var) / n_traj as f64).sqrt()
    }
}

/// Variance of the sum of the two fidelity-relevant slot phases:
/// V = 2 (dt sigma)^2 (1 + exp(-dt/tau_c)).
pub fn phase_sum_variance(params: &OUParams) -> f64 {
    let step_var = (params.dt * params.sigma_ou).powi(2);
    2.0 * step_var * (1.0 + params.decay())
}

/// Closed-form OU fidelity. For theta ~ N(0, V):
/// E[F] = (1 + e^{-V/2})/2 and
/// E[F^2] = (1 + 2 e^{-V/2} + (1 + e^{-2V})/2) / 4.
pub fn ou_fidelity(params: &OUParams) -> AnalyticPrediction {
    let v = phase_sum_variance(params);
    let c1 = (-v / 2.0).exp();
    let mean = (1.0 + c1) / 2.0;
    let second = (1.0 + 2.0 * c1 + (1.0 + (-2.0 * v).exp()) / 2.0) / 4.0;
    let var = (second - mean * mean).max(0.0);
    AnalyticPrediction {
        mean_fidelity: mean,
        per_trajectory_std: var.sqrt(),
    }
}

/// Exact Markovian fidelity 1 - lambda/2.
pub fn markovian_fidelity(lambda_pd: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda_pd) {
        return Err(Error::Argument(format!(
            "lambda_pd must be in [0, 1], got {lambda_pd}"
        )));
    }
    Ok(1.0 - lambda_pd / 2.0)
}
