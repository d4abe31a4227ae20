//! The two noise models and the variance-matching rule between them.
//!
//! OU phase injection draws a fresh trajectory per circuit execution and
//! injects its values as Rz phases. The Markovian comparison channel is
//! single-qubit phase damping whose parameter is matched to the single-step
//! phase-error variance: lambda_pd = (dt * sigma_ou)^2.

use num_complex::Complex64;

use crate::ou_noise::{generate_trajectory, phases_from_trajectory, OUParams};
use crate::quantum_state::KrausSet;
use crate::rng::RngStream;
use crate::{Error, Result};

/// Number of noise-injection points in the Deutsch-Jozsa circuit.
pub const NUM_NOISE_POINTS: usize = 3;

/// Which noise model a simulation runs under.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModelSpec {
    Ou(OUParams),
    Markovian { lambda_pd: f64 },
}

/// Phase-damping parameter matched to the OU single-step phase variance.
/// Errors if the matching leaves [0, 1].
pub fn matched_lambda(params: &OUParams) -> Result<f64> {
    let lambda = (params.dt * params.sigma_ou).powi(2);
    if lambda > 1.0 {
        return Err(Error::MatchingOutOfRange { lambda });
    }
    Ok(lambda)
}

/// Phase-damping Kraus operators E0 = diag(1, sqrt(1-lambda)),
/// E1 = diag(0, sqrt(lambda)).
pub fn phase_damping_kraus(lambda_pd: f64) -> Result<KrausSet> {
    if !(0.0..=1.0).contains(&lambda_pd) {
        return Err(Error::Argument(format!(
            "lambda_pd must be in [0, 1], got {lambda_pd}"
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let e0 = [
        [Complex64::new(1.0, 0.0), zero],
        [zero, Complex64::new((1.0 - lambda_pd).sqrt(), 0.0)],
    ];
    let e1 = [
        [zero, zero],
        [zero, Complex64::new(lambda_pd.sqrt(), 0.0)],
    ];
    Ok(KrausSet::new(vec![e0, e1]))
}

/// Draw one fresh OU trajectory of `num_points` values and convert it to
/// phases. Each call consumes `num_points` normal draws from the stream.
pub fn sample_ou_phases(
    params: &OUParams,
    num_points: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let traj = generate_trajectory(params, num_points, rng)?;
    Ok(phases_from_trajectory(&traj))
}
