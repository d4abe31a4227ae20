//! Monte Carlo harness: seeded trajectory runs, shot sampling, and
//! parameter sweeps.
//!
//! Each (model, sweep point, trajectory) gets its own random stream derived
//! from the master seed and the parameter bits, so results are independent
//! of scheduling and individual trajectories are replayable. Trajectories
//! run in parallel; aggregation happens in trajectory-index order with
//! compensated summation, so worker count never changes the output.

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::analytic_model::{markovian_fidelity, ou_fidelity};
use crate::dj_circuit::{build_dj_circuit, expected_outcome, CircuitOp, OracleKind};
use crate::noise_models::{matched_lambda, phase_damping_kraus, sample_ou_phases, NUM_NOISE_POINTS};
use crate::ou_noise::OUParams;
use crate::rng::RngStream;
use crate::{Error, Result};

/// Which noise models a sweep runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelChoice {
    Ou,
    Markovian,
    Both,
}

/// Model tag on an individual sweep record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Ou,
    Markovian,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Ou => "ou",
            ModelKind::Markovian => "markovian",
        }
    }
}

/// Full description of one sweep run.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub model: ModelChoice,
    pub oracle: OracleKind,
    pub sigma_values: Vec<f64>,
    pub tau_c_values: Vec<f64>,
    pub dt: f64,
    pub n_traj: usize,
    pub n_shots: usize,
    pub master_seed: u64,
    /// Skip shot sampling and use exact per-trajectory probabilities.
    pub exact_mode: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_traj == 0 {
            return Err(Error::Argument("n_traj must be >= 1".into()));
        }
        if self.n_shots == 0 {
            return Err(Error::Argument("n_shots must be >= 1".into()));
        }
        if self.dt.is_nan() || self.dt <= 0.0 {
            return Err(Error::Argument(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.sigma_values.iter().any(|&s| s.is_nan() || s < 0.0) {
            return Err(Error::Argument("all sigma values must be >= 0".into()));
        }
        if self.tau_c_values.iter().any(|&t| t.is_nan() || t <= 0.0) {
            return Err(Error::Argument("all tau_c values must be > 0".into()));
        }
        Ok(())
    }
}

/// One aggregated sweep point.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityRecord {
    pub model: ModelKind,
    pub sigma_ou: f64,
    /// Absent for Markovian records.
    pub tau_c: Option<f64>,
    pub dt: f64,
    pub n_traj: usize,
    pub n_shots: usize,
    pub seed: u64,
    pub fidelity_mean: f64,
    /// Standard error over trajectories (n-1 denominator).
    pub fidelity_se: f64,
    pub analytic_mean: f64,
}

/// One noisy circuit execution: draw three phases from a fresh OU
/// trajectory, bind them, and return the exact success probability.
pub fn run_ou_trajectory(
    oracle: OracleKind,
    params: &OUParams,
    rng: &mut RngStream,
) -> Result<f64> {
    let phases = sample_ou_phases(params, NUM_NOISE_POINTS, rng)?;
    crate::dj_circuit::success_probability(oracle, &phases)
}

/// Count of successes in `n_shots` Bernoulli(p) trials, as one binomial
/// draw. Within a trajectory the circuit is a fixed unitary, so shots are
/// i.i.d. given the trajectory and a single binomial draw is equivalent.
pub fn sample_shots(p: f64, n_shots: usize, rng: &mut RngStream) -> Result<u64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::Argument(format!("probability {p} outside [0, 1]")));
    }
    let p = p.clamp(0.0, 1.0);
    let binom = Binomial::new(n_shots as u64, p)
        .map_err(|e| Error::Argument(format!("binomial setup failed: {e}")))?;
    Ok(binom.sample(rng))
}

/// Exact success probability under the Markovian phase-damping channel,
/// by density-matrix evolution with the channel at each noise slot.
pub fn markovian_success_probability(oracle: OracleKind, lambda_pd: f64) -> Result<f64> {
    let kraus = phase_damping_kraus(lambda_pd)?;
    let circuit = build_dj_circuit(oracle);
    let mut rho = crate::quantum_state::Statevector::new_basis_state(circuit.num_qubits, 0)?
        .to_density();
    for op in &circuit.ops {
        rho = match op {
            CircuitOp::Gate(g) => rho.apply_gate(*g)?,
            CircuitOp::NoiseSlot(_) => rho.apply_kraus(&kraus, 0)?,
        };
    }
    let (p0, p1) = rho.probabilities_qubit(0)?;
    Ok(if expected_outcome(oracle) == 0 { p0 } else { p1 })
}

/// Kahan-compensated sum in index order.
fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn mean_and_se(fidelities: &[f64]) -> (f64, f64) {
    let n = fidelities.len() as f64;
    let mean = compensated_sum(fidelities) / n;
    if fidelities.len() < 2 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = fidelities.iter().map(|f| (f - mean).powi(2)).collect();
    let var = compensated_sum(&sq) / (n - 1.0);
    (mean, (var / n).sqrt())
}

const OU_STREAM_TAG: u64 = 1;
const MARKOV_STREAM_TAG: u64 = 2;

/// Run one OU sweep point: `n_traj` independent trajectories, each with its
/// own derived stream, optionally followed by binomial shot sampling from
/// the same stream.
pub fn run_ou_point(config: &SweepConfig, sigma: f64, tau_c: f64) -> Result<FidelityRecord> {
    config.validate()?;
    let params = OUParams::new(sigma, tau_c, config.dt)?;
    let fidelities: Vec<f64> = (0..config.n_traj)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let mut rng = RngStream::derive(
                config.master_seed,
                &[
                    OU_STREAM_TAG,
                    sigma.to_bits(),
                    tau_c.to_bits(),
                    config.dt.to_bits(),
                    t as u64,
                ],
            );
            let p = run_ou_trajectory(config.oracle, &params, &mut rng)?;
            if config.exact_mode {
                Ok(p)
            } else {
                let hits = sample_shots(p, config.n_shots, &mut rng)?;
                Ok(hits as f64 / config.n_shots as f64)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let (mean, se) = mean_and_se(&fidelities);
    Ok(FidelityRecord {
        model: ModelKind::Ou,
        sigma_ou: sigma,
        tau_c: Some(tau_c),
        dt: config.dt,
        n_traj: config.n_traj,
        n_shots: config.n_shots,
        seed: config.master_seed,
        fidelity_mean: mean,
        fidelity_se: se,
        analytic_mean: ou_fidelity(&params).mean_fidelity,
    })
}

/// Run one Markovian sweep point. Exact mode reads the density-matrix
/// probability directly; sampled mode draws n_shots * n_traj total shots.
pub fn run_markovian_point(config: &SweepConfig, sigma: f64) -> Result<FidelityRecord> {
    config.validate()?;
    let params = OUParams::new(sigma, 1.0, config.dt)?;
    let lambda = matched_lambda(&params)?;
    let p = markovian_success_probability(config.oracle, lambda)?;
    let (mean, se) = if config.exact_mode {
        (p, 0.0)
    } else {
        let total = (config.n_shots * config.n_traj) as u64;
        let mut rng = RngStream::derive(
            config.master_seed,
            &[MARKOV_STREAM_TAG, sigma.to_bits(), config.dt.to_bits()],
        );
        let hits = sample_shots(p, total as usize, &mut rng)?;
        let est = hits as f64 / total as f64;
        (est, (est * (1.0 - est) / total as f64).sqrt())
    };
    Ok(FidelityRecord {
        model: ModelKind::Markovian,
        sigma_ou: sigma,
        tau_c: None,
        dt: config.dt,
        n_traj: config.n_traj,
        n_shots: config.n_shots,
        seed: config.master_seed,
        fidelity_mean: mean,
        fidelity_se: se,
        analytic_mean: markovian_fidelity(lambda)?,
    })
}

/// Run the full sweep: OU records over the sigma x tau_c grid (tau_c
/// innermost), then Markovian records per sigma, in deterministic order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<FidelityRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    if matches!(config.model, ModelChoice::Ou | ModelChoice::Both) {
        for &sigma in &config.sigma_values {
            for &tau_c in &config.tau_c_values {
                records.push(run_ou_point(config, sigma, tau_c)?);
            }
        }
    }
    if matches!(config.model, ModelChoice::Markovian | ModelChoice::Both) {
        for &sigma in &config.sigma_values {
            records.push(run_markovian_point(config, sigma)?);
        }
    }
    Ok(records)
}
