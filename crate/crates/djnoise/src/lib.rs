//! Fidelity of the 2-qubit Deutsch-Jozsa algorithm under temporally
//! correlated dephasing noise.
//!
//! The library simulates the algorithm under two noise models and compares
//! them against a closed-form prediction:
//!
//! - **OU phase injection**: each noisy run draws a fresh Ornstein-Uhlenbeck
//!   trajectory and injects its values as `Rz` phase errors on the query
//!   qubit at three fixed points in the circuit. Per trajectory the circuit
//!   stays unitary and is simulated on a statevector.
//! - **Markovian phase damping**: a Kraus channel with damping parameter
//!   matched to the single-step phase-error variance of the OU process,
//!   applied at the same three points and simulated on a density matrix.
//!
//! [`analytic_model`] provides the exact mean fidelity and per-trajectory
//! spread for both models, and [`experiment`] runs seeded Monte Carlo sweeps
//! over (noise strength, correlation time) grids.

pub mod analytic_model;
pub mod cli_io;
pub mod dj_circuit;
pub mod experiment;
pub mod noise_models;
pub mod ou_noise;
pub mod quantum_state;
pub mod rng;

use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid Kraus channel: completeness violated by {defect:e}")]
    InvalidChannel { defect: f64 },
    #[error("variance matching out of range: lambda_pd = {lambda} > 1 (sigma_ou * dt too large)")]
    MatchingOutOfRange { lambda: f64 },
    #[error("config parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("plot series shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
