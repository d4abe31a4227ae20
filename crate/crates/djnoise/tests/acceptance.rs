//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the per-criterion report.

use std::process::Command;

use djnoise::analytic_model::{markovian_fidelity, ou_fidelity};
use djnoise::dj_circuit::{success_probability, OracleKind};
use djnoise::experiment::{
    markovian_success_probability, run_markovian_point, run_ou_point, ModelChoice, ModelKind,
    SweepConfig,
};
use djnoise::noise_models::matched_lambda;
use djnoise::ou_noise::OUParams;
use djnoise::rng::RngStream;

const MAIN_SIGMAS: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];
const MAIN_TAUS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

fn report(criterion: u32, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

fn base_config() -> SweepConfig {
    SweepConfig {
        model: ModelChoice::Ou,
        oracle: OracleKind::BalancedIdentity,
        sigma_values: MAIN_SIGMAS.to_vec(),
        tau_c_values: MAIN_TAUS.to_vec(),
        dt: 0.1,
        n_traj: 100,
        n_shots: 1024,
        master_seed: 42,
        exact_mode: false,
    }
}

#[test]
fn criterion_1_noiseless_determinism() {
    let mut pass = true;
    for oracle in OracleKind::ALL {
        let p = success_probability(oracle, &[0.0, 0.0, 0.0]).unwrap();
        pass &= (p - 1.0).abs() < 1e-12;
    }
    report(1, "noiseless determinism", pass);
}

#[test]
fn criterion_2_markovian_exact_values() {
    // Reference sampled Markovian fidelities per sigma.
    let reference = [0.9951, 0.9797, 0.9554, 0.9197, 0.8761];
    let mut pass = true;
    for (i, &sigma) in MAIN_SIGMAS.iter().enumerate() {
        let lambda = matched_lambda(&OUParams::new(sigma, 1.0, 0.1).unwrap()).unwrap();
        let exact = markovian_success_probability(OracleKind::BalancedIdentity, lambda).unwrap();
        let closed = 1.0 - lambda / 2.0;
        pass &= (exact - closed).abs() < 1e-12;
        pass &= (reference[i] - exact).abs() < 0.005;
    }
    report(2, "Markovian exact values", pass);
}

#[test]
fn criterion_3_analytic_monte_carlo_equivalence() {
    let mut cfg = base_config();
    cfg.n_traj = 10_000;
    cfg.exact_mode = true;
    let mut pass = true;
    for &sigma in &MAIN_SIGMAS {
        for &tau_c in &MAIN_TAUS {
            let rec = run_ou_point(&cfg, sigma, tau_c).unwrap();
            let dev = (rec.fidelity_mean - rec.analytic_mean).abs();
            let ok = dev < 3.0 * rec.fidelity_se && dev < 0.01;
            if !ok {
                eprintln!(
                    "  sigma={sigma} tau_c={tau_c}: mc={} analytic={} se={}",
                    rec.fidelity_mean, rec.analytic_mean, rec.fidelity_se
                );
            }
            pass &= ok;
        }
    }
    report(3, "analytic-Monte Carlo equivalence", pass);
}

#[test]
fn criterion_4_reference_ou_values_at_survey_scale() {
    // Reference OU fidelities from the main and refined scans.
    let quoted: &[(f64, f64, f64)] = &[
        (1.0, 0.1, 0.9942),
        (2.0, 0.1, 0.9753),
        (2.0, 1.0, 0.9569),
        (3.0, 0.1, 0.9474),
        (3.0, 2.0, 0.9293),
        (3.0, 10.0, 0.9219),
        (4.0, 0.1, 0.8983),
        (4.0, 0.1, 0.8931),
        (4.0, 0.5, 0.8297),
        (4.0, 2.5, 0.8636),
        (4.0, 8.0, 0.8387),
        (5.0, 0.1, 0.8426),
        (5.0, 0.1, 0.8471),
        (5.0, 1.0, 0.7871),
        (5.0, 6.0, 0.7819),
    ];
    let mut pass = true;
    for &(sigma, tau_c, fidelity) in quoted {
        let prediction = ou_fidelity(&OUParams::new(sigma, tau_c, 0.1).unwrap());
        let se = prediction.predicted_standard_error(100, 1024);
        let z = (fidelity - prediction.mean_fidelity).abs() / se;
        if z > 3.0 {
            eprintln!(
                "  sigma={sigma} tau_c={tau_c}: quoted {fidelity}, analytic {}, z={z:.2}",
                prediction.mean_fidelity
            );
        }
        pass &= z <= 3.0;
    }
    report(4, "reference OU values consistent at 100-trajectory scale", pass);
}

#[test]
fn criterion_5_ou_generator_statistics() {
    // Drive the actual validate-ou command over the main grid; the
    // tau_c = dt pair doubles as the exact-discretization check.
    let bin = env!("CARGO_BIN_EXE_djnoise");
    let mut pass = true;
    let mut seed = 7000;
    for &sigma in &MAIN_SIGMAS {
        for &tau_c in &MAIN_TAUS {
            seed += 1;
            let out = Command::new(bin)
                .args([
                    "validate-ou",
                    "--sigma",
                    &sigma.to_string(),
                    "--tau-c",
                    &tau_c.to_string(),
                    "--dt",
                    "0.1",
                    "--samples",
                    "100000",
                    "--seed",
                    &seed.to_string(),
                ])
                .output()
                .unwrap();
            if !out.status.success() {
                eprintln!(
                    "  sigma={sigma} tau_c={tau_c} failed:\n{}",
                    String::from_utf8_lossy(&out.stdout)
                );
                pass = false;
            }
        }
    }
    report(5, "OU generator statistics", pass);
}

#[test]
fn criterion_6_final_slot_irrelevance() {
    let mut rng = RngStream::from_seed(606);
    let mut pass = true;
    for _ in 0..150 {
        let phi1 = 4.0 * rng.normal();
        let phi2 = 4.0 * rng.normal();
        let phi3 = 4.0 * rng.normal();
        let a = success_probability(OracleKind::BalancedIdentity, &[phi1, phi2, 0.0]).unwrap();
        let b = success_probability(OracleKind::BalancedIdentity, &[phi1, phi2, phi3]).unwrap();
        pass &= (a - b).abs() < 1e-12;
    }
    report(6, "final-slot irrelevance", pass);
}

#[test]
fn criterion_7_limit_consistency() {
    // Effectively white OU noise vs the independent-phase closed form.
    let mut cfg = base_config();
    cfg.n_traj = 10_000;
    cfg.exact_mode = true;
    let rec = run_ou_point(&cfg, 5.0, 1e-6).unwrap();
    let independent = (1.0 + (-0.25f64).exp()) / 2.0;
    let mut pass = (independent - 0.8894).abs() < 1e-4;
    pass &= (rec.fidelity_mean - independent).abs() < 3.0 * rec.fidelity_se;

    // The matched Markovian channel sits at exactly 0.875 for sigma = 5.
    let mut mcfg = base_config();
    mcfg.exact_mode = true;
    let markov = run_markovian_point(&mcfg, 5.0).unwrap();
    pass &= (markov.fidelity_mean - 0.875).abs() < 1e-12;
    pass &= (markov.fidelity_mean - markovian_fidelity(0.25).unwrap()).abs() < 1e-12;
    assert_eq!(markov.model, ModelKind::Markovian);
    report(7, "limit consistency", pass);
}

#[test]
fn criterion_8_sweep_determinism() {
    let bin = env!("CARGO_BIN_EXE_djnoise");
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("sweep.cfg");
    std::fs::write(
        &config_path,
        "sigma = 1,2,3,4,5\ntau_c = 0.1,0.5,1.0,2.0,5.0,10.0\nseed = 42\nn_traj = 100\n",
    )
    .unwrap();
    let run = |threads: &str, out_name: &str| -> Vec<u8> {
        let out_path = dir.path().join(out_name);
        let status = Command::new(bin)
            .env("RAYON_NUM_THREADS", threads)
            .args(["sweep", "--config"])
            .arg(&config_path)
            .arg("--out")
            .arg(&out_path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(&out_path).unwrap()
    };
    let a = run("1", "a.csv");
    let b = run("4", "b.csv");
    let c = run("4", "c.csv");
    let pass = a == b && b == c && !a.is_empty();
    report(8, "sweep determinism across runs and worker counts", pass);
}
