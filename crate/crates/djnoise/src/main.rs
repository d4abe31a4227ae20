//! Command-line driver for the Deutsch-Jozsa dephasing-noise sweeps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use djnoise::analytic_model::{markovian_fidelity, ou_fidelity};
use djnoise::cli_io::{emit_csv, emit_plot_series, parse_config, render_plot_series, PlotMode};
use djnoise::experiment::{run_sweep, ModelKind};
use djnoise::noise_models::matched_lambda;
use djnoise::ou_noise::{estimate_autocorrelation, generate_trajectory, OUParams};
use djnoise::rng::RngStream;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "djnoise",
    about = "2-qubit Deutsch-Jozsa fidelity under correlated dephasing noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write CSV (and optionally plot series).
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot_out: Option<PathBuf>,
        /// Use exact per-trajectory probabilities instead of shot sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Check OU generator statistics against theory.
    ValidateOu {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        tau_c: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print closed-form predictions for one parameter point.
    Analytic {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        tau_c: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// Exact-mode sweep with per-point z-scores against the closed form.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> djnoise::Result<ExitCode> {
    match cli.command {
        Command::Sweep {
            config,
            out,
            plot_out,
            exact,
        } => cmd_sweep(&config, &out, plot_out.as_deref(), exact),
        Command::ValidateOu {
            sigma,
            tau_c,
            dt,
            samples,
            seed,
        } => cmd_validate_ou(sigma, tau_c, dt, samples, seed),
        Command::Analytic { sigma, tau_c, dt } => cmd_analytic(sigma, tau_c, dt),
        Command::Compare { config } => cmd_compare(&config),
    }
}

fn series_file_name(prefix: &str, label: &str) -> String {
    let safe: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
        .collect();
    format!("{prefix}__{safe}.dat")
}

fn cmd_sweep(
    config_path: &Path,
    out: &Path,
    plot_out: Option<&Path>,
    exact: bool,
) -> djnoise::Result<ExitCode> {
    let text = std::fs::read_to_string(config_path)?;
    let mut config = parse_config(&text)?;
    if exact {
        config.exact_mode = true;
    }
    let records = run_sweep(&config)?;
    std::fs::write(out, emit_csv(&records)?)?;
    if let Some(dir) = plot_out {
        std::fs::create_dir_all(dir)?;
        let have_ou_grid = records.iter().any(|r| r.model == ModelKind::Ou);
        if have_ou_grid {
            for series in emit_plot_series(&records, PlotMode::VsTauC)? {
                let path = dir.join(series_file_name("fid_vs_tau_c", &series.label));
                std::fs::write(path, render_plot_series(&series))?;
            }
        }
        for series in emit_plot_series(&records, PlotMode::VsSigma)? {
            let path = dir.join(series_file_name("fid_vs_sigma", &series.label));
            std::fs::write(path, render_plot_series(&series))?;
        }
    }
    println!("wrote {} records to {}", records.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate_ou(
    sigma: f64,
    tau_c: f64,
    dt: f64,
    samples: usize,
    seed: u64,
) -> djnoise::Result<ExitCode> {
    let params = OUParams::new(sigma, tau_c, dt)?;
    if samples < 10 {
        return Err(djnoise::Error::Argument("need at least 10 samples".into()));
    }
    let mut rng = RngStream::from_seed(seed);
    let traj = generate_trajectory(&params, samples, &mut rng)?;
    let n = samples as f64;
    let mean = traj.values.iter().sum::<f64>() / n;
    let var = traj.values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;

    let mut ok = true;
    let mut check = |name: &str, observed: f64, expected: f64, tol: f64| {
        let pass = (observed - expected).abs() <= tol;
        ok &= pass;
        println!(
            "{name:<14} observed {observed:>12.6}  expected {expected:>12.6}  tol {tol:.6}  {}",
            if pass { "ok" } else { "FAIL" }
        );
    };

    // Correlated samples: the variance of the mean is inflated by
    // (1 + phi) / (1 - phi) with phi the lag-1 autocorrelation.
    let phi = params.decay();
    let mean_inflation = ((1.0 + phi) / (1.0 - phi)).sqrt();
    check("mean", mean, 0.0, 3.0 * sigma * mean_inflation / n.sqrt() + 1e-12);
    check("variance", var, sigma * sigma, 0.05 * sigma * sigma + 1e-12);
    for lag in 1..=5usize {
        let expected = (-(lag as f64) * dt / tau_c).exp();
        let observed = if sigma == 0.0 {
            expected // degenerate constant series: nothing to test
        } else {
            estimate_autocorrelation(&traj.values, lag)?
        };
        check(&format!("autocorr lag {lag}"), observed, expected, 0.02);
    }

    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION)
    })
}

fn cmd_analytic(sigma: f64, tau_c: f64, dt: f64) -> djnoise::Result<ExitCode> {
    let params = OUParams::new(sigma, tau_c, dt)?;
    let prediction = ou_fidelity(&params);
    let lambda = matched_lambda(&params)?;
    println!("ou_fidelity_mean     {:.6}", prediction.mean_fidelity);
    println!("per_trajectory_std   {:.6}", prediction.per_trajectory_std);
    println!("matched_lambda       {lambda:.6}");
    println!("markovian_fidelity   {:.6}", markovian_fidelity(lambda)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(config_path: &Path) -> djnoise::Result<ExitCode> {
    let text = std::fs::read_to_string(config_path)?;
    let mut config = parse_config(&text)?;
    config.exact_mode = true;
    let records = run_sweep(&config)?;
    let mut ok = true;
    for r in &records {
        let diff = r.fidelity_mean - r.analytic_mean;
        let z = if r.fidelity_se > 0.0 {
            diff / r.fidelity_se
        } else if diff.abs() < 1e-9 {
            0.0
        } else {
            f64::INFINITY
        };
        let pass = z.abs() <= 5.0;
        ok &= pass;
        let tau = r.tau_c.map(|t| format!("{t}")).unwrap_or_else(|| "-".into());
        println!(
            "{:<9} sigma={:<5} tau_c={:<5} mc={:.6} analytic={:.6} z={:+.3} {}",
            r.model.as_str(),
            r.sigma_ou,
            tau,
            r.fidelity_mean,
            r.analytic_mean,
            z,
            if pass { "ok" } else { "FAIL" }
        );
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION)
    })
}
