//! Config parsing and result emission.
//!
//! Configs are flat `key = value` text, one pair per line, `#` comments.
//! Results are emitted as a fixed-schema CSV plus plain-text plot series
//! (`# label` header, then `x y yerr` rows) consumable by any plotting
//! tool; the artifact never renders images.

use std::fmt::Write as _;

use crate::dj_circuit::OracleKind;
use crate::experiment::{FidelityRecord, ModelChoice, ModelKind, SweepConfig};
use crate::{Error, Result};

/// Defaults used for unspecified config keys.
pub const DEFAULT_DT: f64 = 0.1;
pub const DEFAULT_N_TRAJ: usize = 100;
pub const DEFAULT_N_SHOTS: usize = 1024;

/// One plottable curve: fidelity against tau_c or sigma with one standard
/// error per point.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotSeries {
    pub label: String,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub y_err: Vec<f64>,
}

/// Axis choice for plot-series extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotMode {
    VsTauC,
    VsSigma,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_f64(line: usize, key: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("malformed number for `{key}`: `{}`", raw.trim())))
}

fn parse_list(line: usize, key: &str, raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|part| parse_f64(line, key, part))
        .collect()
}

/// Parse a flat key-value sweep configuration.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut sigma: Option<Vec<f64>> = None;
    let mut tau_c: Vec<f64> = Vec::new();
    let mut dt = DEFAULT_DT;
    let mut n_traj = DEFAULT_N_TRAJ;
    let mut n_shots = DEFAULT_N_SHOTS;
    let mut seed: u64 = 0;
    let mut oracle = OracleKind::BalancedIdentity;
    let mut model = ModelChoice::Both;
    let mut exact = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "sigma" => {
                let vals = parse_list(line, key, value)?;
                if vals.iter().any(|&s| s.is_nan() || s < 0.0) {
                    return Err(parse_err(line, "sigma values must be >= 0"));
                }
                sigma = Some(vals);
            }
            "tau_c" => {
                let vals = parse_list(line, key, value)?;
                if vals.iter().any(|&t| t.is_nan() || t <= 0.0) {
                    return Err(parse_err(line, "tau_c values must be > 0"));
                }
                tau_c = vals;
            }
            "dt" => {
                dt = parse_f64(line, key, value)?;
                if dt.is_nan() || dt <= 0.0 {
                    return Err(parse_err(line, "dt must be > 0"));
                }
            }
            "n_traj" => {
                n_traj = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("malformed integer for `n_traj`: `{value}`")))?;
                if n_traj == 0 {
                    return Err(parse_err(line, "n_traj must be >= 1"));
                }
            }
            "n_shots" => {
                n_shots = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("malformed integer for `n_shots`: `{value}`")))?;
                if n_shots == 0 {
                    return Err(parse_err(line, "n_shots must be >= 1"));
                }
            }
            "seed" => {
                seed = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("malformed integer for `seed`: `{value}`")))?;
            }
            "oracle" => {
                oracle = match value {
                    "constant_zero" => OracleKind::ConstantZero,
                    "constant_one" => OracleKind::ConstantOne,
                    "balanced_identity" => OracleKind::BalancedIdentity,
                    "balanced_not" => OracleKind::BalancedNot,
                    other => return Err(parse_err(line, format!("unknown oracle `{other}`"))),
                };
            }
            "model" => {
                model = match value {
                    "ou" => ModelChoice::Ou,
                    "markovian" => ModelChoice::Markovian,
                    "both" => ModelChoice::Both,
                    other => return Err(parse_err(line, format!("unknown model `{other}`"))),
                };
            }
            "exact" => {
                exact = match value {
                    "true" => true,
                    "false" => false,
                    other => return Err(parse_err(line, format!("expected true/false for `exact`, got `{other}`"))),
                };
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }

    let sigma = sigma.ok_or_else(|| parse_err(0, "sigma list required"))?;
    Ok(SweepConfig {
        model,
        oracle,
        sigma_values: sigma,
        tau_c_values: tau_c,
        dt,
        n_traj,
        n_shots,
        master_seed: seed,
        exact_mode: exact,
    })
}

fn fmt_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Serialize a config back to the flat key-value format.
pub fn emit_config(config: &SweepConfig) -> String {
    let model = match config.model {
        ModelChoice::Ou => "ou",
        ModelChoice::Markovian => "markovian",
        ModelChoice::Both => "both",
    };
    let oracle = match config.oracle {
        OracleKind::ConstantZero => "constant_zero",
        OracleKind::ConstantOne => "constant_one",
        OracleKind::BalancedIdentity => "balanced_identity",
        OracleKind::BalancedNot => "balanced_not",
    };
    let mut out = String::new();
    let _ = writeln!(out, "model = {model}");
    let _ = writeln!(out, "oracle = {oracle}");
    let _ = writeln!(out, "sigma = {}", fmt_list(&config.sigma_values));
    if !config.tau_c_values.is_empty() {
        let _ = writeln!(out, "tau_c = {}", fmt_list(&config.tau_c_values));
    }
    let _ = writeln!(out, "dt = {}", config.dt);
    let _ = writeln!(out, "n_traj = {}", config.n_traj);
    let _ = writeln!(out, "n_shots = {}", config.n_shots);
    let _ = writeln!(out, "seed = {}", config.master_seed);
    let _ = writeln!(out, "exact = {}", config.exact_mode);
    out
}

fn fmt_real(x: f64) -> String {
    format!("{x:.6}")
}

/// Fixed-schema CSV, byte-deterministic for a fixed record list.
pub fn emit_csv(records: &[FidelityRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::Argument("cannot emit CSV for empty record list".into()));
    }
    let mut out = String::from(
        "model,sigma_ou,tau_c,dt,n_traj,n_shots,seed,fidelity_mean,fidelity_se,analytic_mean\n",
    );
    for r in records {
        let tau = r.tau_c.map(fmt_real).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.model.as_str(),
            fmt_real(r.sigma_ou),
            tau,
            fmt_real(r.dt),
            r.n_traj,
            r.n_shots,
            r.seed,
            fmt_real(r.fidelity_mean),
            fmt_real(r.fidelity_se),
            fmt_real(r.analytic_mean),
        );
    }
    Ok(out)
}

/// Compact parameter formatting for series labels: always one decimal for
/// integral values, full precision otherwise.
fn fmt_param(x: f64) -> String {
    if x == x.trunc() && x.is_finite() {
        format!("{x:.1}")
    } else {
        format!("{x}")
    }
}

fn sorted_strict(mut pairs: Vec<(f64, f64, f64)>, what: &str) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in pairs.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::Shape(format!("duplicate {what} value {}", w[0].0)));
        }
    }
    let x = pairs.iter().map(|p| p.0).collect();
    let y = pairs.iter().map(|p| p.1).collect();
    let e = pairs.iter().map(|p| p.2).collect();
    Ok((x, y, e))
}

/// Extract plot series from sweep records.
///
/// `VsTauC`: one OU series per sigma over the tau_c grid, plus one constant
/// Markovian reference per sigma that has a Markovian record.
/// `VsSigma`: the OU series restricted to the smallest tau_c, plus the
/// Markovian series over sigma.
pub fn emit_plot_series(records: &[FidelityRecord], mode: PlotMode) -> Result<Vec<PlotSeries>> {
    let ou: Vec<&FidelityRecord> = records.iter().filter(|r| r.model == ModelKind::Ou).collect();
    let markov: Vec<&FidelityRecord> = records
        .iter()
        .filter(|r| r.model == ModelKind::Markovian)
        .collect();

    // Sigma values in record order, deduplicated.
    let mut sigmas: Vec<f64> = Vec::new();
    for r in records {
        if !sigmas.contains(&r.sigma_ou) {
            sigmas.push(r.sigma_ou);
        }
    }

    match mode {
        PlotMode::VsTauC => {
            let mut series = Vec::new();
            let mut grid: Option<Vec<f64>> = None;
            for &sigma in &sigmas {
                let pts: Vec<(f64, f64, f64)> = ou
                    .iter()
                    .filter(|r| r.sigma_ou == sigma)
                    .map(|r| (r.tau_c.unwrap(), r.fidelity_mean, r.fidelity_se))
                    .collect();
                if pts.is_empty() {
                    continue;
                }
                let (x, y, e) = sorted_strict(pts, "tau_c")?;
                match &grid {
                    None => grid = Some(x.clone()),
                    Some(g) if *g == x => {}
                    Some(_) => {
                        return Err(Error::Shape(format!(
                            "tau_c grid for sigma={sigma} differs from other sigmas"
                        )))
                    }
                }
                series.push(PlotSeries {
                    label: format!("OU sigma={}", fmt_param(sigma)),
                    x_values: x,
                    y_values: y,
                    y_err: e,
                });
            }
            if let Some(grid) = grid {
                for &sigma in &sigmas {
                    if let Some(m) = markov.iter().find(|r| r.sigma_ou == sigma) {
                        series.push(PlotSeries {
                            label: format!("Markovian sigma={}", fmt_param(sigma)),
                            x_values: grid.clone(),
                            y_values: vec![m.fidelity_mean; grid.len()],
                            y_err: vec![m.fidelity_se; grid.len()],
                        });
                    }
                }
            }
            if series.is_empty() {
                return Err(Error::Shape("no OU records to plot against tau_c".into()));
            }
            Ok(series)
        }
        PlotMode::VsSigma => {
            let mut series = Vec::new();
            if !ou.is_empty() {
                let min_tau = ou
                    .iter()
                    .map(|r| r.tau_c.unwrap())
                    .fold(f64::INFINITY, f64::min);
                let pts: Vec<(f64, f64, f64)> = ou
                    .iter()
                    .filter(|r| r.tau_c.unwrap() == min_tau)
                    .map(|r| (r.sigma_ou, r.fidelity_mean, r.fidelity_se))
                    .collect();
                if pts.len() != sigmas.iter().filter(|&&s| ou.iter().any(|r| r.sigma_ou == s)).count()
                {
                    return Err(Error::Shape(format!(
                        "not every sigma has an OU record at tau_c={min_tau}"
                    )));
                }
                let (x, y, e) = sorted_strict(pts, "sigma")?;
                series.push(PlotSeries {
                    label: format!("OU tau_c={}", fmt_param(min_tau)),
                    x_values: x,
                    y_values: y,
                    y_err: e,
                });
            }
            if !markov.is_empty() {
                let pts: Vec<(f64, f64, f64)> = markov
                    .iter()
                    .map(|r| (r.sigma_ou, r.fidelity_mean, r.fidelity_se))
                    .collect();
                let (x, y, e) = sorted_strict(pts, "sigma")?;
                series.push(PlotSeries {
                    label: "Markovian".into(),
                    x_values: x,
                    y_values: y,
                    y_err: e,
                });
            }
            if series.is_empty() {
                return Err(Error::Shape("no records to plot against sigma".into()));
            }
            Ok(series)
        }
    }
}

/// Render one plot series as plain text: `# label` then `x y yerr` rows.
pub fn render_plot_series(series: &PlotSeries) -> String {
    let mut out = format!("# {}\n", series.label);
    for i in 0..series.x_values.len() {
        let _ = writeln!(
            out,
            "{} {} {}",
            fmt_real(series.x_values[i]),
            fmt_real(series.y_values[i]),
            fmt_real(series.y_err[i]),
        );
    }
    out
}
