//! End-to-end checks of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_djnoise"))
}

#[test]
fn sweep_writes_csv_and_plot_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg,
        "sigma = 1,5\ntau_c = 0.1,1.0\nseed = 9\nn_traj = 20\nn_shots = 64\n",
    )
    .unwrap();
    let out = dir.path().join("results.csv");
    let plots = dir.path().join("plots");
    let status = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .arg("--plot-out")
        .arg(&plots)
        .status()
        .unwrap();
    assert!(status.success());

    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    // 4 OU + 2 Markovian records plus header.
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("model,sigma_ou,tau_c,"));

    let mut names: Vec<String> = std::fs::read_dir(&plots)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    // 2 OU + 2 Markovian tau_c series, OU + Markovian sigma series.
    assert_eq!(names.len(), 6, "{names:?}");
    assert!(names.iter().any(|n| n.starts_with("fid_vs_tau_c")));
    assert!(names.iter().any(|n| n.starts_with("fid_vs_sigma")));
    let one = std::fs::read_to_string(plots.join(&names[0])).unwrap();
    assert!(one.starts_with("# "));
}

#[test]
fn sweep_exact_flag_zeroes_shot_noise_for_markovian() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("m.cfg");
    std::fs::write(&cfg, "sigma = 5\nmodel = markovian\n").unwrap();
    let out = dir.path().join("m.csv");
    let status = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .arg("--exact")
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.lines().nth(1).unwrap().contains("0.875000"), "{csv}");
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "sigma = 1\ntau_c = -1\n").unwrap();
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("x.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = bin().args(["sweep", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analytic_prints_closed_form() {
    let out = bin()
        .args(["analytic", "--sigma", "5", "--tau-c", "1.0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ou_fidelity_mean     0.810567"), "{text}");
    assert!(text.contains("matched_lambda       0.250000"), "{text}");
    assert!(text.contains("markovian_fidelity   0.875000"), "{text}");
}

#[test]
fn validate_ou_passes_and_fails() {
    let ok = bin()
        .args([
            "validate-ou", "--sigma", "2", "--tau-c", "1.0", "--samples", "100000", "--seed", "3",
        ])
        .status()
        .unwrap();
    assert!(ok.success());

    // Too few samples for meaningful statistics is a usage error.
    let out = bin()
        .args(["validate-ou", "--sigma", "2", "--tau-c", "1.0", "--samples", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_exits_clean_on_consistent_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, "sigma = 1,3,5\ntau_c = 0.1,1.0\nn_traj = 2000\nseed = 11\n").unwrap();
    let out = bin().args(["compare", "--config"]).arg(&cfg).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().count() >= 9, "{text}");
    assert!(text.contains("z="), "{text}");
}
