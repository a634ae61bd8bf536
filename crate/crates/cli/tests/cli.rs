use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecollapse"))
        .args(args)
        .env_remove("CONECOLLAPSE_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value_of(out: &str) -> f64 {
    let line = out.lines().next().unwrap();
    line.rsplit("= ").next().unwrap().trim().parse().unwrap()
}

fn meta(path: &Path, key: &str) -> String {
    let text = fs::read_to_string(path).unwrap();
    let prefix = format!("# {key} = ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("{key} missing in {}", path.display()))
        .to_string()
}

#[test]
fn specfun_examples() {
    let o = bin(&["specfun", "eval", "J", "0", "0"]);
    assert!(o.status.success());
    assert_eq!(value_of(&stdout(&o)), 1.0);
    assert!(stdout(&o).contains("branch = series"));

    let o = bin(&["specfun", "eval", "Kinu", "2.9580", "1.0"]);
    assert!(o.status.success());
    assert!(value_of(&stdout(&o)).abs() < 1e-3);

    let f = value_of(&stdout(&bin(&["specfun", "eval", "F", "0.0001", "3.0"])));
    let j0 = value_of(&stdout(&bin(&["specfun", "eval", "J", "0", "3.0"])));
    assert!((f - j0).abs() < 1e-6, "{f} vs {j0}");
}

#[test]
fn specfun_unknown_function_is_a_config_error() {
    let o = bin(&["specfun", "eval", "Q", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown function"));
}

#[test]
fn invalid_inputs_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    for args in [
        vec!["ldos", "--alpha", "1.5", "--out-dir", out],
        vec!["ldos", "--alpha", "0", "--out-dir", out],
        vec!["bound-spectrum", "--alpha", "-0.2", "--out-dir", out],
        vec!["ldos", "--eps-min", "1", "--eps-max", "0.1", "--out-dir", out],
        vec!["ldos", "--preset", "fig99", "--out-dir", out],
        vec!["ldos", "--format", "png", "--out-dir", out],
        vec!["ldos", "--threads", "0", "--out-dir", out],
        vec!["classical", "--alpha", "2", "--out-dir", out],
        vec!["feasibility", "--bogus"],
        vec!["no-such-command"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn unknown_config_key_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.ini");
    fs::write(&cfg, "[ldos]\nalhpa = 0.5\n").unwrap();
    let o = bin(&["ldos", "--config", cfg.to_str().unwrap(), "--out-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_file_and_file_overrides_preset() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.ini");
    fs::write(&cfg, "[general]\nformat = csv\n\n[bound-spectrum]\nalpha = 1/3\nn-max = 3\n").unwrap();
    let c = cfg.to_str().unwrap();

    let run = |name: &str, extra: &[&str]| {
        let dir = tmp.path().join(name);
        let mut args = vec!["bound-spectrum", "--preset", "fig2", "--out-dir", dir.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = bin(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        dir.join("spectrum.csv")
    };

    let preset = run("preset", &[]);
    assert_eq!(meta(&preset, "alpha"), format!("{:e}", 1.0 / 6.0));
    assert_eq!(meta(&preset, "n-max"), "7");

    let file = run("file", &["--config", c]);
    assert_eq!(meta(&file, "alpha"), format!("{:e}", 1.0 / 3.0));
    assert_eq!(meta(&file, "n-max"), "3");

    let flag = run("flag", &["--config", c, "--alpha", "0.5"]);
    assert_eq!(meta(&flag, "alpha"), "5e-1");
    assert_eq!(meta(&flag, "n-max"), "3");
}

#[test]
fn thread_count_falls_back_to_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_conecollapse"))
        .args(["bound-spectrum", "--out-dir", tmp.path().to_str().unwrap()])
        .env("CONECOLLAPSE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_conecollapse"))
        .args(["bound-spectrum", "--out-dir", tmp.path().to_str().unwrap()])
        .env("CONECOLLAPSE_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn svg_files_accompany_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let o = bin(&["feasibility", "--preset", "fig8", "--format", "csv+svg", "--out-dir", out]);
    assert!(o.status.success());
    let svg = fs::read_to_string(tmp.path().join("ldos.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    let o = bin(&["feasibility", "--preset", "fig8", "--format", "csv", "--out-dir", out]);
    assert!(o.status.success());
}

#[test]
fn shallow_cone_has_a_tiny_ground_state() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin(&["bound-spectrum", "--alpha", "0.99", "--n-max", "1", "--out-dir", tmp.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(tmp.path().join("spectrum.csv")).unwrap();
    let (_, header, rows) = conecollapse_cli::table::parse_csv(&text);
    let col = header.iter().position(|h| h == "eps_exact").unwrap();
    let e1: f64 = rows[0][col].parse().unwrap();
    assert!(e1 < 0.0 && e1.abs() < 1e-3, "{e1}");
}

#[test]
fn feasibility_mapping_values() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin(&["feasibility", "--preset", "fig8", "--out-dir", tmp.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(tmp.path().join("mapping.csv")).unwrap();
    let (_, header, rows) = conecollapse_cli::table::parse_csv(&text);
    assert_eq!(header[1..3], ["quantity", "value"]);
    let get = |q: &str| -> f64 {
        let row = rows.iter().find(|r| r[1] == q).unwrap_or_else(|| panic!("{q}"));
        row[2].parse().unwrap()
    };
    assert!((get("cutoff") - 1.0).abs() < 0.1);
    assert!((get("observation_radius_physical") - 6.0).abs() < 0.3);
    assert!((get("k_tilde_min") / 10f64.powf(-3.5) - 1.0).abs() < 1e-12);
    assert!((get("k_tilde_max") / 1e-2 - 1.0).abs() < 1e-12);
}

#[test]
fn help_exits_zero() {
    let o = bin(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("bound-spectrum"));
}
