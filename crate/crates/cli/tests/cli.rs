use std::path::Path;
use std::process::{Command, Output};

fn syk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syk")).args(args).output().expect("binary runs")
}

fn syk_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syk")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

/// Rows of a CSV body as maps from header name to field.
fn table(text: &str) -> Vec<std::collections::BTreeMap<String, String>> {
    let lines = data_lines(text);
    let header: Vec<&str> = lines[0].split(',').collect();
    lines[1..]
        .iter()
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_string)).collect())
        .collect()
}

fn column<'a>(rows: &'a [std::collections::BTreeMap<String, String>], key: &str) -> Vec<&'a str> {
    rows.iter().map(|r| r[key].as_str()).collect()
}

#[test]
fn counts_match_for_second_majorana_model() {
    let o = syk(&["counts", "--variant", "majorana2", "--n-grid", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# syk-cli"));
    assert!(data_lines(&text)[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn counts_for_second_complex_model_at_four_sites() {
    let o = syk(&["counts", "--variant", "complex2", "--n-grid", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = data_lines(&text).into_iter().find(|l| l.contains(",gate_shapes,zz_xxxx,")).unwrap();
    assert!(row.ends_with(",8,8,true"), "{row}");
}

#[test]
fn counts_at_one_site_are_zero_for_quartic_classes() {
    let text = stdout(&syk(&["counts", "--variant", "majorana1", "--n-grid", "1"]));
    let quartic = data_lines(&text).into_iter().find(|l| l.contains(",main_text,quartic,")).unwrap();
    assert!(quartic.ends_with(",0,0,true"));
}

#[test]
fn count_mismatch_exits_with_three() {
    let o = syk(&["counts", "--variant", "complex1", "--n-grid", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("z_xx"));
}

#[test]
fn sample_encode_compile_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let run = |args: &[&str]| {
        let o = syk(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    };
    run(&["sample", "--variant", "complex1", "-n", "4", "--seeds", "7", "--mu", "-0.3", "-o", &path("c.json")]);
    run(&["encode", "--couplings", &path("c.json"), "-o", &path("h.txt")]);
    run(&["encode", "--variant", "complex1", "-n", "4", "--seeds", "7", "--mu", "-0.3", "-o", &path("direct.txt")]);
    let strip = |p: &str| {
        let text = std::fs::read_to_string(p).unwrap();
        text.lines().filter(|l| !l.contains("syk-cli") && !l.starts_with("# command") && !l.starts_with("# config")).map(|l| format!("{l}\n")).collect::<String>()
    };
    assert_eq!(strip(&path("h.txt")), strip(&path("direct.txt")));
    run(&["compile", "--hamiltonian", &path("h.txt"), "--target", "trapped_ion", "-t", "0.5", "-s", "2", "-o", &path("c.txt")]);
    let circuit = std::fs::read_to_string(path("c.txt")).unwrap();
    assert!(circuit.contains("# n_qubits 4"));
    assert!(circuit.lines().any(|l| l.starts_with("ms ")));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path("c.json")).unwrap()).unwrap();
    assert!(json["provenance"].as_array().unwrap().iter().any(|l| l.as_str().unwrap().starts_with("command: sample")));
}

#[test]
fn simulate_output_is_reproducible_and_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let o = syk(&["simulate", "--seeds", "3,1,2", "-n", "6", "-t", "0.5,0", "-s", "4,8", "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        runs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let text = String::from_utf8(runs.pop().unwrap()).unwrap();
    let rows = table(&text);
    let seeds: Vec<u64> = column(&rows, "seed").iter().map(|s| s.parse().unwrap()).collect();
    assert!(seeds.windows(2).all(|w| w[0] <= w[1]));
    for r in rows.iter().filter(|r| r["t"] == "0.0" && r["observable"] == "otoc") {
        let re: f64 = r["value_re"].parse().unwrap();
        let im: f64 = r["value_im"].parse().unwrap();
        assert!((re - 1.0).abs() <= 1e-12 && im.abs() <= 1e-12, "{r:?}");
    }
    for r in rows.iter().filter(|r| r["observable"] == "otoc_agreement") {
        assert!(r["value_re"].parse::<f64>().unwrap() <= 1e-8);
    }
}

#[test]
fn simulate_error_halves_when_steps_double() {
    let o = syk(&["simulate", "--observables", "trotter_error", "-n", "8", "-t", "1", "-s", "8,16,32"]);
    let rows = table(&stdout(&o));
    let errors: Vec<f64> = rows
        .iter()
        .filter(|r| r["method"] == "operator_norm")
        .map(|r| r["value_re"].parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 3);
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.7..=2.3).contains(&ratio), "{ratio}");
    }
}

#[test]
fn cap_overflow_gives_error_rows_and_continues() {
    let o = syk_env(&["simulate", "-n", "8", "--seeds", "0,1"], "SYK_DENSE_QUBIT_CAP", "3");
    assert_eq!(o.status.code(), Some(0));
    let rows = table(&stdout(&o));
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["observable"] == "error"));
    assert!(stdout(&o).contains("dense_qubit_cap: 3"));
}

#[test]
fn otoc_command_agrees_across_methods() {
    let o = syk(&["otoc", "--variant", "majorana2", "-n", "6", "--seeds", "0,1", "-t", "0.5,1,2", "--w", "X0", "--v", "Z2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = table(&stdout(&o));
    assert!(rows.iter().all(|r| r["s"].is_empty()));
    assert_eq!(rows.iter().filter(|r| r["observable"] == "otoc_agreement").count(), 6);
}

#[test]
fn resources_track_per_term_costs() {
    let ion = table(&stdout(&syk(&["resources", "--variant", "majorana2", "--target", "trapped_ion", "--n-grid", "4,5,6,8"])));
    let per_term: Vec<&str> = column(&ion, "max_gates_per_term");
    assert!(per_term.windows(2).all(|w| w[0] == w[1]), "{per_term:?}");
    let sc = stdout(&syk(&["resources", "--target", "superconducting_all_to_all", "--n-grid", "3,4"]));
    assert!(sc.contains("# fitted exponent (gates per step vs n): "));
    // quartic strings on n sites have support up to n, needing 2(n - 1) pair gates
    let rows = table(&sc);
    assert_eq!(column(&rows, "max_entanglers_per_term"), ["4", "6"]);
}

#[test]
fn resources_of_empty_hamiltonian_has_no_rows() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("empty.txt");
    std::fs::write(&h, "# n_qubits 3\n").unwrap();
    let o = syk(&["resources", "--hamiltonian", h.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_lines(&stdout(&o)).len(), 1);
}

#[test]
fn shape_table_matches_closed_forms() {
    let o = syk(&["resources", "--shapes", "--variant", "complex2", "--n-grid", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(data_lines(&stdout(&o))[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "variant = \"complex2\"\nn = 3\nseeds = [4]\nt = [0.3]\nobservables = [\"correlation\"]\nw = \"Y0\"\nv = \"X2\"\n").unwrap();
    let o = syk(&["simulate", "--config", cfg.to_str().unwrap(), "--seeds", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = table(&stdout(&o));
    assert_eq!(column(&rows, "seed"), ["5", "5"]);
    let value = |m: &str| rows.iter().find(|r| r["method"] == m).unwrap()["value_re"].parse::<f64>().unwrap();
    assert!((value("ancilla_protocol") - value("direct_oracle")).abs() < 1e-8);
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "flavour = \"up\"\n").unwrap();
    for args in [
        vec!["simulate", "--seeds", "1,1"],
        vec!["simulate", "--config", bad.to_str().unwrap()],
        vec!["compile", "--target", "photonic"],
        vec!["sample", "--variant", "majorana1", "-n", "5"],
        vec!["simulate", "-n", "6", "--w", "X7"],
    ] {
        assert_eq!(syk(&args).status.code(), Some(2), "{args:?}");
    }
    assert!(!Path::new("bad.toml").exists());
}
