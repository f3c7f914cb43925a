use std::fs;
use std::io::{self, Write};

use crate::config::ExperimentConfig;

/// `#`-prefixed provenance lines: tool versions, subcommand, resolved
/// configuration and the dense-matrix cap. Contains nothing that varies
/// between identical runs.
pub fn provenance(command: &str, config: &ExperimentConfig) -> Vec<String> {
    let echo = serde_json::to_string(config).expect("config serializes");
    vec![
        format!("syk-cli {} (syk-core {})", env!("CARGO_PKG_VERSION"), syk_core::VERSION),
        format!("command: {command}"),
        format!("config: {echo}"),
        format!("dense_qubit_cap: {}", syk_core::linalg::dense_qubit_cap()),
    ]
}

pub fn comment_block(lines: &[String]) -> String {
    lines.iter().map(|l| format!("# {l}\n")).collect()
}

/// Write to the configured output file, or stdout.
pub fn emit(config: &ExperimentConfig, body: &str) -> io::Result<()> {
    match &config.output {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

/// Least-squares slope of `ln y` on `ln x`; `None` with fewer than two
/// usable points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
    if logs.len() < 2 {
        return None;
    }
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}
