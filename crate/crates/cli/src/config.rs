//! Experiment configuration: a TOML file whose every key can be overridden
//! from the command line.
//!
//! ```toml
//! variant = "majorana1"     # majorana1 | majorana2 | complex1 | complex2
//! n = 8                     # Majorana mode count N, or site count n for complex models
//! J = 1.0
//! mu = 0.0                  # complex models only
//! J_A = 1.0                 # majorana2 only
//! seeds = [0, 1, 2]
//! t = [0.5, 1.0]
//! s = [8, 16, 32]
//! target = "abstract"       # abstract | trapped_ion | superconducting_linear | superconducting_all_to_all
//! order = "first"           # first | second
//! observables = ["trotter_error", "otoc"]
//! n_grid = [3, 4, 5, 6]     # resources / counts sweep
//! w = "X0"                  # OTOC operators: letter and qubit index
//! v = "Z3"
//! state = "vacuum"          # or an occupation bitstring such as "1010"
//! shots = 1000              # optional, sampled ancilla readout
//! output = "run.csv"        # optional, stdout when absent
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use syk_core::compile::{Target, TrotterOrder};
use syk_core::models::Variant;
use syk_core::pauli::Pauli;

/// A configuration or input problem; reported with exit code 2.
#[derive(Debug)]
pub struct ValidationError(pub String);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationError {}

fn invalid<T>(message: impl Into<String>) -> Result<T, ValidationError> {
    Err(ValidationError(message.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Observable {
    TermCounts,
    TrotterError,
    Otoc,
    Correlation,
    Resources,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub variant: Variant,
    pub n: usize,
    #[serde(rename = "J")]
    pub j: f64,
    pub mu: f64,
    #[serde(rename = "J_A", default, skip_serializing_if = "Option::is_none")]
    pub j_a: Option<f64>,
    pub seeds: Vec<u64>,
    pub t: Vec<f64>,
    pub s: Vec<usize>,
    pub target: String,
    pub order: String,
    pub observables: Vec<Observable>,
    pub n_grid: Vec<usize>,
    pub w: String,
    pub v: String,
    pub state: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            variant: Variant::Majorana1,
            n: 8,
            j: 1.0,
            mu: 0.0,
            j_a: None,
            seeds: vec![0],
            t: vec![1.0],
            s: vec![8, 16, 32],
            target: Target::Abstract.name().into(),
            order: "first".into(),
            observables: vec![Observable::TrotterError, Observable::Otoc],
            n_grid: vec![3, 4, 5, 6],
            w: "X0".into(),
            v: "Z1".into(),
            state: "vacuum".into(),
            shots: None,
            output: None,
        }
    }
}

/// Keys missing from a file fall back to [`ExperimentConfig::default`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    variant: Option<Variant>,
    n: Option<usize>,
    #[serde(rename = "J")]
    j: Option<f64>,
    mu: Option<f64>,
    #[serde(rename = "J_A")]
    j_a: Option<f64>,
    seeds: Option<Vec<u64>>,
    t: Option<Vec<f64>>,
    s: Option<Vec<usize>>,
    target: Option<String>,
    order: Option<String>,
    observables: Option<Vec<Observable>>,
    n_grid: Option<Vec<usize>>,
    w: Option<String>,
    v: Option<String>,
    state: Option<String>,
    shots: Option<u64>,
    output: Option<PathBuf>,
}

/// Command-line overrides shared by every subcommand.
#[derive(Clone, Debug, Default, Args)]
pub struct Overrides {
    /// TOML experiment configuration.
    #[arg(long, short = 'c', global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub variant: Option<Variant>,
    /// Majorana mode count N, or site count n for complex models.
    #[arg(long, short = 'n', global = true)]
    pub n: Option<usize>,
    #[arg(long = "J", global = true)]
    pub j: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long = "J_A", global = true)]
    pub j_a: Option<f64>,
    /// Comma-separated seed list.
    #[arg(long, global = true, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    /// Comma-separated evolution times.
    #[arg(long, short = 't', global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    /// Comma-separated Trotter step counts.
    #[arg(long, short = 's', global = true, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub target: Option<String>,
    #[arg(long, global = true)]
    pub order: Option<String>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub observables: Option<Vec<Observable>>,
    /// Comma-separated size grid for sweeps.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub w: Option<String>,
    #[arg(long, global = true)]
    pub v: Option<String>,
    #[arg(long, global = true)]
    pub state: Option<String>,
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> anyhow::Result<ExperimentConfig> {
        let p: PartialConfig = toml::from_str(text).map_err(|e| ValidationError(format!("config: {e}")))?;
        let d = ExperimentConfig::default();
        Ok(ExperimentConfig {
            variant: p.variant.unwrap_or(d.variant),
            n: p.n.unwrap_or(d.n),
            j: p.j.unwrap_or(d.j),
            mu: p.mu.unwrap_or(d.mu),
            j_a: p.j_a.or(d.j_a),
            seeds: p.seeds.unwrap_or(d.seeds),
            t: p.t.unwrap_or(d.t),
            s: p.s.unwrap_or(d.s),
            target: p.target.unwrap_or(d.target),
            order: p.order.unwrap_or(d.order),
            observables: p.observables.unwrap_or(d.observables),
            n_grid: p.n_grid.unwrap_or(d.n_grid),
            w: p.w.unwrap_or(d.w),
            v: p.v.unwrap_or(d.v),
            state: p.state.unwrap_or(d.state),
            shots: p.shots.or(d.shots),
            output: p.output.or(d.output),
        })
    }

    /// File (if any) first, then command-line values on top.
    pub fn resolve(o: &Overrides) -> anyhow::Result<ExperimentConfig> {
        let mut c = match &o.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = o.$field.clone() {
                    c.$field = v;
                }
            )*};
        }
        take!(variant, n, j, mu, seeds, t, s, target, order, observables, n_grid, w, v, state);
        if o.j_a.is_some() {
            c.j_a = o.j_a;
        }
        if o.shots.is_some() {
            c.shots = o.shots;
        }
        if o.output.is_some() {
            c.output = o.output.clone();
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.seeds.is_empty() || self.t.is_empty() || self.s.is_empty() || self.n_grid.is_empty() {
            return invalid("seed, t, s and n_grid lists must be nonempty");
        }
        if self.seeds.iter().collect::<BTreeSet<_>>().len() != self.seeds.len() {
            return invalid("seeds must be distinct");
        }
        if self.s.contains(&0) {
            return invalid("Trotter step counts must be positive");
        }
        if self.t.iter().any(|t| !t.is_finite()) {
            return invalid("evolution times must be finite");
        }
        if self.shots == Some(0) {
            return invalid("shots must be positive");
        }
        self.target()?;
        self.order()?;
        self.w_op()?;
        self.v_op()?;
        Ok(())
    }

    pub fn target(&self) -> Result<Target, ValidationError> {
        self.target.parse().map_err(|e: syk_core::Error| ValidationError(e.to_string()))
    }

    pub fn order(&self) -> Result<TrotterOrder, ValidationError> {
        match self.order.as_str() {
            "first" => Ok(TrotterOrder::First),
            "second" => Ok(TrotterOrder::Second),
            other => invalid(format!("unknown Trotter order {other:?} (first | second)")),
        }
    }

    pub fn w_op(&self) -> Result<(Pauli, usize), ValidationError> {
        parse_site_op(&self.w)
    }

    pub fn v_op(&self) -> Result<(Pauli, usize), ValidationError> {
        parse_site_op(&self.v)
    }
}

/// `"X0"` → (X, 0).
fn parse_site_op(s: &str) -> Result<(Pauli, usize), ValidationError> {
    let mut chars = s.trim().chars();
    let letter = chars.next().and_then(Pauli::from_letter).filter(|p| *p != Pauli::I);
    let qubit = chars.as_str().parse().ok();
    match (letter, qubit) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => invalid(format!("operator {s:?} must be a letter X, Y or Z followed by a qubit index")),
    }
}
