use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use syk_core::compile::{
    resource_report, shape_csv, term_costs, trotter_error_report, trotterize, Circuit, GateKind,
    TrotterPlan, SHAPE_CSV_HEADER,
};
use syk_core::encoding::SpinHamiltonian;
use syk_core::linalg::{operator_norm, Matrix, C64};
use syk_core::models::counts::count_terms;
use syk_core::models::{sample_complex, sample_majorana, Couplings, Variant};
use syk_core::oracle;
use syk_core::pauli::PauliString;
use syk_core::simulate::{
    circuit_unitary, correlation_via_ancilla, direct_correlation, direct_otoc, exact_unitary, fock_state,
    otoc_via_inversion, vacuum_state, CorrelationOptions, Inversion, ProtocolMethod, ResultRecord, StateVector,
    SystemOp,
};

use crate::config::{ExperimentConfig, Observable, ValidationError};
use crate::report::{comment_block, emit, loglog_slope, provenance};

/// Largest tolerated spread between OTOC evaluation methods.
pub const AGREEMENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A computed quantity disagreed with its reference.
    Mismatch,
}

fn first<T: Copy + std::fmt::Debug>(values: &[T], what: &str) -> T {
    if values.len() > 1 {
        log::warn!("{what}: using the first of {values:?}");
    }
    values[0]
}

/// Sample one realization; `size` is `N` for Majorana models and `n` for
/// complex ones.
pub fn sample(config: &ExperimentConfig, size: usize, seed: u64) -> Result<Couplings> {
    let j_a = config.j_a.unwrap_or(config.j);
    Ok(match config.variant {
        Variant::Majorana1 => sample_majorana(size, config.j, seed, false, j_a)?.into(),
        Variant::Majorana2 => sample_majorana(size, config.j, seed, true, j_a)?.into(),
        Variant::Complex1 => sample_complex(size, config.j, config.mu, seed, false)?.into(),
        Variant::Complex2 => sample_complex(size, config.j, config.mu, seed, true)?.into(),
    })
}

fn hamiltonian(config: &ExperimentConfig, size: usize, seed: u64) -> Result<SpinHamiltonian> {
    Ok(syk_core::encoding::build_spin_hamiltonian(&sample(config, size, seed)?)?)
}

fn read_hamiltonian(path: &Path) -> Result<SpinHamiltonian> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SpinHamiltonian::from_text(&text)?)
}

/// Sizes of a sweep in the units expected by the samplers.
fn sweep_size(variant: Variant, n: usize) -> usize {
    if variant.is_majorana() {
        2 * n
    } else {
        n
    }
}

pub fn counts(config: &ExperimentConfig) -> Result<Status> {
    let mut out = comment_block(&provenance("counts", config));
    out.push_str("variant,n,table,class,polynomial,closed_form,enumerated,match\n");
    let mut status = Status::Ok;
    for &n in &config.n_grid {
        if n == 0 {
            return Err(ValidationError("counts need n >= 1".into()).into());
        }
        for row in count_terms(config.variant, n) {
            if !row.matches() {
                status = Status::Mismatch;
            }
            writeln!(
                out,
                "{},{n},{},{},\"{}\",{},{},{}",
                config.variant,
                row.table.name(),
                row.class,
                row.polynomial,
                row.closed_form,
                row.enumerated,
                row.matches()
            )?;
        }
    }
    emit(config, &out)?;
    Ok(status)
}

pub fn sample_cmd(config: &ExperimentConfig) -> Result<Status> {
    let seed = first(&config.seeds, "seeds");
    let couplings = sample(config, config.n, seed)?;
    let mut doc: serde_json::Value = serde_json::from_str(&couplings.to_json()?)?;
    doc.as_object_mut()
        .expect("couplings serialize to an object")
        .insert("provenance".into(), provenance("sample", config).into());
    emit(config, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(Status::Ok)
}

pub fn encode(config: &ExperimentConfig, couplings: Option<&Path>) -> Result<Status> {
    let c = match couplings {
        Some(path) => Couplings::from_json(&std::fs::read_to_string(path)?)?,
        None => sample(config, config.n, first(&config.seeds, "seeds"))?,
    };
    let h = syk_core::encoding::build_spin_hamiltonian(&c)?;
    emit(config, &(comment_block(&provenance("encode", config)) + &h.to_text()))?;
    Ok(Status::Ok)
}

fn plan(config: &ExperimentConfig, t: f64, s: usize) -> Result<TrotterPlan> {
    Ok(TrotterPlan { t, s, order: config.order()?, target: config.target()? })
}

pub fn compile(config: &ExperimentConfig, input: Option<&Path>) -> Result<Status> {
    let h = match input {
        Some(path) => read_hamiltonian(path)?,
        None => hamiltonian(config, config.n, first(&config.seeds, "seeds"))?,
    };
    let p = plan(config, first(&config.t, "t"), first(&config.s, "s"))?;
    let circuit = trotterize(&h, &p)?;
    let report = resource_report(&circuit);
    log::info!("{} gates on {} qubits", report.total, report.n_qubits);
    emit(config, &(comment_block(&provenance("compile", config)) + &circuit.to_text()))?;
    Ok(Status::Ok)
}

fn initial_state(config: &ExperimentConfig, n_qubits: usize) -> Result<StateVector> {
    if config.state == "vacuum" {
        return Ok(vacuum_state(n_qubits)?);
    }
    let occ: Option<Vec<bool>> = config
        .state
        .chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    match occ {
        Some(bits) if bits.len() == n_qubits => Ok(fock_state(&bits)?),
        _ => Err(ValidationError(format!(
            "state {:?} must be \"vacuum\" or a {n_qubits}-character occupation bitstring",
            config.state
        ))
        .into()),
    }
}

fn site_ops(config: &ExperimentConfig, n_qubits: usize) -> Result<(SystemOp, SystemOp)> {
    let mut ops = Vec::new();
    for (p, q) in [config.w_op()?, config.v_op()?] {
        if q >= n_qubits {
            return Err(ValidationError(format!("operator qubit {q} outside the {n_qubits}-qubit system")).into());
        }
        ops.push(SystemOp::Pauli(PauliString::single(n_qubits, q, p)?));
    }
    let v = ops.pop().expect("two operators");
    Ok((ops.pop().expect("two operators"), v))
}

struct Rows<'a> {
    config: &'a ExperimentConfig,
    seed: u64,
    out: Vec<ResultRecord>,
}

impl Rows<'_> {
    fn push(&mut self, t: f64, s: Option<usize>, observable: &str, method: &str, value: C64) {
        self.out.push(ResultRecord {
            seed: self.seed,
            variant: self.config.variant.name().into(),
            n: self.config.n,
            t,
            s,
            observable: observable.into(),
            method: method.into(),
            value_re: value.re,
            value_im: value.im,
        });
    }
}

/// OTOC `⟨ψ|W†(t) V† W(t) V|ψ⟩` with the Heisenberg picture taken under `u`.
fn otoc_under(u: &Matrix, w: &Matrix, v: &Matrix, psi: &StateVector) -> C64 {
    let wt = u.adjoint() * w * u;
    let op = wt.adjoint() * v.adjoint() * &wt * v;
    oracle::expectation(&op, psi.amplitudes())
}

/// All records of one seed. Dense-cap failures become error records so a
/// sweep can continue; anything else is returned.
fn seed_rows(config: &ExperimentConfig, seed: u64, observables: &[Observable]) -> Result<(Vec<ResultRecord>, f64)> {
    let mut rows = Rows { config, seed, out: Vec::new() };
    let mut spread = 0.0f64;
    match seed_body(config, &mut rows, observables, &mut spread) {
        Ok(()) => {}
        Err(e) => match e.downcast_ref::<syk_core::Error>() {
            Some(syk_core::Error::DenseCapExceeded { .. }) => {
                log::warn!("seed {seed}: {e}");
                rows.out.clear();
                rows.push(f64::NAN, None, "error", "dense_cap_exceeded", C64::new(f64::NAN, f64::NAN));
            }
            _ => return Err(e),
        },
    }
    Ok((rows.out, spread))
}

fn seed_body(config: &ExperimentConfig, rows: &mut Rows<'_>, observables: &[Observable], spread: &mut f64) -> Result<()> {
    let h = hamiltonian(config, config.n, rows.seed)?;
    let n_q = h.n_qubits;
    syk_core::linalg::check_dense_cap(n_q)?;
    let psi = initial_state(config, n_q)?;
    let (w, v) = site_ops(config, n_q)?;
    let (wm, vm) = (w.system_matrix(n_q, 0)?, v.system_matrix(n_q, 0)?);
    let want = |o: Observable| observables.contains(&o);
    for &t in &config.t {
        let exact = exact_unitary(&h, t)?;
        let mut trotter = Vec::new();
        if want(Observable::TrotterError) || want(Observable::Otoc) {
            for &s in &config.s {
                trotter.push((s, circuit_unitary(&trotterize(&h, &plan(config, t, s)?)?)?));
            }
        }
        if want(Observable::TrotterError) {
            let dim = exact.nrows() as f64;
            for (s, u) in &trotter {
                let err = operator_norm(&(u - &exact));
                let overlap = (u.adjoint() * &exact).trace().norm() / dim;
                rows.push(t, Some(*s), "trotter_error", "operator_norm", C64::new(err, 0.0));
                rows.push(t, Some(*s), "trotter_fidelity", "trace_overlap", C64::new(overlap, 0.0));
                let bound = trotter_error_report(&h, t, *s)?.bound;
                rows.push(t, Some(*s), "trotter_error", "commutator_bound", C64::new(bound, 0.0));
            }
        }
        if want(Observable::Otoc) {
            let ancilla = otoc_via_inversion(&w, &v, &h, t, &psi)?.value;
            let direct = direct_otoc(&w, &v, &h, t, &psi)?.value;
            let four = vec![v.clone(), w.clone(), v.adjoint(), w.adjoint()];
            let via_corr = correlation_via_ancilla(&four, &[0.0, t, 0.0, t], &h, &psi, CorrelationOptions::default())?
                .value
                * 2.0;
            rows.push(t, None, "otoc", ProtocolMethod::AncillaProtocol.name(), ancilla);
            rows.push(t, None, "otoc", "correlation_protocol", via_corr);
            rows.push(t, None, "otoc", ProtocolMethod::DirectOracle.name(), direct);
            let dev = (ancilla - direct).norm().max((via_corr - direct).norm());
            *spread = spread.max(dev);
            rows.push(t, None, "otoc_agreement", "max_deviation", C64::new(dev, 0.0));
            for (s, u) in &trotter {
                rows.push(t, Some(*s), "otoc", "trotter_circuit", otoc_under(u, &wm, &vm, &psi));
            }
        }
        if want(Observable::Correlation) {
            let ops = vec![w.clone(), v.clone()];
            let times = [0.0, t];
            let options = CorrelationOptions {
                inversion: Inversion::ControlQubit,
                shots: config.shots.map(|shots| (shots, rows.seed)),
            };
            let method = if config.shots.is_some() { "ancilla_protocol_sampled" } else { "ancilla_protocol" };
            let a = correlation_via_ancilla(&ops, &times, &h, &psi, options)?.value;
            rows.push(t, None, "correlation", method, a);
            let d = direct_correlation(&ops, &times, &h, &psi)?.value;
            rows.push(t, None, "correlation", ProtocolMethod::DirectOracle.name(), d);
        }
    }
    Ok(())
}

fn run_seeds(config: &ExperimentConfig, command: &str, observables: &[Observable]) -> Result<Status> {
    let per_seed: Vec<(Vec<ResultRecord>, f64)> =
        config.seeds.par_iter().map(|&seed| seed_rows(config, seed, observables)).collect::<Result<_>>()?;
    let spread = per_seed.iter().map(|p| p.1).fold(0.0, f64::max);
    let mut records: Vec<ResultRecord> = per_seed.into_iter().flat_map(|p| p.0).collect();
    // stable, so rows sharing a key keep their generation order
    records.sort_by(|a, b| {
        let (ka, kb) = (a.sort_key(), b.sort_key());
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.cmp(&kb.2))
    });
    let mut out = comment_block(&provenance(command, config));
    out.push_str(ResultRecord::HEADER);
    out.push('\n');
    for r in &records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    emit(config, &out)?;
    if spread > AGREEMENT_TOL {
        log::error!("OTOC methods disagree by {spread:e}");
        return Ok(Status::Mismatch);
    }
    Ok(Status::Ok)
}

pub fn simulate(config: &ExperimentConfig) -> Result<Status> {
    run_seeds(config, "simulate", &config.observables)
}

pub fn otoc(config: &ExperimentConfig) -> Result<Status> {
    let only_otoc = ExperimentConfig { s: vec![], ..config.clone() };
    run_seeds(&only_otoc, "otoc", &[Observable::Otoc])
}

const RESOURCE_HEADER: &str = "variant,n,qubits,terms,gates,single_rotation,ms,pair_entangler,swap,pauli_exponential,max_gates_per_term,max_entanglers_per_term,noncommuting_pairs";

fn resource_row(config: &ExperimentConfig, n: usize, h: &SpinHamiltonian) -> Result<Option<(String, Circuit, f64)>> {
    if h.is_empty() {
        return Ok(None);
    }
    let circuit = trotterize(h, &plan(config, first(&config.t, "t"), 1)?)?;
    let r = resource_report(&circuit);
    let costs = term_costs(&circuit);
    let pairs = trotter_error_report(h, 1.0, 1)?.nonzero_commutators;
    let kind = |k: GateKind| r.by_kind.get(&k).copied().unwrap_or(0);
    let row = format!(
        "{},{n},{},{},{},{},{},{},{},{},{},{},{pairs}",
        config.variant,
        h.n_qubits,
        h.len(),
        r.total,
        kind(GateKind::SingleRotation),
        kind(GateKind::Ms),
        kind(GateKind::PairEntangler),
        kind(GateKind::Swap),
        kind(GateKind::PauliExponential),
        costs.iter().map(|c| c.gates).max().unwrap_or(0),
        costs.iter().map(|c| c.entanglers).max().unwrap_or(0),
    );
    Ok(Some((row, circuit, pairs as f64)))
}

/// Per-step gate counts across the size grid. With `shapes`, the table is
/// instead the per-shape term count of one step against its closed form.
pub fn resources(config: &ExperimentConfig, input: Option<&Path>, shapes: bool) -> Result<Status> {
    let seed = first(&config.seeds, "seeds");
    let cases: Vec<(usize, SpinHamiltonian)> = match input {
        Some(path) => {
            let h = read_hamiltonian(path)?;
            vec![(h.n_qubits, h)]
        }
        None => config
            .n_grid
            .iter()
            .map(|&n| Ok((n, hamiltonian(config, sweep_size(config.variant, n), seed)?)))
            .collect::<Result<_>>()?,
    };
    let mut body = String::new();
    let mut gates = Vec::new();
    let mut pairs = Vec::new();
    let mut status = Status::Ok;
    if shapes {
        writeln!(body, "n,{SHAPE_CSV_HEADER}")?;
    } else {
        writeln!(body, "{RESOURCE_HEADER}")?;
    }
    for (n, h) in &cases {
        let Some((row, circuit, p)) = resource_row(config, *n, h)? else { continue };
        if shapes {
            let table = resource_report(&circuit).compare_shapes(config.variant, *n, 1)?;
            status = if table.iter().all(|r| r.matches()) { status } else { Status::Mismatch };
            for line in shape_csv(&table).lines().skip(1) {
                writeln!(body, "{n},{line}")?;
            }
        } else {
            writeln!(body, "{row}")?;
        }
        gates.push((*n as f64, circuit.len() as f64));
        pairs.push((*n as f64, p));
    }
    let mut header = provenance("resources", config);
    let fmt_fit = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.3}"));
    header.push(format!("fitted exponent (gates per step vs n): {}", fmt_fit(loglog_slope(&gates))));
    header.push(format!("fitted exponent (noncommuting pairs vs n): {}", fmt_fit(loglog_slope(&pairs))));
    emit(config, &(comment_block(&header) + &body))?;
    Ok(status)
}
