//! Ancilla-based protocols.
//!
//! Register layout: the interferometric ancilla `Q_A` is always qubit 0.
//! The time-inversion control `Q_C` is qubit 0 for [`controlled_evolution`]
//! and [`otoc_via_inversion`], and qubit 1 inside [`correlation_via_ancilla`]
//! when negative intervals are realized through inversion. The system
//! follows the ancillas. `|e⟩` is computational `|0⟩`, so `σᶻ_C|e⟩ = +|e⟩`
//! and the `|e⟩` branch evolves forward.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::state::{Propagator, StateVector};
use crate::encoding::SpinHamiltonian;
use crate::error::{Error, Result};
use crate::linalg::{check_dense_cap, HermitianEigen, Matrix, C64, ONE, ZERO};
use crate::oracle;
use crate::pauli::{Pauli, PauliString};

/// Operator acting on the system register only.
#[derive(Clone, Debug)]
pub enum SystemOp {
    /// Dense `2^n × 2^n` matrix on the system qubits.
    Dense(Matrix),
    /// Pauli string on either the system alone (`n` qubits) or the full
    /// protocol register, in which case it must leave the ancillas alone.
    Pauli(PauliString),
}

impl From<PauliString> for SystemOp {
    fn from(p: PauliString) -> SystemOp {
        SystemOp::Pauli(p)
    }
}

impl From<Matrix> for SystemOp {
    fn from(m: Matrix) -> SystemOp {
        SystemOp::Dense(m)
    }
}

impl SystemOp {
    pub fn identity(n_system: usize) -> Result<SystemOp> {
        Ok(SystemOp::Pauli(PauliString::identity(n_system)?))
    }

    /// System-local dense matrix.
    pub fn system_matrix(&self, n_system: usize, n_ancilla: usize) -> Result<Matrix> {
        Ok(match self {
            SystemOp::Dense(m) => {
                if m.nrows() != 1usize << n_system || m.ncols() != m.nrows() {
                    return Err(Error::QubitMismatch { left: 1usize << n_system, right: m.nrows() });
                }
                m.clone()
            }
            SystemOp::Pauli(p) => system_pauli(p, n_system, n_ancilla)?.to_matrix()?,
        })
    }

    pub fn adjoint(&self) -> SystemOp {
        match self {
            SystemOp::Dense(m) => SystemOp::Dense(m.adjoint()),
            SystemOp::Pauli(p) => SystemOp::Pauli(p.adjoint()),
        }
    }
}

/// Restrict a Pauli string to the system register, rejecting ancilla support.
fn system_pauli(p: &PauliString, n_system: usize, n_ancilla: usize) -> Result<PauliString> {
    if p.n_qubits() == n_system {
        return Ok(p.clone());
    }
    if p.n_qubits() != n_system + n_ancilla {
        return Err(Error::QubitMismatch { left: n_system, right: p.n_qubits() });
    }
    if let Some(q) = p.support().into_iter().find(|&q| q < n_ancilla) {
        return Err(Error::ActsOnAncilla(q));
    }
    PauliString::from_masks(n_system, p.x_mask() >> n_ancilla, p.z_mask() >> n_ancilla, p.phase())
}

/// Place a system string at qubits `offset..` of an `n_total` register.
fn embed(p: &PauliString, n_total: usize, offset: usize) -> Result<PauliString> {
    PauliString::from_masks(n_total, p.x_mask() << offset, p.z_mask() << offset, p.phase())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolMethod {
    AncillaProtocol,
    DirectOracle,
}

impl ProtocolMethod {
    pub fn name(self) -> &'static str {
        match self {
            ProtocolMethod::AncillaProtocol => "ancilla_protocol",
            ProtocolMethod::DirectOracle => "direct_oracle",
        }
    }
}

/// `value` is the protocol's readout. For the correlation protocol it is
/// `½(⟨σx⟩ + i⟨σy⟩)` of `Q_A`; for the OTOC inversion sequence it is the
/// overlap `⟨e,ψ| S |e,ψ⟩` itself, whose real and imaginary parts fill
/// `raw_expectations`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolResult {
    pub value: C64,
    pub raw_expectations: (f64, f64),
    pub method: ProtocolMethod,
}

/// `exp(-i t σᶻ_control ⊗ H_S)` on a register where the system occupies
/// qubits `offset .. offset + n`, built as a dense propagator of the full
/// coupled Hamiltonian. The identity part of `H_S` is dropped, matching
/// [`super::exact_unitary`].
#[derive(Clone, Debug)]
pub struct ControlledEvolution {
    n_total: usize,
    propagator: Propagator,
}

impl ControlledEvolution {
    pub fn new(h_s: &SpinHamiltonian, n_total: usize, control: usize, offset: usize) -> Result<ControlledEvolution> {
        if offset + h_s.n_qubits > n_total || (offset..offset + h_s.n_qubits).contains(&control) || control >= n_total {
            return Err(Error::QubitMismatch { left: n_total, right: offset + h_s.n_qubits });
        }
        check_dense_cap(n_total)?;
        let mut h = SpinHamiltonian::new(n_total);
        for t in h_s.terms() {
            let op = embed(&t.op, n_total, offset)?.with(control, Pauli::Z)?;
            h.push(t.coefficient, op, t.class)?;
        }
        h.finalize();
        Ok(ControlledEvolution { n_total, propagator: Propagator::new(&h)? })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_total
    }

    pub fn apply(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        if psi.n_qubits() != self.n_total {
            return Err(Error::QubitMismatch { left: self.n_total, right: psi.n_qubits() });
        }
        self.propagator.evolve(psi, t)
    }
}

/// `exp(-i(σᶻ_C ⊗ H_S)t)` with `Q_C` = qubit 0. On `(α|e⟩ + β|g⟩)|ψ⟩` this
/// yields `α|e⟩U(t)|ψ⟩ + β|g⟩U(-t)|ψ⟩`.
pub fn controlled_evolution(h_s: &SpinHamiltonian, t: f64, psi_total: &StateVector) -> Result<StateVector> {
    if psi_total.n_qubits() != h_s.n_qubits + 1 {
        return Err(Error::QubitMismatch { left: h_s.n_qubits + 1, right: psi_total.n_qubits() });
    }
    ControlledEvolution::new(h_s, h_s.n_qubits + 1, 0, 1)?.apply(psi_total, t)
}

/// Apply a system operator to every ancilla branch alike.
fn apply_system(psi: &mut StateVector, op: &Matrix, n_ancilla: usize) -> Result<()> {
    apply_system_on_branches(psi, op, n_ancilla, |_| true)
}

/// Apply `op` to the system part of those branches (indexed by the ancilla
/// bits) for which `select` holds.
fn apply_system_on_branches(
    psi: &mut StateVector,
    op: &Matrix,
    n_ancilla: usize,
    select: impl Fn(usize) -> bool,
) -> Result<()> {
    let n_sys = psi.n_qubits() - n_ancilla;
    let dim = 1usize << n_sys;
    if op.nrows() != dim {
        return Err(Error::QubitMismatch { left: dim, right: op.nrows() });
    }
    let mut amps = psi.amplitudes().to_vec();
    for branch in (0..1usize << n_ancilla).filter(|&b| select(b)) {
        let block = &mut amps[branch * dim..(branch + 1) * dim];
        let v = nalgebra::DVector::from_column_slice(block);
        let out = op * v;
        block.copy_from_slice(out.as_slice());
    }
    *psi = StateVector::from_amplitudes(psi.n_qubits(), amps)?;
    Ok(())
}

fn flip(psi: &mut StateVector, qubit: usize) -> Result<()> {
    psi.apply_pauli(&PauliString::single(psi.n_qubits(), qubit, Pauli::X)?)
}

/// Expectation of the operator sequence
/// `σˣ_C U_CS σˣ_C W† U_CS V† σˣ_C U_CS σˣ_C W U_CS V` on `|e⟩ ⊗ |ψ⟩`
/// (rightmost factor first), which equals `⟨ψ|W†(t) V† W(t) V|ψ⟩`.
pub fn otoc_via_inversion(
    w: &SystemOp,
    v: &SystemOp,
    h_s: &SpinHamiltonian,
    t: f64,
    psi: &StateVector,
) -> Result<ProtocolResult> {
    let n = h_s.n_qubits;
    if psi.n_qubits() != n {
        return Err(Error::QubitMismatch { left: n, right: psi.n_qubits() });
    }
    let (wm, vm) = (w.system_matrix(n, 1)?, v.system_matrix(n, 1)?);
    let (wd, vd) = (wm.adjoint(), vm.adjoint());
    let u_cs = ControlledEvolution::new(h_s, n + 1, 0, 1)?;
    let start = excited_ancilla().tensor(psi)?;
    let mut state = start.clone();
    let backward = |s: &mut StateVector| -> Result<()> {
        flip(s, 0)?;
        *s = u_cs.apply(s, t)?;
        flip(s, 0)
    };
    apply_system(&mut state, &vm, 1)?;
    state = u_cs.apply(&state, t)?;
    apply_system(&mut state, &wm, 1)?;
    backward(&mut state)?;
    apply_system(&mut state, &vd, 1)?;
    state = u_cs.apply(&state, t)?;
    apply_system(&mut state, &wd, 1)?;
    backward(&mut state)?;
    let value = start.inner(&state);
    Ok(ProtocolResult { value, raw_expectations: (value.re, value.im), method: ProtocolMethod::AncillaProtocol })
}

/// How evolution over a negative interval is carried out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Inversion {
    /// `σˣ_C U_CS(|Δ|) σˣ_C` with a control qubit held in `|e⟩`.
    #[default]
    ControlQubit,
    /// Evolve under the Hamiltonian with every coupling negated.
    NegatedCouplings,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CorrelationOptions {
    pub inversion: Inversion,
    /// `(shots, seed)`: replace exact ancilla expectations by binomial
    /// estimates from that many shots per observable.
    pub shots: Option<(u64, u64)>,
}

fn negated(h: &SpinHamiltonian) -> Result<SpinHamiltonian> {
    let mut out = SpinHamiltonian::new(h.n_qubits);
    out.offset = -h.offset;
    for t in h.terms() {
        out.push(-t.coefficient, t.op.clone(), t.class)?;
    }
    out.finalize();
    Ok(out)
}

/// `n`-time correlation protocol. The ancilla `Q_A` starts in
/// `(|0⟩ + |1⟩)/√2`; the controlled operators `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ V_k`
/// are interleaved with evolutions over `t_k - t_{k-1}`. The readout
/// `½(⟨σx⟩ + i⟨σy⟩)` equals `½⟨V_n(t_n) ··· V_0(t_0)⟩`.
///
/// `times[0]` must be `0`.
pub fn correlation_via_ancilla(
    ops: &[SystemOp],
    times: &[f64],
    h_s: &SpinHamiltonian,
    psi: &StateVector,
    options: CorrelationOptions,
) -> Result<ProtocolResult> {
    let n = h_s.n_qubits;
    if ops.is_empty() || ops.len() != times.len() {
        return Err(Error::InvalidIndex(format!("{} operators but {} times", ops.len(), times.len())));
    }
    if times[0] != 0.0 || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidIndex("times must be finite and start at t0 = 0".into()));
    }
    if psi.n_qubits() != n {
        return Err(Error::QubitMismatch { left: n, right: psi.n_qubits() });
    }
    let n_ancilla = match options.inversion {
        Inversion::ControlQubit => 2,
        Inversion::NegatedCouplings => 1,
    };
    let mats: Vec<Matrix> = ops.iter().map(|o| o.system_matrix(n, n_ancilla)).collect::<Result<_>>()?;

    let plus = StateVector::from_amplitudes(1, vec![C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2])?;
    let mut state = match options.inversion {
        Inversion::ControlQubit => plus.tensor(&excited_ancilla())?.tensor(psi)?,
        Inversion::NegatedCouplings => plus.tensor(psi)?,
    };
    // ancilla bits: Q_A is the most significant of the branch index
    let a_set = |branch: usize| branch >> (n_ancilla - 1) & 1 == 1;

    enum Evolver {
        Control(ControlledEvolution),
        Plain { forward: Propagator, backward: Propagator },
    }
    let evolver = match options.inversion {
        Inversion::ControlQubit => Evolver::Control(ControlledEvolution::new(h_s, n + 2, 1, 2)?),
        Inversion::NegatedCouplings => {
            Evolver::Plain { forward: Propagator::new(h_s)?, backward: Propagator::new(&negated(h_s)?)? }
        }
    };

    for (k, m) in mats.iter().enumerate() {
        if k > 0 {
            let dt = times[k] - times[k - 1];
            match &evolver {
                Evolver::Control(u) if dt >= 0.0 => state = u.apply(&state, dt)?,
                Evolver::Control(u) => {
                    flip(&mut state, 1)?;
                    state = u.apply(&state, -dt)?;
                    flip(&mut state, 1)?;
                }
                Evolver::Plain { forward, backward } => {
                    let u = if dt >= 0.0 { forward.unitary(dt) } else { backward.unitary(-dt) };
                    apply_system(&mut state, &u, n_ancilla)?;
                }
            }
        }
        apply_system_on_branches(&mut state, m, n_ancilla, a_set)?;
    }

    let total = state.n_qubits();
    let sx = state.expectation_pauli(&PauliString::single(total, 0, Pauli::X)?)?.re;
    let sy = state.expectation_pauli(&PauliString::single(total, 0, Pauli::Y)?)?.re;
    let (sx, sy) = match options.shots {
        None => (sx, sy),
        Some((shots, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (estimate(sx, shots, &mut rng)?, estimate(sy, shots, &mut rng)?)
        }
    };
    Ok(ProtocolResult {
        value: C64::new(sx, sy) * 0.5,
        raw_expectations: (sx, sy),
        method: ProtocolMethod::AncillaProtocol,
    })
}

/// Binomial estimate of a `±1`-valued observable with mean `expectation`.
fn estimate(expectation: f64, shots: u64, rng: &mut ChaCha8Rng) -> Result<f64> {
    if shots == 0 {
        return Err(Error::InvalidIndex("shot count must be positive".into()));
    }
    let p = ((1.0 + expectation) / 2.0).clamp(0.0, 1.0);
    let dist = Binomial::new(shots, p).map_err(|e| Error::InvalidIndex(e.to_string()))?;
    let ups = dist.sample(rng) as f64;
    Ok(2.0 * ups / shots as f64 - 1.0)
}

/// Heisenberg-picture OTOC `⟨ψ|W†(t) V† W(t) V|ψ⟩` from dense matrices.
pub fn direct_otoc(w: &SystemOp, v: &SystemOp, h_s: &SpinHamiltonian, t: f64, psi: &StateVector) -> Result<ProtocolResult> {
    let n = h_s.n_qubits;
    let eig = HermitianEigen::new(&h_s.to_matrix()?);
    let value = oracle::heisenberg_otoc(&eig, t, &w.system_matrix(n, 1)?, &v.system_matrix(n, 1)?, psi.amplitudes());
    Ok(ProtocolResult { value, raw_expectations: (value.re, value.im), method: ProtocolMethod::DirectOracle })
}

/// `½⟨ψ|V_n(t_n) ··· V_0(t_0)|ψ⟩` from dense matrices, in the same units as
/// [`correlation_via_ancilla`].
pub fn direct_correlation(ops: &[SystemOp], times: &[f64], h_s: &SpinHamiltonian, psi: &StateVector) -> Result<ProtocolResult> {
    let n = h_s.n_qubits;
    let eig = HermitianEigen::new(&h_s.to_matrix()?);
    let mats: Vec<Matrix> = ops.iter().map(|o| o.system_matrix(n, 1)).collect::<Result<_>>()?;
    let full = oracle::heisenberg_correlator(&eig, &mats, times, psi.amplitudes());
    Ok(ProtocolResult { value: full * 0.5, raw_expectations: (full.re, full.im), method: ProtocolMethod::DirectOracle })
}

/// `|e⟩` written as a one-qubit state.
pub fn excited_ancilla() -> StateVector {
    StateVector::from_amplitudes(1, vec![ONE, ZERO]).expect("unit vector")
}

/// Hermitian single-qubit Pauli on a system qubit, for use as `V` or `W`.
pub fn system_pauli_op(n_system: usize, qubit: usize, p: Pauli) -> Result<SystemOp> {
    Ok(SystemOp::Pauli(PauliString::single(n_system, qubit, p)?))
}
