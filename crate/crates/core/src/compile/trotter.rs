use std::fmt;
use std::str::FromStr;

use super::gate::{Circuit, Gate};
use super::hardware::{
    compile_term_superconducting, compile_term_trapped_ion, ion_frame, ion_frame_layer, Connectivity,
};
use crate::encoding::{SpinHamiltonian, SpinTerm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Target {
    /// One `pauli_exponential` per factor.
    #[default]
    Abstract,
    TrappedIon,
    SuperconductingLinear,
    SuperconductingAllToAll,
}

impl Target {
    pub const ALL: [Target; 4] =
        [Target::Abstract, Target::TrappedIon, Target::SuperconductingLinear, Target::SuperconductingAllToAll];

    pub fn name(self) -> &'static str {
        match self {
            Target::Abstract => "abstract",
            Target::TrappedIon => "trapped_ion",
            Target::SuperconductingLinear => "superconducting_linear",
            Target::SuperconductingAllToAll => "superconducting_all_to_all",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidCircuit(format!("unknown target {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TrotterOrder {
    /// `(∏_j e^{-iH_j t/s})^s`.
    #[default]
    First,
    /// Symmetrized step: forward sweep with `t/2s`, then the reverse sweep.
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrotterPlan {
    pub t: f64,
    pub s: usize,
    pub order: TrotterOrder,
    pub target: Target,
}

impl TrotterPlan {
    pub fn new(t: f64, s: usize, target: Target) -> TrotterPlan {
        TrotterPlan { t, s, order: TrotterOrder::First, target }
    }

    pub fn second_order(self) -> TrotterPlan {
        TrotterPlan { order: TrotterOrder::Second, ..self }
    }

    /// Number of times each term appears in the circuit.
    pub fn repetitions(&self) -> usize {
        match self.order {
            TrotterOrder::First => self.s,
            TrotterOrder::Second => 2 * self.s,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::InvalidCircuit("Trotter step count must be at least 1".into()));
        }
        if !self.t.is_finite() {
            return Err(Error::InvalidCircuit(format!("non-finite evolution time {}", self.t)));
        }
        Ok(())
    }
}

/// Gates for one factor `exp(-i·c·dt·op)` on `target`. Trapped-ion factors
/// are expressed in the ion frame.
pub fn compile_factor(target: Target, term: &SpinTerm, dt: f64) -> Result<Vec<Gate>> {
    let c = term.coefficient;
    match target {
        Target::Abstract => Ok(vec![Gate::PauliExponential { angle: c * dt, op: term.op.clone() }]),
        Target::TrappedIon => compile_term_trapped_ion(c, &ion_frame(&term.op)?, dt),
        Target::SuperconductingLinear => compile_term_superconducting(c, &term.op, dt, Connectivity::Linear),
        Target::SuperconductingAllToAll => compile_term_superconducting(c, &term.op, dt, Connectivity::AllToAll),
    }
}

/// Terms in the pinned order: ascending `(z_mask, x_mask)`.
pub fn ordered_terms(h: &SpinHamiltonian) -> Vec<&SpinTerm> {
    let mut terms: Vec<&SpinTerm> = h.terms().iter().collect();
    terms.sort_by_key(|t| t.op.order_key());
    terms
}

/// Product-formula circuit for `exp(-iHt)`; the offset of `H` only adds a
/// global phase and is dropped. Each factor forms one segment.
pub fn trotterize(h: &SpinHamiltonian, plan: &TrotterPlan) -> Result<Circuit> {
    plan.validate()?;
    if h.is_empty() {
        return Err(Error::InvalidCircuit("cannot Trotterize a Hamiltonian without terms".into()));
    }
    let terms = ordered_terms(h);
    let dt = plan.t / plan.s as f64;
    let compiled = |dt: f64| -> Result<Vec<(usize, Vec<Gate>)>> {
        terms.iter().enumerate().map(|(i, t)| Ok((i, compile_factor(plan.target, t, dt)?))).collect()
    };
    let sweep: Vec<(usize, Vec<Gate>)> = match plan.order {
        TrotterOrder::First => compiled(dt)?,
        TrotterOrder::Second => {
            let half = compiled(dt / 2.0)?;
            let back: Vec<_> = half.iter().rev().cloned().collect();
            half.into_iter().chain(back).collect()
        }
    };
    let mut circuit = Circuit::new(h.n_qubits);
    let frame = plan.target == Target::TrappedIon;
    if frame {
        circuit.extend(ion_frame_layer(h.n_qubits))?;
    }
    for _ in 0..plan.s {
        for (i, gates) in &sweep {
            circuit.push_term(terms[*i].class, gates.iter().cloned())?;
        }
    }
    if frame {
        circuit.extend(ion_frame_layer(h.n_qubits).iter().rev().map(Gate::inverse))?;
    }
    Ok(circuit)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrotterErrorReport {
    pub nonzero_commutators: usize,
    /// `Σ_{i<j, [P_i,P_j]≠0} 2|c_i||c_j| t² / (2s)`.
    pub bound: f64,
}

pub fn trotter_error_report(h: &SpinHamiltonian, t: f64, s: usize) -> Result<TrotterErrorReport> {
    if s == 0 {
        return Err(Error::InvalidCircuit("Trotter step count must be at least 1".into()));
    }
    let terms = h.terms();
    let mut count = 0usize;
    let mut weight = 0.0;
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if !a.op.commutes(&b.op)? {
                count += 1;
                weight += 2.0 * a.coefficient.abs() * b.coefficient.abs();
            }
        }
    }
    Ok(TrotterErrorReport { nonzero_commutators: count, bound: weight * t * t / (2.0 * s as f64) })
}
