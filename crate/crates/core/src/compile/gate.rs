use std::collections::BTreeMap;
use std::fmt;

use crate::encoding::TermClass;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Native gate set.
///
/// | variant            | unitary                                              |
/// |--------------------|------------------------------------------------------|
/// | `Rotation`         | `exp(-i·angle·σ_axis/2)`                             |
/// | `Ms`               | `exp(-iθ(cos φ Sˣ + sin φ Sʸ)²/4)` over `qubits`     |
/// | `PairEntangler`    | `exp(iφ σ^α_a σ^β_b)`                                |
/// | `Swap`             | exchange of two qubits                               |
/// | `PauliExponential` | `exp(-i·angle·op)`                                   |
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Rotation { axis: Pauli, angle: f64, qubit: usize },
    Ms { theta: f64, phi: f64, qubits: Vec<usize> },
    PairEntangler { alpha: Pauli, beta: Pauli, phi: f64, a: usize, b: usize },
    Swap { a: usize, b: usize },
    PauliExponential { angle: f64, op: PauliString },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    SingleRotation,
    Ms,
    PairEntangler,
    Swap,
    PauliExponential,
}

impl GateKind {
    pub const ALL: [GateKind; 5] = [
        GateKind::SingleRotation,
        GateKind::Ms,
        GateKind::PairEntangler,
        GateKind::Swap,
        GateKind::PauliExponential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::SingleRotation => "single_rotation",
            GateKind::Ms => "ms",
            GateKind::PairEntangler => "pair_entangler",
            GateKind::Swap => "swap",
            GateKind::PauliExponential => "pauli_exponential",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rotation { .. } => GateKind::SingleRotation,
            Gate::Ms { .. } => GateKind::Ms,
            Gate::PairEntangler { .. } => GateKind::PairEntangler,
            Gate::Swap { .. } => GateKind::Swap,
            Gate::PauliExponential { .. } => GateKind::PauliExponential,
        }
    }

    /// Qubits the gate touches, in the order they appear in its parameters.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Rotation { qubit, .. } => vec![*qubit],
            Gate::Ms { qubits, .. } => qubits.clone(),
            Gate::PairEntangler { a, b, .. } | Gate::Swap { a, b } => vec![*a, *b],
            Gate::PauliExponential { op, .. } => op.support(),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self.clone() {
            Gate::Rotation { axis, angle, qubit } => Gate::Rotation { axis, angle: -angle, qubit },
            Gate::Ms { theta, phi, qubits } => Gate::Ms { theta: -theta, phi, qubits },
            Gate::PairEntangler { alpha, beta, phi, a, b } => Gate::PairEntangler { alpha, beta, phi: -phi, a, b },
            g @ Gate::Swap { .. } => g,
            Gate::PauliExponential { angle, op } => Gate::PauliExponential { angle: -angle, op },
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCircuit(m));
        let angle = match self {
            Gate::Rotation { angle, .. } | Gate::PauliExponential { angle, .. } => *angle,
            Gate::Ms { theta, phi, .. } => {
                if !phi.is_finite() {
                    return bad(format!("non-finite phase in {self}"));
                }
                *theta
            }
            Gate::PairEntangler { phi, .. } => *phi,
            Gate::Swap { .. } => 0.0,
        };
        if !angle.is_finite() {
            return bad(format!("non-finite angle in {self}"));
        }
        let qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::QubitOutOfRange { index: q, n_qubits });
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qubits.len() {
            return bad(format!("repeated qubit in {self}"));
        }
        match self {
            Gate::Ms { qubits, .. } if qubits.len() < 2 => bad("ms gate needs at least two qubits".into()),
            Gate::Rotation { axis: Pauli::I, .. } => bad("rotation axis must be X, Y or Z".into()),
            Gate::PairEntangler { alpha, beta, .. } if *alpha == Pauli::I || *beta == Pauli::I => {
                bad("entangler axes must be X, Y or Z".into())
            }
            Gate::PauliExponential { op, .. } if op.n_qubits() != n_qubits => {
                Err(Error::QubitMismatch { left: n_qubits, right: op.n_qubits() })
            }
            Gate::PauliExponential { op, .. } if op.phase() != crate::pauli::Phase::ONE => {
                bad(format!("pauli exponential needs a +1 phase string, got {op}"))
            }
            _ => Ok(()),
        }
    }

    fn parse(line: &str, n_qubits: usize) -> std::result::Result<Gate, String> {
        let mut parts = line.split_whitespace();
        let kind = parts.next().ok_or("empty gate line")?;
        let list = parts.next().ok_or("missing qubit list")?;
        let qubits: Vec<usize> = if list == "-" {
            Vec::new()
        } else {
            list.split(',')
                .map(|q| q.parse().map_err(|_| format!("bad qubit {q:?}")))
                .collect::<std::result::Result<_, _>>()?
        };
        let rest: Vec<&str> = parts.collect();
        let float = |i: usize| -> std::result::Result<f64, String> {
            rest.get(i)
                .ok_or_else(|| format!("missing parameter {i}"))?
                .parse()
                .map_err(|_| format!("bad number {:?}", rest[i]))
        };
        let axis = |i: usize| -> std::result::Result<Pauli, String> {
            let s = rest.get(i).ok_or_else(|| format!("missing axis {i}"))?;
            let mut chars = s.chars();
            match (chars.next().and_then(Pauli::from_letter), chars.next()) {
                (Some(p), None) => Ok(p),
                _ => Err(format!("bad axis {s:?}")),
            }
        };
        let pair = || -> std::result::Result<(usize, usize), String> {
            match qubits[..] {
                [a, b] => Ok((a, b)),
                _ => Err("expected two qubits".into()),
            }
        };
        let gate = match kind {
            "single_rotation" => {
                let [qubit] = qubits[..] else {
                    return Err("expected one qubit".into());
                };
                Gate::Rotation { axis: axis(0)?, angle: float(1)?, qubit }
            }
            "ms" => Gate::Ms { theta: float(0)?, phi: float(1)?, qubits },
            "pair_entangler" => {
                let (a, b) = pair()?;
                Gate::PairEntangler { alpha: axis(0)?, beta: axis(1)?, phi: float(2)?, a, b }
            }
            "swap" => {
                let (a, b) = pair()?;
                Gate::Swap { a, b }
            }
            "pauli_exponential" => {
                let letters = rest.get(1).ok_or("missing pauli string")?;
                let op: PauliString = letters.parse().map_err(|e: Error| e.to_string())?;
                if op.n_qubits() != n_qubits || op.support() != qubits {
                    return Err(format!("qubit list does not match support of {letters}"));
                }
                Gate::PauliExponential { angle: float(0)?, op }
            }
            other => return Err(format!("unknown gate kind {other:?}")),
        };
        Ok(gate)
    }
}

fn join(qubits: &[usize]) -> String {
    qubits.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.kind();
        let qubits = join(&self.qubits());
        match self {
            Gate::Rotation { axis, angle, .. } => write!(f, "{kind} {qubits} {axis} {angle:?}"),
            Gate::Ms { theta, phi, .. } => write!(f, "{kind} {qubits} {theta:?} {phi:?}"),
            Gate::PairEntangler { alpha, beta, phi, .. } => write!(f, "{kind} {qubits} {alpha} {beta} {phi:?}"),
            Gate::Swap { .. } => write!(f, "{kind} {qubits}"),
            Gate::PauliExponential { angle, op } => {
                // an identity exponential has no support; keep the column parseable
                let qubits = if qubits.is_empty() { "-".to_string() } else { qubits };
                write!(f, "{kind} {qubits} {angle:?} {}", op.letters())
            }
        }
    }
}

/// Contiguous gate range implementing one Hamiltonian term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub class: TermClass,
    pub start: usize,
    pub len: usize,
}

/// Ordered gate list on a fixed register. Gates emitted for a Hamiltonian
/// term are grouped into a [`Segment`] tagged with the term's class;
/// segments never overlap and appear in gate order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    pub n_qubits: usize,
    gates: Vec<Gate>,
    segments: Vec<Segment>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Circuit {
        Circuit { n_qubits, gates: Vec::new(), segments: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(n_qubits);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Append the gates of one term as a tagged segment.
    pub fn push_term(&mut self, class: TermClass, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        let start = self.gates.len();
        if let Err(e) = self.extend(gates) {
            self.gates.truncate(start);
            return Err(e);
        }
        self.segments.push(Segment { class, start, len: self.gates.len() - start });
        Ok(())
    }

    /// Append every gate and segment of `other`, which must share the
    /// register size.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let shift = self.gates.len();
        self.gates.extend(other.gates.iter().cloned());
        self.segments
            .extend(other.segments.iter().map(|s| Segment { start: s.start + shift, ..*s }));
        Ok(())
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_gates(&self, seg: &Segment) -> &[Gate] {
        &self.gates[seg.start..seg.start + seg.len]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate count per kind; every kind is present, possibly with zero.
    pub fn kind_counts(&self) -> BTreeMap<GateKind, usize> {
        kind_counts(&self.gates)
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn inverse(&self) -> Circuit {
        let total = self.gates.len();
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            segments: self
                .segments
                .iter()
                .rev()
                .map(|s| Segment { start: total - s.start - s.len, ..*s })
                .collect(),
        }
    }

    /// `# n_qubits N` header, then one `kind qubit-list params` line per
    /// gate. A `# term <class> <len>` line opens each segment.
    pub fn to_text(&self) -> String {
        let mut s = format!("# n_qubits {}\n", self.n_qubits);
        let mut segs = self.segments.iter().peekable();
        for (i, g) in self.gates.iter().enumerate() {
            while let Some(seg) = segs.next_if(|seg| seg.start == i) {
                s.push_str(&format!("# term {} {}\n", seg.class, seg.len));
            }
            s.push_str(&g.to_string());
            s.push('\n');
        }
        for seg in segs {
            s.push_str(&format!("# term {} {}\n", seg.class, seg.len));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |message: String| Error::Parse { line: idx + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let parts: Vec<&str> = header.split_whitespace().collect();
                match parts[..] {
                    ["n_qubits", n] => {
                        let n = n.parse().map_err(|_| bad("bad n_qubits header".into()))?;
                        circuit = Some(Circuit::new(n));
                    }
                    ["term", class, len] => {
                        let c = circuit.as_mut().ok_or_else(|| bad("term before n_qubits header".into()))?;
                        let class = class.parse().map_err(|e: Error| bad(e.to_string()))?;
                        let len = len.parse().map_err(|_| bad(format!("bad segment length {len:?}")))?;
                        c.segments.push(Segment { class, start: c.gates.len(), len });
                    }
                    _ => {}
                }
                continue;
            }
            let c = circuit.as_mut().ok_or_else(|| bad("gate before n_qubits header".into()))?;
            let gate = Gate::parse(line, c.n_qubits).map_err(bad)?;
            c.push(gate).map_err(|e| bad(e.to_string()))?;
        }
        let c = circuit.ok_or(Error::Parse { line: 0, message: "missing n_qubits header".into() })?;
        let mut end = 0;
        for seg in &c.segments {
            if seg.start < end || seg.start + seg.len > c.gates.len() {
                return Err(Error::InvalidCircuit(format!("segment {seg:?} overlaps or overruns the gate list")));
            }
            end = seg.start + seg.len;
        }
        Ok(c)
    }
}

pub(crate) fn kind_counts(gates: &[Gate]) -> BTreeMap<GateKind, usize> {
    let mut out: BTreeMap<GateKind, usize> = GateKind::ALL.iter().map(|&k| (k, 0)).collect();
    for g in gates {
        *out.entry(g.kind()).or_insert(0) += 1;
    }
    out
}
