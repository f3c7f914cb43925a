use crate::compile::{Circuit, Gate};
use crate::encoding::SpinHamiltonian;
use crate::error::{Error, Result};
use crate::linalg::{check_dense_cap, HermitianEigen, Matrix, C64, I, ONE, ZERO};
use crate::pauli::{Pauli, PauliString};

type M2 = [[C64; 2]; 2];
type M4 = [[C64; 4]; 4];

/// Dense state on `n_qubits` qubits; qubit 0 is the most significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<StateVector> {
        check_dense_cap(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidIndex(format!("basis index {index} outside 0..{dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { n_qubits, amps })
    }

    /// Wrap amplitudes; their squared norm must be 1 within `1e-10`.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<C64>) -> Result<StateVector> {
        check_dense_cap(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::QubitMismatch { left: 1usize << n_qubits, right: amps.len() });
        }
        let s = StateVector { n_qubits, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidIndex(format!("state is not normalized (norm² = {norm})")));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.amps.len(), other.amps.len());
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `|self⟩ ⊗ |other⟩`; `self` occupies the low-numbered qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_dense_cap(self.n_qubits + other.n_qubits)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(StateVector { n_qubits: self.n_qubits + other.n_qubits, amps })
    }

    fn bit(&self, q: usize) -> usize {
        1usize << (self.n_qubits - 1 - q)
    }

    fn apply_1q(&mut self, q: usize, m: &M2) {
        let bit = self.bit(q);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Local basis order `|q_a q_b⟩` with `q_a` the high bit.
    fn apply_2q(&mut self, qa: usize, qb: usize, m: &M4) {
        let (ba, bb) = (self.bit(qa), self.bit(qb));
        for i in 0..self.amps.len() {
            if i & (ba | bb) == 0 {
                let idx = [i, i | bb, i | ba, i | ba | bb];
                let v = idx.map(|k| self.amps[k]);
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|c| m[r][c] * v[c]).sum();
                }
            }
        }
    }

    /// `ψ ← P ψ`.
    pub fn apply_pauli(&mut self, op: &PauliString) -> Result<()> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: op.n_qubits() });
        }
        self.amps = op.apply(&self.amps);
        Ok(())
    }

    /// `ψ ← exp(-i·angle·P) ψ` for a hermitian Pauli string `P`.
    pub fn apply_pauli_exponential(&mut self, angle: f64, op: &PauliString) -> Result<()> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: op.n_qubits() });
        }
        let (flip, zi, base) = op.action();
        let (c, s) = (angle.cos(), angle.sin());
        let mut out = vec![ZERO; self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let sign = if (k & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[k] += a * c;
            out[k ^ flip] += a * base * (-I * s * sign);
        }
        self.amps = out;
        Ok(())
    }

    /// Multiply by a dense matrix acting on the whole register.
    pub fn apply_matrix(&mut self, m: &Matrix) -> Result<()> {
        if m.nrows() != self.amps.len() || m.ncols() != self.amps.len() {
            return Err(Error::QubitMismatch { left: self.amps.len(), right: m.nrows() });
        }
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        self.amps = (m * v).iter().copied().collect();
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match gate {
            Gate::Rotation { axis, angle, qubit } => self.apply_1q(*qubit, &rotation_matrix(*axis, *angle)),
            Gate::PairEntangler { alpha, beta, phi, a, b } => {
                self.apply_2q(*a, *b, &pair_matrix(*alpha, *beta, *phi))
            }
            Gate::Swap { a, b } => {
                let (ba, bb) = (self.bit(*a), self.bit(*b));
                for i in 0..self.amps.len() {
                    if i & ba != 0 && i & bb == 0 {
                        self.amps.swap(i, i ^ ba ^ bb);
                    }
                }
            }
            Gate::Ms { theta, phi, qubits } => {
                // (Σ σ_φ)² = k·I + 2 Σ_{p<q} σ_φ σ_φ, and the pair terms commute
                let k = qubits.len() as f64;
                let pair = ms_pair_matrix(*theta, *phi);
                for (idx, &p) in qubits.iter().enumerate() {
                    for &q in &qubits[idx + 1..] {
                        self.apply_2q(p, q, &pair);
                    }
                }
                let global = C64::from_polar(1.0, -theta * k / 4.0);
                self.amps.iter_mut().for_each(|a| *a *= global);
            }
            Gate::PauliExponential { angle, op } => self.apply_pauli_exponential(*angle, op)?,
        }
        debug_assert!((self.norm_sqr() - 1.0).abs() < 1e-10, "norm drift after {gate}");
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation_pauli(&self, op: &PauliString) -> Result<C64> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: op.n_qubits() });
        }
        let (flip, zi, base) = op.action();
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let sign = if (k & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                self.amps[k ^ flip].conj() * a * base * sign
            })
            .sum())
    }
}

fn pauli_2x2(p: Pauli) -> M2 {
    match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -I], [I, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn kron2(a: &M2, b: &M2) -> M4 {
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = a[r / 2][c / 2] * b[r % 2][c % 2];
        }
    }
    out
}

/// `cos(x)·I + s·sin(x)·A` for an involution `A`.
fn involution_exp(x: f64, s: C64, a: &M4) -> M4 {
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = a[r][c] * s * x.sin();
        }
        out[r][r] += x.cos();
    }
    out
}

/// `exp(-i·angle·σ/2)`.
pub(crate) fn rotation_matrix(axis: Pauli, angle: f64) -> M2 {
    let p = pauli_2x2(axis);
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            out[r][col] = -I * s * p[r][col];
        }
        out[r][r] += c;
    }
    out
}

/// `exp(iφ σ^α ⊗ σ^β)`.
fn pair_matrix(alpha: Pauli, beta: Pauli, phi: f64) -> M4 {
    involution_exp(phi, I, &kron2(&pauli_2x2(alpha), &pauli_2x2(beta)))
}

/// `exp(-iθ/2 σ_φ ⊗ σ_φ)` with `σ_φ = cos φ X + sin φ Y`.
fn ms_pair_matrix(theta: f64, phi: f64) -> M4 {
    let s: M2 = [[ZERO, C64::from_polar(1.0, -phi)], [C64::from_polar(1.0, phi), ZERO]];
    involution_exp(theta / 2.0, -I, &kron2(&s, &s))
}

/// `|g…g⟩`: every site empty, i.e. every qubit in computational `|1⟩`.
pub fn vacuum_state(n_qubits: usize) -> Result<StateVector> {
    if n_qubits == 0 {
        return Err(Error::InvalidIndex("vacuum needs at least one qubit".into()));
    }
    StateVector::basis(n_qubits, (1usize << n_qubits) - 1)
}

/// `c†_{m_k} ··· c†_{m_1} |vac⟩` for occupied sites `m_1 < … < m_k`;
/// `occupations[m - 1]` marks site `m`. The lowest site is created first.
pub fn fock_state(occupations: &[bool]) -> Result<StateVector> {
    let n = occupations.len();
    let mut psi = vacuum_state(n)?;
    for (q, _) in occupations.iter().enumerate().filter(|(_, &occ)| occ) {
        let tail = PauliString::from_masks(n, 0, (1u64 << q) - 1, crate::pauli::Phase::ONE)?;
        let x = tail.clone().with(q, Pauli::X)?.apply(psi.amplitudes());
        let y = tail.with(q, Pauli::Y)?.apply(psi.amplitudes());
        let amps = x.iter().zip(&y).map(|(a, b)| (a + I * b) * 0.5).collect();
        psi = StateVector::from_amplitudes(n, amps)?;
    }
    Ok(psi)
}

/// Reusable `exp(-iHt)` built from one eigendecomposition of `H` (offset
/// excluded).
#[derive(Clone, Debug)]
pub struct Propagator {
    n_qubits: usize,
    eigen: HermitianEigen,
}

impl Propagator {
    pub fn new(h: &SpinHamiltonian) -> Result<Propagator> {
        Ok(Propagator { n_qubits: h.n_qubits, eigen: HermitianEigen::new(&h.to_matrix()?) })
    }

    pub fn from_matrix(n_qubits: usize, h: &Matrix) -> Result<Propagator> {
        check_dense_cap(n_qubits)?;
        if h.nrows() != 1usize << n_qubits {
            return Err(Error::QubitMismatch { left: 1usize << n_qubits, right: h.nrows() });
        }
        Ok(Propagator { n_qubits, eigen: HermitianEigen::new(h) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn unitary(&self, t: f64) -> Matrix {
        self.eigen.evolution(t)
    }

    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let mut out = psi.clone();
        out.apply_matrix(&self.unitary(t))?;
        Ok(out)
    }
}

/// `exp(-iHt)` for the traceless part of `H` (the offset only adds a global phase).
pub fn exact_unitary(h: &SpinHamiltonian, t: f64) -> Result<Matrix> {
    Ok(Propagator::new(h)?.unitary(t))
}

pub fn apply_circuit(c: &Circuit, psi: &StateVector) -> Result<StateVector> {
    if c.n_qubits != psi.n_qubits() {
        return Err(Error::QubitMismatch { left: c.n_qubits, right: psi.n_qubits() });
    }
    let mut out = psi.clone();
    for g in c.gates() {
        out.apply_gate(g)?;
    }
    Ok(out)
}

/// Dense unitary of a circuit, assembled column by column from basis states.
pub fn circuit_unitary(c: &Circuit) -> Result<Matrix> {
    check_dense_cap(c.n_qubits)?;
    let dim = 1usize << c.n_qubits;
    let mut u = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let psi = apply_circuit(c, &StateVector::basis(c.n_qubits, col)?)?;
        for (row, a) in psi.amplitudes().iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}

/// Reference dense matrix of a single gate built from Kronecker products and
/// a dense exponential, independent of the state-vector kernels.
pub fn gate_matrix(gate: &Gate, n_qubits: usize) -> Result<Matrix> {
    gate.validate(n_qubits)?;
    check_dense_cap(n_qubits)?;
    let dim = 1usize << n_qubits;
    let string = |factors: &[(usize, Pauli)]| -> Result<Matrix> { PauliString::from_sparse(n_qubits, factors)?.to_matrix() };
    let cos_sin = |x: f64, s: C64, p: Matrix| -> Matrix {
        Matrix::identity(dim, dim) * C64::new(x.cos(), 0.0) + p * (s * x.sin())
    };
    Ok(match gate {
        Gate::Rotation { axis, angle, qubit } => cos_sin(angle / 2.0, -I, string(&[(*qubit, *axis)])?),
        Gate::PairEntangler { alpha, beta, phi, a, b } => cos_sin(*phi, I, string(&[(*a, *alpha), (*b, *beta)])?),
        Gate::Swap { a, b } => {
            let mut m = Matrix::identity(dim, dim);
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                m += string(&[(*a, p), (*b, p)])?;
            }
            m * C64::new(0.5, 0.0)
        }
        Gate::Ms { theta, phi, qubits } => {
            let mut s = Matrix::zeros(dim, dim);
            for &q in qubits {
                s += string(&[(q, Pauli::X)])? * C64::new(phi.cos(), 0.0);
                s += string(&[(q, Pauli::Y)])? * C64::new(phi.sin(), 0.0);
            }
            let generator = &s * &s * C64::new(0.25, 0.0);
            HermitianEigen::new(&generator).evolution(*theta)
        }
        Gate::PauliExponential { angle, op } => cos_sin(*angle, -I, op.to_matrix()?),
    })
}
