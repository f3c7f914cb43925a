//! Multi-qubit Pauli operators in symplectic (bit-mask) form.
//!
//! A [`PauliString`] on `n` qubits stores an X mask, a Z mask and an exact
//! phase `i^k`. Qubit `q` carries
//!
//! | x bit | z bit | factor |
//! |-------|-------|--------|
//! | 0     | 0     | I      |
//! | 1     | 0     | X      |
//! | 0     | 1     | Z      |
//! | 1     | 1     | Y      |
//!
//! so the operator is `i^k ⊗_q σ_q` with Y stored directly (not as `X·Z`).
//! The `Y = i·X·Z` bookkeeping lives in [`PauliString::mul`].
//!
//! Qubit 0 is the leftmost Kronecker factor, i.e. the most significant bit of
//! an amplitude index. Every module in the crate follows this convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{check_dense_cap, Matrix, C64};

/// Hard limit imposed by the `u64` masks.
pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A power of `i`, stored as its exponent mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `+1.0` or `-1.0` for real phases.
    pub fn real_sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn to_complex(self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

fn width_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<PauliString> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { n_qubits, max: MAX_QUBITS });
        }
        Ok(PauliString { n_qubits, x: 0, z: 0, phase: Phase::ONE })
    }

    pub fn from_masks(n_qubits: usize, x: u64, z: u64, phase: Phase) -> Result<PauliString> {
        let id = PauliString::identity(n_qubits)?;
        let w = width_mask(n_qubits);
        if x & !w != 0 || z & !w != 0 {
            return Err(Error::QubitOutOfRange {
                index: 63 - ((x | z) & !w).leading_zeros() as usize,
                n_qubits,
            });
        }
        Ok(PauliString { x, z, phase, ..id })
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Result<PauliString> {
        PauliString::identity(n_qubits)?.with(qubit, p)
    }

    /// Build from `(qubit, pauli)` pairs; later entries overwrite earlier ones.
    pub fn from_sparse(n_qubits: usize, factors: &[(usize, Pauli)]) -> Result<PauliString> {
        let mut s = PauliString::identity(n_qubits)?;
        for &(q, p) in factors {
            s = s.with(q, p)?;
        }
        Ok(s)
    }

    /// Replace the factor on `qubit` (phase untouched).
    pub fn with(mut self, qubit: usize, p: Pauli) -> Result<PauliString> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1u64 << qubit;
        let (xb, zb) = p.bits();
        self.x = if xb { self.x | bit } else { self.x & !bit };
        self.z = if zb { self.z | bit } else { self.z & !bit };
        Ok(self)
    }

    pub fn with_phase(mut self, phase: Phase) -> PauliString {
        self.phase = phase;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    /// Qubits with a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut m = self.support_mask();
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    /// Same letters with phase `+1`.
    pub fn unsigned(&self) -> PauliString {
        self.with_phase(Phase::ONE)
    }

    /// True when the operator equals its adjoint (phase `±1`).
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    pub fn adjoint(&self) -> PauliString {
        self.with_phase(self.phase.conj())
    }

    fn check_size(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        self.check_size(other)?;
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // With σ(x,z) = i^{xz} X^x Z^z, moving Z^{z1} past X^{x2} costs (-1)^{z1·x2}.
        let e = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 4 * 64
            - (x & z).count_ones();
        let phase = self.phase * other.phase * Phase::from_exponent(e);
        Ok(PauliString { n_qubits: self.n_qubits, x, z, phase })
    }

    /// Whether `self·other == other·self`, via the symplectic inner product.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.anticommuting_count(other) % 2 == 0)
    }

    fn anticommuting_count(&self, other: &PauliString) -> u32 {
        (self.x & other.z).count_ones() + (self.z & other.x).count_ones()
    }

    /// X and Z masks remapped to amplitude-index bit positions.
    pub fn index_masks(&self) -> (usize, usize) {
        let n = self.n_qubits;
        let mut xi = 0usize;
        let mut zi = 0usize;
        for q in self.support() {
            let bit = 1usize << (n - 1 - q);
            if self.x >> q & 1 == 1 {
                xi |= bit;
            }
            if self.z >> q & 1 == 1 {
                zi |= bit;
            }
        }
        (xi, zi)
    }

    /// `P|c⟩ = coeff · |c ⊕ flip⟩` for every basis index `c`; returns `(flip, z, base)`
    /// with `coeff = base · (-1)^{popcount(c & z)}`.
    pub fn action(&self) -> (usize, usize, C64) {
        let (xi, zi) = self.index_masks();
        let ny = (self.x & self.z).count_ones();
        let base = (self.phase * Phase::from_exponent(ny)).to_complex();
        (xi, zi, base)
    }

    /// `P ψ` for a state given as `2^n` amplitudes.
    pub fn apply(&self, amps: &[C64]) -> Vec<C64> {
        assert_eq!(amps.len(), 1usize << self.n_qubits);
        let (flip, zi, base) = self.action();
        let mut out = vec![C64::new(0.0, 0.0); amps.len()];
        for (c, a) in amps.iter().enumerate() {
            let sign = if (c & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[c ^ flip] = a * base * sign;
        }
        out
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        check_dense_cap(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let (flip, zi, base) = self.action();
        let mut m = Matrix::zeros(dim, dim);
        for c in 0..dim {
            let sign = if (c & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[(c ^ flip, c)] = base * sign;
        }
        Ok(m)
    }

    /// Letters only, qubit 0 first.
    pub fn letters(&self) -> String {
        (0..self.n_qubits).map(|q| self.get(q).letter()).collect()
    }

    /// Deterministic term order: lexicographic on `(z_mask, x_mask)`.
    pub fn order_key(&self) -> (u64, u64) {
        (self.z, self.x)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.phase, self.letters())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts `"+i XZIY"`, `"-1 XX"`, `"- ZZ"` or bare letters `"XZIY"`.
    fn from_str(s: &str) -> Result<PauliString> {
        let bad = || Error::PauliParse(s.to_string());
        let mut parts = s.split_whitespace();
        let first = parts.next().ok_or_else(bad)?;
        let (phase, letters) = match parts.next() {
            Some(letters) => {
                let phase = match first {
                    "+" | "+1" | "1" => Phase::ONE,
                    "+i" | "i" => Phase::I,
                    "-" | "-1" => Phase::MINUS_ONE,
                    "-i" => Phase::MINUS_I,
                    _ => return Err(bad()),
                };
                (phase, letters)
            }
            None => (Phase::ONE, first),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        let n = letters.chars().count();
        let mut p = PauliString::identity(n)?.with_phase(phase);
        for (q, c) in letters.chars().enumerate() {
            p = p.with(q, Pauli::from_letter(c).ok_or_else(bad)?)?;
        }
        Ok(p)
    }
}

impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
