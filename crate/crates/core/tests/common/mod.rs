//! Closed-form reference for the collective-gate conjugation step.

use std::f64::consts::FRAC_PI_2;
use syk_core::compile::{Circuit, Gate};
use syk_core::linalg::{identity, HermitianEigen, Matrix, C64};
use syk_core::pauli::{Pauli, PauliString};
use syk_core::simulate::circuit_unitary;

pub const LETTERS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

pub fn pauli_exp(angle: f64, op: &PauliString) -> Matrix {
    // exp(-i·angle·P) = cos(angle) − i sin(angle) P
    let dim = 1usize << op.n_qubits();
    identity(dim) * C64::new(angle.cos(), 0.0) + op.to_matrix().unwrap() * C64::new(0.0, -angle.sin())
}

pub fn x_string(n: usize, qubits: impl IntoIterator<Item = usize>) -> PauliString {
    let mut p = PauliString::identity(n).unwrap();
    for q in qubits {
        p = p.with(q, Pauli::X).unwrap();
    }
    p
}

fn index(p: Pauli) -> usize {
    match p {
        Pauli::X => 0,
        Pauli::Y => 1,
        Pauli::Z => 2,
        Pauli::I => unreachable!(),
    }
}

pub fn levi_civita(a: Pauli, b: Pauli, c: Pauli) -> f64 {
    match (index(a), index(b), index(c)) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// cos(π/2 sˣ) on `m` qubits as a sign times ∏σˣ (zero for odd `m`).
pub fn cos_sign(m: usize) -> f64 {
    match m % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    }
}

/// sin(π/2 sˣ) on `m` qubits as a sign times ∏σˣ (zero for even `m`).
pub fn sin_sign(m: usize) -> f64 {
    match m % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    }
}

/// Right-hand side of the step identity, summed over the four cos/sin
/// branches with the Levi-Civita contractions written out.
pub fn step_rhs(m: usize, k: usize, alpha: Pauli, beta: Pauli, phi: f64) -> Matrix {
    let n = m + k + 2;
    let (l, j) = (0, m + 1);
    let strings = x_string(n, (1..=m).chain(j + 1..=j + k));
    let mut generator = Matrix::zeros(1 << n, 1 << n);
    let mut add = |coef: f64, a: Pauli, b: Pauli| {
        if coef != 0.0 {
            let p = strings.clone().with(l, a).unwrap().with(j, b).unwrap();
            generator += p.to_matrix().unwrap() * C64::new(coef, 0.0);
        }
    };
    add(cos_sign(m) * cos_sign(k), alpha, beta);
    for delta in LETTERS {
        add(cos_sign(m) * sin_sign(k) * levi_civita(Pauli::X, delta, beta), alpha, delta);
    }
    for gamma in LETTERS {
        add(sin_sign(m) * cos_sign(k) * levi_civita(Pauli::X, gamma, alpha), gamma, beta);
    }
    for gamma in LETTERS {
        for delta in LETTERS {
            let c = levi_civita(Pauli::X, beta, delta) * levi_civita(Pauli::X, alpha, gamma);
            add(sin_sign(m) * sin_sign(k) * c, gamma, delta);
        }
    }
    // exp(iφG) for hermitian G
    let eig = HermitianEigen::new(&generator);
    eig.evolution(-phi)
}

pub fn step_lhs(m: usize, k: usize, alpha: Pauli, beta: Pauli, phi: f64) -> Matrix {
    let n = m + k + 2;
    let (l, j) = (0, m + 1);
    let region_a: Vec<usize> = (l..=l + m).collect();
    let region_b: Vec<usize> = (j..=j + k).collect();
    let ms = |theta: f64, qubits: &[usize]| Gate::Ms { theta, phi: 0.0, qubits: qubits.to_vec() };
    let c = Circuit::from_gates(
        n,
        [
            ms(FRAC_PI_2, &region_a),
            ms(FRAC_PI_2, &region_b),
            Gate::PairEntangler { alpha, beta, phi, a: l, b: j },
            ms(-FRAC_PI_2, &region_b),
            ms(-FRAC_PI_2, &region_a),
        ],
    )
    .unwrap();
    circuit_unitary(&c).unwrap()
}

