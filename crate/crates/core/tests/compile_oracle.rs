mod common;

use syk_core::compile::{
    compile_term_superconducting, compile_term_trapped_ion, ion_frame, ion_frame_layer, resource_report, term_costs,
    trotter_error_report, trotterize, Circuit, Connectivity, GateKind, Target, TrotterPlan,
};
use syk_core::encoding::{build_spin_hamiltonian, SpinHamiltonian};
use syk_core::linalg::{operator_norm, phase_aligned_max_diff, C64};
use syk_core::models::{sample_complex, sample_majorana, Couplings, Variant};
use syk_core::pauli::{Pauli, PauliString};
use syk_core::simulate::{circuit_unitary, exact_unitary};
use common::{cos_sign, pauli_exp, sin_sign, step_lhs, step_rhs, x_string, LETTERS};
use std::f64::consts::FRAC_PI_2;

#[test]
fn ms_step_matches_closed_form_for_transverse_letters() {
    for m in 1..=3 {
        for k in 1..=3 {
            for alpha in [Pauli::Y, Pauli::Z] {
                for beta in [Pauli::Y, Pauli::Z] {
                    let d = phase_aligned_max_diff(&step_lhs(m, k, alpha, beta, 0.37), &step_rhs(m, k, alpha, beta, 0.37));
                    assert!(d < 1e-10, "M={m} K={k} {alpha}{beta}: {d}");
                }
            }
        }
    }
}

#[test]
fn ms_step_leaves_x_letters_undressed() {
    // σˣ on an anchor commutes with the collective gate, so that side of
    // the product carries neither a string nor a sign
    for m in 1..=3 {
        for k in 1..=3 {
            for beta in LETTERS {
                let n = m + k + 2;
                let j = m + 1;
                let lhs = step_lhs(m, k, Pauli::X, beta, 0.37);
                let dressed_b = match (beta, k % 2) {
                    (Pauli::X, _) => (beta, 1.0, false),
                    (_, 0) => (beta, cos_sign(k), true),
                    (Pauli::Y, _) => (Pauli::Z, -sin_sign(k), true),
                    _ => (Pauli::Y, sin_sign(k), true),
                };
                let (letter, sign, stringed) = dressed_b;
                let mut p = PauliString::identity(n).unwrap().with(0, Pauli::X).unwrap().with(j, letter).unwrap();
                if stringed {
                    for q in j + 1..=j + k {
                        p = p.with(q, Pauli::X).unwrap();
                    }
                }
                let expect = pauli_exp(-0.37 * sign, &p);
                let d = phase_aligned_max_diff(&lhs, &expect);
                assert!(d < 1e-10, "M={m} K={k} X{beta}: {d}");
                let paper = step_rhs(m, k, Pauli::X, beta, 0.37);
                assert!(phase_aligned_max_diff(&lhs, &paper) > 1e-3, "M={m} K={k} X{beta} unexpectedly matches");
            }
        }
    }
}

#[test]
fn parity_identities_at_small_sizes() {
    // cos(π/2 sˣ) = −σˣσˣ on two qubits, sin(π/2 sˣ) = σˣ on one
    let s2 = x_string(2, [0]).to_matrix().unwrap() + x_string(2, [1]).to_matrix().unwrap();
    let eig = syk_core::linalg::HermitianEigen::new(&s2);
    let u = eig.evolution(-FRAC_PI_2);
    let cos = (&u + u.adjoint()) * C64::new(0.5, 0.0);
    let expect = x_string(2, [0, 1]).to_matrix().unwrap() * C64::new(-1.0, 0.0);
    assert!(phase_aligned_max_diff(&cos, &expect) < 1e-14 && (cos[(0, 3)] - expect[(0, 3)]).norm() < 1e-14);
    let s1 = x_string(1, [0]).to_matrix().unwrap();
    let u = syk_core::linalg::HermitianEigen::new(&s1).evolution(-FRAC_PI_2);
    let sin = (&u - u.adjoint()) * C64::new(0.0, -0.5);
    assert!((sin - s1).iter().all(|x| x.norm() < 1e-14));
}

fn instances() -> Vec<SpinHamiltonian> {
    let mut out = Vec::new();
    for seed in [1, 2] {
        out.push(build_spin_hamiltonian(&sample_majorana(8, 1.0, seed, false, 1.0).unwrap().into()).unwrap());
        out.push(build_spin_hamiltonian(&sample_majorana(8, 1.0, seed, true, 1.0).unwrap().into()).unwrap());
        out.push(build_spin_hamiltonian(&sample_complex(4, 1.0, 0.3, seed, false).unwrap().into()).unwrap());
        out.push(build_spin_hamiltonian(&sample_complex(4, 1.0, 0.3, seed, true).unwrap().into()).unwrap());
    }
    out
}

#[test]
fn every_compiled_term_matches_its_exponential() {
    let dt = 0.173;
    for h in instances() {
        let n = h.n_qubits;
        let frame = Circuit::from_gates(n, ion_frame_layer(n)).unwrap();
        let frame_u = circuit_unitary(&frame).unwrap();
        for t in h.terms() {
            let target = pauli_exp(t.coefficient * dt, &t.op);
            let ion = compile_term_trapped_ion(t.coefficient, &ion_frame(&t.op).unwrap(), dt).unwrap();
            let ion_u = frame_u.adjoint() * circuit_unitary(&Circuit::from_gates(n, ion).unwrap()).unwrap() * &frame_u;
            let direct = compile_term_trapped_ion(t.coefficient, &t.op, dt).unwrap();
            let sc_all = compile_term_superconducting(t.coefficient, &t.op, dt, Connectivity::AllToAll).unwrap();
            let sc_lin = compile_term_superconducting(t.coefficient, &t.op, dt, Connectivity::Linear).unwrap();
            for (name, u) in [
                ("ion frame", ion_u),
                ("ion direct", circuit_unitary(&Circuit::from_gates(n, direct).unwrap()).unwrap()),
                ("sc all", circuit_unitary(&Circuit::from_gates(n, sc_all).unwrap()).unwrap()),
                ("sc linear", circuit_unitary(&Circuit::from_gates(n, sc_lin).unwrap()).unwrap()),
            ] {
                let d = phase_aligned_max_diff(&u, &target);
                assert!(d < 1e-10, "{name} {} {}: {d}", t.op.letters(), t.class);
            }
        }
    }
}

#[test]
fn first_order_trotter_error_halves_and_respects_bound() {
    for seed in 0..3 {
        let h = build_spin_hamiltonian(&sample_majorana(8, 1.0, seed, false, 1.0).unwrap().into()).unwrap();
        let exact = exact_unitary(&h, 1.0).unwrap();
        let errors: Vec<f64> = [8, 16, 32]
            .iter()
            .map(|&s| {
                let c = trotterize(&h, &TrotterPlan::new(1.0, s, Target::Abstract)).unwrap();
                let err = operator_norm(&(circuit_unitary(&c).unwrap() - &exact));
                assert!(err <= trotter_error_report(&h, 1.0, s).unwrap().bound, "seed {seed} s={s}");
                err
            })
            .collect();
        for w in errors.windows(2) {
            let ratio = w[0] / w[1];
            assert!((1.7..=2.3).contains(&ratio), "seed {seed}: ratio {ratio}");
        }
    }
}

#[test]
fn hardware_trotter_circuits_agree_with_abstract_ones() {
    let h = build_spin_hamiltonian(&sample_complex(3, 1.0, 0.2, 4, false).unwrap().into()).unwrap();
    let reference = circuit_unitary(&trotterize(&h, &TrotterPlan::new(0.7, 3, Target::Abstract)).unwrap()).unwrap();
    for target in [Target::TrappedIon, Target::SuperconductingAllToAll, Target::SuperconductingLinear] {
        let u = circuit_unitary(&trotterize(&h, &TrotterPlan::new(0.7, 3, target)).unwrap()).unwrap();
        let d = phase_aligned_max_diff(&u, &reference);
        assert!(d < 1e-10, "{target}: {d}");
    }
}

#[test]
fn trapped_ion_term_cost_does_not_grow_with_n() {
    let max_cost = |n_modes: usize| {
        let h = build_spin_hamiltonian(&sample_majorana(n_modes, 1.0, 0, true, 1.0).unwrap().into()).unwrap();
        let c = trotterize(&h, &TrotterPlan::new(1.0, 1, Target::TrappedIon)).unwrap();
        let costs = term_costs(&c);
        assert!(costs.iter().all(|t| t.ms <= 4 && t.entanglers <= 1));
        costs.iter().map(|t| t.gates).max().unwrap()
    };
    let reference = max_cost(12);
    for n_modes in [14, 16, 20] {
        assert_eq!(max_cost(n_modes), reference, "N = {n_modes}");
    }
}

#[test]
fn superconducting_entanglers_per_term() {
    let h = build_spin_hamiltonian(&sample_majorana(12, 1.0, 0, true, 1.0).unwrap().into()).unwrap();
    for t in h.terms() {
        let gates = compile_term_superconducting(t.coefficient, &t.op, 0.1, Connectivity::AllToAll).unwrap();
        let entanglers = gates.iter().filter(|g| g.kind() == GateKind::PairEntangler).count();
        let expect = match t.op.weight() {
            1 => 0,
            2 => 1,
            m => 2 * (m - 1),
        };
        assert_eq!(entanglers, expect, "{}", t.op.letters());
    }
}

#[test]
fn resource_shapes_match_second_complex_model_at_four_sites() {
    let h = build_spin_hamiltonian(&Couplings::from(sample_complex(4, 1.0, 0.5, 3, true).unwrap())).unwrap();
    let c = trotterize(&h, &TrotterPlan::new(1.0, 1, Target::Abstract)).unwrap();
    let rows = resource_report(&c).compare_shapes(Variant::Complex2, 4, 1).unwrap();
    for r in &rows {
        assert!(r.matches(), "{r:?}");
    }
    assert_eq!(rows[0].count, 8);
    let twice = trotterize(&h, &TrotterPlan::new(1.0, 2, Target::Abstract)).unwrap();
    assert_eq!(resource_report(&twice).total, 2 * resource_report(&c).total);
    assert_eq!(resource_report(&twice).compare_shapes(Variant::Complex2, 4, 2).unwrap(), rows);
}
