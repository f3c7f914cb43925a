//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion may be red only through a known deviation whose exact shape
//! the criterion checks. Any other failure, or a known one that changes
//! shape, makes the process exit nonzero.

mod common;

use std::time::{Duration, Instant};

use syk_core::compile::{
    compile_term_superconducting, compile_term_trapped_ion, ion_frame, ion_frame_layer, term_costs,
    trotter_error_report, trotterize, Circuit, Connectivity, GateKind, Target, TrotterPlan,
};
use syk_core::encoding::{build_spin_hamiltonian, encode_majorana, SpinHamiltonian};
use syk_core::linalg::{identity, max_abs_diff, operator_norm, phase_insensitive_distance, Matrix, C64};
use syk_core::models::counts::count_terms;
use syk_core::models::{group_complex_couplings, sample_complex, sample_majorana, Couplings, Variant};
use syk_core::oracle;
use syk_core::pauli::Pauli;
use syk_core::simulate::{
    circuit_unitary, controlled_evolution, correlation_via_ancilla, direct_correlation, direct_otoc, exact_unitary,
    otoc_via_inversion, system_pauli_op, CorrelationOptions, Inversion, StateVector,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// For a red criterion: whether the failure is exactly the known one.
    expected_failure: bool,
}

impl Outcome {
    fn green(pass: bool, detail: String) -> Outcome {
        Outcome { pass, detail, expected_failure: false }
    }
}

fn majorana_h(n_modes: usize, seed: u64, quadratic: bool) -> SpinHamiltonian {
    build_spin_hamiltonian(&sample_majorana(n_modes, 1.0, seed, quadratic, 1.0).unwrap().into()).unwrap()
}

fn random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<C64> =
        (0..1usize << n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(n, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn term_counts() -> Outcome {
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for variant in Variant::ALL {
        for n in 2..=8 {
            for row in count_terms(variant, n) {
                rows += 1;
                if !row.matches() {
                    mismatches.push(format!("{variant} n={n} {}: {} vs {}", row.class, row.closed_form, row.enumerated));
                }
            }
        }
    }
    // bare hopping strings need a third site; the closed form counts them at n = 2 anyway
    let known = ["complex1 n=2 z_xx: 4 vs 0", "complex2 n=2 z_xx: 2 vs 0"];
    Outcome {
        pass: mismatches.is_empty(),
        expected_failure: mismatches == known,
        detail: if mismatches.is_empty() {
            format!("{rows} rows match")
        } else {
            format!("{} of {rows} rows differ [{}]", mismatches.len(), mismatches.join("; "))
        },
    }
}

fn jordan_wigner() -> Outcome {
    let mut worst_car = 0.0f64;
    for n_modes in [2, 4, 6, 8, 10, 12] {
        let chi: Vec<Matrix> = (1..=n_modes as u32).map(|a| encode_majorana(a, n_modes).unwrap().to_matrix().unwrap()).collect();
        let dim = chi[0].nrows();
        for (i, a) in chi.iter().enumerate() {
            for (j, b) in chi.iter().enumerate() {
                let expect = if i == j { identity(dim) * C64::new(2.0, 0.0) } else { Matrix::zeros(dim, dim) };
                worst_car = worst_car.max(max_abs_diff(&(a * b + b * a), &expect));
            }
        }
        let n = n_modes / 2;
        let c: Vec<Matrix> = (0..n).map(|m| (&chi[2 * m] + &chi[2 * m + 1] * C64::new(0.0, 1.0)) * C64::new(0.5, 0.0)).collect();
        for (i, a) in c.iter().enumerate() {
            for (j, b) in c.iter().enumerate() {
                let bd = b.adjoint();
                let delta = if i == j { identity(dim) } else { Matrix::zeros(dim, dim) };
                worst_car = worst_car.max(max_abs_diff(&(a * &bd + &bd * a), &delta));
                worst_car = worst_car.max(max_abs_diff(&(a * b + b * a), &Matrix::zeros(dim, dim)));
            }
        }
    }
    let mut worst_h = 0.0f64;
    for seed in 0..20 {
        for quad in [false, true] {
            let m = sample_majorana(8, 1.0, seed, quad, 1.0).unwrap();
            let expect = oracle::majorana_hamiltonian(&m).unwrap();
            let got = build_spin_hamiltonian(&m.into()).unwrap().to_matrix_with_offset().unwrap();
            worst_h = worst_h.max(max_abs_diff(&got, &expect));
        }
        for real_only in [false, true] {
            let c = sample_complex(4, 1.0, 0.3, seed, real_only).unwrap();
            let expect = oracle::complex_hamiltonian(&c).unwrap();
            let got = build_spin_hamiltonian(&c.into()).unwrap().to_matrix_with_offset().unwrap();
            worst_h = worst_h.max(max_abs_diff(&got, &expect));
        }
    }
    Outcome::green(
        worst_car == 0.0 && worst_h <= 1e-12,
        format!("anticommutators exact (max dev {worst_car:e}); Hamiltonian max dev {worst_h:.2e} over 80 instances"),
    )
}

fn trotter_convergence() -> Outcome {
    let mut ratios = Vec::new();
    let mut within_bound = true;
    for seed in 0..5 {
        let h = majorana_h(8, seed, false);
        let exact = exact_unitary(&h, 1.0).unwrap();
        let mut errors = Vec::new();
        for s in [8, 16, 32] {
            let c = trotterize(&h, &TrotterPlan::new(1.0, s, Target::Abstract)).unwrap();
            let err = operator_norm(&(circuit_unitary(&c).unwrap() - &exact));
            within_bound &= err <= trotter_error_report(&h, 1.0, s).unwrap().bound;
            errors.push(err);
        }
        ratios.extend(errors.windows(2).map(|w| w[0] / w[1]));
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Outcome::green(
        within_bound && lo >= 1.7 && hi <= 2.3,
        format!("error ratios in [{lo:.3}, {hi:.3}], errors within bound: {within_bound}"),
    )
}

fn ms_identity() -> Outcome {
    let mut failing = Vec::new();
    let mut worst_yz = 0.0f64;
    for m in 1..=3 {
        for k in 1..=3 {
            for alpha in common::LETTERS {
                for beta in common::LETTERS {
                    let d = phase_insensitive_distance(
                        &common::step_lhs(m, k, alpha, beta, 0.37),
                        &common::step_rhs(m, k, alpha, beta, 0.37),
                    );
                    if alpha != Pauli::X && beta != Pauli::X {
                        worst_yz = worst_yz.max(d);
                    }
                    if d > 1e-10 {
                        failing.push((m, k, alpha, beta));
                    }
                }
            }
        }
    }
    // σˣ on an anchor commutes with the collective gate, so the closed form
    // cannot hold whenever either letter is X
    let x_cases = failing.iter().all(|&(_, _, a, b)| a == Pauli::X || b == Pauli::X);
    Outcome {
        pass: failing.is_empty(),
        expected_failure: x_cases && failing.len() == 45 && worst_yz <= 1e-10,
        detail: format!(
            "{}/81 cases within 1e-10; letters in {{Y,Z}}: max distance {worst_yz:.1e}; {} failing cases all involve an X letter: {x_cases}",
            81 - failing.len(),
            failing.len()
        ),
    }
}

fn compiled_terms() -> Outcome {
    let dt = 0.173;
    let mut worst = 0.0f64;
    let mut checked = 0;
    let instances: Vec<SpinHamiltonian> = vec![
        majorana_h(8, 1, false),
        majorana_h(8, 1, true),
        build_spin_hamiltonian(&Couplings::from(sample_complex(4, 1.0, 0.3, 1, false).unwrap())).unwrap(),
        build_spin_hamiltonian(&Couplings::from(sample_complex(4, 1.0, 0.3, 1, true).unwrap())).unwrap(),
    ];
    for h in &instances {
        let n = h.n_qubits;
        let frame = circuit_unitary(&Circuit::from_gates(n, ion_frame_layer(n)).unwrap()).unwrap();
        for t in h.terms() {
            let target = common::pauli_exp(t.coefficient * dt, &t.op);
            let ion = compile_term_trapped_ion(t.coefficient, &ion_frame(&t.op).unwrap(), dt).unwrap();
            let ion_u = frame.adjoint() * circuit_unitary(&Circuit::from_gates(n, ion).unwrap()).unwrap() * &frame;
            worst = worst.max(phase_insensitive_distance(&ion_u, &target));
            for conn in [Connectivity::AllToAll, Connectivity::Linear] {
                let sc = compile_term_superconducting(t.coefficient, &t.op, dt, conn).unwrap();
                let u = circuit_unitary(&Circuit::from_gates(n, sc).unwrap()).unwrap();
                worst = worst.max(phase_insensitive_distance(&u, &target));
            }
            checked += 1;
        }
    }
    Outcome::green(worst <= 1e-10, format!("{checked} terms on 3 backends, max distance {worst:.1e}"))
}

fn protocols() -> Outcome {
    let mut branch_fid = 1.0f64;
    let mut otoc_dev = 0.0f64;
    let w = system_pauli_op(3, 0, Pauli::X).unwrap();
    let v = system_pauli_op(3, 2, Pauli::Z).unwrap();
    for seed in 0..10 {
        let h = majorana_h(6, seed, false);
        let psi = random_state(3, 1000 + seed);
        let anc = StateVector::from_amplitudes(1, vec![C64::new(0.5f64.sqrt(), 0.0); 2]).unwrap();
        for jt in [0.5, 1.0, 2.0] {
            let out = controlled_evolution(&h, jt, &anc.tensor(&psi).unwrap()).unwrap();
            let (e, g) = out.amplitudes().split_at(8);
            let vec = nalgebra::DVector::from_column_slice(psi.amplitudes());
            for (branch, time) in [(e, jt), (g, -jt)] {
                let want = exact_unitary(&h, time).unwrap() * &vec;
                let ov: C64 = want.iter().zip(branch).map(|(a, b)| a.conj() * b).sum();
                branch_fid = branch_fid.min(ov.norm_sqr() * 2.0);
            }
            let got = otoc_via_inversion(&w, &v, &h, jt, &psi).unwrap().value;
            let want = direct_otoc(&w, &v, &h, jt, &psi).unwrap().value;
            otoc_dev = otoc_dev.max((got - want).norm());
        }
    }
    let mut corr_dev = 0.0f64;
    for seed in 0..5 {
        let h = majorana_h(6, seed, true);
        let psi = random_state(3, 2000 + seed);
        let ops = vec![
            system_pauli_op(3, 1, Pauli::Y).unwrap(),
            system_pauli_op(3, 0, Pauli::Z).unwrap(),
            system_pauli_op(3, 2, Pauli::X).unwrap(),
        ];
        let times = [0.0, 1.2, 0.4];
        let want = direct_correlation(&ops, &times, &h, &psi).unwrap().value;
        for inversion in [Inversion::ControlQubit, Inversion::NegatedCouplings] {
            let got = correlation_via_ancilla(&ops, &times, &h, &psi, CorrelationOptions { inversion, shots: None })
                .unwrap()
                .value;
            corr_dev = corr_dev.max((got - want).norm());
        }
    }
    Outcome::green(
        branch_fid >= 1.0 - 1e-10 && otoc_dev <= 1e-8 && corr_dev <= 1e-8,
        format!(
            "branch fidelity >= {:.12}, OTOC max dev {otoc_dev:.1e}, correlation max dev {corr_dev:.1e}",
            branch_fid
        ),
    )
}

/// Least-squares slope of `ln y` against `ln x`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn gate_counts() -> Outcome {
    // superconducting entanglers per term against support size
    let h = majorana_h(12, 0, true);
    let mut by_weight = std::collections::BTreeMap::<usize, (usize, bool)>::new();
    for t in h.terms() {
        let gates = compile_term_superconducting(t.coefficient, &t.op, 0.1, Connectivity::AllToAll).unwrap();
        let entanglers = gates.iter().filter(|g| g.kind() == GateKind::PairEntangler).count();
        let entry = by_weight.entry(t.op.weight()).or_insert((entanglers, true));
        entry.1 &= entry.0 == entanglers;
    }
    let sc_equal_support = by_weight.iter().all(|(&w, &(e, _))| e == w);
    let sc_profile_as_built = by_weight.iter().all(|(&w, &(e, uniform))| {
        uniform && e == if w <= 2 { w - 1 } else { 2 * (w - 1) }
    });
    let sc_text: Vec<String> = by_weight.iter().map(|(w, (e, _))| format!("{w}->{e}")).collect();

    // trapped-ion per-term gate count across N
    let ion_max: Vec<usize> = [8, 12, 16, 20]
        .iter()
        .map(|&n_modes| {
            let c = trotterize(&majorana_h(n_modes, 0, true), &TrotterPlan::new(1.0, 1, Target::TrappedIon)).unwrap();
            term_costs(&c).iter().map(|t| t.gates).max().unwrap()
        })
        .collect();
    let ion_constant = ion_max.windows(2).all(|w| w[0] == w[1]);

    // noncommuting pair count growth
    let points: Vec<(f64, f64)> = (3..=6)
        .map(|n| {
            let h = majorana_h(2 * n, 0, false);
            (n as f64, trotter_error_report(&h, 1.0, 1).unwrap().nonzero_commutators as f64)
        })
        .collect();
    let slope = loglog_slope(&points);
    let counts: Vec<String> = points.iter().map(|p| format!("{}", p.1)).collect();
    // two quartic Majorana products anticommute iff they share one or three indices
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    let combinatorial = points.iter().all(|&(n, count)| {
        let big = 2 * n as u64;
        let pairs = binom(big, 4) * 4 * ((big - 4) + binom(big - 4, 3)) / 2;
        pairs as f64 == count
    });

    let pass = sc_equal_support && ion_constant && slope <= 6.5;
    Outcome {
        pass,
        expected_failure: !sc_equal_support && sc_profile_as_built && ion_constant && combinatorial,
        detail: format!(
            "superconducting entanglers by support [{}] (equal to support: {sc_equal_support}); trapped-ion max gates per term {ion_max:?}; noncommuting pairs n=3..6 [{}] (equal to shared-index count: {combinatorial}), fitted exponent {slope:.2}",
            sc_text.join(", "),
            counts.join(", ")
        ),
    }
}

fn sampling() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, values: &[f64], var_law: f64| {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
        let z = mean.abs() / (var_law / k).sqrt();
        let rel = (var - var_law).abs() / var_law;
        ok &= z <= 5.0 && rel <= 0.05;
        notes.push(format!("{name}: |bias| {z:.2} SE, variance off {:.2}%", 100.0 * rel));
    };

    let n_modes = 8;
    let (mut quartic, mut quadratic) = (Vec::new(), Vec::new());
    let mut seed = 0;
    while quartic.len() < 100_000 {
        let m = sample_majorana(n_modes, 1.0, seed, true, 1.0).unwrap();
        quartic.extend(m.quartic.values().map(|v| v / 24.0));
        quadratic.extend(m.quadratic.unwrap().values());
        seed += 1;
    }
    check("J_ijkl", &quartic, 6.0 / (n_modes as f64).powi(3));
    check("A_ij", &quadratic, 1.0 / (4.0 * n_modes as f64));

    let (mut re, mut im, mut diag) = (Vec::new(), Vec::new(), Vec::new());
    let mut exact = true;
    let mut seed = 0;
    while re.len() < 100_000 {
        let c = sample_complex(5, 1.0, 0.0, seed, false).unwrap();
        for (&(p, q), v) in &c.quartic {
            let base = v / 4.0;
            if p == q {
                diag.push(base.re);
            } else {
                re.push(base.re);
                im.push(base.im);
            }
        }
        for value in group_complex_couplings(&c).quartets.values() {
            exact &= value[0] == value[1] + value[2] + value[3];
        }
        seed += 1;
    }
    check("Re J_ij;kl", &re, 0.5);
    check("Im J_ij;kl", &im, 0.5);
    check("J_ij;ij", &diag, 1.0);
    notes.push(format!("grouped relation exact: {exact}"));
    Outcome::green(ok && exact, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("term-count tables", term_counts, Duration::from_secs(10)),
        ("Jordan-Wigner correctness", jordan_wigner, Duration::from_secs(60)),
        ("Trotter convergence", trotter_convergence, Duration::from_secs(300)),
        ("collective-gate step identity", ms_identity, Duration::from_secs(60)),
        ("compiled-term fidelity", compiled_terms, Duration::from_secs(120)),
        ("protocol equivalence", protocols, Duration::from_secs(300)),
        ("gate-count claims", gate_counts, Duration::from_secs(120)),
        ("sampling statistics", sampling, Duration::from_secs(60)),
    ];
    let mut unexpected = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let note = match (outcome.pass, outcome.expected_failure) {
            (true, _) => "",
            (false, true) => " [known deviation, shape as recorded]",
            (false, false) => " [UNEXPECTED]",
        };
        println!("criterion {}: {status} {name} ({:.2}s){note}: {}", i + 1, elapsed.as_secs_f64(), outcome.detail);
        if !outcome.pass && !outcome.expected_failure {
            unexpected += 1;
        }
        if elapsed > budget {
            println!("criterion {}: runtime {:.1}s exceeds {}s", i + 1, elapsed.as_secs_f64(), budget.as_secs());
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
