//! Term compilers for trapped-ion and superconducting hardware.
//!
//! Both backends realize `exp(-i·c·dt·P)` for a Pauli string `P` with the
//! Mølmer–Sørensen sandwich
//!
//! ```text
//! U = MS_A(-π/2) MS_B(-π/2) U_lj(φ) MS_B(π/2) MS_A(π/2)
//! ```
//!
//! where the support is split into a lower region `A` (anchor `l` plus `M`
//! further qubits) and an upper region `B` (anchor `j` plus `K` further
//! qubits), and `U_lj(φ) = exp(iφ σ^α_l σ^β_j)`. Conjugation by `MS(π/2)`
//! dresses the anchor letter with the region's `σˣ` string:
//!
//! | parity | effective anchor operator                              |
//! |--------|--------------------------------------------------------|
//! | even   | `a(M) ∏σˣ σ^α_l`, `a(M) = (-1)^{M/2}`                  |
//! | odd    | `b(M) ∏σˣ ε_{xγα} σ^γ_l`, `b(M) = (-1)^{(M-1)/2}`     |
//!
//! so non-anchor qubits must carry `X` and the anchor `Y` or `Z`. Single
//! qubit basis changes outside the sandwich arrange this.
//!
//! The superconducting backend uses one collective gate over the whole
//! support with a single-qubit middle gate on the lowest qubit,
//! `MS(-π/2) R(φ) MS(π/2)`. Each MS gate is expanded into
//! `exp(∓iπ/4 X_l X_q)` pair gates, and only those touching the middle
//! qubit are kept, since all others commute with it and cancel.

use std::f64::consts::FRAC_PI_2;

use super::gate::Gate;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Phase};

/// `a(n)`: `-1` at `n = 4k - 2`, `+1` at `n = 4k`.
pub fn sign_a(n: usize) -> f64 {
    debug_assert!(n % 2 == 0);
    if n % 4 == 2 {
        -1.0
    } else {
        1.0
    }
}

/// `b(n)`: `+1` at `n = 4k - 3`, `-1` at `n = 4k - 1`.
pub fn sign_b(n: usize) -> f64 {
    debug_assert!(n % 2 == 1);
    if n % 4 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Letter the anchor ends up carrying after the sandwich, given the middle
/// gate letter `alpha` and `m` further qubits in the region, with its sign.
/// `None` when the pair cannot produce a string (middle letter `X`).
pub fn dressed_anchor(alpha: Pauli, m: usize) -> Option<(Pauli, f64)> {
    if m == 0 {
        return (alpha != Pauli::I).then_some((alpha, 1.0));
    }
    match (m % 2, alpha) {
        (_, Pauli::I | Pauli::X) => None,
        (0, a) => Some((a, sign_a(m))),
        // ε_{xzy} = -1, ε_{xyz} = +1
        (_, Pauli::Y) => Some((Pauli::Z, -sign_b(m))),
        (_, Pauli::Z) => Some((Pauli::Y, sign_b(m))),
    }
}

/// Middle-gate letter producing `target` on an anchor with `m` region
/// qubits, and the sign of the resulting effective operator.
fn middle_letter(target: Pauli, m: usize) -> (Pauli, f64) {
    [Pauli::X, Pauli::Y, Pauli::Z]
        .into_iter()
        .find_map(|alpha| match dressed_anchor(alpha, m) {
            Some((t, s)) if t == target => Some((alpha, s)),
            _ => None,
        })
        .expect("Y and Z anchors are reachable for every region size")
}

/// Rotation `R` with `R·from·R† = to` (quarter turn about the third axis);
/// `None` when `from == to`.
fn basis_change(from: Pauli, to: Pauli, qubit: usize) -> Option<Gate> {
    let quarter = |axis, sign: f64| Some(Gate::Rotation { axis, angle: sign * FRAC_PI_2, qubit });
    match (from, to) {
        (a, b) if a == b => None,
        (Pauli::Y, Pauli::X) => quarter(Pauli::Z, -1.0),
        (Pauli::X, Pauli::Y) => quarter(Pauli::Z, 1.0),
        (Pauli::Z, Pauli::X) => quarter(Pauli::Y, 1.0),
        (Pauli::X, Pauli::Z) => quarter(Pauli::Y, -1.0),
        (Pauli::Y, Pauli::Z) => quarter(Pauli::X, 1.0),
        (Pauli::Z, Pauli::Y) => quarter(Pauli::X, -1.0),
        _ => unreachable!("identity letters never need a basis change"),
    }
}

/// Ion-frame relabeling `Z → X`, `X → Y`, `Y → Z`, which turns Jordan-Wigner
/// `Z` strings into the `σˣ` strings the MS construction needs.
pub fn ion_frame(op: &PauliString) -> Result<PauliString> {
    let mut out = PauliString::identity(op.n_qubits())?.with_phase(op.phase());
    for q in op.support() {
        let p = match op.get(q) {
            Pauli::Z => Pauli::X,
            Pauli::X => Pauli::Y,
            Pauli::Y => Pauli::Z,
            Pauli::I => Pauli::I,
        };
        out = out.with(q, p)?;
    }
    Ok(out)
}

/// Frame change `F` on every qubit with `F P F† = ion_frame(P)`; emitted at
/// the start of a trapped-ion circuit, and its inverse at the end.
pub fn ion_frame_layer(n_qubits: usize) -> Vec<Gate> {
    (0..n_qubits)
        .flat_map(|qubit| {
            [
                Gate::Rotation { axis: Pauli::X, angle: FRAC_PI_2, qubit },
                Gate::Rotation { axis: Pauli::Z, angle: FRAC_PI_2, qubit },
            ]
        })
        .collect()
}

/// Two-region sandwich for the trapped-ion backend.
struct Sandwich {
    /// Rotations applied before the sandwich; their inverses follow it.
    pre: Vec<Gate>,
    a: Region,
    b: Region,
    phi: f64,
}

/// One collective region with its middle-gate letter and dressing sign.
struct Region {
    anchor: usize,
    rest: Vec<usize>,
    letter: Pauli,
    sign: f64,
}

impl Region {
    /// Rotate non-anchor letters to `X` and an `X` anchor to `Z` (when the
    /// region has other qubits), recording the rotations in `pre`.
    fn prepare(op: &PauliString, qubits: &[usize], pre: &mut Vec<Gate>) -> Region {
        let (&anchor, rest) = qubits.split_first().expect("regions are nonempty");
        for &q in rest {
            pre.extend(basis_change(op.get(q), Pauli::X, q));
        }
        let target = match op.get(anchor) {
            Pauli::X if !rest.is_empty() => {
                pre.extend(basis_change(Pauli::X, Pauli::Z, anchor));
                Pauli::Z
            }
            p => p,
        };
        let (letter, sign) = middle_letter(target, rest.len());
        Region { anchor, rest: rest.to_vec(), letter, sign }
    }
}

enum Plan<T> {
    Single(Gate),
    Pair(Gate),
    Collective(T),
}

fn check_term(op: &PauliString, coefficient: f64, dt: f64) -> Result<()> {
    if op.phase() != Phase::ONE {
        return Err(Error::UnsupportedShape(format!("string with phase {}: {op}", op.phase())));
    }
    if op.is_identity() {
        return Err(Error::UnsupportedShape("identity string (global phase only)".into()));
    }
    if !(coefficient * dt).is_finite() {
        return Err(Error::UnsupportedShape(format!("non-finite angle for {op}")));
    }
    Ok(())
}

/// One- and two-qubit terms need no collective gate; larger supports are
/// handed to `collective` with the sorted support and `θ = c·dt`.
fn plan<T>(coefficient: f64, op: &PauliString, dt: f64, collective: impl FnOnce(&[usize], f64) -> T) -> Result<Plan<T>> {
    check_term(op, coefficient, dt)?;
    let support = op.support();
    let angle = coefficient * dt;
    Ok(match support[..] {
        [q] => Plan::Single(Gate::Rotation { axis: op.get(q), angle: 2.0 * angle, qubit: q }),
        [a, b] => Plan::Pair(Gate::PairEntangler { alpha: op.get(a), beta: op.get(b), phi: -angle, a, b }),
        _ => Plan::Collective(collective(&support, angle)),
    })
}

fn wrap(pre: Vec<Gate>, core: Vec<Gate>) -> Vec<Gate> {
    let post: Vec<Gate> = pre.iter().rev().map(Gate::inverse).collect();
    pre.into_iter().chain(core).chain(post).collect()
}

/// Gates realizing `exp(-i·coefficient·dt·op)` with MS collective gates.
///
/// Terms on one qubit become a single rotation and terms on two qubits a
/// bare entangler with `φ = -coefficient·dt`. Larger supports use the MS
/// sandwich with `φ = -coefficient·dt·s_A·s_B`, where `s_A`, `s_B` are the
/// case-table signs of the two regions.
pub fn compile_term_trapped_ion(coefficient: f64, op: &PauliString, dt: f64) -> Result<Vec<Gate>> {
    let planned = plan(coefficient, op, dt, |support, angle| {
        let (lower, upper) = support.split_at(support.len().div_ceil(2));
        let mut pre = Vec::new();
        let a = Region::prepare(op, lower, &mut pre);
        let b = Region::prepare(op, upper, &mut pre);
        let phi = -angle * a.sign * b.sign;
        Sandwich { pre, a, b, phi }
    })?;
    Ok(match planned {
        Plan::Single(g) | Plan::Pair(g) => vec![g],
        Plan::Collective(s) => {
            let ms = |theta: f64, r: &Region| {
                (!r.rest.is_empty()).then(|| Gate::Ms {
                    theta,
                    phi: 0.0,
                    qubits: std::iter::once(r.anchor).chain(r.rest.iter().copied()).collect(),
                })
            };
            let core = [
                ms(FRAC_PI_2, &s.a),
                ms(FRAC_PI_2, &s.b),
                Some(Gate::PairEntangler { alpha: s.a.letter, beta: s.b.letter, phi: s.phi, a: s.a.anchor, b: s.b.anchor }),
                ms(-FRAC_PI_2, &s.b),
                ms(-FRAC_PI_2, &s.a),
            ];
            wrap(s.pre, core.into_iter().flatten().collect())
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connectivity {
    AllToAll,
    /// Nearest neighbours on a line `0 - 1 - … - (n-1)`.
    Linear,
}

/// Gates realizing `exp(-i·coefficient·dt·op)` with two-qubit entanglers.
///
/// For a support of `m ≥ 3` qubits the result holds `2(m - 1)` pair
/// entanglers around one single-qubit middle rotation; two-qubit terms use
/// one bare entangler. With [`Connectivity::Linear`] every non-adjacent
/// two-qubit gate is wrapped in a SWAP chain that moves the higher qubit
/// down next to the lower one and back.
pub fn compile_term_superconducting(
    coefficient: f64,
    op: &PauliString,
    dt: f64,
    connectivity: Connectivity,
) -> Result<Vec<Gate>> {
    let planned = plan(coefficient, op, dt, |support, angle| {
        let mut pre = Vec::new();
        let region = Region::prepare(op, support, &mut pre);
        (pre, region, angle)
    })?;
    let gates = match planned {
        Plan::Single(g) | Plan::Pair(g) => vec![g],
        Plan::Collective((pre, r, angle)) => {
            let xx = |phi: f64| -> Vec<Gate> {
                r.rest
                    .iter()
                    .map(|&q| Gate::PairEntangler { alpha: Pauli::X, beta: Pauli::X, phi, a: r.anchor, b: q })
                    .collect()
            };
            let quarter = std::f64::consts::FRAC_PI_4;
            let mut core = xx(-quarter);
            // exp(iφσ) with φ = -θ·sign is a rotation by -2φ
            core.push(Gate::Rotation { axis: r.letter, angle: 2.0 * angle * r.sign, qubit: r.anchor });
            core.extend(xx(quarter));
            wrap(pre, core)
        }
    };
    Ok(match connectivity {
        Connectivity::AllToAll => gates,
        Connectivity::Linear => route_linear(gates),
    })
}

/// Insert SWAP chains so every two-qubit gate acts on neighbours.
pub fn route_linear(gates: Vec<Gate>) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    for g in gates {
        match g {
            Gate::PairEntangler { alpha, beta, phi, a, b } if a.abs_diff(b) > 1 => {
                let (lo, hi) = (a.min(b), a.max(b));
                let chain: Vec<Gate> = (lo + 2..=hi).rev().map(|q| Gate::Swap { a: q - 1, b: q }).collect();
                let (a, b) = if a < b { (lo, lo + 1) } else { (lo + 1, lo) };
                out.extend(chain.iter().cloned());
                out.push(Gate::PairEntangler { alpha, beta, phi, a, b });
                out.extend(chain.into_iter().rev());
            }
            other => out.push(other),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_functions() {
        assert_eq!([2, 4, 6, 8].map(sign_a), [-1.0, 1.0, -1.0, 1.0]);
        assert_eq!([1, 3, 5, 7].map(sign_b), [1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn two_qubit_term_is_a_bare_entangler() {
        let op: PauliString = "ZZ".parse().unwrap();
        let g = compile_term_trapped_ion(0.8, &op, 0.25).unwrap();
        assert_eq!(g, vec![Gate::PairEntangler { alpha: Pauli::Z, beta: Pauli::Z, phi: -0.2, a: 0, b: 1 }]);
        let g = compile_term_superconducting(0.8, &op, 0.25, Connectivity::AllToAll).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn unsupported_shapes_are_named() {
        let id = PauliString::identity(3).unwrap();
        let err = compile_term_trapped_ion(1.0, &id, 0.1).unwrap_err();
        assert!(err.to_string().contains("identity"));
        let phased: PauliString = "XZ".parse::<PauliString>().unwrap().with_phase(Phase::I);
        assert!(compile_term_superconducting(1.0, &phased, 0.1, Connectivity::Linear).is_err());
    }

    #[test]
    fn routing_example_swap_count() {
        // support {1, 2, 5, 6} in 1-based site labels: partners of qubit 0
        // sit 1, 4 and 5 apart, twice each
        let op: PauliString = "XYIIZX".parse().unwrap();
        let g = compile_term_superconducting(0.3, &op, 0.1, Connectivity::Linear).unwrap();
        let swaps = g.iter().filter(|g| matches!(g, Gate::Swap { .. })).count();
        assert_eq!(swaps, 2 * (0 + 3 + 4) * 2);
        for gate in &g {
            if let Gate::PairEntangler { a, b, .. } | Gate::Swap { a, b } = gate {
                assert_eq!(a.abs_diff(*b), 1);
            }
        }
    }
}
