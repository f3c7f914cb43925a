//! Reference constructions built only from Kronecker products of 2×2
//! matrices and dense arithmetic. Nothing here touches the Pauli-string
//! layer, so agreement with it is an independent check.

use crate::error::{Error, Result};
use crate::linalg::{check_dense_cap, identity, kron, HermitianEigen, Matrix, C64, I, ONE, ZERO};
use crate::models::{ComplexCouplings, MajoranaCouplings};

fn lowering() -> Matrix {
    // |1⟩⟨0|: the occupied state is computational |0⟩
    Matrix::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO])
}

fn z2() -> Matrix {
    Matrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site < 1 || site > n {
        return Err(Error::InvalidIndex(format!("site {site} outside 1..={n}")));
    }
    check_dense_cap(n)
}

/// Annihilation operator `c_site` on `n` sites (1-based).
pub fn annihilation(site: usize, n: usize) -> Result<Matrix> {
    check_site(site, n)?;
    let mut m = Matrix::identity(1, 1);
    for q in 1..=n {
        let factor = match q.cmp(&site) {
            std::cmp::Ordering::Less => z2(),
            std::cmp::Ordering::Equal => lowering(),
            std::cmp::Ordering::Greater => identity(2),
        };
        m = kron(&m, &factor);
    }
    Ok(m)
}

pub fn creation(site: usize, n: usize) -> Result<Matrix> {
    Ok(annihilation(site, n)?.adjoint())
}

pub fn number(site: usize, n: usize) -> Result<Matrix> {
    Ok(creation(site, n)? * annihilation(site, n)?)
}

/// `χ_{2m-1} = c_m + c_m†`, `χ_{2m} = i(c_m - c_m†)`.
pub fn majorana(a: usize, n_modes: usize) -> Result<Matrix> {
    if a < 1 || a > n_modes {
        return Err(Error::InvalidIndex(format!("Majorana index {a} outside 1..={n_modes}")));
    }
    let n = n_modes.div_ceil(2);
    let site = a.div_ceil(2);
    let c = annihilation(site, n)?;
    let cd = c.adjoint();
    Ok(if a % 2 == 1 { &c + &cd } else { (&c - &cd) * I })
}

/// `Σ_{i>j>k>l} (J̃/96) χ_i χ_j χ_k χ_l + Σ_{i>j} A_ij i χ_i χ_j`.
pub fn majorana_hamiltonian(m: &MajoranaCouplings) -> Result<Matrix> {
    let chi: Vec<Matrix> = (1..=m.n_modes).map(|a| majorana(a, m.n_modes)).collect::<Result<_>>()?;
    let dim = chi[0].nrows();
    let mut h = Matrix::zeros(dim, dim);
    for (&[i, j, k, l], &tilde) in &m.quartic {
        let prod = &chi[i as usize - 1] * &chi[j as usize - 1] * &chi[k as usize - 1] * &chi[l as usize - 1];
        h += prod * C64::new(tilde / 96.0, 0.0);
    }
    if let Some(quad) = &m.quadratic {
        for (&[i, j], &a) in quad {
            h += (&chi[i as usize - 1] * &chi[j as usize - 1]) * (I * a);
        }
    }
    Ok(h)
}

/// `(2n)^{-3/2} Σ_{abcd} J_{ab;cd} c†_a c†_b c_c c_d - μ Σ_a n_a` with the
/// full tensor rebuilt from its symmetries.
pub fn complex_hamiltonian(c: &ComplexCouplings) -> Result<Matrix> {
    let n = c.n;
    let ann: Vec<Matrix> = (1..=n).map(|s| annihilation(s, n)).collect::<Result<_>>()?;
    let cre: Vec<Matrix> = ann.iter().map(|m| m.adjoint()).collect();
    let dim = ann[0].nrows();
    let g = (2.0 * n as f64).powf(-1.5);
    let mut h = Matrix::zeros(dim, dim);
    for a in 0..n {
        for b in 0..n {
            let mut inner = Matrix::zeros(dim, dim);
            for x in 0..n {
                for d in 0..n {
                    let v = c.tensor(a as u32 + 1, b as u32 + 1, x as u32 + 1, d as u32 + 1);
                    if v != ZERO {
                        inner += (&ann[x] * &ann[d]) * v;
                    }
                }
            }
            h += (&cre[a] * &cre[b]) * inner * C64::new(g, 0.0);
        }
    }
    for s in 0..n {
        h -= (&cre[s] * &ann[s]) * C64::new(c.mu, 0.0);
    }
    Ok(h)
}

/// `⟨ψ| W(t)† V† W(t) V |ψ⟩` with `W(t) = U† W U` and `U = exp(-iHt)`.
pub fn heisenberg_otoc(h: &HermitianEigen, t: f64, w: &Matrix, v: &Matrix, psi: &[C64]) -> C64 {
    let u = h.evolution(t);
    let wt = u.adjoint() * w * &u;
    let op = wt.adjoint() * v.adjoint() * &wt * v;
    expectation(&op, psi)
}

/// `⟨ψ| V_n(t_n) ··· V_1(t_1) V_0(t_0) |ψ⟩` with `V(t) = U†(t) V U(t)`.
pub fn heisenberg_correlator(h: &HermitianEigen, ops: &[Matrix], times: &[f64], psi: &[C64]) -> C64 {
    assert_eq!(ops.len(), times.len());
    let dim = h.dim();
    let mut acc = identity(dim);
    for (op, &t) in ops.iter().zip(times) {
        let u = h.evolution(t);
        acc = u.adjoint() * op * &u * acc;
    }
    expectation(&acc, psi)
}

pub fn expectation(op: &Matrix, psi: &[C64]) -> C64 {
    let v = nalgebra::DVector::from_column_slice(psi);
    (v.adjoint() * op * &v)[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn canonical_anticommutation() {
        let n = 4;
        for a in 1..=n {
            for b in 1..=n {
                let ca = annihilation(a, n).unwrap();
                let cb = annihilation(b, n).unwrap();
                let anti = &ca * &cb + &cb * &ca;
                assert!(anti.iter().all(|x| x.norm() == 0.0));
                let mixed = &ca * cb.adjoint() + cb.adjoint() * &ca;
                let expect = if a == b { identity(16) } else { Matrix::zeros(16, 16) };
                assert_eq!(max_abs_diff(&mixed, &expect), 0.0);
            }
        }
    }

    #[test]
    fn majorana_squares_to_identity() {
        for a in 1..=6 {
            let m = majorana(a, 6).unwrap();
            assert_eq!(max_abs_diff(&(&m * &m), &identity(8)), 0.0);
        }
    }
}
