//! Jordan-Wigner encoding of SYK couplings into real-coefficient Pauli sums.
//!
//! Conventions:
//!
//! * Fermion site `m` (1-based) lives on qubit `m - 1`.
//! * `c_m = (∏_{q < m-1} Z_q) σ⁻_{m-1}` with `σ⁻ = (X - iY)/2`, so an
//!   occupied site is the `Z = +1` state (computational `|0⟩`) and
//!   `n_m = (1 + Z_{m-1}) / 2`.
//! * Majorana mode `a` sits on site `ã = ⌊(a+1)/2⌋` with
//!   `χ_{2m-1} = c_m + c_m† = Z-string · X` and
//!   `χ_{2m} = i(c_m - c_m†) = Z-string · Y`.
//!
//! Every stored term is a phase-`+1` Pauli string with a real coefficient.
//! The identity component of a Hamiltonian is kept apart as `offset`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};
use crate::models::{group_complex_couplings, ComplexCouplings, Couplings, GroupedComplexCouplings, MajoranaCouplings, Variant};
use crate::pauli::{Pauli, PauliString, Phase};

/// Origin of a spin term; decides which count-table row it lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermClass {
    /// Quartic Majorana term with four distinct qubits.
    UMinusAbc,
    /// Quartic Majorana term with `ĩ = j̃` only.
    AOnly,
    /// Quartic Majorana term with `k̃ = l̃` only.
    BOnly,
    /// Quartic Majorana term with `ĩ = j̃` and `k̃ = l̃`.
    ACapB,
    /// Quartic Majorana term with `j̃ = k̃`.
    C,
    QuadraticGeneric,
    /// `i χ_{2m} χ_{2m-1}`, a single `Z`.
    QuadraticSpecial,
    /// Complex model, four distinct sites.
    CplxI,
    /// Complex model, one shared site; string carrying `Z_j` of the density.
    CplxIiDressed,
    /// Complex model, one shared site; string without `Z_j` (summed over `j`).
    CplxIiBare,
    /// Complex model, `Z_i Z_j` from the density-density terms.
    CplxZz,
    /// Complex model, single `Z` from density terms and chemical potential.
    CplxZ,
    /// Supplied directly rather than produced by the encoder.
    Custom,
}

impl TermClass {
    pub const ALL: [TermClass; 13] = [
        TermClass::UMinusAbc,
        TermClass::AOnly,
        TermClass::BOnly,
        TermClass::ACapB,
        TermClass::C,
        TermClass::QuadraticGeneric,
        TermClass::QuadraticSpecial,
        TermClass::CplxI,
        TermClass::CplxIiDressed,
        TermClass::CplxIiBare,
        TermClass::CplxZz,
        TermClass::CplxZ,
        TermClass::Custom,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TermClass::UMinusAbc => "U_minus_ABC",
            TermClass::AOnly => "A_only",
            TermClass::BOnly => "B_only",
            TermClass::ACapB => "A_cap_B",
            TermClass::C => "C",
            TermClass::QuadraticGeneric => "quadratic_generic",
            TermClass::QuadraticSpecial => "quadratic_special",
            TermClass::CplxI => "cplx_i",
            TermClass::CplxIiDressed => "cplx_ii",
            TermClass::CplxIiBare => "cplx_ii_bare",
            TermClass::CplxZz => "cplx_iii_iv_zz",
            TermClass::CplxZ => "cplx_iii_iv_z",
            TermClass::Custom => "custom",
        }
    }
}

impl fmt::Display for TermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TermClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<TermClass> {
        TermClass::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::PauliParse(format!("unknown term class {s:?}")))
    }
}

/// `⌊(x + 1) / 2⌋`, the site hosting Majorana mode `x`.
pub fn tilde_index(x: u32) -> Result<u32> {
    if x < 1 {
        return Err(Error::InvalidIndex("Majorana indices start at 1".into()));
    }
    Ok((x + 1) / 2)
}

/// `X` for odd modes, `Y` for even modes.
pub fn alpha_label(x: u32) -> Result<Pauli> {
    if x < 1 {
        return Err(Error::InvalidIndex("Majorana indices start at 1".into()));
    }
    Ok(if x % 2 == 1 { Pauli::X } else { Pauli::Y })
}

fn z_run(lo: u32, hi: u32) -> u64 {
    // qubits lo..hi (0-based, half-open)
    if hi <= lo {
        0
    } else {
        ((1u64 << (hi - lo)) - 1) << lo
    }
}

/// Jordan-Wigner string for `χ_a` on `⌈N/2⌉` qubits.
pub fn encode_majorana(a: u32, n_modes: usize) -> Result<PauliString> {
    if a < 1 || a as usize > n_modes {
        return Err(Error::InvalidIndex(format!("Majorana index {a} outside 1..={n_modes}")));
    }
    let site = tilde_index(a)?;
    let n_qubits = n_modes.div_ceil(2);
    let tail = z_run(0, site - 1);
    PauliString::from_masks(n_qubits, 0, tail, Phase::ONE)?.with(site as usize - 1, alpha_label(a)?)
}

/// A single encoded operator: `factor · op` equals the fermionic operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EncodedTerm {
    pub factor: f64,
    pub op: PauliString,
    pub class: TermClass,
}

fn fold_real(p: PauliString, extra: Phase) -> (f64, PauliString) {
    let total = p.phase() * extra;
    let sign = total
        .real_sign()
        .expect("hermitian Majorana products carry a real phase");
    (sign, p.unsigned())
}

/// `χ_i χ_j χ_k χ_l` for `i > j > k > l`.
pub fn encode_quartic_majorana(i: u32, j: u32, k: u32, l: u32, n_modes: usize) -> Result<EncodedTerm> {
    if !(i > j && j > k && k > l) {
        return Err(Error::InvalidIndex(format!("need i > j > k > l, got ({i},{j},{k},{l})")));
    }
    let prod = encode_majorana(i, n_modes)?
        .mul(&encode_majorana(j, n_modes)?)?
        .mul(&encode_majorana(k, n_modes)?)?
        .mul(&encode_majorana(l, n_modes)?)?;
    let (factor, op) = fold_real(prod, Phase::ONE);
    let t = |x| tilde_index(x).expect("checked above");
    let a = t(i) == t(j);
    let b = t(k) == t(l);
    let class = match (a, b, t(j) == t(k)) {
        (true, true, _) => TermClass::ACapB,
        (true, false, _) => TermClass::AOnly,
        (false, true, _) => TermClass::BOnly,
        (false, false, true) => TermClass::C,
        (false, false, false) => TermClass::UMinusAbc,
    };
    Ok(EncodedTerm { factor, op, class })
}

/// The hermitian operator `i χ_i χ_j` for `i > j`.
pub fn encode_quadratic_majorana(i: u32, j: u32, n_modes: usize) -> Result<EncodedTerm> {
    if i <= j {
        return Err(Error::InvalidIndex(format!("need i > j, got ({i},{j})")));
    }
    let prod = encode_majorana(i, n_modes)?.mul(&encode_majorana(j, n_modes)?)?;
    let (factor, op) = fold_real(prod, Phase::I);
    let class = if i % 2 == 0 && j == i - 1 {
        TermClass::QuadraticSpecial
    } else {
        TermClass::QuadraticGeneric
    };
    Ok(EncodedTerm { factor, op, class })
}

fn letters_on(n_qubits: usize, z_tail: u64, sites: &[u32], letters: &[Pauli]) -> Result<PauliString> {
    let mut p = PauliString::from_masks(n_qubits, 0, z_tail, Phase::ONE)?;
    for (&s, &letter) in sites.iter().zip(letters) {
        p = p.with(s as usize - 1, letter)?;
    }
    Ok(p)
}

fn sites_ok(sites: &[u32], n: usize) -> Result<()> {
    for (a, &s) in sites.iter().enumerate() {
        if s < 1 || s as usize > n {
            return Err(Error::InvalidIndex(format!("site {s} outside 1..={n}")));
        }
        if sites[..a].contains(&s) {
            return Err(Error::InvalidIndex(format!("repeated site {s} in {sites:?}")));
        }
    }
    Ok(())
}

use Pauli::{X, Y};

/// Real-part letter patterns on `(i, j, k, l)` for `J¹..J⁴`.
const RE_PATTERNS: [[[Pauli; 4]; 2]; 4] = [
    [[X, X, X, X], [Y, Y, Y, Y]],
    [[Y, X, Y, X], [X, Y, X, Y]],
    [[Y, X, X, Y], [X, Y, Y, X]],
    [[X, X, Y, Y], [Y, Y, X, X]],
];

/// Imaginary-part patterns `(plus, minus)` for `J¹..J⁴`.
const IM_PATTERNS: [[[Pauli; 4]; 2]; 4] = [
    [[X, Y, Y, Y], [Y, X, X, X]],
    [[X, X, Y, X], [Y, Y, X, Y]],
    [[X, X, X, Y], [Y, Y, Y, X]],
    [[X, Y, X, X], [Y, X, Y, Y]],
];

/// Spin form of the six type-(i) operators on sites `i > j > k > l`:
/// `Σ J̃_{p;q} c†_{p0} c†_{p1} c_{q0} c_{q1}` over the six orderings, given
/// the grouped values `[J¹, J², J³, J⁴]`. Zero coefficients are omitted.
pub fn encode_complex_quartic(sites: [u32; 4], grouped: [C64; 4], n: usize) -> Result<Vec<EncodedTerm>> {
    let [i, j, k, l] = sites;
    if !(i > j && j > k && k > l) {
        return Err(Error::InvalidIndex(format!("need i > j > k > l, got {sites:?}")));
    }
    sites_ok(&sites, n)?;
    let tail = z_run(l, k - 1) | z_run(j, i - 1);
    let mut out = Vec::with_capacity(16);
    for (a, value) in grouped.iter().enumerate() {
        for (coef, patterns, signs) in
            [(value.re, &RE_PATTERNS[a], [1.0, 1.0]), (value.im, &IM_PATTERNS[a], [1.0, -1.0])]
        {
            if coef == 0.0 {
                continue;
            }
            for (letters, sign) in patterns.iter().zip(signs) {
                out.push(EncodedTerm {
                    factor: -coef * sign / 8.0,
                    op: letters_on(n, tail, &sites, letters)?,
                    class: TermClass::CplxI,
                });
            }
        }
    }
    Ok(out)
}

/// `T n_j c†_i c_k + h.c.` for distinct `i > k` and `j`.
///
/// Expands `-(1/4) (∏ Z between i and k)(Z_j + 1)[Re T (XX + YY) + Im T (XY - YX)]`
/// into two strings per letter pair: one carrying `Z_j` and one without.
pub fn encode_complex_hopping(i: u32, j: u32, k: u32, t: C64, n: usize) -> Result<Vec<EncodedTerm>> {
    if i <= k {
        return Err(Error::InvalidIndex(format!("need i > k, got ({i},{j},{k})")));
    }
    sites_ok(&[i, j, k], n)?;
    let tail = z_run(k, i - 1);
    let z_j = 1u64 << (j - 1);
    let mut out = Vec::with_capacity(8);
    let patterns: [(f64, [Pauli; 2]); 4] = [
        (t.re, [X, X]),
        (t.re, [Y, Y]),
        (t.im, [X, Y]),
        (-t.im, [Y, X]),
    ];
    for (coef, letters) in patterns {
        if coef == 0.0 {
            continue;
        }
        for (dressing, class) in [(z_j, TermClass::CplxIiDressed), (0, TermClass::CplxIiBare)] {
            out.push(EncodedTerm {
                factor: -coef / 4.0,
                op: letters_on(n, tail ^ dressing, &[i, k], &letters)?,
                class,
            });
        }
    }
    Ok(out)
}

/// `4 v n_i n_j = v (1 + Z_i + Z_j + Z_i Z_j)`; returns `(offset, terms)`.
pub fn encode_complex_density(i: u32, j: u32, v: f64, n: usize) -> Result<(f64, Vec<EncodedTerm>)> {
    sites_ok(&[i, j], n)?;
    if v == 0.0 {
        return Ok((0.0, Vec::new()));
    }
    let zi = PauliString::single(n, i as usize - 1, Pauli::Z)?;
    let zj = PauliString::single(n, j as usize - 1, Pauli::Z)?;
    let terms = vec![
        EncodedTerm { factor: v, op: zi, class: TermClass::CplxZ },
        EncodedTerm { factor: v, op: zj, class: TermClass::CplxZ },
        EncodedTerm { factor: v, op: zi.mul(&zj)?, class: TermClass::CplxZz },
    ];
    Ok((v, terms))
}

/// `-μ n_i = -μ/2 - (μ/2) Z_i`; returns `(offset, terms)`.
pub fn encode_chemical_potential(i: u32, mu: f64, n: usize) -> Result<(f64, Vec<EncodedTerm>)> {
    sites_ok(&[i], n)?;
    if mu == 0.0 {
        return Ok((0.0, Vec::new()));
    }
    let z = PauliString::single(n, i as usize - 1, Pauli::Z)?;
    Ok((-mu / 2.0, vec![EncodedTerm { factor: -mu / 2.0, op: z, class: TermClass::CplxZ }]))
}

/// Every term of the complex model with fewer than four distinct sites:
/// hopping terms dressed by a density, density-density terms and the
/// chemical potential. Quartic-derived pieces are multiplied by `scale`;
/// the chemical potential is not.
pub fn encode_complex_quadratic_like(
    grouped: &GroupedComplexCouplings,
    scale: f64,
) -> Result<(f64, Vec<EncodedTerm>)> {
    let n = grouped.n;
    let mut offset = 0.0;
    let mut terms = Vec::new();
    for (&[i, j, k], &t) in &grouped.triples {
        terms.extend(encode_complex_hopping(i, j, k, t * scale, n)?);
    }
    for (&[i, j], &v) in &grouped.pairs {
        let (o, ts) = encode_complex_density(i, j, v * scale, n)?;
        offset += o;
        terms.extend(ts);
    }
    for site in 1..=n as u32 {
        let (o, ts) = encode_chemical_potential(site, grouped.mu, n)?;
        offset += o;
        terms.extend(ts);
    }
    Ok((offset, terms))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinTerm {
    pub coefficient: f64,
    pub op: PauliString,
    pub class: TermClass,
}

/// `offset · I + Σ coefficient · op` with phase-`+1` strings, sorted by
/// `(z_mask, x_mask)` and free of duplicates and zero coefficients once
/// [`SpinHamiltonian::finalize`] has run.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinHamiltonian {
    pub n_qubits: usize,
    pub offset: f64,
    pub variant: Option<Variant>,
    pub seed: Option<u64>,
    terms: Vec<SpinTerm>,
}

impl SpinHamiltonian {
    pub fn new(n_qubits: usize) -> SpinHamiltonian {
        SpinHamiltonian { n_qubits, offset: 0.0, variant: None, seed: None, terms: Vec::new() }
    }

    /// Build from `(coefficient, op)` pairs; signs of `±1` phases are folded.
    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = (f64, PauliString)>) -> Result<SpinHamiltonian> {
        let mut h = SpinHamiltonian::new(n_qubits);
        for (c, op) in terms {
            h.push(c, op, TermClass::Custom)?;
        }
        h.finalize();
        Ok(h)
    }

    /// Append `coefficient · op`. Identity strings go to the offset.
    pub fn push(&mut self, coefficient: f64, op: PauliString, class: TermClass) -> Result<()> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: op.n_qubits() });
        }
        let sign = op
            .phase()
            .real_sign()
            .ok_or_else(|| Error::UnsupportedShape(format!("non-hermitian string {op}")))?;
        if op.is_identity() {
            self.offset += sign * coefficient;
        } else {
            self.terms.push(SpinTerm { coefficient: sign * coefficient, op: op.unsigned(), class });
        }
        Ok(())
    }

    /// Sort, merge equal strings by exact addition and drop exact zeros.
    /// Merged terms keep the class of the first occurrence in sorted order.
    pub fn finalize(&mut self) {
        self.terms.sort_by_key(|t| (t.op.order_key(), t.class));
        let mut merged: Vec<SpinTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.op == t.op => last.coefficient += t.coefficient,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coefficient != 0.0);
        self.terms = merged;
    }

    pub fn terms(&self) -> &[SpinTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn class_counts(&self) -> BTreeMap<TermClass, usize> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.class).or_insert(0) += 1;
        }
        out
    }

    /// `Σ |c|`, an upper bound on the operator norm of the traceless part.
    pub fn one_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// Dense matrix of `Σ c · op`, without the offset.
    pub fn to_matrix(&self) -> Result<Matrix> {
        crate::linalg::check_dense_cap(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let mut m = Matrix::zeros(dim, dim);
        for t in &self.terms {
            let (flip, zi, base) = t.op.action();
            let base = base * t.coefficient;
            for c in 0..dim {
                let sign = if (c & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                m[(c ^ flip, c)] += base * sign;
            }
        }
        Ok(m)
    }

    /// Dense matrix including `offset · I`.
    pub fn to_matrix_with_offset(&self) -> Result<Matrix> {
        let mut m = self.to_matrix()?;
        for d in 0..m.nrows() {
            m[(d, d)] += C64::new(self.offset, 0.0);
        }
        Ok(m)
    }

    /// `H ψ` without the offset, applied term by term.
    pub fn apply(&self, amps: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); amps.len()];
        for t in &self.terms {
            let (flip, zi, base) = t.op.action();
            let base = base * t.coefficient;
            for (c, a) in amps.iter().enumerate() {
                let sign = if (c & zi).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                out[c ^ flip] += a * base * sign;
            }
        }
        out
    }

    /// Text form: `#`-prefixed header lines, then `coefficient letters class`
    /// per term. Floats use the shortest representation that round-trips.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# n_qubits {}\n", self.n_qubits));
        s.push_str(&format!("# offset {:?}\n", self.offset));
        if let Some(v) = self.variant {
            s.push_str(&format!("# variant {v}\n"));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!("# seed {seed}\n"));
        }
        for t in &self.terms {
            s.push_str(&format!("{:?} {} {}\n", t.coefficient, t.op.letters(), t.class));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SpinHamiltonian> {
        let mut n_qubits = None;
        let mut offset = 0.0;
        let mut variant = None;
        let mut seed = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |message: String| Error::Parse { line: idx + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let mut parts = header.split_whitespace();
                let (Some(key), Some(value)) = (parts.next(), parts.next()) else {
                    continue;
                };
                match key {
                    "n_qubits" => n_qubits = Some(value.parse().map_err(|_| bad(format!("bad n_qubits {value:?}")))?),
                    "offset" => offset = value.parse().map_err(|_| bad(format!("bad offset {value:?}")))?,
                    "variant" => variant = Some(value.parse().map_err(|e: Error| bad(e.to_string()))?),
                    "seed" => seed = Some(value.parse().map_err(|_| bad(format!("bad seed {value:?}")))?),
                    _ => {}
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let coef: f64 = parts
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| bad("missing coefficient".into()))?;
            let letters = parts.next().ok_or_else(|| bad("missing pauli string".into()))?;
            let op: PauliString = letters.parse().map_err(|e: Error| bad(e.to_string()))?;
            let class = match parts.next() {
                Some(tag) => tag.parse().map_err(|e: Error| bad(e.to_string()))?,
                None => TermClass::Custom,
            };
            terms.push((coef, op, class));
        }
        let n_qubits = n_qubits
            .or_else(|| terms.first().map(|t| t.1.n_qubits()))
            .ok_or_else(|| Error::Parse { line: 0, message: "missing n_qubits header".into() })?;
        let mut h = SpinHamiltonian::new(n_qubits);
        h.offset = offset;
        h.variant = variant;
        h.seed = seed;
        for (c, op, class) in terms {
            h.push(c, op, class)?;
        }
        h.finalize();
        Ok(h)
    }
}

/// Spin Hamiltonian of a coupling realization.
///
/// Majorana: `Σ_{i>j>k>l} (J̃/96) χ_i χ_j χ_k χ_l + Σ_{i>j} A_ij i χ_i χ_j`.
/// Complex: `(2n)^{-3/2} Σ J_{ij;kl} c†_i c†_j c_k c_l - μ Σ n_i`.
pub fn build_spin_hamiltonian(couplings: &Couplings) -> Result<SpinHamiltonian> {
    let mut h = match couplings {
        Couplings::Majorana(m) => build_majorana(m)?,
        Couplings::Complex(c) => build_complex(c)?,
    };
    h.variant = Some(couplings.variant());
    h.seed = Some(couplings.seed());
    h.finalize();
    Ok(h)
}

fn build_majorana(m: &MajoranaCouplings) -> Result<SpinHamiltonian> {
    let mut h = SpinHamiltonian::new(m.n_modes.div_ceil(2));
    for (&[i, j, k, l], &tilde) in &m.quartic {
        let e = encode_quartic_majorana(i, j, k, l, m.n_modes)?;
        h.push(e.factor * tilde / 96.0, e.op, e.class)?;
    }
    if let Some(quad) = &m.quadratic {
        for (&[i, j], &a) in quad {
            let e = encode_quadratic_majorana(i, j, m.n_modes)?;
            h.push(e.factor * a, e.op, e.class)?;
        }
    }
    Ok(h)
}

fn build_complex(c: &ComplexCouplings) -> Result<SpinHamiltonian> {
    let g = (2.0 * c.n as f64).powf(-1.5);
    let grouped = group_complex_couplings(c);
    let mut h = SpinHamiltonian::new(c.n);
    for (&sites, values) in &grouped.quartets {
        for e in encode_complex_quartic(sites, *values, c.n)? {
            h.push(e.factor * g, e.op, e.class)?;
        }
    }
    let (offset, terms) = encode_complex_quadratic_like(&grouped, g)?;
    h.offset += offset;
    for e in terms {
        h.push(e.factor, e.op, e.class)?;
    }
    Ok(h)
}
