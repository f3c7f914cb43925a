//! Closed-form term counts and brute-force enumeration of the same classes.
//!
//! Every closed form is a polynomial in the complex-fermion count `n` with
//! rational coefficients. [`Poly`] keeps them as integers over a common
//! denominator so evaluation is exact and integrality can be asserted.
//!
//! Enumeration works on two levels. Fermionic classes are counted by walking
//! the index tuples directly. Spin classes are counted by encoding a generic
//! realization and tallying the emitted Pauli strings by [`TermClass`].

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ComplexCouplings, Couplings, MajoranaCouplings, Variant};
use crate::encoding::{build_spin_hamiltonian, tilde_index, TermClass};
use crate::linalg::C64;

/// `(c4 n⁴ + c3 n³ + c2 n² + c1 n + c0) / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poly {
    pub den: i128,
    /// Highest degree first.
    pub coeffs: [i128; 5],
}

impl Poly {
    pub const fn new(den: i128, coeffs: [i128; 5]) -> Poly {
        Poly { den, coeffs }
    }

    pub const ZERO: Poly = Poly::new(1, [0, 0, 0, 0, 0]);

    /// Exact value at `n`. Panics if the result is not an integer, which
    /// would mean the closed form itself is wrong.
    pub fn eval(&self, n: u64) -> i128 {
        let n = n as i128;
        let num = self.coeffs.iter().fold(0i128, |acc, &c| acc * n + c);
        assert!(num % self.den == 0, "{self} is not integral at n = {n}");
        num / self.den
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = 4 - idx;
            let g = gcd(c.abs(), self.den);
            let (num, den) = (c.abs() / g, self.den / g);
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
            match power {
                0 => write!(f, "{coef}")?,
                _ => {
                    if coef != "1" {
                        write!(f, "{coef} ")?;
                    }
                    f.write_str("n")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

pub mod poly {
    use super::Poly;

    /// `C(2n, 4)`.
    pub const MAJ_QUARTIC: Poly = Poly::new(6, [4, -12, 11, -3, 0]);
    /// `C(2n, 2)`.
    pub const MAJ_QUADRATIC: Poly = Poly::new(1, [0, 0, 2, -1, 0]);
    pub const MAJ_SET_A: Poly = Poly::new(6, [0, 4, -9, 5, 0]);
    pub const MAJ_SET_B: Poly = MAJ_SET_A;
    /// `C(n, 2)`.
    pub const PAIRS: Poly = Poly::new(2, [0, 0, 1, -1, 0]);
    pub const MAJ_SET_C: Poly = Poly::new(3, [0, 2, -6, 4, 0]);

    /// `16·C(n, 4)`.
    pub const SIXTEEN_QUARTETS: Poly = Poly::new(3, [2, -12, 22, -12, 0]);
    /// `8·C(n, 4)`.
    pub const EIGHT_QUARTETS: Poly = Poly::new(3, [1, -6, 11, -6, 0]);
    pub const MAJ_SPIN_A_ONLY: Poly = MAJ_SET_C;
    pub const MAJ_SPIN_B_ONLY: Poly = MAJ_SET_C;
    pub const MAJ_SPIN_C: Poly = MAJ_SET_C;
    pub const MAJ_SPIN_AB_SINGLE: Poly = Poly::new(3, [0, 4, -12, 8, 0]);
    pub const TWO_PAIRS_ORDERED: Poly = Poly::new(1, [0, 0, 2, -2, 0]);
    pub const ORDERED_PAIRS: Poly = Poly::new(1, [0, 0, 1, -1, 0]);
    pub const SITES: Poly = Poly::new(1, [0, 0, 0, 1, 0]);

    /// `6·C(n, 4)`.
    pub const CPLX_TYPE_I: Poly = Poly::new(4, [1, -6, 11, -6, 0]);
    /// `n (n−1) (n−2)`.
    pub const CPLX_TYPE_II: Poly = Poly::new(1, [0, 1, -3, 2, 0]);
    /// `C(n, 2)²`.
    pub const CPLX_TOTAL: Poly = Poly::new(4, [1, -2, 1, 0, 0]);
    /// `3·C(n, 4)`.
    pub const CPLX_TYPE_I_PAIRS: Poly = Poly::new(8, [1, -6, 11, -6, 0]);
    pub const CPLX_TYPE_II_PAIRS: Poly = Poly::new(2, [0, 1, -3, 2, 0]);
    pub const CPLX_SPIN_II: Poly = Poly::new(1, [0, 2, -6, 4, 0]);
}

/// Source table of a count row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CountTable {
    /// Fermionic term counts quoted alongside each model definition.
    MainText,
    MajoranaFermionic,
    MajoranaSpin,
    ComplexFermionic,
    ComplexSpin,
    /// Independent spin interactions per model, by gate shape.
    GateShapes,
}

impl CountTable {
    pub fn name(self) -> &'static str {
        match self {
            CountTable::MainText => "main_text",
            CountTable::MajoranaFermionic => "majorana_fermionic",
            CountTable::MajoranaSpin => "majorana_spin",
            CountTable::ComplexFermionic => "complex_fermionic",
            CountTable::ComplexSpin => "complex_spin",
            CountTable::GateShapes => "gate_shapes",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub table: CountTable,
    pub class: &'static str,
    pub polynomial: Poly,
    pub closed_form: i128,
    pub enumerated: i128,
}

impl CountRow {
    pub fn matches(&self) -> bool {
        self.closed_form == self.enumerated
    }
}

/// Gate-shape rows, in table order.
pub const GATE_SHAPES: [&str; 6] = [
    "zz_xxxx",
    "zz_xxz",
    "z_xxz",
    "z_xx",
    "zz_pair",
    "z_single",
];

/// Closed form for one gate-shape row and model.
pub fn gate_shape_poly(variant: Variant, row: usize) -> Poly {
    use poly::*;
    use Variant::*;
    match (row, variant) {
        (0, Complex2) => EIGHT_QUARTETS,
        (0, _) => SIXTEEN_QUARTETS,
        (1, Majorana1 | Majorana2) => MAJ_SPIN_C,
        (1, _) => Poly::ZERO,
        (2, Majorana1 | Majorana2) => MAJ_SPIN_AB_SINGLE,
        (2, Complex1) => CPLX_SPIN_II,
        (2, Complex2) => CPLX_TYPE_II,
        (3, Majorana1) => Poly::ZERO,
        (3, Complex2) => ORDERED_PAIRS,
        (3, _) => TWO_PAIRS_ORDERED,
        (4, _) => PAIRS,
        (5, Majorana1) => Poly::ZERO,
        (5, _) => SITES,
        _ => panic!("gate-shape row {row} out of range"),
    }
}

/// Which gate-shape row a spin term class falls into.
pub fn gate_shape_of(class: TermClass) -> Option<usize> {
    match class {
        TermClass::UMinusAbc | TermClass::CplxI => Some(0),
        TermClass::C => Some(1),
        TermClass::AOnly | TermClass::BOnly | TermClass::CplxIiDressed => Some(2),
        TermClass::QuadraticGeneric | TermClass::CplxIiBare => Some(3),
        TermClass::ACapB | TermClass::CplxZz => Some(4),
        TermClass::QuadraticSpecial | TermClass::CplxZ => Some(5),
        TermClass::Custom => None,
    }
}

/// All count rows for `variant` at `n` complex modes (`N = 2n` Majorana
/// modes), with closed form and enumeration side by side.
pub fn count_terms(variant: Variant, n: usize) -> Vec<CountRow> {
    assert!(n >= 1, "count_terms needs n >= 1");
    let mut rows = Vec::new();
    let mut push = |table, class, polynomial: Poly, enumerated: usize| {
        rows.push(CountRow {
            table,
            class,
            polynomial,
            closed_form: polynomial.eval(n as u64),
            enumerated: enumerated as i128,
        });
    };
    let spin = enumerate_spin_classes(variant, n);
    let spin_count = |c: TermClass| spin.get(&c).copied().unwrap_or(0);

    if variant.is_majorana() {
        let f = enumerate_majorana_fermionic(n);
        push(CountTable::MainText, "quartic", poly::MAJ_QUARTIC, f.quartic);
        if variant == Variant::Majorana2 {
            push(CountTable::MainText, "quadratic", poly::MAJ_QUADRATIC, f.quadratic);
        }
        push(CountTable::MajoranaFermionic, "U", poly::MAJ_QUARTIC, f.quartic);
        push(CountTable::MajoranaFermionic, "A", poly::MAJ_SET_A, f.a);
        push(CountTable::MajoranaFermionic, "B", poly::MAJ_SET_B, f.b);
        push(CountTable::MajoranaFermionic, "A_cap_B", poly::PAIRS, f.ab);
        push(CountTable::MajoranaFermionic, "C", poly::MAJ_SET_C, f.c);
        for (class, p) in [
            (TermClass::UMinusAbc, poly::SIXTEEN_QUARTETS),
            (TermClass::AOnly, poly::MAJ_SPIN_A_ONLY),
            (TermClass::BOnly, poly::MAJ_SPIN_B_ONLY),
            (TermClass::ACapB, poly::PAIRS),
            (TermClass::C, poly::MAJ_SPIN_C),
        ] {
            push(CountTable::MajoranaSpin, class.tag(), p, spin_count(class));
        }
        if variant == Variant::Majorana2 {
            push(
                CountTable::MajoranaSpin,
                TermClass::QuadraticGeneric.tag(),
                poly::TWO_PAIRS_ORDERED,
                spin_count(TermClass::QuadraticGeneric),
            );
            push(
                CountTable::MajoranaSpin,
                TermClass::QuadraticSpecial.tag(),
                poly::SITES,
                spin_count(TermClass::QuadraticSpecial),
            );
        }
    } else {
        let f = enumerate_complex_fermionic(n);
        push(CountTable::MainText, "total", poly::CPLX_TOTAL, f.total);
        push(CountTable::MainText, "i", poly::CPLX_TYPE_I, f.type_i);
        push(CountTable::MainText, "ii", poly::CPLX_TYPE_II, f.type_ii);
        push(CountTable::MainText, "iii", poly::PAIRS, f.type_iii);
        push(CountTable::MainText, "iv", poly::SITES, n);
        push(CountTable::ComplexFermionic, "i_pairs", poly::CPLX_TYPE_I_PAIRS, f.type_i_pairs);
        push(CountTable::ComplexFermionic, "ii_pairs", poly::CPLX_TYPE_II_PAIRS, f.type_ii_pairs);
        push(CountTable::ComplexFermionic, "n_n", poly::PAIRS, f.type_iii);
        if variant == Variant::Complex1 {
            push(CountTable::ComplexSpin, "i", poly::SIXTEEN_QUARTETS, spin_count(TermClass::CplxI));
            push(
                CountTable::ComplexSpin,
                "ii",
                poly::CPLX_SPIN_II,
                spin_count(TermClass::CplxIiDressed),
            );
            push(CountTable::ComplexSpin, "iii", poly::PAIRS, spin_count(TermClass::CplxZz));
        }
    }

    let mut shapes = [0usize; 6];
    for (class, count) in &spin {
        if let Some(row) = gate_shape_of(*class) {
            shapes[row] += count;
        }
    }
    for (row, name) in GATE_SHAPES.iter().enumerate() {
        push(CountTable::GateShapes, name, gate_shape_poly(variant, row), shapes[row]);
    }
    rows
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct MajoranaFermionicCounts {
    pub quartic: usize,
    pub quadratic: usize,
    pub a: usize,
    pub b: usize,
    pub ab: usize,
    pub c: usize,
}

/// Walk every `i > j > k > l` over `1..=2n` and classify by which
/// neighbouring indices share a qubit.
pub fn enumerate_majorana_fermionic(n: usize) -> MajoranaFermionicCounts {
    let big_n = 2 * n as u32;
    let t = |x: u32| tilde_index(x).expect("index >= 1");
    let mut out = MajoranaFermionicCounts::default();
    for i in 1..=big_n {
        for j in 1..i {
            out.quadratic += 1;
            for k in 1..j {
                for l in 1..k {
                    out.quartic += 1;
                    let a = t(i) == t(j);
                    let b = t(k) == t(l);
                    out.a += a as usize;
                    out.b += b as usize;
                    out.ab += (a && b) as usize;
                    out.c += (t(j) == t(k)) as usize;
                }
            }
        }
    }
    out
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct ComplexFermionicCounts {
    pub total: usize,
    pub type_i: usize,
    pub type_ii: usize,
    pub type_iii: usize,
    pub type_i_pairs: usize,
    pub type_ii_pairs: usize,
}

/// Walk every `(i > j, k > l)` and classify by index overlap.
pub fn enumerate_complex_fermionic(n: usize) -> ComplexFermionicCounts {
    let n = n as u32;
    let pairs: Vec<[u32; 2]> = (1..=n).flat_map(|a| (1..a).map(move |b| [a, b])).collect();
    let mut out = ComplexFermionicCounts::default();
    for p in &pairs {
        for q in &pairs {
            out.total += 1;
            let shared = p.iter().filter(|x| q.contains(x)).count();
            let canonical = p < q;
            match shared {
                0 => {
                    out.type_i += 1;
                    out.type_i_pairs += canonical as usize;
                }
                1 => {
                    out.type_ii += 1;
                    out.type_ii_pairs += canonical as usize;
                }
                _ => out.type_iii += 1,
            }
        }
    }
    out
}

/// Encode a realization with generic (almost surely nonzero) couplings and
/// count the emitted Pauli strings per class.
pub fn enumerate_spin_classes(variant: Variant, n: usize) -> BTreeMap<TermClass, usize> {
    let couplings = generic_couplings(variant, n);
    let h = build_spin_hamiltonian(&couplings).expect("generic couplings encode");
    h.class_counts()
}

/// A realization with every coupling set to a distinct value in `[1, 2)`.
/// Unlike [`super::sample_majorana`] this also covers `n = 1`.
fn generic_couplings(variant: Variant, n: usize) -> Couplings {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut draw = || 1.0 + rng.random::<f64>();
    if variant.is_majorana() {
        let n_modes = 2 * n;
        let quartic = super::majorana::quartic_keys(n_modes).map(|k| (k, draw())).collect();
        let quadratic = (variant == Variant::Majorana2)
            .then(|| super::majorana::quadratic_keys(n_modes).map(|k| (k, draw())).collect());
        Couplings::Majorana(MajoranaCouplings {
            n_modes,
            j: 1.0,
            j_a: quadratic.as_ref().map(|_| 1.0),
            seed: 0,
            quartic,
            quadratic,
        })
    } else {
        let real_only = variant == Variant::Complex2;
        let quartic = super::complex::quartet_keys(n)
            .map(|(p, q)| {
                let re = draw();
                let im = if p == q || real_only { 0.0 } else { draw() };
                ((p, q), C64::new(re, im))
            })
            .collect();
        Couplings::Complex(ComplexCouplings { n, j: 1.0, mu: 0.7, seed: 0, real_only, quartic })
    }
}
