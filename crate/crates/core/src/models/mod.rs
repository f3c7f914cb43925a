//! Disorder realizations for the four SYK variants.
//!
//! * `majorana1`: quartic Majorana couplings only.
//! * `majorana2`: quartic plus independent quadratic couplings.
//! * `complex1`: spinless complex fermions with complex couplings and a
//!   chemical potential.
//! * `complex2`: the same with purely real couplings.
//!
//! Fermion-mode indices are 1-based in every public map.

mod complex;
pub mod counts;
mod majorana;
pub mod rng;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use complex::{
    group_complex_couplings, sample_complex, ComplexCouplings, GroupedComplexCouplings, PairKey,
    QuartetKey,
};
pub use majorana::{sample_majorana, MajoranaCouplings};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Quartic Majorana interactions only.
    Majorana1,
    /// Quartic plus quadratic Majorana interactions.
    Majorana2,
    /// Complex fermions, complex couplings.
    Complex1,
    /// Complex fermions, real couplings.
    Complex2,
}

impl Variant {
    pub const ALL: [Variant; 4] =
        [Variant::Majorana1, Variant::Majorana2, Variant::Complex1, Variant::Complex2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Majorana1 => "majorana1",
            Variant::Majorana2 => "majorana2",
            Variant::Complex1 => "complex1",
            Variant::Complex2 => "complex2",
        }
    }

    pub fn is_majorana(self) -> bool {
        matches!(self, Variant::Majorana1 | Variant::Majorana2)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant, Error> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidModel(format!("unknown variant {s:?}")))
    }
}

/// Either realization; what the encoder consumes.
#[derive(Clone, Debug, PartialEq)]
pub enum Couplings {
    Majorana(MajoranaCouplings),
    Complex(ComplexCouplings),
}

impl Couplings {
    pub fn variant(&self) -> Variant {
        match self {
            Couplings::Majorana(m) => m.variant(),
            Couplings::Complex(c) => c.variant(),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Couplings::Majorana(m) => m.seed,
            Couplings::Complex(c) => c.seed,
        }
    }

    /// Complex-fermion count `n` (Majorana models use `N = 2n`).
    pub fn n(&self) -> usize {
        match self {
            Couplings::Majorana(m) => m.n_modes / 2,
            Couplings::Complex(c) => c.n,
        }
    }

    pub fn to_json(&self) -> Result<String, Error> {
        match self {
            Couplings::Majorana(m) => m.to_json(),
            Couplings::Complex(c) => c.to_json(),
        }
    }

    pub fn from_json(text: &str) -> Result<Couplings, Error> {
        let probe: serde_json::Value = serde_json::from_str(text)?;
        let variant: Variant = serde_json::from_value(
            probe.get("variant").cloned().unwrap_or(serde_json::Value::Null),
        )?;
        if variant.is_majorana() {
            Ok(Couplings::Majorana(MajoranaCouplings::from_json(text)?))
        } else {
            Ok(Couplings::Complex(ComplexCouplings::from_json(text)?))
        }
    }
}

impl From<MajoranaCouplings> for Couplings {
    fn from(m: MajoranaCouplings) -> Self {
        Couplings::Majorana(m)
    }
}

impl From<ComplexCouplings> for Couplings {
    fn from(c: ComplexCouplings) -> Self {
        Couplings::Complex(c)
    }
}

fn check_scale(name: &str, value: f64) -> Result<(), Error> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidModel(format!("{name} must be positive and finite, got {value}")));
    }
    Ok(())
}

fn join_key(key: &[u32]) -> String {
    key.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn split_key<const K: usize>(s: &str) -> Result<[u32; K], Error> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidIndex(format!("bad key {s:?}")))?;
    parts.try_into().map_err(|_| Error::InvalidIndex(format!("key {s:?} must have {K} indices")))
}
