use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rng::DisorderRng;
use super::{check_scale, join_key, split_key, Variant};
use crate::error::{Error, Result};

/// One disorder realization of a Majorana SYK model.
///
/// `quartic` maps strictly decreasing `[i, j, k, l]` (1-based) to the
/// symmetrized coupling `J̃ = 4!·J_ijkl`. `quadratic`, when present, maps
/// `[i, j]` with `i > j` to the real coefficient of the hermitian operator
/// `i·χ_i χ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaCouplings {
    pub n_modes: usize,
    pub j: f64,
    pub j_a: Option<f64>,
    pub seed: u64,
    pub quartic: BTreeMap<[u32; 4], f64>,
    pub quadratic: Option<BTreeMap<[u32; 2], f64>>,
}

/// Standard deviation of the base coupling `J_ijkl`: `√6·J·N^{-3/2}`.
pub fn quartic_base_std(n_modes: usize, j: f64) -> f64 {
    6f64.sqrt() * j * (n_modes as f64).powf(-1.5)
}

/// Standard deviation of the quadratic coupling: `J_A / (2√N)`.
pub fn quadratic_std(n_modes: usize, j_a: f64) -> f64 {
    j_a / (2.0 * (n_modes as f64).sqrt())
}

/// Draw a realization. Keys are visited in ascending order, quartic first,
/// one Gaussian per key.
pub fn sample_majorana(
    n_modes: usize,
    j: f64,
    seed: u64,
    include_quadratic: bool,
    j_a: f64,
) -> Result<MajoranaCouplings> {
    if n_modes < 4 || n_modes % 2 != 0 {
        return Err(Error::InvalidModel(format!(
            "Majorana mode count must be even and at least 4, got {n_modes}"
        )));
    }
    check_scale("J", j)?;
    if include_quadratic {
        check_scale("J_A", j_a)?;
    }
    let mut rng = DisorderRng::new(seed);
    let base_std = quartic_base_std(n_modes, j);
    let mut quartic = BTreeMap::new();
    for key in quartic_keys(n_modes) {
        quartic.insert(key, 24.0 * rng.gaussian(base_std));
    }
    let quadratic = include_quadratic.then(|| {
        let std = quadratic_std(n_modes, j_a);
        quadratic_keys(n_modes).map(|key| (key, rng.gaussian(std))).collect()
    });
    Ok(MajoranaCouplings {
        n_modes,
        j,
        j_a: include_quadratic.then_some(j_a),
        seed,
        quartic,
        quadratic,
    })
}

/// Strictly decreasing 4-tuples over `1..=n_modes`, ascending lexicographic.
pub fn quartic_keys(n_modes: usize) -> impl Iterator<Item = [u32; 4]> {
    let n = n_modes as u32;
    (4..=n).flat_map(move |i| {
        (3..i).flat_map(move |j| (2..j).flat_map(move |k| (1..k).map(move |l| [i, j, k, l])))
    })
}

pub fn quadratic_keys(n_modes: usize) -> impl Iterator<Item = [u32; 2]> {
    let n = n_modes as u32;
    (2..=n).flat_map(|i| (1..i).map(move |j| [i, j]))
}

impl MajoranaCouplings {
    pub fn variant(&self) -> Variant {
        if self.quadratic.is_some() {
            Variant::Majorana2
        } else {
            Variant::Majorana1
        }
    }

    /// Number of complex fermions / qubits, `N / 2`.
    pub fn n(&self) -> usize {
        self.n_modes / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_modes < 4 || self.n_modes % 2 != 0 {
            return Err(Error::InvalidModel(format!("bad mode count {}", self.n_modes)));
        }
        let n = self.n_modes as u32;
        for key in self.quartic.keys() {
            if !(key[0] <= n && key.windows(2).all(|w| w[0] > w[1]) && key[3] >= 1) {
                return Err(Error::InvalidIndex(format!("quartic key {key:?}")));
            }
        }
        if self.quartic.len() != binomial(self.n_modes, 4) {
            return Err(Error::InvalidModel(format!(
                "expected {} quartic couplings, found {}",
                binomial(self.n_modes, 4),
                self.quartic.len()
            )));
        }
        if let Some(quad) = &self.quadratic {
            for key in quad.keys() {
                if !(key[0] <= n && key[0] > key[1] && key[1] >= 1) {
                    return Err(Error::InvalidIndex(format!("quadratic key {key:?}")));
                }
            }
            if quad.len() != binomial(self.n_modes, 2) {
                return Err(Error::InvalidModel("incomplete quadratic couplings".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = MajoranaFile {
            variant: self.variant(),
            n_modes: self.n_modes,
            j: self.j,
            j_a: self.j_a,
            seed: self.seed,
            quartic: self.quartic.iter().map(|(k, v)| (join_key(k), *v)).collect(),
            quadratic: self
                .quadratic
                .as_ref()
                .map(|q| q.iter().map(|(k, v)| (join_key(k), *v)).collect()),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<MajoranaCouplings> {
        let file: MajoranaFile = serde_json::from_str(text)?;
        let quartic = file
            .quartic
            .iter()
            .map(|(k, v)| Ok((split_key::<4>(k)?, *v)))
            .collect::<Result<_>>()?;
        let quadratic = file
            .quadratic
            .map(|q| q.iter().map(|(k, v)| Ok((split_key::<2>(k)?, *v))).collect::<Result<_>>())
            .transpose()?;
        let out = MajoranaCouplings {
            n_modes: file.n_modes,
            j: file.j,
            j_a: file.j_a,
            seed: file.seed,
            quartic,
            quadratic,
        };
        out.validate()?;
        if out.variant() != file.variant {
            return Err(Error::InvalidModel("variant does not match coupling content".into()));
        }
        Ok(out)
    }
}

// serde_json writes the shortest decimal that round-trips, so values survive
// a write/read cycle bit for bit.
#[derive(Serialize, Deserialize)]
struct MajoranaFile {
    variant: Variant,
    #[serde(rename = "N")]
    n_modes: usize,
    #[serde(rename = "J")]
    j: f64,
    #[serde(rename = "J_A", default, skip_serializing_if = "Option::is_none")]
    j_a: Option<f64>,
    seed: u64,
    quartic: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadratic: Option<BTreeMap<String, f64>>,
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
