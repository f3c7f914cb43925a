use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rng::DisorderRng;
use super::{check_scale, join_key, split_key, Variant};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// An ordered pair `[a, b]` with `a > b` (1-based sites).
pub type PairKey = [u32; 2];

/// `(p, q)` labels the operator `c†_{p0} c†_{p1} c_{q0} c_{q1}`.
/// Canonical keys satisfy `p <= q`; the key `(q, p)` is its hermitian partner.
pub type QuartetKey = (PairKey, PairKey);

/// One disorder realization of the complex-fermion model.
///
/// `quartic` stores `J̃_{p;q} = 4·J_{p;q}` for canonical keys only; the
/// partner value is `conj(J̃_{p;q})`. Diagonal keys `(p, p)` hold real values.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCouplings {
    pub n: usize,
    pub j: f64,
    pub mu: f64,
    pub seed: u64,
    pub real_only: bool,
    pub quartic: BTreeMap<QuartetKey, C64>,
}

/// Ordered pairs over `1..=n` in ascending lexicographic order.
pub fn pair_keys(n: usize) -> impl Iterator<Item = PairKey> + Clone {
    let n = n as u32;
    (2..=n).flat_map(|a| (1..a).map(move |b| [a, b]))
}

/// Canonical quartet keys `(p, q)` with `p <= q`, ascending.
pub fn quartet_keys(n: usize) -> impl Iterator<Item = QuartetKey> {
    let pairs: Vec<PairKey> = pair_keys(n).collect();
    let pairs2 = pairs.clone();
    pairs
        .into_iter()
        .flat_map(move |p| pairs2.clone().into_iter().filter(move |q| p <= *q).map(move |q| (p, q)))
}

/// Draw a realization.
///
/// Keys are visited in ascending order. Off-diagonal keys draw the real
/// part then the imaginary part, each with standard deviation `J/√2`, or a
/// single real draw with standard deviation `J` when `real_only`. Diagonal
/// keys always draw one real value with standard deviation `J`.
pub fn sample_complex(n: usize, j: f64, mu: f64, seed: u64, real_only: bool) -> Result<ComplexCouplings> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("complex model needs n >= 2, got {n}")));
    }
    if n < 4 {
        log::warn!("n = {n} < 4: the model has no terms with four distinct indices");
    }
    check_scale("J", j)?;
    if !mu.is_finite() {
        return Err(Error::InvalidModel(format!("mu must be finite, got {mu}")));
    }
    let mut rng = DisorderRng::new(seed);
    let half = j / 2f64.sqrt();
    let mut quartic = BTreeMap::new();
    for key in quartet_keys(n) {
        let base = if key.0 == key.1 || real_only {
            C64::new(rng.gaussian(j), 0.0)
        } else {
            let re = rng.gaussian(half);
            let im = rng.gaussian(half);
            C64::new(re, im)
        };
        quartic.insert(key, base * 4.0);
    }
    Ok(ComplexCouplings { n, j, mu, seed, real_only, quartic })
}

impl ComplexCouplings {
    pub fn variant(&self) -> Variant {
        if self.real_only {
            Variant::Complex2
        } else {
            Variant::Complex1
        }
    }

    /// `J̃_{p;q}` for ordered pairs `p`, `q`, using hermiticity for `p > q`.
    pub fn tilde(&self, p: PairKey, q: PairKey) -> C64 {
        if p <= q {
            self.quartic.get(&(p, q)).copied().unwrap_or_default()
        } else {
            self.quartic.get(&(q, p)).copied().unwrap_or_default().conj()
        }
    }

    /// The full antisymmetric tensor `J_{ab;cd}` for arbitrary 1-based
    /// indices: zero when `a == b` or `c == d`, sign flips under swapping
    /// either pair.
    pub fn tensor(&self, a: u32, b: u32, c: u32, d: u32) -> C64 {
        if a == b || c == d {
            return C64::default();
        }
        let (p, sp) = if a > b { ([a, b], 1.0) } else { ([b, a], -1.0) };
        let (q, sq) = if c > d { ([c, d], 1.0) } else { ([d, c], -1.0) };
        self.tilde(p, q) * (sp * sq / 4.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidModel(format!("bad mode count {}", self.n)));
        }
        let n = self.n as u32;
        for (&(p, q), v) in &self.quartic {
            let ok_pair = |k: PairKey| k[0] <= n && k[0] > k[1] && k[1] >= 1;
            if !(ok_pair(p) && ok_pair(q) && p <= q) {
                return Err(Error::InvalidIndex(format!("quartic key {p:?};{q:?}")));
            }
            if (p == q || self.real_only) && v.im != 0.0 {
                return Err(Error::InvalidModel(format!(
                    "coupling {p:?};{q:?} must be real, got {v}"
                )));
            }
        }
        let pairs = self.n * (self.n - 1) / 2;
        if self.quartic.len() != pairs * (pairs + 1) / 2 {
            return Err(Error::InvalidModel(format!(
                "expected {} canonical couplings, found {}",
                pairs * (pairs + 1) / 2,
                self.quartic.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ComplexFile {
            variant: self.variant(),
            n: self.n,
            j: self.j,
            mu: self.mu,
            seed: self.seed,
            quartic: self
                .quartic
                .iter()
                .map(|(&(p, q), v)| (join_key(&[p[0], p[1], q[0], q[1]]), [v.re, v.im]))
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<ComplexCouplings> {
        let file: ComplexFile = serde_json::from_str(text)?;
        let quartic = file
            .quartic
            .iter()
            .map(|(k, v)| {
                let [a, b, c, d] = split_key::<4>(k)?;
                Ok((([a, b], [c, d]), C64::new(v[0], v[1])))
            })
            .collect::<Result<_>>()?;
        let out = ComplexCouplings {
            n: file.n,
            j: file.j,
            mu: file.mu,
            seed: file.seed,
            real_only: file.variant == Variant::Complex2,
            quartic,
        };
        if file.variant.is_majorana() {
            return Err(Error::InvalidModel("not a complex-fermion realization".into()));
        }
        out.validate()?;
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    variant: Variant,
    n: usize,
    #[serde(rename = "J")]
    j: f64,
    mu: f64,
    seed: u64,
    quartic: BTreeMap<String, [f64; 2]>,
}

/// Coupling combinations consumed by the complex-model spin encoder.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupedComplexCouplings {
    pub n: usize,
    pub mu: f64,
    /// `[i, j, k, l]` with `i > j > k > l` to `[J¹, J², J³, J⁴]`.
    pub quartets: BTreeMap<[u32; 4], [C64; 4]>,
    /// `[i, j, k]` with `i > k` and `j ∉ {i, k}` to `4·J_{ij;jk}`, the
    /// coefficient of `n_j c†_i c_k` (its partner is the conjugate).
    pub triples: BTreeMap<[u32; 3], C64>,
    /// `[i, j]` with `i > j` to the real `J_{ij;ji}`; the model contains
    /// `4·J_{ij;ji}·n_i n_j`.
    pub pairs: BTreeMap<[u32; 2], f64>,
}

pub fn group_complex_couplings(c: &ComplexCouplings) -> GroupedComplexCouplings {
    let n = c.n as u32;
    let mut quartets = BTreeMap::new();
    for i in 4..=n {
        for j in 3..i {
            for k in 2..j {
                for l in 1..k {
                    let a = c.tilde([i, j], [k, l]);
                    let b = c.tilde([i, k], [j, l]);
                    let d = c.tilde([i, l], [j, k]);
                    let j2 = a - b + d;
                    let j3 = a + b - d;
                    let j4 = -a + b + d;
                    // J¹ is formed from the other three so the linear relation
                    // between them holds bit for bit
                    quartets.insert([i, j, k, l], [j2 + j3 + j4, j2, j3, j4]);
                }
            }
        }
    }
    let mut triples = BTreeMap::new();
    for i in 1..=n {
        for k in 1..i {
            for j in 1..=n {
                if j != i && j != k {
                    triples.insert([i, j, k], c.tensor(i, j, j, k) * 4.0);
                }
            }
        }
    }
    let mut pairs = BTreeMap::new();
    for i in 2..=n {
        for j in 1..i {
            pairs.insert([i, j], c.tensor(i, j, j, i).re);
        }
    }
    GroupedComplexCouplings { n: c.n, mu: c.mu, quartets, triples, pairs }
}
