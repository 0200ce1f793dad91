//! Weight systems, the branched-cover construction `z_0^k + f = 0`, and the
//! combinatorial quasi-smoothness filter.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{reduced_fraction, representable};
use crate::error::{integrity, usage, Error, Result};

/// Weights `w_1..w_m` and degree `d` of a weighted homogeneous hypersurface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeightSystem")]
pub struct WeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

#[derive(Deserialize)]
struct RawWeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

impl TryFrom<RawWeightSystem> for WeightSystem {
    type Error = Error;

    fn try_from(raw: RawWeightSystem) -> Result<Self> {
        WeightSystem::new(raw.weights, raw.degree)
    }
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degree: u64) -> Result<Self> {
        if weights.len() < 2 {
            return usage(format!("a weight system needs at least 2 weights, got {}", weights.len()));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return usage(format!("weights must be positive (weight {} is 0)", i + 1));
        }
        if degree == 0 {
            return usage("degree must be positive");
        }
        Ok(Self { weights, degree })
    }

    /// `m` ones in degree `d`: the Fermat hypersurface `z_1^d + ... + z_m^d`.
    pub fn fermat(m: usize, degree: u64) -> Result<Self> {
        Self::new(vec![1; m], degree)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Number of variables `m`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `|w| = sum w_i`.
    pub fn norm(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Same system with weights sorted ascending.
    pub fn canonical(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.sort();
        Self { weights, degree: self.degree }
    }

    pub fn is_canonical(&self) -> bool {
        self.weights.windows(2).all(|p| p[0] <= p[1])
    }

    /// The coprime pairs `(u_i, v_i)` with `u_i / v_i = d / w_i`.
    pub fn reduced_ratios(&self) -> Vec<(u64, u64)> {
        self.weights
            .iter()
            .map(|&w| reduced_fraction(self.degree, w).expect("validated positive"))
            .collect()
    }

    /// `d / w_i` for every weight, when every weight divides the degree.
    pub fn exponents(&self) -> Option<Vec<u64>> {
        self.weights
            .iter()
            .map(|&w| self.degree.is_multiple_of(w).then(|| self.degree / w))
            .collect()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "({}; {})", ws.join(","), self.degree)
    }
}

/// Parses `w1,w2,...,wm;d`.
impl FromStr for WeightSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ws, d) = s
            .split_once(';')
            .ok_or_else(|| Error::Usage(format!("expected `w1,...,wm;d`, got `{s}`")))?;
        let weights = parse_int_list(ws)?;
        let degree = d
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Usage(format!("invalid degree `{}`", d.trim())))?;
        Self::new(weights, degree)
    }
}

/// Parses a comma-separated list of non-negative integers.
pub fn parse_int_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Usage(format!("invalid integer `{t}`")))
        })
        .collect()
}

/// Sign class of `|w| - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseClass::Spherical => "spherical",
            CaseClass::Euclidean => "euclidean",
            CaseClass::Hyperbolic => "hyperbolic",
        })
    }
}

pub fn classify_case(ws: &WeightSystem) -> CaseClass {
    match ws.norm().cmp(&ws.degree()) {
        Ordering::Greater => CaseClass::Spherical,
        Ordering::Equal => CaseClass::Euclidean,
        Ordering::Less => CaseClass::Hyperbolic,
    }
}

/// The link of `z_0^k + f = 0` for a base `f` of the given weight system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverData {
    pub k: u64,
    pub base: WeightSystem,
    pub cover: WeightSystem,
    /// Brieskorn–Pham exponents `(k, d/w_1, ..., d/w_m)`, present when every
    /// base weight divides the base degree.
    pub bp_exponents: Option<Vec<u64>>,
    /// `gcd(k, d) > 1`: representable, but not in the reduced presentation.
    pub needs_normalization: bool,
}

pub fn branched_cover(k: u64, base: &WeightSystem) -> Result<CoverData> {
    if k < 2 {
        return usage(format!("branched covers need k >= 2, got k = {k}"));
    }
    let d = base.degree();
    let g = k.gcd(&d);
    let mut weights = Vec::with_capacity(base.len() + 1);
    weights.push(d / g);
    weights.extend(base.weights().iter().map(|&w| (k / g) * w));
    let cover = WeightSystem::new(weights, k.lcm(&d))?;
    let bp_exponents = base.exponents().map(|mut ex| {
        ex.insert(0, k);
        ex
    });
    Ok(CoverData {
        k,
        base: base.clone(),
        cover,
        bp_exponents,
        needs_normalization: g > 1,
    })
}

/// Combinatorial quasi-smoothness test for a general member of the linear
/// system: for every nonempty index set `I`, either a degree-`d` monomial
/// lives in the `I`-variables alone, or there are `|I|` degree-`d` monomials
/// `z_I^M * z_j` with pairwise distinct `j` outside `I`.
pub fn quasi_smooth_generic(ws: &WeightSystem) -> bool {
    let m = ws.len();
    let d = ws.degree();
    let w = ws.weights();
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    // small subsets fail fastest
    masks.sort_by_key(|mask| mask.count_ones());
    let mut inside = Vec::with_capacity(m);
    masks.into_iter().all(|mask| {
        inside.clear();
        inside.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| w[i]));
        if representable(&inside, d) {
            return true;
        }
        let needed = inside.len();
        let outside = (0..m).filter(|j| mask >> j & 1 == 0);
        let mut found = 0;
        for j in outside {
            if w[j] <= d && representable(&inside, d - w[j]) {
                found += 1;
                if found == needed {
                    return true;
                }
            }
        }
        false
    })
}

/// `gcd(k, u_i) = 1` for every reduced ratio `u_i / v_i = d / w_i`.
pub fn torsion_hypothesis(k: u64, ws: &WeightSystem) -> bool {
    first_torsion_obstruction(k, ws).is_none()
}

/// Index and value of the first `u_i` sharing a factor with `k`.
pub fn first_torsion_obstruction(k: u64, ws: &WeightSystem) -> Option<(usize, u64)> {
    ws.reduced_ratios()
        .into_iter()
        .enumerate()
        .find(|(_, (u, _))| k.gcd(u) != 1)
        .map(|(i, (u, _))| (i, u))
}

pub(crate) fn require_torsion_hypothesis(k: u64, ws: &WeightSystem) -> Result<()> {
    match first_torsion_obstruction(k, ws) {
        None => Ok(()),
        Some((i, u)) => usage(format!(
            "torsion hypothesis fails for k = {k} on {ws}: gcd(k, u_{}) = gcd({k}, {u}) = {}",
            i + 1,
            k.gcd(&u)
        )),
    }
}

/// Removes any common factor of `k` and `d` from the presentation. Under the
/// torsion hypothesis such a factor divides every weight, so dividing it out
/// gives an equivalent link with `gcd(k, d') = 1`.
pub fn normalize_cover(k: u64, base: &WeightSystem) -> Result<(u64, WeightSystem)> {
    if k < 2 {
        return usage(format!("branched covers need k >= 2, got k = {k}"));
    }
    require_torsion_hypothesis(k, base)?;
    let mut current = base.clone();
    loop {
        let g = k.gcd(&current.degree());
        if g == 1 {
            return Ok((k, current));
        }
        if let Some(w) = current.weights().iter().find(|&&w| w % g != 0) {
            return integrity(format!(
                "common factor {g} of k and d does not divide weight {w} of {current}"
            ));
        }
        current = WeightSystem::new(
            current.weights().iter().map(|&w| w / g).collect(),
            current.degree() / g,
        )?;
    }
}
