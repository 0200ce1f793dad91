//! Fano, klt and Brieskorn–Pham existence tests for Kähler–Einstein metrics
//! on the quotient orbifold of a branched-cover link.
//!
//! Two unrelated inequalities are evaluated and always reported side by side:
//!
//! * the necessary klt inequality
//!   `k(|w| - d) + d < m/(m-1) * min{d, k w_i}` on the base presentation, and
//! * the Brieskorn–Pham sufficiency test
//!   `1 < sum 1/a_i < 1 + m/(m-1) * min_{i,j}{1/a_i, 1/(b_i b_j)}` on the
//!   exponents of the cover, with `C^j = lcm(a_i : i != j)` and
//!   `b_j = gcd(a_j, C^j)`.
//!
//! Neither one implies the other. The genericity condition on perturbations
//! is never checked; every certificate carries it as an assumption flag.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm_many, ratio, Rational};
use crate::error::{usage, Error, Result};
use crate::links::{classify_case, CaseClass, WeightSystem};
use crate::serde_big::rational;

/// Exponent data entering the Brieskorn–Pham test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpData {
    pub exponents: Vec<u64>,
    /// `C^j = lcm(a_i : i != j)`
    pub cofactor_lcms: Vec<u64>,
    /// `b_j = gcd(a_j, C^j)`
    pub gcds: Vec<u64>,
    #[serde(with = "rational")]
    pub reciprocal_sum: Rational,
    /// `1 + m/(m-1) * min_{i,j}{1/a_i, 1/(b_i b_j)}`
    #[serde(with = "rational")]
    pub upper_bound: Rational,
}

/// Which term attains a minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `1/a_i` in the Brieskorn–Pham bound.
    Exponent(usize),
    /// `1/(b_i b_j)` in the Brieskorn–Pham bound.
    GcdPair(usize, usize),
    /// `d` in the klt bound.
    Degree,
    /// `k w_i` in the klt bound.
    Weight(usize),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Exponent(i) => write!(f, "1/a_{i}"),
            Witness::GcdPair(i, j) => write!(f, "1/(b_{i} b_{j})"),
            Witness::Degree => f.write_str("d"),
            Witness::Weight(i) => write!(f, "k*w_{}", i + 1),
        }
    }
}

/// The inequality whose two sides a certificate reports, always read as
/// `left < right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `1 < sum 1/a_i`
    BpLower,
    /// `sum 1/a_i < 1 + m/(m-1) min{...}`
    BpUpper,
    /// `k(|w|-d)+d < m/(m-1) min{d, k w_i}`
    NecessaryKlt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpVerdict {
    pub verdict: bool,
    pub data: BpData,
    pub decisive: Inequality,
    #[serde(with = "rational")]
    pub left_value: Rational,
    #[serde(with = "rational")]
    pub right_bound: Rational,
    pub limiting_witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeCertificate {
    pub fano: bool,
    pub necessary_klt: bool,
    pub bp_applicable: bool,
    pub bp_sufficient: bool,
    pub gc_assumed: bool,
    pub decisive: Inequality,
    #[serde(with = "rational")]
    pub left_value: Rational,
    #[serde(with = "rational")]
    pub right_bound: Rational,
    pub limiting_witness: Witness,
}

/// `k(|w| - d) + d`, the Fano quantity.
fn fano_quantity(k: u64, base: &WeightSystem) -> BigInt {
    let k = BigInt::from(k);
    let d = BigInt::from(base.degree());
    &k * (BigInt::from(base.norm()) - &d) + d
}

pub fn is_fano(k: u64, base: &WeightSystem) -> bool {
    fano_quantity(k, base) > BigInt::from(0)
}

/// Both sides of the necessary klt inequality and the term attaining the min.
pub fn necessary_klt_sides(k: u64, base: &WeightSystem) -> (Rational, Rational, Witness) {
    let m = base.len() as u64;
    let mut min = base.degree();
    let mut witness = Witness::Degree;
    for (i, &w) in base.weights().iter().enumerate() {
        let kw = k * w;
        if kw < min {
            min = kw;
            witness = Witness::Weight(i);
        }
    }
    let left = Rational::from_integer(fano_quantity(k, base));
    let right = ratio(BigInt::from(m) * min, m - 1);
    (left, right, witness)
}

pub fn necessary_klt(k: u64, base: &WeightSystem) -> bool {
    let (left, right, _) = necessary_klt_sides(k, base);
    left < right
}

/// Whether no `k >= 1` satisfies the necessary klt inequality for a base with
/// `|w| > d`.
///
/// Any such `k` needs `(m-1)(k s + d) < m d` with `s = |w| - d`, i.e.
/// `(m-1) k s < d`, so only finitely many `k` have to be inspected. This is
/// true whenever some weight equals 1, but not for every spherical system:
/// `(3,4,6; 12)` satisfies the inequality at `k = 4`.
pub fn spherical_never_klt(base: &WeightSystem) -> Result<bool> {
    if classify_case(base) != CaseClass::Spherical {
        return usage(format!("{base} is not spherical (|w| = {}, d = {})", base.norm(), base.degree()));
    }
    let m = base.len() as u64;
    let s = base.norm() - base.degree();
    let k_max = base.degree().div_ceil((m - 1) * s);
    Ok(!(1..=k_max).any(|k| necessary_klt(k, base)))
}

/// Least `k` with `(m-1) d < m k min w_i`, the Euclidean form of the klt
/// inequality.
pub fn euclidean_k_threshold(base: &WeightSystem) -> Result<u64> {
    if classify_case(base) != CaseClass::Euclidean {
        return usage(format!("{base} is not Euclidean (|w| = {}, d = {})", base.norm(), base.degree()));
    }
    let m = base.len() as u64;
    let w_min = *base.weights().iter().min().expect("nonempty");
    Ok((m - 1) * base.degree() / (m * w_min) + 1)
}

/// Evaluates the Brieskorn–Pham sufficiency test on exponents `a_0..a_m`.
pub fn bp_sufficient_ke(a: &[u64]) -> Result<BpVerdict> {
    if a.len() < 3 {
        return usage(format!("Brieskorn-Pham test needs at least 3 exponents, got {}", a.len()));
    }
    if let Some(&x) = a.iter().find(|&&x| x < 2) {
        return usage(format!("Brieskorn-Pham exponents must be >= 2, got {x}"));
    }
    let n = a.len();
    let m = (n - 1) as u64;
    let mut cofactor_lcms = Vec::with_capacity(n);
    let mut gcds = Vec::with_capacity(n);
    let mut others = Vec::with_capacity(n - 1);
    for j in 0..n {
        others.clear();
        others.extend(a.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
        let c = lcm_many(&others);
        let c = u64::try_from(c).map_err(|_| Error::Resource(format!("lcm of {others:?} exceeds 64 bits")))?;
        cofactor_lcms.push(c);
        gcds.push(a[j].gcd(&c));
    }

    // the smallest reciprocal is the reciprocal of the largest denominator
    let mut largest = 0u128;
    let mut witness = Witness::Exponent(0);
    for (i, &x) in a.iter().enumerate() {
        if u128::from(x) > largest {
            largest = u128::from(x);
            witness = Witness::Exponent(i);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = u128::from(gcds[i]) * u128::from(gcds[j]);
            if p > largest {
                largest = p;
                witness = Witness::GcdPair(i, j);
            }
        }
    }

    let reciprocal_sum: Rational = a.iter().map(|&x| ratio(1, x)).sum();
    let upper_bound = Rational::one() + ratio(m, BigInt::from(m - 1) * BigInt::from(largest));
    let one = Rational::one();
    let lower_ok = one < reciprocal_sum;
    let upper_ok = reciprocal_sum < upper_bound;
    let (decisive, left_value, right_bound) = if lower_ok {
        (Inequality::BpUpper, reciprocal_sum.clone(), upper_bound.clone())
    } else {
        (Inequality::BpLower, one, reciprocal_sum.clone())
    };
    Ok(BpVerdict {
        verdict: lower_ok && upper_ok,
        data: BpData {
            exponents: a.to_vec(),
            cofactor_lcms,
            gcds,
            reciprocal_sum,
            upper_bound,
        },
        decisive,
        left_value,
        right_bound,
        limiting_witness: witness,
    })
}

/// Full certificate for the k-fold cover of `base`. The Brieskorn–Pham test
/// applies when every base weight divides the base degree, with cover
/// exponents `(k, d/w_1, ..., d/w_m)`; otherwise the necessary klt inequality
/// supplies the reported sides.
pub fn certify(k: u64, base: &WeightSystem) -> Result<KeCertificate> {
    if k == 0 {
        return usage("k must be positive");
    }
    let fano = is_fano(k, base);
    let (klt_left, klt_right, klt_witness) = necessary_klt_sides(k, base);
    let necessary_klt = klt_left < klt_right;
    let bp = match base.exponents() {
        Some(mut ex) if k >= 2 => {
            ex.insert(0, k);
            Some(bp_sufficient_ke(&ex)?)
        }
        _ => None,
    };
    Ok(match bp {
        Some(bp) => KeCertificate {
            fano,
            necessary_klt,
            bp_applicable: true,
            bp_sufficient: bp.verdict && fano,
            gc_assumed: true,
            decisive: bp.decisive,
            left_value: bp.left_value,
            right_bound: bp.right_bound,
            limiting_witness: bp.limiting_witness,
        },
        None => KeCertificate {
            fano,
            necessary_klt,
            bp_applicable: false,
            bp_sufficient: false,
            gc_assumed: true,
            decisive: Inequality::NecessaryKlt,
            left_value: klt_left,
            right_bound: klt_right,
            limiting_witness: klt_witness,
        },
    })
}

/// Open interval of `k` for covers of the Fermat hypersurface
/// `z_1^l + ... + z_m^l` with `m+1 <= l <= 2m-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWindow {
    #[serde(with = "rational")]
    pub lower: Rational,
    #[serde(with = "rational")]
    pub upper: Rational,
    /// Integers `k >= 2` in the open interval with `gcd(k, l) = 1`.
    pub solutions: Vec<u64>,
}

/// `(m-1) l^2 / ((m-1) l (l-m) + m) < k < l / (l-m)`.
pub fn hyperbolic_k_window(m: u64, l: u64) -> Result<KWindow> {
    if m < 3 {
        return usage(format!("hyperbolic window needs m >= 3, got {m}"));
    }
    if l < m + 1 || l > 2 * m - 1 {
        return usage(format!(
            "l = {l} outside the admissible range m+1 <= l <= 2m-1 = [{}, {}]",
            m + 1,
            2 * m - 1
        ));
    }
    let lower = ratio((m - 1) * l * l, (m - 1) * l * (l - m) + m);
    let upper = ratio(l, l - m);
    let floor = lower.floor().to_integer();
    let first = u64::try_from(floor + 1).expect("positive bound").max(2);
    let solutions = (first..)
        .take_while(|&k| Rational::from_integer(k.into()) < upper)
        .filter(|k| k.gcd(&l) == 1)
        .collect();
    Ok(KWindow { lower, upper, solutions })
}
