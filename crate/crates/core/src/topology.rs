//! Betti numbers, torsion orders and the curve genus of weighted homogeneous
//! links.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{lcm_many, FactoredPower, Rational};
use crate::error::{integrity, usage, Error, Result};
use crate::links::{require_torsion_hypothesis, WeightSystem};

/// Order `k^b` of the middle homology of a branched-cover link, kept factored.
pub type TorsionOrder = FactoredPower;

/// Default cap on the number of tuples [`betti_bp_oracle`] will enumerate.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Middle Betti number `b_{m-2}` of the link of a quasi-smooth weighted
/// homogeneous polynomial, by the Milnor–Orlik subset sum
///
/// `sum_I (-1)^{m-|I|} prod_{i in I} u_i / (prod_{i in I} v_i * lcm_{i in I} u_i)`
///
/// over all `2^m` index subsets, where `u_i / v_i = d / w_i` in lowest terms.
/// The empty subset contributes `(-1)^m`. The sum is accumulated exactly; a
/// result that is not a non-negative integer is reported as an integrity
/// error instead of being rounded.
pub fn milnor_orlik_betti(ws: &WeightSystem) -> Result<u64> {
    let ratios = ws.reduced_ratios();
    let m = ratios.len();
    if m > 30 {
        return usage(format!("{m} variables is beyond the subset enumeration range"));
    }
    let mut total = Rational::zero();
    let mut us = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        us.clear();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (i, &(u, v)) in ratios.iter().enumerate() {
            if mask >> i & 1 == 1 {
                us.push(u);
                num *= u;
                den *= v;
            }
        }
        den *= BigInt::from(lcm_many(&us));
        let term = Rational::new(num, den);
        if (m - us.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    if !total.is_integer() || total.is_negative() {
        return integrity(format!(
            "Milnor-Orlik sum for {ws} is {total}, not a non-negative integer; \
             the system is probably not quasi-smooth"
        ));
    }
    total
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("Betti number of {ws} exceeds 64 bits")))
}

/// Independent count for Brieskorn–Pham links: the number of tuples
/// `1 <= j_i <= a_i - 1` with `sum j_i / a_i` an integer.
pub fn betti_bp_oracle(a: &[u64], budget: u64) -> Result<u64> {
    if a.is_empty() {
        return usage("oracle needs at least one exponent");
    }
    if let Some(&x) = a.iter().find(|&&x| x < 2) {
        return usage(format!("Brieskorn-Pham exponents must be >= 2, got {x}"));
    }
    let mut tuples: u64 = 1;
    for &x in a {
        tuples = tuples
            .checked_mul(x - 1)
            .filter(|&t| t <= budget)
            .ok_or_else(|| Error::Resource(format!("oracle over {a:?} exceeds budget {budget}")))?;
    }
    let l = lcm_many(a)
        .to_u64()
        .ok_or_else(|| Error::Resource("lcm of exponents exceeds 64 bits".into()))?;
    // j_i / a_i = j_i * (l / a_i) / l, so integrality is a congruence mod l
    let steps: Vec<u64> = a.iter().map(|&x| l / x).collect();
    let (head, rest) = (a[0], &a[1..]);
    let count = (1..head)
        .into_par_iter()
        .map(|j0| count_tail((j0 * steps[0]) % l, rest, &steps[1..], l))
        .sum();
    Ok(count)
}

fn count_tail(acc: u64, a: &[u64], steps: &[u64], l: u64) -> u64 {
    match a.split_first() {
        None => u64::from(acc == 0),
        Some((&x, rest)) => (1..x)
            .map(|j| count_tail((acc + j * steps[0]) % l, rest, &steps[1..], l))
            .sum(),
    }
}

/// Closed form `(-1)^m (1 + ((1-l)^m - 1) / l)` for the Fermat link
/// `z_1^l + ... + z_m^l`.
pub fn fermat_betti(m: u32, l: u64) -> Result<u64> {
    if m < 3 {
        return usage(format!("closed form needs m >= 3, got {m}"));
    }
    if l < 2 {
        return usage(format!("closed form needs l >= 2, got {l}"));
    }
    let l_big = BigInt::from(l);
    let power = num_traits::pow(BigInt::one() - &l_big, m as usize) - BigInt::one();
    let (q, r) = power.div_rem(&l_big);
    if !r.is_zero() {
        return integrity(format!("(1-l)^m - 1 not divisible by l for m={m}, l={l}"));
    }
    let mut b = BigInt::one() + q;
    if m % 2 == 1 {
        b = -b;
    }
    b.to_u64()
        .ok_or_else(|| Error::Integrity(format!("closed-form Betti number {b} is not a u64")))
}

/// The Fermat–Calabi–Yau case `l = m`.
pub fn fermat_cy_betti(m: u32) -> Result<u64> {
    fermat_betti(m, u64::from(m))
}

/// Genus of the orbit curve of a three-variable weighted homogeneous link:
///
/// `g = (d^2/(w1 w2 w3) - d sum_{i<j} gcd(w_i,w_j)/(w_i w_j) + sum_i gcd(d,w_i)/w_i - 1) / 2`
pub fn genus(ws: &WeightSystem) -> Result<u64> {
    let [w1, w2, w3] = *ws.weights() else {
        return usage(format!("genus needs exactly 3 weights, got {}", ws.len()));
    };
    let d = ws.degree();
    let r = |n: u64, den: u64| Rational::new(BigInt::from(n), BigInt::from(den));
    let mut two_g = r(d * d, w1 * w2 * w3);
    for (a, b) in [(w1, w2), (w1, w3), (w2, w3)] {
        two_g -= r(d * a.gcd(&b), a * b);
    }
    for w in [w1, w2, w3] {
        two_g += r(d.gcd(&w), w);
    }
    two_g -= Rational::one();
    let g = two_g / Rational::from_integer(BigInt::from(2));
    if !g.is_integer() || g.is_negative() {
        return integrity(format!("genus formula for {ws} gives {g}"));
    }
    g.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Integrity(format!("genus {g} out of range")))
}

/// Sufficient condition for genus one: `|w| = d`, each `w_i | d`, and the
/// weights pairwise coprime.
pub fn genus_one_criterion(ws: &WeightSystem) -> Result<bool> {
    let [w1, w2, w3] = *ws.weights() else {
        return usage(format!("genus criterion needs exactly 3 weights, got {}", ws.len()));
    };
    let d = ws.degree();
    Ok(ws.norm() == d
        && [w1, w2, w3].iter().all(|w| d.is_multiple_of(*w))
        && w1.gcd(&w2) == 1
        && w1.gcd(&w3) == 1
        && w2.gcd(&w3) == 1)
}

/// `|H_{m-1}(L, Z)| = k^{b_{m-2}(L_f)}` for the k-fold branched cover, which
/// is a rational homology sphere when `gcd(k, u_i) = 1` for all `i`.
pub fn torsion_order(k: u64, base: &WeightSystem) -> Result<TorsionOrder> {
    if k < 2 {
        return usage(format!("torsion order needs k >= 2, got {k}"));
    }
    require_torsion_hypothesis(k, base)?;
    FactoredPower::new(k, milnor_orlik_betti(base)?)
}
