//! Exact integer and rational primitives shared by every other module.
//!
//! Nothing in the computation path uses floating point. Inequalities between
//! rationals are decided on [`Rational`] values, which compare by exact
//! cross-multiplication.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `base^exponent`, kept factored until an expansion is explicitly asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactoredPower {
    pub base: u64,
    pub exponent: u64,
}

impl FactoredPower {
    pub fn new(base: u64, exponent: u64) -> Result<Self> {
        if base == 0 {
            return usage("factored power base must be positive");
        }
        Ok(Self { base, exponent })
    }

    /// Exact decimal-ready expansion. This can be large: `21^204` has 270 digits.
    pub fn expand(&self) -> BigUint {
        Pow::pow(BigUint::from(self.base), self.exponent)
    }

    /// `base^exponent mod modulus` without expanding.
    pub fn residue(&self, modulus: u64) -> Result<u64> {
        if modulus == 0 {
            return usage("modulus must be positive");
        }
        let r = BigUint::from(self.base).modpow(&BigUint::from(self.exponent), &BigUint::from(modulus));
        Ok(r.iter_u64_digits().next().unwrap_or(0))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0 || self.base == 1
    }
}

impl std::fmt::Display for FactoredPower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.base, self.exponent)
    }
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_many(xs: &[u64]) -> Result<u64> {
    let Some((&first, rest)) = xs.split_first() else {
        return usage("gcd of an empty list is undefined");
    };
    if xs.contains(&0) {
        return usage("gcd_many expects positive integers");
    }
    Ok(rest.iter().fold(first, |g, &x| g.gcd(&x)))
}

/// Least common multiple, exact. The empty list has lcm 1.
pub fn lcm_many(xs: &[u64]) -> BigUint {
    xs.iter()
        .fold(BigUint::one(), |acc, &x| acc.lcm(&BigUint::from(x)))
}

/// `d/w` in lowest terms as `(u, v)`.
pub fn reduced_fraction(d: u64, w: u64) -> Result<(u64, u64)> {
    if d == 0 || w == 0 {
        return usage(format!("reduced_fraction expects positive arguments, got {d}/{w}"));
    }
    let g = d.gcd(&w);
    Ok((d / g, w / g))
}

/// Exact binomial coefficient; zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of exponent vectors `a >= 0` with `sum a_i w_i = target`, i.e. the
/// dimension of the degree-`target` piece of the weighted polynomial ring.
pub fn count_monomials(weights: &[u64], target: u64) -> BigUint {
    let t = target as usize;
    let mut table = vec![BigUint::zero(); t + 1];
    table[0] = BigUint::one();
    for &w in weights {
        let w = w as usize;
        if w == 0 || w > t {
            continue;
        }
        for v in w..=t {
            let (lo, hi) = table.split_at_mut(v);
            if !lo[v - w].is_zero() {
                hi[0] += &lo[v - w];
            }
        }
    }
    table.swap_remove(t)
}

/// Whether at least one monomial of weighted degree `target` exists in the
/// given weights. The empty monomial represents zero.
pub fn representable(weights: &[u64], target: u64) -> bool {
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for &w in weights {
        let w = w as usize;
        if w == 0 || w > t {
            continue;
        }
        for v in w..=t {
            if reach[v - w] {
                reach[v] = true;
            }
        }
        if reach[t] {
            return true;
        }
    }
    reach[t]
}

/// Shorthand for an exact rational `num/den`.
pub fn ratio(num: impl Into<num_bigint::BigInt>, den: impl Into<num_bigint::BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}
