//! Effective parameter counts
//! `mu = h^0(P(w), O(d)) - sum_i h^0(P(w), O(w_i))` for the cover systems.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, count_monomials};
use crate::error::{usage, Result};
use crate::links::WeightSystem;
use crate::serde_big::bigint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliCount {
    /// Raw formula value; can be negative.
    #[serde(rename = "moduli_complex", with = "bigint")]
    pub complex_dim: BigInt,
    /// `2 * max(complex_dim, 0)`
    #[serde(rename = "moduli_real", with = "bigint")]
    pub real_dim: BigInt,
    #[serde(with = "bigint")]
    pub h0_degree: BigInt,
    #[serde(with = "bigint")]
    pub h0_weights_sum: BigInt,
}

impl ModuliCount {
    fn from_counts(h0_degree: BigUint, h0_weights_sum: BigUint) -> Self {
        let h0_degree = BigInt::from(h0_degree);
        let h0_weights_sum = BigInt::from(h0_weights_sum);
        let complex_dim = &h0_degree - &h0_weights_sum;
        let real_dim = if complex_dim > BigInt::from(0) {
            &complex_dim * 2
        } else {
            BigInt::from(0)
        };
        Self {
            complex_dim,
            real_dim,
            h0_degree,
            h0_weights_sum,
        }
    }
}

/// Literal monomial count on a (cover) weight system. No correction is made
/// for extra automorphisms among repeated weights.
pub fn moduli_count(ws: &WeightSystem) -> ModuliCount {
    let w = ws.weights();
    let h0_degree = count_monomials(w, ws.degree());
    let h0_weights_sum = w.iter().map(|&wi| count_monomials(w, wi)).sum();
    ModuliCount::from_counts(h0_degree, h0_weights_sum)
}

/// `binom(2m-1, m) - m^2`
pub fn fermat_cy_moduli(m: u64) -> Result<BigInt> {
    if m < 3 {
        return usage(format!("Fermat-Calabi-Yau family needs m >= 3, got {m}"));
    }
    Ok(BigInt::from(binomial(2 * m - 1, m)) - BigInt::from(m * m))
}

/// `binom(m+l-1, l) - m^2` for `m+1 <= l <= 2m-1`.
pub fn hyperbolic_moduli(m: u64, l: u64) -> Result<BigInt> {
    if m < 3 {
        return usage(format!("hyperbolic family needs m >= 3, got {m}"));
    }
    if l < m + 1 || l > 2 * m - 1 {
        return usage(format!(
            "l = {l} outside the admissible range m+1 <= l <= 2m-1 = [{}, {}]",
            m + 1,
            2 * m - 1
        ));
    }
    Ok(BigInt::from(binomial(m + l - 1, l)) - BigInt::from(m * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::branched_cover;
    use num_integer::Integer;

    fn ws(w: &[u64], d: u64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    fn assert_mu(c: &ModuliCount, mu: i64, real: i64) {
        assert_eq!(c.complex_dim, BigInt::from(mu));
        assert_eq!(c.real_dim, BigInt::from(real));
        assert_eq!(c.complex_dim, &c.h0_degree - &c.h0_weights_sum);
    }

    #[test]
    fn literal_counts() {
        assert_mu(&moduli_count(&ws(&[4, 13, 13, 13, 13], 52)), 19, 38);
        // 3-fold cover of (1,1,1; 4), exponents (3,4,4,4)
        assert_mu(&moduli_count(&ws(&[4, 3, 3, 3], 12)), 6, 12);
        // 4-fold cover of (1,1,1; 3)
        assert_mu(&moduli_count(&ws(&[3, 4, 4, 4], 12)), 1, 2);
        let c = moduli_count(&ws(&[3, 7, 7, 7], 21));
        assert_mu(&c, 1, 2);
        assert_eq!((c.h0_degree, c.h0_weights_sum), (11.into(), 10.into()));
        let c = moduli_count(&ws(&[6, 5, 10, 15], 30));
        assert_mu(&c, 1, 2);
        assert_eq!((c.h0_degree, c.h0_weights_sum), (8.into(), 7.into()));
    }

    #[test]
    fn negative_raw_value_has_zero_real_dim() {
        // (1,1; 1): one monomial of degree 1 each way, so mu = 2 - 4
        let c = moduli_count(&ws(&[1, 1], 1));
        assert_eq!(c.complex_dim, BigInt::from(-2));
        assert_eq!(c.real_dim, BigInt::from(0));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fermat_cy_moduli(4).unwrap(), 19.into());
        assert_eq!(fermat_cy_moduli(5).unwrap(), 101.into());
        assert_eq!(fermat_cy_moduli(3).unwrap(), 1.into());
        assert_eq!(hyperbolic_moduli(3, 4).unwrap(), 6.into());
        assert_eq!(hyperbolic_moduli(4, 5).unwrap(), 40.into());
        for m in 3..=8u64 {
            let expect = BigInt::from(binomial(2 * m, m + 1)) - BigInt::from(m * m);
            assert_eq!(hyperbolic_moduli(m, m + 1).unwrap(), expect);
        }
        assert!(hyperbolic_moduli(3, 6).is_err());
        assert!(fermat_cy_moduli(2).is_err());
    }

    #[test]
    fn closed_forms_match_literal_counts() {
        for m in 3..=7u64 {
            let base = WeightSystem::fermat(m as usize, m).unwrap();
            let ks: Vec<u64> = (m + 1..).filter(|k| k.gcd(&m) == 1).take(3).collect();
            for k in ks {
                let cover = branched_cover(k, &base).unwrap().cover;
                assert_eq!(moduli_count(&cover).complex_dim, fermat_cy_moduli(m).unwrap(), "m={m} k={k}");
            }
        }
        let cover = branched_cover(4, &WeightSystem::fermat(4, 5).unwrap()).unwrap().cover;
        assert_eq!(cover, ws(&[5, 4, 4, 4, 4], 20));
        assert_eq!(moduli_count(&cover).complex_dim, hyperbolic_moduli(4, 5).unwrap());
    }

    #[test]
    fn exponential_growth() {
        for m in 4..=12 {
            assert!(fermat_cy_moduli(m + 1).unwrap() > fermat_cy_moduli(m).unwrap() * 2);
        }
    }
}
