//! Integer sequences used throughout the engines.

use num_bigint::BigInt;
use num_traits::One;

use super::ExactRational;
use crate::error::{Error, Result};

/// `(2k+1)!! = 1 * 3 * 5 * ... * (2k+1)`.
pub fn double_factorial_odd(k: u32) -> BigInt {
    (0..=k).fold(BigInt::one(), |acc, i| acc * (2 * i + 1))
}

/// `(2k-1)!!` with the convention `(-1)!! = 1`, as it appears in DVV.
pub(crate) fn double_factorial_odd_below(k: u32) -> BigInt {
    if k == 0 {
        BigInt::one()
    } else {
        double_factorial_odd(k - 1)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0..=B_m` from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn bernoulli_table(m: u32) -> Vec<ExactRational> {
    let mut table = vec![ExactRational::one()];
    for k in 1..=m {
        let acc: ExactRational = (0..k)
            .map(|j| ExactRational::from_integer(binomial(k + 1, j)) * &table[j as usize])
            .sum();
        table.push(-acc / ExactRational::from_integer(k + 1));
    }
    table
}

/// `B_{2l}` for a positive even index, with `B_2 = 1/6`.
pub fn bernoulli(index: u32) -> Result<ExactRational> {
    if index == 0 || index % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "bernoulli index must be positive and even, got {index}"
        )));
    }
    Ok(bernoulli_table(index).swap_remove(index as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0), BigInt::from(1));
        assert_eq!(double_factorial_odd(2), BigInt::from(15));
        assert_eq!(double_factorial_odd(3), BigInt::from(105));
        assert_eq!(double_factorial_odd_below(0), BigInt::from(1));
        assert_eq!(double_factorial_odd_below(3), BigInt::from(15));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), ExactRational::frac(1, 6));
        assert_eq!(bernoulli(4).unwrap(), ExactRational::frac(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), ExactRational::frac(1, 42));
        assert_eq!(bernoulli(12).unwrap(), ExactRational::frac(-691, 2730));
    }

    #[test]
    fn bernoulli_rejects_bad_index() {
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(3).is_err());
    }

    #[test]
    fn bernoulli_table_satisfies_recurrence() {
        let table = bernoulli_table(24);
        for m in 1..=24u32 {
            let s: ExactRational = (0..=m)
                .map(|j| ExactRational::from_integer(binomial(m + 1, j)) * &table[j as usize])
                .sum();
            assert!(s.is_zero(), "recurrence fails at m={m}");
        }
        for (i, b) in table.iter().enumerate().skip(3).step_by(2) {
            assert!(b.is_zero(), "odd Bernoulli B_{i} nonzero");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
