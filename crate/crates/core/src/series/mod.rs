//! The generating polynomials
//!
//! `P_a(α, t) = sum_g t^g ( ∫_{M̄_{g,n+1}} Λ^∨_g(1) Λ^∨_g(α) / (1 - ψ_0)
//!               * prod_i (2a_i+1)!! (-4 ψ_i)^{a_i} ) * exp(t/24)`
//!
//! and the identities they satisfy. Marking 0 is the extra point carrying
//! the geometric series in `ψ_0`; markings `1..=n` carry the index vector.

mod calculator;
mod rules;

use std::fmt;
use std::str::FromStr;

pub use calculator::{Calculator, ConjectureReport};
pub use rules::{constant_term, dilaton_apply, prefactor, shift_convention, string_apply};

use crate::algebra::BiPoly;
use crate::error::{Error, Result};
use crate::psi::parse_canonical_u32;

/// `a = (a_1, ..., a_n)`, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct IndexVector(Vec<u32>);

impl IndexVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|a|`
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn with_appended(&self, value: u32) -> Self {
        let mut v = self.0.clone();
        v.push(value);
        Self(v)
    }

    /// Entry `i` lowered by one, or `None` when it is already zero.
    pub fn decremented(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(Self(v))
    }

    /// Entries sorted descending. `P_a` only depends on this.
    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    /// All partitions of `weight` (positive parts, descending), in reverse
    /// lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
    pub fn partitions(weight: u32) -> Vec<Self> {
        fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<IndexVector>) {
            if rest == 0 {
                out.push(IndexVector(prefix.clone()));
                return;
            }
            for part in (1..=max.min(rest)).rev() {
                prefix.push(part);
                go(rest - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(weight, weight, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for IndexVector {
    type Err = Error;

    /// Comma-separated entries; the empty string is the empty vector.
    /// Surrounding parentheses and blanks are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Self::default());
        }
        body.split(',')
            .map(|x| {
                let x = x.trim();
                parse_canonical_u32(x)
                    .ok_or_else(|| Error::Parse(format!("bad index vector entry {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()
            .map(Self)
    }
}

/// Which variable the stored polynomial is written in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Convention {
    /// `P_a(α, t)` as defined.
    Alpha,
    /// `P_a(-α-1, t)`, the layout used in the published table.
    AlphaShifted,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Alpha => "alpha",
            Convention::AlphaShifted => "alpha_shifted",
        }
    }

    pub fn toggled(self) -> Self {
        match self {
            Convention::Alpha => Convention::AlphaShifted,
            Convention::AlphaShifted => Convention::Alpha,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PPolynomial {
    pub a: IndexVector,
    pub convention: Convention,
    pub poly: BiPoly,
}

/// One term `sign * α^{alpha_power} * λ_k λ_j` of `Λ^∨_g(1) Λ^∨_g(α)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LambdaTerm {
    pub k: u32,
    pub j: u32,
    pub sign: i32,
    pub alpha_power: u32,
}

/// `Λ^∨_g(1) Λ^∨_g(α) = sum_{k,j} (-1)^{k+j} α^{g-j} λ_k λ_j`, using
/// `Λ^∨_g(x) = (-1)^g Λ_g(-x) = sum_j (-1)^j x^{g-j} λ_j`.
pub fn lambda_product_expansion(g: u32) -> Vec<LambdaTerm> {
    let mut out = Vec::with_capacity(((g + 1) * (g + 1)) as usize);
    for k in 0..=g {
        for j in 0..=g {
            let sign = if (k + j) % 2 == 0 { 1 } else { -1 };
            out.push(LambdaTerm { k, j, sign, alpha_power: g - j });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_small_genus() {
        assert_eq!(
            lambda_product_expansion(0),
            vec![LambdaTerm { k: 0, j: 0, sign: 1, alpha_power: 0 }]
        );
        // (1 - λ_1)(α - λ_1) = α - λ_1 - α λ_1 + λ_1^2
        let terms = lambda_product_expansion(1);
        let expected = [
            LambdaTerm { k: 0, j: 0, sign: 1, alpha_power: 1 },
            LambdaTerm { k: 0, j: 1, sign: -1, alpha_power: 0 },
            LambdaTerm { k: 1, j: 0, sign: -1, alpha_power: 1 },
            LambdaTerm { k: 1, j: 1, sign: 1, alpha_power: 0 },
        ];
        assert_eq!(terms, expected);
    }

    #[test]
    fn partitions_in_table_order() {
        let p: Vec<String> = IndexVector::partitions(4).iter().map(|a| a.to_string()).collect();
        assert_eq!(p, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(IndexVector::partitions(0), vec![IndexVector::default()]);
    }

    #[test]
    fn index_vector_parsing() {
        assert_eq!("".parse::<IndexVector>().unwrap(), IndexVector::default());
        assert_eq!("()".parse::<IndexVector>().unwrap(), IndexVector::default());
        assert_eq!("2,1".parse::<IndexVector>().unwrap(), IndexVector::new(vec![2, 1]));
        assert_eq!("(1, 1)".parse::<IndexVector>().unwrap(), IndexVector::new(vec![1, 1]));
        assert!("1,,2".parse::<IndexVector>().is_err());
        assert!("-1".parse::<IndexVector>().is_err());
    }
}
