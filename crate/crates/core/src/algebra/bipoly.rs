use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use super::{ExactRational, UniPoly};

/// Sparse polynomial in `t` whose coefficients are polynomials in `alpha`.
///
/// Keys are `(t_exp, alpha_exp)`; zero coefficients are never stored, and the
/// `BTreeMap` gives lexicographic iteration order for free.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), ExactRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, ExactRational::one());
        p
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, ExactRational::one());
        p
    }

    /// Builds `sum_k coeffs[k](alpha) t^k`.
    pub fn from_t_coeffs(coeffs: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (j, v) in c.terms() {
                p.add_term(k as u32, j as u32, v.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, t_exp: u32, alpha_exp: u32, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let key = (t_exp, alpha_exp);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, t_exp: u32, alpha_exp: u32) -> ExactRational {
        self.terms.get(&(t_exp, alpha_exp)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms, ascending in `(t_exp, alpha_exp)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &ExactRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(t, _)| t).max()
    }

    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, a)| a).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(t, a)| t + a).max()
    }

    /// Coefficient of `t^k` as a polynomial in `alpha`.
    pub fn t_coeff(&self, k: u32) -> UniPoly {
        let top = self.alpha_degree().unwrap_or(0) as usize;
        UniPoly::from_coeffs((0..=top).map(|j| self.coeff(k, j as u32)).collect())
    }

    /// Coefficients of `t^0 ..= t^deg` in `alpha`.
    pub fn t_coeffs(&self) -> Vec<UniPoly> {
        match self.t_degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.t_coeff(k)).collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        let mut out = Self::zero();
        for (&(t, a), v) in &self.terms {
            out.add_term(t, a, v * c);
        }
        out
    }

    /// `d/dt`
    pub fn t_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(t, a), v) in &self.terms {
            if t > 0 {
                out.add_term(t - 1, a, v * &ExactRational::from(t as i64));
            }
        }
        out
    }

    /// Substitutes `alpha -> inner(alpha)` in every coefficient.
    pub fn compose_alpha(&self, inner: &UniPoly) -> Self {
        let coeffs: Vec<UniPoly> = self.t_coeffs().iter().map(|c| c.compose(inner)).collect();
        Self::from_t_coeffs(&coeffs)
    }

    /// Sets `alpha` to a number, leaving a polynomial in `t`.
    pub fn eval_alpha(&self, alpha: &ExactRational) -> UniPoly {
        UniPoly::from_coeffs(self.t_coeffs().iter().map(|c| c.eval(alpha)).collect())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(t, a), v) in &rhs.terms {
            out.add_term(t, a, v.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(t, a), v) in &rhs.terms {
            out.add_term(t, a, -v);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(t1, a1), v1) in &self.terms {
            for (&(t2, a2), v2) in &rhs.terms {
                out.add_term(t1 + t2, a1 + a2, v1 * v2);
            }
        }
        out
    }
}
