use super::{factorial, ExactRational, UniPoly};
use crate::error::{Error, Result};

/// Power series in `t` with polynomial-in-`alpha` coefficients, known through
/// `t^order`. The order travels with the value so that two truncations can
/// never be mixed silently.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<UniPoly>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops terms past `order`.
    pub fn new(order: usize, mut coeffs: Vec<UniPoly>) -> Self {
        coeffs.resize(order + 1, UniPoly::zero());
        Self { order, coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![UniPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &UniPoly {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<UniPoly> {
        self.coeffs
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        series_mul(self, rhs)
    }
}

/// `exp(c t)` through `t^order`: coefficient `k` is `c^k / k!`.
pub fn series_exp(linear_coeff: &ExactRational, order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|k| {
            let fact = ExactRational::from_integer(factorial(k as u32));
            UniPoly::constant(linear_coeff.pow(k as u32) / fact)
        })
        .collect();
    TruncatedSeries::new(order, coeffs)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.order != b.order {
        return Err(Error::InvalidInput(format!(
            "series orders differ: {} vs {}",
            a.order, b.order
        )));
    }
    let coeffs = (0..=a.order)
        .map(|k| {
            (0..=k).fold(UniPoly::zero(), |acc, i| &acc + &(&a.coeffs[i] * &b.coeffs[k - i]))
        })
        .collect();
    Ok(TruncatedSeries::new(a.order, coeffs))
}
