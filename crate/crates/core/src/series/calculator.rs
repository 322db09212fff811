use std::sync::Arc;

use super::rules::prefactor;
use super::{lambda_product_expansion, Convention, IndexVector, PPolynomial};
use crate::algebra::{series_exp, series_mul, BiPoly, ExactRational, TruncatedSeries, UniPoly};
use crate::cache::IntegralCache;
use crate::error::{Error, Result};
use crate::hodge::{HodgeEngine, LambdaMonomial};

/// Outcome of probing the total-degree conjecture on one `P_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub a: IndexVector,
    /// Largest `t`-degree plus `α`-degree among the terms.
    pub total_degree: u32,
    pub bound: u32,
    pub holds: bool,
}

/// Assembles the generating series from Hodge integrals.
pub struct Calculator {
    hodge: HodgeEngine,
}

impl Calculator {
    pub fn new(cache: Arc<IntegralCache>) -> Self {
        Self { hodge: HodgeEngine::new(cache) }
    }

    pub fn with_engine(hodge: HodgeEngine) -> Self {
        Self { hodge }
    }

    pub fn hodge(&self) -> &HodgeEngine {
        &self.hodge
    }

    pub fn cache(&self) -> &Arc<IntegralCache> {
        self.hodge.cache()
    }

    /// `∫_{M̄_{g,1}} ψ^{3g-2}`, with 1 for the unstable `g = 0` slot.
    fn one_point(&self, g: u32) -> Result<ExactRational> {
        if g == 0 {
            return Ok(ExactRational::one());
        }
        self.hodge.psi_engine().integral(g, &[3 * g - 2])
    }

    /// `∫_{M̄_{g,n+1}} prod ψ_i^{a_i} Λ^∨_g(1) Λ^∨_g(α) / (1 - ψ_0)` as a
    /// polynomial in `α`.
    ///
    /// Unstable slots: `(0, 1)` contributes 1 and `(0, 2)` contributes
    /// `(-1)^{a_1}`.
    pub fn double_hodge_coeff(&self, g: u32, a: &IndexVector) -> Result<UniPoly> {
        let n = a.len();
        if g == 0 && n == 0 {
            return Ok(UniPoly::one());
        }
        if g == 0 && n == 1 {
            let sign = if a.weight().is_multiple_of(2) { 1 } else { -1 };
            return Ok(UniPoly::constant(ExactRational::from(sign)));
        }
        let dim = 3 * g as i64 - 2 + n as i64;
        let mut coeffs = vec![ExactRational::zero(); g as usize + 1];
        let mut psi = Vec::with_capacity(n + 1);
        for term in lambda_product_expansion(g) {
            let e = dim - a.weight() as i64 - term.k as i64 - term.j as i64;
            if e < 0 {
                continue;
            }
            psi.clear();
            psi.push(e as u32);
            psi.extend_from_slice(a.entries());
            let lam = LambdaMonomial::pair(term.k, term.j);
            let v = self.hodge.hodge_integral(g, n + 1, &psi, &lam)?;
            if v.is_zero() {
                continue;
            }
            let slot = &mut coeffs[term.alpha_power as usize];
            *slot += if term.sign > 0 { v } else { -v };
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// `prod (2a_i+1)!!(-4)^{a_i} * sum_g t^g double_hodge_coeff(g, a) * exp(t/24)`
    /// through `t^order`, before any polynomiality check.
    pub fn assembled_series(&self, a: &IndexVector, order: usize) -> Result<TruncatedSeries> {
        let coeffs = (0..=order as u32)
            .map(|g| self.double_hodge_coeff(g, a))
            .collect::<Result<Vec<_>>>()?;
        let raw = TruncatedSeries::new(order, coeffs);
        let product = series_mul(&raw, &series_exp(&ExactRational::frac(1, 24), order))?;
        Ok(product.scale(&prefactor(a)))
    }

    /// `P_a(α, t)`, checked: the `guard` coefficients past `t^{|a|}` must
    /// vanish identically in `α` and the `t^{|a|}` coefficient must be 1.
    pub fn assemble_pa(&self, a: &IndexVector, guard: usize) -> Result<PPolynomial> {
        let degree = a.weight() as usize;
        let series = self.assembled_series(a, degree + guard)?;
        for g in degree + 1..=degree + guard {
            let c = series.coeff(g);
            if !c.is_zero() {
                return Err(Error::Integrity(format!(
                    "P_{a}: coefficient of t^{g} is {c:?}, expected 0 (g={g}, a={a})"
                )));
            }
        }
        let top = series.coeff(degree);
        if *top != UniPoly::one() {
            return Err(Error::Integrity(format!(
                "P_{a}: coefficient of t^{degree} is {top:?}, expected 1"
            )));
        }
        let coeffs = series.into_coeffs();
        Ok(PPolynomial {
            a: a.clone(),
            convention: Convention::Alpha,
            poly: BiPoly::from_t_coeffs(&coeffs[..=degree]),
        })
    }

    /// `A_{g,a}(α) = sum_{g_1+g_2=g} double_hodge_coeff(g_1, a) * ∫_{M̄_{g_2,1}} ψ^{3g_2-2}`.
    pub fn a_value(&self, g: u32, a: &IndexVector) -> Result<UniPoly> {
        let mut acc = UniPoly::zero();
        for g1 in 0..=g {
            let weight = self.one_point(g - g1)?;
            acc = &acc + &self.double_hodge_coeff(g1, a)?.scale(&weight);
        }
        Ok(acc)
    }

    /// `P_a(-1, t)` computed from pure ψ integrals only:
    /// `prod (2a_i+1)!!(-4)^{a_i} exp(t/24) sum_g (-t)^g ∫ prod ψ_i^{a_i} / (1 - ψ_0)`.
    /// Two extra orders are computed and must vanish.
    pub fn mumford_specialize(&self, a: &IndexVector) -> Result<UniPoly> {
        let degree = a.weight() as usize;
        let order = degree + 2;
        let n = a.len();
        let mut coeffs = Vec::with_capacity(order + 1);
        for g in 0..=order as u32 {
            let value = if g == 0 && n == 0 {
                ExactRational::one()
            } else if g == 0 && n == 1 {
                ExactRational::from(if a.weight().is_multiple_of(2) { 1 } else { -1 })
            } else {
                let e = 3 * g as i64 - 2 + n as i64 - a.weight() as i64;
                if e < 0 {
                    ExactRational::zero()
                } else {
                    let mut psi = vec![e as u32];
                    psi.extend_from_slice(a.entries());
                    self.hodge.psi_engine().integral(g, &psi)?
                }
            };
            let signed = if g % 2 == 0 { value } else { -value };
            coeffs.push(UniPoly::constant(signed));
        }
        let raw = TruncatedSeries::new(order, coeffs);
        let series = series_mul(&raw, &series_exp(&ExactRational::frac(1, 24), order))?
            .scale(&prefactor(a));
        for g in degree + 1..=order {
            if !series.coeff(g).is_zero() {
                return Err(Error::Integrity(format!(
                    "P_{a}(-1, t): coefficient of t^{g} is {:?}, expected 0",
                    series.coeff(g)
                )));
            }
        }
        Ok(UniPoly::from_coeffs(
            series.coeffs()[..=degree].iter().map(|c| c.coeff(0)).collect(),
        ))
    }

    /// `F(α, t) = 1 + sum_{g>0} t^{2g} ∫_{M̄_{g,1}} Λ^∨_g(1) Λ^∨_g(α) / (1 - ψ_0)`
    /// through `t^order`. Fails if any coefficient depends on `α`.
    pub fn f_series(&self, order: usize) -> Result<TruncatedSeries> {
        let empty = IndexVector::default();
        let mut coeffs = vec![UniPoly::zero(); order + 1];
        coeffs[0] = UniPoly::one();
        for g in 1..=(order / 2) as u32 {
            let c = self.double_hodge_coeff(g, &empty)?;
            if !c.is_constant() {
                return Err(Error::Integrity(format!(
                    "F(α, t): coefficient of t^{} depends on α: {c:?}",
                    2 * g
                )));
            }
            coeffs[2 * g as usize] = c;
        }
        Ok(TruncatedSeries::new(order, coeffs))
    }

    /// Reports the total degree of `P_a` in `(t, α)` against `|a|`. This is
    /// an observation, not a check: nothing fails when the bound is exceeded.
    pub fn conjecture_check(&self, a: &IndexVector, guard: usize) -> Result<ConjectureReport> {
        let p = self.assemble_pa(a, guard)?;
        let total_degree = p.poly.total_degree().unwrap_or(0);
        let bound = a.weight();
        Ok(ConjectureReport { a: a.clone(), total_degree, bound, holds: total_degree <= bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn calc() -> Calculator {
        Calculator::new(Arc::new(IntegralCache::new()))
    }

    fn iv(v: &[u32]) -> IndexVector {
        IndexVector::new(v.to_vec())
    }

    #[test]
    fn double_hodge_examples() {
        let c = calc();
        assert_eq!(c.double_hodge_coeff(0, &iv(&[1])).unwrap(), UniPoly::from_integers(&[-1]));
        assert_eq!(
            c.double_hodge_coeff(1, &iv(&[])).unwrap(),
            UniPoly::constant(ExactRational::frac(-1, 24))
        );
        assert_eq!(c.double_hodge_coeff(0, &iv(&[0, 0, 0])).unwrap(), UniPoly::one());
    }

    #[test]
    fn small_polynomials() {
        let c = calc();
        assert_eq!(c.assemble_pa(&iv(&[]), 2).unwrap().poly, BiPoly::one());
        let p1 = c.assemble_pa(&iv(&[1]), 2).unwrap();
        let mut expected = BiPoly::t();
        expected.add_term(0, 0, ExactRational::from(12));
        assert_eq!(p1.poly, expected);
    }

    #[test]
    fn a_values() {
        let c = calc();
        assert!(c.a_value(2, &iv(&[1])).unwrap().is_zero());
        assert_eq!(
            c.a_value(1, &iv(&[1])).unwrap(),
            UniPoly::constant(ExactRational::frac(-1, 12))
        );
        assert_eq!(c.a_value(0, &iv(&[])).unwrap(), UniPoly::one());
    }

    #[test]
    fn mumford_examples() {
        let c = calc();
        assert_eq!(c.mumford_specialize(&iv(&[1])).unwrap(), UniPoly::from_integers(&[12, 1]));
        assert_eq!(c.mumford_specialize(&iv(&[2])).unwrap(), UniPoly::from_integers(&[240, 0, 1]));
        assert_eq!(c.mumford_specialize(&iv(&[])).unwrap(), UniPoly::one());
    }

    #[test]
    fn f_series_low_orders() {
        let f = calc().f_series(4).unwrap();
        assert_eq!(f.coeff(2), &UniPoly::constant(ExactRational::frac(-1, 24)));
        assert_eq!(f.coeff(4), &UniPoly::constant(ExactRational::frac(1, 1152)));
        assert!(f.coeff(1).is_zero() && f.coeff(3).is_zero());
    }
}
