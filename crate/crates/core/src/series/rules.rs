//! Closed-form manipulations of the `P_a` family that need no integrals.

use num_bigint::BigInt;

use super::{Convention, IndexVector, PPolynomial};
use crate::algebra::{double_factorial_odd, factorial, BiPoly, ExactRational, UniPoly};
use crate::error::{Error, Result};

/// `prod_i (2a_i+1)!! (-4)^{a_i}`
pub fn prefactor(a: &IndexVector) -> ExactRational {
    let mut acc = BigInt::from(1);
    for &ai in a.entries() {
        acc *= double_factorial_odd(ai) * BigInt::from(-4).pow(ai);
    }
    ExactRational::from_integer(acc)
}

/// Substitutes `α -> -α - 1`. This is an involution, so it also undoes itself.
pub fn shift_convention(p: &PPolynomial) -> PPolynomial {
    let shift = UniPoly::from_integers(&[-1, -1]);
    PPolynomial {
        a: p.a.clone(),
        convention: p.convention.toggled(),
        poly: p.poly.compose_alpha(&shift),
    }
}

/// String rule: builds `P_{(a,0)}` from `P_a` and the family of `P_{a - e_i}`:
///
/// `P_{(a,0)} = P_a - sum_i (8 a_i + 4) P_{a - e_i}`
///
/// Indices with `a_i = 0` contribute nothing. `family` is searched by index
/// multiset, so its members may list their entries in any order.
pub fn string_apply(p: &PPolynomial, family: &[PPolynomial]) -> Result<PPolynomial> {
    let mut poly = p.poly.clone();
    for (i, &ai) in p.a.entries().iter().enumerate() {
        let Some(lower) = p.a.decremented(i) else {
            continue;
        };
        let target = lower.sorted();
        let member = family
            .iter()
            .find(|q| q.a.sorted() == target)
            .ok_or_else(|| Error::InvalidInput(format!("string rule needs P_{target}")))?;
        if member.convention != p.convention {
            return Err(Error::InvalidInput(format!(
                "convention mismatch: P_{} is {}, P_{} is {}",
                p.a,
                p.convention.as_str(),
                member.a,
                member.convention.as_str()
            )));
        }
        let weight = ExactRational::from(8 * ai as i64 + 4);
        poly = &poly - &member.poly.scale(&weight);
    }
    Ok(PPolynomial { a: p.a.with_appended(0), convention: p.convention, poly })
}

/// Dilaton rule: `P_{(a,1)} = (t - 12n + 24) P_a - 24 t dP_a/dt`, where
/// `n = len(a) + 1` is the marking count of the result.
pub fn dilaton_apply(p: &PPolynomial, n: usize) -> Result<PPolynomial> {
    if n != p.a.len() + 1 {
        return Err(Error::InvalidInput(format!(
            "dilaton target for P_{} has {} markings, got n = {n}",
            p.a,
            p.a.len() + 1
        )));
    }
    let mut factor = BiPoly::t();
    factor.add_term(0, 0, ExactRational::from(24 - 12 * n as i64));
    let derivative_part = &BiPoly::t() * &p.poly.t_derivative();
    let poly = &(&factor * &p.poly) - &derivative_part.scale(&ExactRational::from(24));
    Ok(PPolynomial { a: p.a.with_appended(1), convention: p.convention, poly })
}

/// Constant term of `P_a` in closed form (needs `n >= 1`):
/// `(-1)^{a_1} C_a` for `n = 1`, otherwise
/// `C_a (n-2)! / (a_1! ... a_n! (n-2-|a|)!)`, or zero once `|a| > n-2`.
pub fn constant_term(a: &IndexVector) -> Result<ExactRational> {
    let n = a.len();
    let c = prefactor(a);
    match n {
        0 => Err(Error::InvalidInput("constant term formula needs n >= 1".into())),
        1 => Ok(if a.weight().is_multiple_of(2) { c } else { -c }),
        _ => {
            let top = n as i64 - 2;
            let rest = top - a.weight() as i64;
            if rest < 0 {
                return Ok(ExactRational::zero());
            }
            let denom = a
                .entries()
                .iter()
                .fold(factorial(rest as u32), |acc, &ai| acc * factorial(ai));
            let multinomial = ExactRational::new(factorial(top as u32), denom)?;
            Ok(c * multinomial)
        }
    }
}

impl PPolynomial {
    /// Same polynomial, in the requested convention.
    pub fn in_convention(&self, convention: Convention) -> PPolynomial {
        if self.convention == convention {
            self.clone()
        } else {
            shift_convention(self)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[u32]) -> IndexVector {
        IndexVector::new(v.to_vec())
    }

    /// Builds a polynomial from `(t_exp, alpha_exp, value)` triples.
    fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &(t, a, v) in terms {
            p.add_term(t, a, ExactRational::from(v));
        }
        p
    }

    fn shifted(a: &[u32], terms: &[(u32, u32, i64)]) -> PPolynomial {
        PPolynomial { a: iv(a), convention: Convention::AlphaShifted, poly: poly(terms) }
    }

    #[test]
    fn prefactors() {
        assert_eq!(prefactor(&iv(&[])), ExactRational::one());
        assert_eq!(prefactor(&iv(&[1])), ExactRational::from(-12));
        assert_eq!(prefactor(&iv(&[2, 0])), ExactRational::from(240));
    }

    #[test]
    fn shift_is_involution() {
        let p = shifted(&[2], &[(2, 0, 1), (1, 1, -10), (0, 0, 240)]);
        assert_eq!(shift_convention(&shift_convention(&p)), p);
        let p1 = shifted(&[1], &[(1, 0, 1), (0, 0, 12)]);
        assert_eq!(shift_convention(&p1).poly, p1.poly);
        // back in the α convention P_(2) = t^2 + (10α + 10) t + 240
        let back = shift_convention(&p);
        assert_eq!(back.convention, Convention::Alpha);
        assert_eq!(back.poly, poly(&[(2, 0, 1), (1, 1, 10), (1, 0, 10), (0, 0, 240)]));
    }

    #[test]
    fn dilaton_examples() {
        let p1 = shifted(&[1], &[(1, 0, 1), (0, 0, 12)]);
        let p11 = dilaton_apply(&p1, 2).unwrap();
        assert_eq!(p11.poly, poly(&[(2, 0, 1), (1, 0, -12)]));
        assert_eq!(p11.a, iv(&[1, 1]));
        let p111 = dilaton_apply(&p11, 3).unwrap();
        assert_eq!(p111.poly, poly(&[(3, 0, 1), (2, 0, -72), (1, 0, 432)]));

        let p2 = shifted(&[2], &[(2, 0, 1), (1, 1, -10), (0, 0, 240)]);
        let p21 = dilaton_apply(&p2, 2).unwrap();
        assert_eq!(
            p21.poly,
            poly(&[(3, 0, 1), (2, 1, -10), (2, 0, -48), (1, 1, 240), (1, 0, 240)])
        );
        assert!(dilaton_apply(&p2, 3).is_err());
    }

    #[test]
    fn string_examples() {
        // P_(0) = P_() = 1
        let p0 = shifted(&[0], &[(0, 0, 1)]);
        let p1 = shifted(&[1], &[(1, 0, 1), (0, 0, 12)]);
        let p2 = shifted(&[2], &[(2, 0, 1), (1, 1, -10), (0, 0, 240)]);
        let p11 = shifted(&[1, 1], &[(2, 0, 1), (1, 0, -12)]);
        let p10 = string_apply(&p1, std::slice::from_ref(&p0)).unwrap();
        assert_eq!(p10.poly, poly(&[(1, 0, 1)]));
        assert_eq!(p10.a, iv(&[1, 0]));
        let p20 = string_apply(&p2, std::slice::from_ref(&p1)).unwrap();
        assert_eq!(p20.poly, poly(&[(2, 0, 1), (1, 1, -10), (1, 0, -20)]));
        let p10_as_01 = PPolynomial { a: iv(&[0, 1]), ..p10.clone() };
        let p110 = string_apply(&p11, &[p10_as_01]).unwrap();
        assert_eq!(p110.poly, poly(&[(2, 0, 1), (1, 0, -36)]));
    }

    #[test]
    fn string_rejects_mismatch_and_missing() {
        let p0 = PPolynomial { a: iv(&[0]), convention: Convention::Alpha, poly: BiPoly::one() };
        let p1 = shifted(&[1], &[(1, 0, 1), (0, 0, 12)]);
        assert!(string_apply(&p1, &[p0]).is_err());
        assert!(string_apply(&p1, &[]).is_err());
    }

    #[test]
    fn constant_terms() {
        assert_eq!(constant_term(&iv(&[1])).unwrap(), ExactRational::from(12));
        assert_eq!(constant_term(&iv(&[3])).unwrap(), ExactRational::from(6720));
        assert_eq!(constant_term(&iv(&[1, 1])).unwrap(), ExactRational::zero());
        assert_eq!(constant_term(&iv(&[0, 0, 0])).unwrap(), ExactRational::one());
        assert!(constant_term(&iv(&[])).is_err());
    }
}
