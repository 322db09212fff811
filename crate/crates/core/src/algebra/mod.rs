//! Exact scalar, polynomial and truncated-series arithmetic.

mod bipoly;
mod combinat;
mod rational;
mod truncated;
mod unipoly;

pub use bipoly::BiPoly;
pub(crate) use combinat::double_factorial_odd_below;
pub use combinat::{bernoulli, binomial, double_factorial_odd, factorial};
pub use rational::ExactRational;
pub use truncated::{series_exp, series_mul, TruncatedSeries};
pub use unipoly::UniPoly;

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = ExactRational> {
        (-20i64..20, 1i64..8).prop_map(|(p, q)| ExactRational::frac(p, q))
    }

    fn unipoly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(rational(), 0..5).prop_map(UniPoly::from_coeffs)
    }

    fn bipoly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), rational()), 0..6).prop_map(|terms| {
            let mut p = BiPoly::zero();
            for ((t, a), c) in terms {
                p.add_term(t, a, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn rational_ring_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a - &a).signum(), 0);
            let text = a.to_string();
            prop_assert_eq!(text.parse::<ExactRational>().unwrap(), a);
        }

        #[test]
        fn unipoly_ring_axioms(a in unipoly(), b in unipoly(), c in unipoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bipoly_ring_axioms(a in bipoly(), b in bipoly(), c in bipoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().all(|(_, v)| !v.is_zero()));
        }

        #[test]
        fn exp_inverse_pair(p in -12i64..12, q in 1i64..30, order in 0usize..9) {
            let c = ExactRational::frac(p, q);
            let prod = series_mul(&series_exp(&c, order), &series_exp(&-&c, order)).unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one(order));
        }
    }
}
