//! Randomized identities for the ψ and Hodge engines.

use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hodgecalc::algebra::ExactRational;
use hodgecalc::cache::IntegralCache;
use hodgecalc::hodge::{ExpansionOrder, HodgeEngine, LambdaMonomial, TautMonomial};
use hodgecalc::psi::{dimension, psi_genus0, psi_integral_dvv_only, PsiEngine, PsiKey};

fn fresh_psi() -> PsiEngine {
    PsiEngine::new(Arc::new(IntegralCache::new()))
}

fn fresh_hodge(order: ExpansionOrder) -> HodgeEngine {
    HodgeEngine::with_order(Arc::new(IntegralCache::new()), order)
}

/// A random composition of `total` into `parts` non-negative parts.
fn composition(rng: &mut StdRng, total: u32, parts: usize) -> Vec<u32> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// Random λ indices in `1..=g` of total degree at most `budget`.
fn lambda_indices(rng: &mut StdRng, g: u32, budget: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut left = budget;
    while left > 0 && rng.gen_bool(0.6) {
        let j = rng.gen_range(1..=g.min(left));
        out.push(j);
        left -= j;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn dvv_matches_genus0_closed_form(n in 3usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let exps = composition(&mut rng, n as u32 - 3, n);
        let dvv = psi_integral_dvv_only(&PsiKey::new(0, exps.clone())).unwrap();
        prop_assert_eq!(dvv, psi_genus0(&exps).unwrap());
    }

    #[test]
    fn psi_string_and_dilaton(g in 0u32..=3, n in 1usize..=4, seed in any::<u64>()) {
        prop_assume!(dimension(g, n).is_some());
        let mut rng = StdRng::seed_from_u64(seed);
        let engine = fresh_psi();
        let d = dimension(g, n).unwrap();

        let a = composition(&mut rng, d + 1, n);
        let with_zero = engine.integral(g, &[a.clone(), vec![0]].concat()).unwrap();
        let mut expected = ExactRational::zero();
        for i in 0..n {
            if a[i] > 0 {
                let mut b = a.clone();
                b[i] -= 1;
                expected += engine.integral(g, &b).unwrap();
            }
        }
        prop_assert_eq!(with_zero, expected);

        let a = composition(&mut rng, d, n);
        let with_one = engine.integral(g, &[a.clone(), vec![1]].concat()).unwrap();
        let euler = ExactRational::from(2 * g as i64 - 2 + n as i64);
        prop_assert_eq!(with_one, euler * engine.integral(g, &a).unwrap());
    }

    #[test]
    fn psi_positive_and_symmetric(g in 0u32..=4, n in 1usize..=5, seed in any::<u64>()) {
        prop_assume!(dimension(g, n).is_some_and(|d| d <= 12));
        let mut rng = StdRng::seed_from_u64(seed);
        let a = composition(&mut rng, dimension(g, n).unwrap(), n);
        let engine = fresh_psi();
        let v = engine.integral(g, &a).unwrap();
        prop_assert!(!v.is_zero() && !v.is_negative());
        let mut shuffled = a.clone();
        shuffled.rotate_left(1);
        shuffled.swap(0, n - 1);
        prop_assert_eq!(engine.integral(g, &shuffled).unwrap(), v);
    }

    #[test]
    fn psi_degree_mismatch_vanishes(g in 0u32..=3, n in 1usize..=4, extra in 1u32..=3, seed in any::<u64>()) {
        prop_assume!(dimension(g, n).is_some());
        let mut rng = StdRng::seed_from_u64(seed);
        let a = composition(&mut rng, dimension(g, n).unwrap() + extra, n);
        prop_assert!(fresh_psi().integral(g, &a).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// Every GRR expansion order reaches the same value.
    #[test]
    fn grr_confluence(g in 1u32..=3, n in 1usize..=4, seed in any::<u64>(), order_seed in any::<u64>()) {
        prop_assume!(dimension(g, n).is_some_and(|d| d <= 8));
        let mut rng = StdRng::seed_from_u64(seed);
        let d = dimension(g, n).unwrap();
        let lam = lambda_indices(&mut rng, g, d);
        let deg: u32 = lam.iter().sum();
        prop_assume!(!lam.is_empty());
        let psi = composition(&mut rng, d - deg, n);
        let m = LambdaMonomial::from_indices(&lam);
        let reference = fresh_hodge(ExpansionOrder::LargestFirst).hodge_integral(g, n, &psi, &m).unwrap();
        for order in [ExpansionOrder::SmallestFirst, ExpansionOrder::Seeded(order_seed)] {
            let v = fresh_hodge(order).hodge_integral(g, n, &psi, &m).unwrap();
            prop_assert_eq!(&v, &reference, "order {:?} psi {:?} lambda {:?}", order, psi, lam);
        }
    }

    /// String and dilaton equations with λ classes inserted.
    #[test]
    fn hodge_string_and_dilaton(g in 1u32..=3, n in 1usize..=3, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let engine = fresh_hodge(ExpansionOrder::default());
        let d = dimension(g, n).unwrap();
        let lam = lambda_indices(&mut rng, g, d);
        let m = LambdaMonomial::from_indices(&lam);
        let deg: u32 = lam.iter().sum();

        let a = composition(&mut rng, d + 1 - deg, n);
        let lhs = engine.hodge_integral(g, n + 1, &[a.clone(), vec![0]].concat(), &m).unwrap();
        let mut rhs = ExactRational::zero();
        for i in 0..n {
            if a[i] > 0 {
                let mut b = a.clone();
                b[i] -= 1;
                rhs += engine.hodge_integral(g, n, &b, &m).unwrap();
            }
        }
        prop_assert_eq!(lhs, rhs);

        let a = composition(&mut rng, d - deg, n);
        let lhs = engine.hodge_integral(g, n + 1, &[a.clone(), vec![1]].concat(), &m).unwrap();
        let euler = ExactRational::from(2 * g as i64 - 2 + n as i64);
        prop_assert_eq!(lhs, euler * engine.hodge_integral(g, n, &a, &m).unwrap());
    }
}

/// Cycle decompositions of all permutations of `0..m`, each as a list of
/// index sets.
fn permutation_cycles(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            for mut rest in perms(without(&items, i)) {
                rest.insert(0, items[i]);
                out.push(rest);
            }
        }
        out
    }
    fn without(v: &[usize], i: usize) -> Vec<usize> {
        let mut w = v.to_vec();
        w.remove(i);
        w
    }
    perms((0..m).collect())
        .into_iter()
        .map(|sigma| {
            let mut seen = vec![false; m];
            let mut cycles = Vec::new();
            for start in 0..m {
                if seen[start] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    cycle.push(i);
                    i = sigma[i];
                }
                cycles.push(cycle);
            }
            cycles
        })
        .collect()
}

/// `∫ ψ^a ψ_{n+1}^{b_1+1} ... ψ_{n+m}^{b_m+1} = sum_σ ∫ ψ^a prod_{cycles c} κ_{b(c)}`,
/// which exercises κ removal against pure ψ integrals.
#[test]
fn kappa_against_permutation_expansion() {
    let mut rng = StdRng::seed_from_u64(7);
    let engine = fresh_hodge(ExpansionOrder::default());
    for _ in 0..40 {
        let g = rng.gen_range(0..=2u32);
        let n = rng.gen_range(if g == 0 { 3 } else { 1 }..=3usize);
        let m = rng.gen_range(1..=3usize);
        let d = dimension(g, n).unwrap();
        let kappa_total = rng.gen_range(0..=d);
        let b = composition(&mut rng, kappa_total, m);
        let a = composition(&mut rng, d - kappa_total, n);

        let lifted: Vec<u32> = a.iter().copied().chain(b.iter().map(|x| x + 1)).collect();
        let pure = engine.psi_engine().integral(g, &lifted).unwrap();

        let mut expanded = ExactRational::zero();
        for cycles in permutation_cycles(m) {
            let kappa: Vec<u32> = cycles.iter().map(|c| c.iter().map(|&i| b[i]).sum()).collect();
            let mono = TautMonomial::new(g, a.clone(), kappa, vec![]).unwrap();
            expanded += engine.integrate(&mono).unwrap();
        }
        assert_eq!(pure, expanded, "g={g} a={a:?} b={b:?}");
    }
}

/// λ-free Hodge integrals are the ψ integrals.
#[test]
fn lambda_free_agrees_with_psi() {
    let engine = fresh_hodge(ExpansionOrder::default());
    let psi = fresh_psi();
    for (g, a) in [(1, vec![1]), (2, vec![2, 2]), (2, vec![4]), (3, vec![3, 2, 2, 0]), (0, vec![1, 0, 0, 0])] {
        let n = a.len();
        assert_eq!(
            engine.hodge_integral(g, n, &a, &LambdaMonomial::one()).unwrap(),
            psi.integral(g, &a).unwrap()
        );
    }
}
