use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use super::lambda::{lambda_to_ch, LambdaMonomial};
use super::reduction::{grr_expand, kappa_reduce, BoundaryTerm, TautMonomial};
use crate::algebra::ExactRational;
use crate::cache::IntegralCache;
use crate::error::{Error, Result};
use crate::multiset::sorted_desc;
use crate::psi::{dimension, parse_canonical_u32, parse_u32_list, PsiEngine, PsiKey};

/// Cache key for `∫_{M̄_{g,n}} prod ψ^{a_i} * λ-monomial`, printed as
/// `H:g:n:psi=a1,a2,...:lam=j1,j2,...` (both lists descending).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HodgeKey {
    genus: u32,
    psi: Vec<u32>,
    lambda: Vec<u32>,
}

impl HodgeKey {
    pub fn new(genus: u32, psi: Vec<u32>, lambda_indices: Vec<u32>) -> Self {
        let lambda = lambda_indices.into_iter().filter(|&j| j > 0).collect();
        Self { genus, psi: sorted_desc(psi), lambda: sorted_desc(lambda) }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn psi(&self) -> &[u32] {
        &self.psi
    }

    pub fn lambda(&self) -> LambdaMonomial {
        LambdaMonomial::from_indices(&self.lambda)
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for HodgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H:{}:{}:psi={}:lam={}",
            self.genus,
            self.psi.len(),
            join(&self.psi),
            join(&self.lambda)
        )
    }
}

impl FromStr for HodgeKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a canonical Hodge key: {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [tag, g, n, psi, lam] = parts.as_slice() else {
            return Err(bad());
        };
        if *tag != "H" {
            return Err(bad());
        }
        let genus = parse_canonical_u32(g).ok_or_else(bad)?;
        let n = parse_canonical_u32(n).ok_or_else(bad)? as usize;
        let psi = parse_u32_list(psi.strip_prefix("psi=").ok_or_else(bad)?).ok_or_else(bad)?;
        let lambda = parse_u32_list(lam.strip_prefix("lam=").ok_or_else(bad)?).ok_or_else(bad)?;
        let descending = |v: &[u32]| v.windows(2).all(|w| w[0] >= w[1]);
        if psi.len() != n || n == 0 || !descending(&psi) || !descending(&lambda) || lambda.contains(&0) {
            return Err(bad());
        }
        Ok(Self { genus, psi, lambda })
    }
}

/// Which ch factor the reduction expands first. Every choice gives the same
/// integral; the non-default ones exist to test that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExpansionOrder {
    #[default]
    LargestFirst,
    SmallestFirst,
    /// Pseudo-random but deterministic per state.
    Seeded(u64),
}

/// Reduced work item: κ-free, canonical, scalar one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct ChState {
    genus: u32,
    psi: Vec<u32>,
    ch: Vec<u32>,
}

/// Hodge integrals by GRR reduction to pure ψ integrals.
///
/// Reduction: a top-degree monomial with ch factors has one factor expanded
/// by [`grr_expand`]; κ classes produced on the way are removed immediately
/// with [`kappa_reduce`]; ch-free monomials go to the [`PsiEngine`]. On genus
/// 0 the Hodge bundle is zero, so any ch factor kills the term.
pub struct HodgeEngine {
    psi: PsiEngine,
    order: ExpansionOrder,
    states: RwLock<HashMap<ChState, ExactRational>>,
}

impl HodgeEngine {
    pub fn new(cache: Arc<IntegralCache>) -> Self {
        Self::with_order(cache, ExpansionOrder::default())
    }

    pub fn with_order(cache: Arc<IntegralCache>, order: ExpansionOrder) -> Self {
        Self { psi: PsiEngine::new(cache), order, states: RwLock::new(HashMap::new()) }
    }

    pub fn psi_engine(&self) -> &PsiEngine {
        &self.psi
    }

    pub fn cache(&self) -> &Arc<IntegralCache> {
        self.psi.cache()
    }

    /// `∫_{M̄_{g,n}} prod ψ_i^{a_i} * m`, zero unless the degree is `3g-3+n`.
    pub fn hodge_integral(
        &self,
        genus: u32,
        n: usize,
        psi_exponents: &[u32],
        m: &LambdaMonomial,
    ) -> Result<ExactRational> {
        if psi_exponents.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} ψ-exponents given for {n} markings",
                psi_exponents.len()
            )));
        }
        let Some(dim) = dimension(genus, n) else {
            return Err(Error::Unstable { g: genus, n });
        };
        if psi_exponents.iter().sum::<u32>() + m.degree() != dim {
            return Ok(ExactRational::zero());
        }
        if m.is_one() {
            return self.psi.psi_integral(&PsiKey::new(genus, psi_exponents.to_vec()));
        }
        let key = HodgeKey::new(genus, psi_exponents.to_vec(), m.indices());
        if let Some(v) = self.cache().get_hodge(&key) {
            return Ok(v);
        }
        let mut total = ExactRational::zero();
        for (ch, coeff) in lambda_to_ch(m, genus) {
            let state = ChState { genus, psi: key.psi.clone(), ch };
            total += coeff * self.eval_state(&state)?;
        }
        self.cache().insert_hodge(key, total.clone())?;
        Ok(total)
    }

    /// Integral of an arbitrary monomial (κ and ch factors allowed).
    pub fn integrate(&self, m: &TautMonomial) -> Result<ExactRational> {
        if dimension(m.genus, m.markings()).is_none() {
            return Err(Error::Unstable { g: m.genus, n: m.markings() });
        }
        if m.scalar.is_zero() || !m.is_top_degree() {
            return Ok(ExactRational::zero());
        }
        if !m.kappa.is_empty() {
            let mut total = ExactRational::zero();
            for reduced in kappa_reduce(m) {
                total += self.integrate(&reduced)?;
            }
            return Ok(total);
        }
        let canon = m.canonical();
        let state = ChState { genus: canon.genus, psi: canon.psi, ch: canon.ch };
        Ok(&m.scalar * &self.eval_state(&state)?)
    }

    fn pick(&self, state: &ChState) -> usize {
        let len = state.ch.len();
        match self.order {
            ExpansionOrder::LargestFirst => 0,
            ExpansionOrder::SmallestFirst => len - 1,
            ExpansionOrder::Seeded(seed) => {
                let mut h = DefaultHasher::new();
                seed.hash(&mut h);
                state.hash(&mut h);
                (h.finish() % len as u64) as usize
            }
        }
    }

    fn eval_state(&self, state: &ChState) -> Result<ExactRational> {
        debug_assert!(state.ch.iter().all(|c| c % 2 == 1));
        if state.ch.is_empty() {
            return self.psi.psi_integral(&PsiKey::new(state.genus, state.psi.clone()));
        }
        if state.genus == 0 {
            return Ok(ExactRational::zero());
        }
        if let Some(v) = self.states.read().expect("memo lock poisoned").get(state) {
            return Ok(v.clone());
        }
        let monomial = TautMonomial {
            genus: state.genus,
            psi: state.psi.clone(),
            kappa: Vec::new(),
            ch: state.ch.clone(),
            scalar: ExactRational::one(),
        };
        let expansion = grr_expand(&monomial, self.pick(state))?;
        let mut total = ExactRational::zero();
        for m in &expansion.monomials {
            total += self.integrate(m)?;
        }
        for term in &expansion.boundary {
            total += match term {
                BoundaryTerm::Irreducible { monomial, .. } => self.integrate(monomial)?,
                BoundaryTerm::Separating { left, right, scalar, .. } => {
                    let l = self.integrate(left)?;
                    if l.is_zero() {
                        continue;
                    }
                    scalar * &(l * self.integrate(right)?)
                }
            };
        }
        self.states
            .write()
            .expect("memo lock poisoned")
            .insert(state.clone(), total.clone());
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> HodgeEngine {
        HodgeEngine::new(Arc::new(IntegralCache::new()))
    }

    fn q(p: i64, d: i64) -> ExactRational {
        ExactRational::frac(p, d)
    }

    #[test]
    fn anchors() {
        let e = engine();
        let l1 = LambdaMonomial::from_indices(&[1]);
        assert_eq!(e.hodge_integral(1, 1, &[0], &l1).unwrap(), q(1, 24));
        assert_eq!(e.hodge_integral(1, 2, &[0, 0], &LambdaMonomial::from_indices(&[1, 1])).unwrap(), q(0, 1));
        assert_eq!(e.hodge_integral(2, 1, &[4], &LambdaMonomial::one()).unwrap(), q(1, 1152));
        assert_eq!(e.hodge_integral(1, 2, &[1, 0], &l1).unwrap(), q(1, 24));
    }

    #[test]
    fn grr_expansion_of_ch1_integrates_to_one_24th() {
        let e = engine();
        let m = TautMonomial::new(1, vec![0], vec![], vec![1]).unwrap();
        assert_eq!(e.integrate(&m).unwrap(), q(1, 24));
        let kappa = TautMonomial::new(1, vec![0], vec![1], vec![]).unwrap();
        assert_eq!(e.integrate(&kappa).unwrap(), q(1, 24));
    }

    #[test]
    fn classical_values() {
        let e = engine();
        // b_g = ∫_{M̄_{g,1}} ψ^{2g-2} λ_g = (2^{2g-1}-1)/2^{2g-1} |B_{2g}|/(2g)!
        assert_eq!(e.hodge_integral(2, 1, &[2], &LambdaMonomial::from_indices(&[2])).unwrap(), q(7, 5760));
        assert_eq!(e.hodge_integral(3, 1, &[4], &LambdaMonomial::from_indices(&[3])).unwrap(), q(31, 967680));
        // ∫_{M̄_{g,1}} ψ^{g-1} λ_g λ_{g-1} = |B_{2g}| / (2^{2g-1} (2g-1)!! 2g)
        assert_eq!(e.hodge_integral(2, 1, &[1], &LambdaMonomial::from_indices(&[2, 1])).unwrap(), q(1, 2880));
    }

    #[test]
    fn unstable_rejected() {
        let e = engine();
        assert!(matches!(
            e.hodge_integral(0, 2, &[0, 0], &LambdaMonomial::one()),
            Err(Error::Unstable { .. })
        ));
        assert!(e.hodge_integral(1, 2, &[0], &LambdaMonomial::one()).is_err());
    }

    #[test]
    fn hodge_key_format() {
        let k = HodgeKey::new(2, vec![0, 3], vec![1, 2, 0]);
        assert_eq!(k.to_string(), "H:2:2:psi=3,0:lam=2,1");
        assert_eq!(k.to_string().parse::<HodgeKey>().unwrap(), k);
        let empty = HodgeKey::new(1, vec![1], vec![]);
        assert_eq!(empty.to_string(), "H:1:1:psi=1:lam=");
        assert_eq!(empty.to_string().parse::<HodgeKey>().unwrap(), empty);
        for bad in ["H:2:1:psi=3,0:lam=", "H:2:2:psi=0,3:lam=", "X:1:1:psi=1:lam=", "H:1:1:psi=1:lam=0"] {
            assert!(bad.parse::<HodgeKey>().is_err(), "{bad}");
        }
    }
}
