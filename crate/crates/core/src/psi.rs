//! Pure ψ-class intersection numbers `<τ_{d_1} ... τ_{d_n}>_g`.
//!
//! Genus zero uses the multinomial closed form. Higher genus runs the DVV
//! recursion on the largest exponent, memoized in the shared
//! [`IntegralCache`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{double_factorial_odd, double_factorial_odd_below, factorial, ExactRational};
use crate::cache::IntegralCache;
use crate::error::{Error, Result};
use crate::multiset::{group, sorted_desc, sub_multisets};

/// Canonical key: genus plus exponents sorted in descending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PsiKey {
    genus: u32,
    exponents: Vec<u32>,
}

impl PsiKey {
    /// Accepts exponents in any order.
    pub fn new(genus: u32, exponents: Vec<u32>) -> Self {
        Self { genus, exponents: sorted_desc(exponents) }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn markings(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_stable(&self) -> bool {
        is_stable(self.genus, self.exponents.len())
    }

    /// `3g - 3 + n`, or `None` for unstable keys.
    pub fn dimension(&self) -> Option<u32> {
        dimension(self.genus, self.exponents.len())
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

pub fn is_stable(genus: u32, markings: usize) -> bool {
    2 * genus as i64 - 2 + markings as i64 > 0
}

/// Complex dimension of the moduli space, `None` when unstable.
pub fn dimension(genus: u32, markings: usize) -> Option<u32> {
    is_stable(genus, markings).then(|| 3 * genus + markings as u32 - 3)
}

impl fmt::Display for PsiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.genus)?;
        for (i, d) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub(crate) fn parse_u32_list(s: &str) -> Option<Vec<u32>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse_canonical_u32).collect()
}

pub(crate) fn parse_canonical_u32(s: &str) -> Option<u32> {
    let ok = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if ok {
        s.parse().ok()
    } else {
        None
    }
}

impl FromStr for PsiKey {
    type Err = Error;

    /// Only canonical keys parse: exponents already descending, `n >= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a canonical psi key: {s:?}"));
        let (g, exps) = s.split_once(':').ok_or_else(bad)?;
        let genus = parse_canonical_u32(g).ok_or_else(bad)?;
        let exponents = parse_u32_list(exps).ok_or_else(bad)?;
        if exponents.is_empty() || exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad());
        }
        Ok(Self { genus, exponents })
    }
}

/// `<τ_{d_1} ... τ_{d_n}>_0 = (n-3)! / prod d_i!`, zero off dimension.
pub fn psi_genus0(exponents: &[u32]) -> Result<ExactRational> {
    let n = exponents.len();
    if n < 3 {
        return Err(Error::Unstable { g: 0, n });
    }
    if exponents.iter().sum::<u32>() as usize != n - 3 {
        return Ok(ExactRational::zero());
    }
    let denom = exponents.iter().fold(factorial(0), |acc, &d| acc * factorial(d));
    Ok(ExactRational::new(factorial(n as u32 - 3), denom).expect("nonzero factorial"))
}

/// One step of DVV for `key` (which must be stable, of the right dimension
/// and not a base case), with subterms supplied by `sub`. Unstable subterms
/// are dropped before `sub` is called.
fn dvv_step(
    key: &PsiKey,
    sub: &mut dyn FnMut(&PsiKey) -> Result<ExactRational>,
) -> Result<ExactRational> {
    let g = key.genus;
    let d1 = key.exponents[0];
    let rest = &key.exponents[1..];
    let n = key.exponents.len();
    let mut total = ExactRational::zero();

    // Merging τ_{d_1} with another marking.
    if is_stable(g, n - 1) {
        for (j, &dj) in rest.iter().enumerate() {
            if j > 0 && rest[j - 1] == dj {
                continue;
            }
            let mult = rest.iter().filter(|&&x| x == dj).count() as i64;
            if d1 + dj == 0 {
                continue;
            }
            let mut exps: Vec<u32> = rest.to_vec();
            exps.remove(j);
            exps.push(d1 + dj - 1);
            let coeff = ExactRational::new(
                double_factorial_odd(d1 + dj - 1) * mult,
                double_factorial_odd_below(dj),
            )?;
            let v = sub(&PsiKey::new(g, exps))?;
            total += coeff * v;
        }
    }

    if d1 >= 2 {
        let groups = group(rest);
        let splits = sub_multisets(&groups);
        let mut quad = ExactRational::zero();
        for a in 0..=d1 - 2 {
            let b = d1 - 2 - a;
            let weight = ExactRational::from_integer(double_factorial_odd(a) * double_factorial_odd(b));
            let mut inner = ExactRational::zero();
            if g >= 1 {
                let mut exps = rest.to_vec();
                exps.push(a);
                exps.push(b);
                inner += sub(&PsiKey::new(g - 1, exps))?;
            }
            for (left, right, mult) in &splits {
                for g1 in 0..=g {
                    let g2 = g - g1;
                    if !is_stable(g1, left.len() + 1) || !is_stable(g2, right.len() + 1) {
                        continue;
                    }
                    let lk = PsiKey::new(g1, [left.as_slice(), &[a]].concat());
                    let rk = PsiKey::new(g2, [right.as_slice(), &[b]].concat());
                    if lk.dimension() != Some(lk.degree()) || rk.dimension() != Some(rk.degree()) {
                        continue;
                    }
                    let lv = sub(&lk)?;
                    if lv.is_zero() {
                        continue;
                    }
                    let rv = sub(&rk)?;
                    inner += ExactRational::from_integer(mult.clone()) * lv * rv;
                }
            }
            quad += weight * inner;
        }
        total += quad * ExactRational::frac(1, 2);
    }

    Ok(total / ExactRational::from_integer(double_factorial_odd(d1)))
}

/// Shared prologue: stability check, dimension filter and base cases.
/// `Ok(Some(v))` is a final answer; `Ok(None)` means recurse.
fn trivial_value(key: &PsiKey) -> Result<Option<ExactRational>> {
    let Some(dim) = key.dimension() else {
        return Err(Error::Unstable { g: key.genus, n: key.markings() });
    };
    if key.degree() != dim {
        return Ok(Some(ExactRational::zero()));
    }
    if key.genus == 0 && key.exponents == [0, 0, 0] {
        return Ok(Some(ExactRational::one()));
    }
    if key.genus == 1 && key.exponents == [1] {
        return Ok(Some(ExactRational::frac(1, 24)));
    }
    Ok(None)
}

/// Evaluator for pure ψ integrals backed by the shared cache.
#[derive(Clone)]
pub struct PsiEngine {
    cache: Arc<IntegralCache>,
}

impl PsiEngine {
    pub fn new(cache: Arc<IntegralCache>) -> Self {
        Self { cache }
    }

    pub fn cache(&self) -> &Arc<IntegralCache> {
        &self.cache
    }

    /// Raw-order entry point: exponents may come in any order.
    pub fn integral(&self, genus: u32, exponents: &[u32]) -> Result<ExactRational> {
        self.psi_integral(&PsiKey::new(genus, exponents.to_vec()))
    }

    pub fn psi_integral(&self, key: &PsiKey) -> Result<ExactRational> {
        if let Some(v) = trivial_value(key)? {
            return Ok(v);
        }
        if key.genus == 0 {
            return psi_genus0(&key.exponents);
        }
        if let Some(v) = self.cache.get_psi(key) {
            return Ok(v);
        }
        let v = dvv_step(key, &mut |k| self.psi_integral(k))?;
        self.cache.insert_psi(key.clone(), v.clone())?;
        Ok(v)
    }
}

/// DVV at every genus, genus zero included, with a private memo. Exists as
/// an independent cross-check of [`psi_genus0`].
pub fn psi_integral_dvv_only(key: &PsiKey) -> Result<ExactRational> {
    fn go(key: &PsiKey, memo: &mut HashMap<PsiKey, ExactRational>) -> Result<ExactRational> {
        if let Some(v) = trivial_value(key)? {
            return Ok(v);
        }
        if let Some(v) = memo.get(key) {
            return Ok(v.clone());
        }
        let v = dvv_step(key, &mut |k| go(k, memo))?;
        memo.insert(key.clone(), v.clone());
        Ok(v)
    }
    go(key, &mut HashMap::new())
}
