use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{factorial, ExactRational};

/// Monomial `prod_j λ_j^{m_j}` in the Chern classes of the Hodge bundle.
/// `λ_0 = 1` is never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LambdaMonomial {
    exponents: BTreeMap<u32, u32>,
}

impl LambdaMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// From a list of λ indices with repetition, e.g. `[1, 1, 3]` for
    /// `λ_1^2 λ_3`. Zeros are dropped.
    pub fn from_indices(indices: &[u32]) -> Self {
        let mut exponents = BTreeMap::new();
        for &j in indices.iter().filter(|&&j| j > 0) {
            *exponents.entry(j).or_insert(0) += 1;
        }
        Self { exponents }
    }

    /// `λ_k λ_j`
    pub fn pair(k: u32, j: u32) -> Self {
        Self::from_indices(&[k, j])
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exponents
    }

    /// Indices with repetition, descending.
    pub fn indices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&j, &m) in self.exponents.iter().rev() {
            out.extend(std::iter::repeat_n(j, m as usize));
        }
        out
    }

    /// Total codimension `sum j * m_j`.
    pub fn degree(&self) -> u32 {
        self.exponents.iter().map(|(j, m)| j * m).sum()
    }

    pub fn max_index(&self) -> u32 {
        self.exponents.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (j, m)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "lambda_{j}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Monomial in `ch_1, ch_3, ch_5, ...`, as its odd indices sorted descending.
pub type ChMonomial = Vec<u32>;

/// Rational linear combination of [`ChMonomial`]s.
pub type ChCombination = BTreeMap<ChMonomial, ExactRational>;

/// Partitions of `n` into odd parts, each descending.
fn odd_partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut part = max_part.min(n);
    if part.is_multiple_of(2) {
        part = part.saturating_sub(1);
    }
    while part >= 1 {
        for mut tail in odd_partitions(n - part, part) {
            tail.insert(0, part);
            out.push(tail);
        }
        if part < 2 {
            break;
        }
        part -= 2;
    }
    out
}

/// `λ_j` in terms of Chern characters. From
/// `c(E) = exp(sum_m (-1)^{m-1} (m-1)! ch_m)` with every even `ch` zero, the
/// coefficient of `prod ch_m^{r_m}` is `prod ((m-1)!)^{r_m} / r_m!`.
fn single_lambda(j: u32) -> ChCombination {
    let mut out = ChCombination::new();
    for partition in odd_partitions(j, j) {
        let mut coeff = ExactRational::one();
        let mut runs: BTreeMap<u32, u32> = BTreeMap::new();
        for &m in &partition {
            *runs.entry(m).or_insert(0) += 1;
        }
        for (&m, &r) in &runs {
            let num = factorial(m - 1).pow(r);
            coeff *= ExactRational::new(num, factorial(r)).expect("nonzero factorial");
        }
        out.insert(partition, coeff);
    }
    out
}

fn multiply(a: &ChCombination, b: &ChCombination) -> ChCombination {
    let mut out = ChCombination::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m: Vec<u32> = ma.iter().chain(mb).copied().collect();
            m.sort_unstable_by(|x, y| y.cmp(x));
            let c = ca * cb;
            let entry = out.entry(m).or_insert_with(ExactRational::zero);
            *entry += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rewrites a λ-monomial on genus `genus` as a polynomial in the odd Chern
/// characters. Any `λ_j` with `j > genus` vanishes (the bundle has rank
/// `genus`), which gives the empty combination.
pub fn lambda_to_ch(m: &LambdaMonomial, genus: u32) -> ChCombination {
    if m.max_index() > genus {
        return ChCombination::new();
    }
    let mut acc: ChCombination = [(Vec::new(), ExactRational::one())].into_iter().collect();
    for (&j, &mult) in m.exponents() {
        let factor = single_lambda(j);
        for _ in 0..mult {
            acc = multiply(&acc, &factor);
        }
    }
    acc
}
