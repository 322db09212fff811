//! Work items of the Hodge reduction and the two rewriting steps applied to
//! them: Mumford's GRR expansion of one `ch_{2l-1}(E)` factor and the
//! removal of κ classes through the forgetful map.

use std::collections::BTreeMap;

use crate::algebra::{bernoulli, factorial, ExactRational};
use crate::error::{Error, Result};
use crate::multiset::{group, sorted_desc, sub_multisets};
use crate::psi::{dimension, is_stable};

/// `scalar * prod ψ_i^{a_i} * prod κ_b * prod ch_{2l-1}(E)` on `M̄_{g,n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TautMonomial {
    pub genus: u32,
    /// One entry per marking.
    pub psi: Vec<u32>,
    pub kappa: Vec<u32>,
    /// Odd Chern character indices.
    pub ch: Vec<u32>,
    pub scalar: ExactRational,
}

impl TautMonomial {
    pub fn new(genus: u32, psi: Vec<u32>, kappa: Vec<u32>, ch: Vec<u32>) -> Result<Self> {
        if !is_stable(genus, psi.len()) {
            return Err(Error::Unstable { g: genus, n: psi.len() });
        }
        if let Some(&even) = ch.iter().find(|&&c| c % 2 == 0) {
            return Err(Error::InvalidInput(format!(
                "ch_{even}(E) is an even Chern character of the Hodge bundle and vanishes"
            )));
        }
        Ok(Self { genus, psi, kappa, ch, scalar: ExactRational::one() })
    }

    pub fn with_scalar(mut self, scalar: ExactRational) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn markings(&self) -> usize {
        self.psi.len()
    }

    /// Total codimension of the class.
    pub fn degree(&self) -> u32 {
        self.psi.iter().chain(&self.kappa).chain(&self.ch).sum()
    }

    pub fn dimension(&self) -> u32 {
        dimension(self.genus, self.psi.len()).expect("monomials are stable")
    }

    pub fn is_top_degree(&self) -> bool {
        self.degree() == self.dimension()
    }

    /// Sorted copy: markings, κ and ch all descending. Integrals are
    /// symmetric in the markings, so this does not change the value.
    pub fn canonical(&self) -> Self {
        Self {
            genus: self.genus,
            psi: sorted_desc(self.psi.clone()),
            kappa: sorted_desc(self.kappa.clone()),
            ch: sorted_desc(self.ch.clone()),
            scalar: self.scalar.clone(),
        }
    }

    fn same_space(&self, psi: Vec<u32>, kappa: Vec<u32>, ch: Vec<u32>, scalar: ExactRational) -> Self {
        Self { genus: self.genus, psi, kappa, ch, scalar }
    }
}

/// A one-node boundary contribution produced by [`grr_expand`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundaryTerm {
    /// Pushforward from `M̄_{g-1,n+2}`; the two node branches are the last two
    /// markings of `monomial`, carrying `node_powers`.
    Irreducible { node_powers: (u32, u32), monomial: TautMonomial },
    /// Pushforward from `M̄_{h,S+1} x M̄_{g-h,S^c+1}`. Each side's node branch
    /// is its last marking. `moved` lists the ψ-exponents of the markings in
    /// `S`; labelled subsets that differ only by swapping markings with equal
    /// exponents are merged into one term, with the count folded into `scalar`.
    /// The value is `scalar * ∫left * ∫right`.
    Separating {
        genus_split: (u32, u32),
        moved: Vec<u32>,
        node_powers: (u32, u32),
        left: TautMonomial,
        right: TautMonomial,
        scalar: ExactRational,
    },
}

#[derive(Clone, Debug, Default)]
pub struct GrrExpansion {
    /// Terms on the same space: the κ term and the `-ψ_i^{2l-1}` terms.
    pub monomials: Vec<TautMonomial>,
    pub boundary: Vec<BoundaryTerm>,
}

/// `B_{2l} / (2l)!`
fn grr_coefficient(l: u32) -> Result<ExactRational> {
    Ok(bernoulli(2 * l)? / ExactRational::from_integer(factorial(2 * l)))
}

fn sign(i: u32) -> ExactRational {
    if i.is_multiple_of(2) {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

/// Replaces the factor `m.ch[position] = ch_{2l-1}(E)` by
///
/// `B_{2l}/(2l)! * ( κ_{2l-1} - sum_i ψ_i^{2l-1}
///     + 1/2 sum_ξ ξ_*( sum_{i+j=2l-2} (-1)^i ψ'^i ψ''^j ) )`
///
/// where ξ runs over the irreducible gluing map once and over every ordered
/// separating pair `(h, S)`. The remaining factors are pulled back along each
/// gluing map: ψ_i stays on the side carrying marking i, κ_b and ch_m split
/// as a sum over the two sides.
///
/// Terms that cannot have top degree are skipped, and so are separating terms
/// that put a ch factor on a genus-0 side, where the Hodge bundle is zero.
pub fn grr_expand(m: &TautMonomial, position: usize) -> Result<GrrExpansion> {
    let chosen = *m.ch.get(position).ok_or_else(|| {
        Error::InvalidInput(format!("no ch factor at position {position} of {:?}", m.ch))
    })?;
    if chosen % 2 == 0 {
        return Err(Error::InvalidInput(format!("ch_{chosen}(E) vanishes and is never expanded")));
    }
    let mut out = GrrExpansion::default();
    if !m.is_top_degree() || m.scalar.is_zero() {
        return Ok(out);
    }
    let m = {
        let mut rest = m.clone();
        rest.ch.remove(position);
        rest.canonical()
    };
    let l = chosen.div_ceil(2);
    let coeff = grr_coefficient(l)? * &m.scalar;
    let half = &coeff * &ExactRational::frac(1, 2);
    let node_total = 2 * l - 2;

    let mut kappa = m.kappa.clone();
    kappa.push(chosen);
    out.monomials.push(m.same_space(m.psi.clone(), sorted_desc(kappa), m.ch.clone(), coeff.clone()));

    for (value, count) in group(&m.psi) {
        let mut psi = m.psi.clone();
        let idx = psi.iter().position(|&x| x == value).expect("value present");
        psi[idx] += chosen;
        let scalar = -(&coeff * &ExactRational::from(count as i64));
        out.monomials.push(m.same_space(sorted_desc(psi), m.kappa.clone(), m.ch.clone(), scalar));
    }

    if m.genus >= 1 {
        for i in 0..=node_total / 2 {
            let j = node_total - i;
            let weight = if i == j { 1 } else { 2 };
            let mut psi = m.psi.clone();
            psi.push(i);
            psi.push(j);
            let monomial = TautMonomial {
                genus: m.genus - 1,
                psi,
                kappa: m.kappa.clone(),
                ch: m.ch.clone(),
                scalar: &half * &(sign(i) * ExactRational::from(weight)),
            };
            out.boundary.push(BoundaryTerm::Irreducible { node_powers: (i, j), monomial });
        }
    }

    let psi_splits = sub_multisets(&group(&m.psi));
    let kappa_splits = sub_multisets(&group(&m.kappa));
    let ch_splits = sub_multisets(&group(&m.ch));
    for h in 0..=m.genus {
        let h2 = m.genus - h;
        for (psi_l, psi_r, mult_psi) in &psi_splits {
            let (Some(dim_l), Some(dim_r)) =
                (dimension(h, psi_l.len() + 1), dimension(h2, psi_r.len() + 1))
            else {
                continue;
            };
            for (kappa_l, kappa_r, mult_kappa) in &kappa_splits {
                for (ch_l, ch_r, mult_ch) in &ch_splits {
                    if (h == 0 && !ch_l.is_empty()) || (h2 == 0 && !ch_r.is_empty()) {
                        continue;
                    }
                    let deg_l: u32 = psi_l.iter().chain(kappa_l).chain(ch_l).sum();
                    let deg_r: u32 = psi_r.iter().chain(kappa_r).chain(ch_r).sum();
                    let Some(i) = dim_l.checked_sub(deg_l).filter(|&i| i <= node_total) else {
                        continue;
                    };
                    let j = node_total - i;
                    if deg_r + j != dim_r {
                        continue;
                    }
                    let mult = ExactRational::from_integer(mult_psi * mult_kappa * mult_ch);
                    let side = |g: u32, psi: &[u32], node: u32, kappa: &[u32], ch: &[u32]| {
                        let mut p = psi.to_vec();
                        p.push(node);
                        TautMonomial {
                            genus: g,
                            psi: p,
                            kappa: kappa.to_vec(),
                            ch: ch.to_vec(),
                            scalar: ExactRational::one(),
                        }
                    };
                    out.boundary.push(BoundaryTerm::Separating {
                        genus_split: (h, h2),
                        moved: psi_l.clone(),
                        node_powers: (i, j),
                        left: side(h, psi_l, i, kappa_l, ch_l),
                        right: side(h2, psi_r, j, kappa_r, ch_r),
                        scalar: &half * &(sign(i) * mult),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Removes every κ factor, returning a κ-free combination with the same
/// integral.
///
/// `κ_0 = 2g-2+n` is a scalar. Otherwise the last κ is traded for a new
/// marking via `κ_b = π_*(ψ_{n+1}^{b+1})`:
///
/// `<τ_a κ_{b_1}..κ_{b_m}> = <τ_a τ_{b_m+1} κ_{b_1}..κ_{b_{m-1}}>
///      - sum_{∅≠S⊆[m-1]} <τ_a κ_{b_m+b_S} prod_{k∉S,k<m} κ_{b_k}>`
///
/// where `b_S` is the sum of `b_k` over `S`; the subsets come from expanding
/// `π^*κ_b = κ_b - ψ_{n+1}^b` across the product.
///
/// Chern characters of the Hodge bundle pull back unchanged along the
/// forgetful map, so ch factors ride along.
pub fn kappa_reduce(m: &TautMonomial) -> Vec<TautMonomial> {
    let mut done: BTreeMap<(Vec<u32>, Vec<u32>), ExactRational> = BTreeMap::new();
    let mut pending = vec![m.canonical()];
    let genus = m.genus;
    while let Some(mut cur) = pending.pop() {
        if cur.scalar.is_zero() {
            continue;
        }
        let zeros = cur.kappa.iter().filter(|&&b| b == 0).count();
        if zeros > 0 {
            cur.kappa.retain(|&b| b != 0);
            let euler = ExactRational::from(2 * genus as i64 - 2 + cur.psi.len() as i64);
            cur.scalar = &cur.scalar * &euler.pow(zeros as u32);
            pending.push(cur);
            continue;
        }
        let Some(last) = cur.kappa.pop() else {
            let key = (sorted_desc(cur.psi), sorted_desc(cur.ch));
            let entry = done.entry(key).or_insert_with(ExactRational::zero);
            *entry += cur.scalar;
            continue;
        };
        let rest = cur.kappa.len();
        for subset in 1u32..(1 << rest) {
            let mut merged = last;
            let mut kappa = Vec::with_capacity(rest);
            for (k, &b) in cur.kappa.iter().enumerate() {
                if subset & (1 << k) != 0 {
                    merged += b;
                } else {
                    kappa.push(b);
                }
            }
            kappa.push(merged);
            pending.push(cur.same_space(cur.psi.clone(), kappa, cur.ch.clone(), -&cur.scalar));
        }
        let mut psi = cur.psi.clone();
        psi.push(last + 1);
        pending.push(cur.same_space(psi, cur.kappa.clone(), cur.ch.clone(), cur.scalar.clone()));
    }
    done.into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|((psi, ch), scalar)| TautMonomial { genus, psi, kappa: Vec::new(), ch, scalar })
        .collect()
}
