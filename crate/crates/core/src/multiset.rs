//! Small helpers for multisets of exponents stored as sorted vectors.

use num_bigint::BigInt;

use crate::algebra::binomial;

/// Run-length form of a sorted slice: `[(value, count)]` in input order.
pub(crate) fn group(values: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Every sub-multiset of `groups`, as `(chosen, rest, multiplicity)` where
/// `multiplicity` counts the labelled subsets collapsing onto that choice.
/// `chosen` and `rest` keep the order of `groups`.
pub(crate) fn sub_multisets(groups: &[(u32, u32)]) -> Vec<(Vec<u32>, Vec<u32>, BigInt)> {
    let mut out = vec![(Vec::new(), Vec::new(), BigInt::from(1))];
    for &(value, count) in groups {
        let mut next = Vec::with_capacity(out.len() * (count as usize + 1));
        for (chosen, rest, mult) in &out {
            for k in 0..=count {
                let mut c = chosen.clone();
                let mut r = rest.clone();
                c.extend(std::iter::repeat_n(value, k as usize));
                r.extend(std::iter::repeat_n(value, (count - k) as usize));
                next.push((c, r, mult * binomial(count, k)));
            }
        }
        out = next;
    }
    out
}

/// Sorts descending in place and returns the vector.
pub(crate) fn sorted_desc(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_multisets_count_labelled_subsets() {
        let groups = group(&[3, 1, 1, 0]);
        assert_eq!(groups, vec![(3, 1), (1, 2), (0, 1)]);
        let subs = sub_multisets(&groups);
        assert_eq!(subs.len(), 2 * 3 * 2);
        let total: BigInt = subs.iter().map(|(_, _, m)| m.clone()).sum();
        assert_eq!(total, BigInt::from(16));
    }
}
