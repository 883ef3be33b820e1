//! Subset enumeration in canonical order.

use crate::species::SpeciesSet;

/// Number of subsets of an `m`-set with at most `max_card` elements.
pub fn count_subsets(m: usize, max_card: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=max_card.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - k) as u128) / (k as u128 + 1);
    }
    total
}

/// Subsets of `base` with at most `max_card` elements, by ascending cardinality
/// and then ascending index-order encoding (colex order within a size).
pub fn canonical_subsets(base: &SpeciesSet, max_card: usize) -> CanonicalSubsets {
    let elems: Vec<usize> = base.iter().collect();
    let max_card = max_card.min(elems.len());
    let mut empty = base.clone();
    empty.subtract(base);
    CanonicalSubsets {
        elems,
        empty,
        max_card,
        positions: Some(Vec::new()),
    }
}

pub struct CanonicalSubsets {
    elems: Vec<usize>,
    empty: SpeciesSet,
    max_card: usize,
    /// Positions into `elems` of the next subset; strictly increasing.
    positions: Option<Vec<usize>>,
}

impl CanonicalSubsets {
    fn advance(&mut self) {
        let Some(pos) = self.positions.as_mut() else { return };
        let k = pos.len();
        let m = self.elems.len();
        for i in 0..k {
            let limit = if i + 1 < k { pos[i + 1] } else { m };
            if pos[i] + 1 < limit {
                pos[i] += 1;
                for (j, p) in pos.iter_mut().enumerate().take(i) {
                    *p = j;
                }
                return;
            }
        }
        if k < self.max_card {
            *pos = (0..=k).collect();
        } else {
            self.positions = None;
        }
    }
}

impl Iterator for CanonicalSubsets {
    type Item = SpeciesSet;

    fn next(&mut self) -> Option<SpeciesSet> {
        let pos = self.positions.as_ref()?;
        let mut set = self.empty.clone();
        for &p in pos {
            set.insert(self.elems[p]);
        }
        self.advance();
        Some(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::SpeciesTable;

    #[test]
    fn canonical_order_of_all_subsets() {
        let t = SpeciesTable::new(["a", "b", "c", "d"]).unwrap();
        let base = t.set_from_names(["a", "c", "d"]).unwrap();
        let got: Vec<SpeciesSet> = canonical_subsets(&base, 3).collect();
        let mut want: Vec<SpeciesSet> = (0u64..16)
            .map(|m| t.set_from_mask(m))
            .filter(|s| s.is_subset(&base))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cardinality_cap() {
        let t = SpeciesTable::new(["a", "b", "c", "d", "e"]).unwrap();
        let got: Vec<SpeciesSet> = canonical_subsets(&t.full_set(), 2).collect();
        assert_eq!(got.len() as u128, count_subsets(5, 2));
        assert_eq!(got.len(), 1 + 5 + 10);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(canonical_subsets(&t.empty_set(), 4).count(), 1);
        assert_eq!(canonical_subsets(&t.full_set(), 0).count(), 1);
    }

    #[test]
    fn counts() {
        assert_eq!(count_subsets(35, 35), 1u128 << 35);
        assert_eq!(count_subsets(10, 0), 1);
        assert_eq!(count_subsets(4, 2), 11);
    }
}
