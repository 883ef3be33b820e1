//! Word-sized evaluation for systems with at most 64 species.

use crate::reaction::ReactionSystem;
use crate::species::{SpeciesSet, SpeciesTable};

/// A reaction system compiled to `u64` masks (bit k = species k).
#[derive(Debug, Clone)]
pub struct MaskSystem {
    species: usize,
    reactions: Vec<(u64, u64, u64)>,
}

impl MaskSystem {
    /// `None` when the background set does not fit in one word.
    pub fn compile(system: &ReactionSystem) -> Option<Self> {
        let species = system.species().len();
        if species > 64 {
            return None;
        }
        let reactions = system
            .reactions()
            .iter()
            .map(|r| {
                (
                    r.reactants().to_mask().unwrap_or(0),
                    r.inhibitors().to_mask().unwrap_or(0),
                    r.products().to_mask().unwrap_or(0),
                )
            })
            .collect();
        Some(MaskSystem { species, reactions })
    }

    pub fn species(&self) -> usize {
        self.species
    }

    pub fn full(&self) -> u64 {
        if self.species == 64 {
            u64::MAX
        } else {
            (1u64 << self.species) - 1
        }
    }

    #[inline]
    pub fn res(&self, state: u64) -> u64 {
        let mut out = 0;
        for &(r, i, p) in &self.reactions {
            if state & r == r && state & i == 0 {
                out |= p;
            }
        }
        out
    }

    pub fn to_set(&self, table: &SpeciesTable, mask: u64) -> SpeciesSet {
        table.set_from_mask(mask)
    }
}

/// Yields all submasks of `mask` (including 0 and `mask`) in ascending numeric order.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(submasks(0b111).count(), 8);
    }
}
