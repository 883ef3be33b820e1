//! Species tables and fixed-universe species sets.
//!
//! A [`SpeciesTable`] interns species names into dense indices and defines the
//! background set. Every [`SpeciesSet`] is a bit-vector over one table and
//! carries that table's fingerprint, so sets built against different tables
//! can be told apart instead of silently aliasing indices.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Prefix used for blocking-inhibitor species in the concrete syntax.
pub const BLOCKER_PREFIX: &str = "i";

/// Returns true if `name` matches `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Interned, ordered list of species names.
#[derive(Clone)]
pub struct SpeciesTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
    id: u64,
}

impl SpeciesTable {
    /// Builds a table from names in order. Names must be unique identifiers.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = SpeciesTable {
            names: Vec::new(),
            index: HashMap::new(),
            id: 0,
        };
        for name in names {
            table.push(name.into())?;
        }
        table.id = fingerprint(&table.names);
        Ok(table)
    }

    pub fn empty() -> Self {
        SpeciesTable::new(Vec::<String>::new()).expect("empty table is valid")
    }

    fn push(&mut self, name: String) -> Result<usize> {
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateSpecies(name));
        }
        let k = self.names.len();
        self.index.insert(name.clone(), k);
        self.names.push(name);
        Ok(k)
    }

    /// A new table with `extra` appended after the existing names.
    pub fn with_appended<I, S>(&self, extra: I) -> Result<SpeciesTable>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        SpeciesTable::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.into_iter().map(Into::into)),
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Fingerprint of the name list; equal tables share it.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Report name: `iX` is shown as `ι_X` when `X` is also a species.
    pub fn display_name(&self, k: usize) -> String {
        let name = &self.names[k];
        match name.strip_prefix(BLOCKER_PREFIX) {
            Some(base) if !base.is_empty() && self.index.contains_key(base) => format!("ι_{base}"),
            _ => name.clone(),
        }
    }

    pub fn empty_set(&self) -> SpeciesSet {
        SpeciesSet::empty(self.id, self.names.len())
    }

    pub fn full_set(&self) -> SpeciesSet {
        let mut set = self.empty_set();
        for k in 0..self.names.len() {
            set.insert(k);
        }
        set
    }

    pub fn set_from_names<I, S>(&self, names: I) -> Result<SpeciesSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = self.empty_set();
        for name in names {
            let name = name.as_ref();
            let k = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownSpecies(name.to_string()))?;
            set.insert(k);
        }
        Ok(set)
    }

    pub fn set_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<SpeciesSet> {
        let mut set = self.empty_set();
        for k in indices {
            if k >= self.len() {
                return Err(Error::IndexOutOfRange { index: k, len: self.len() });
            }
            set.insert(k);
        }
        Ok(set)
    }

    /// Set whose members are the one-bits of `mask`. Bits beyond the table are dropped.
    pub fn set_from_mask(&self, mask: u64) -> SpeciesSet {
        let mut set = self.empty_set();
        if !set.words.is_empty() {
            set.words[0] = mask & low_bits(self.len().min(64));
        }
        set
    }

    /// Sorted-by-index member names.
    pub fn names_of(&self, set: &SpeciesSet) -> Vec<String> {
        set.iter().map(|k| self.names[k].clone()).collect()
    }

    /// `{a, b, c}` using raw names.
    pub fn format_set(&self, set: &SpeciesSet) -> String {
        format!("{{{}}}", self.names_of(set).join(", "))
    }

    /// `{a, ι_b}` using report names.
    pub fn display_set(&self, set: &SpeciesSet) -> String {
        let names: Vec<String> = set.iter().map(|k| self.display_name(k)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn check(&self, set: &SpeciesSet) -> Result<()> {
        if set.table != self.id || set.universe as usize != self.len() {
            return Err(Error::SpeciesMismatch);
        }
        Ok(())
    }
}

impl PartialEq for SpeciesTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for SpeciesTable {}

impl fmt::Debug for SpeciesTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

fn fingerprint(names: &[String]) -> u64 {
    let mut h = DefaultHasher::new();
    names.hash(&mut h);
    h.finish()
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of a species table's background set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpeciesSet {
    table: u64,
    universe: u32,
    words: SmallVec<[u64; 1]>,
}

impl SpeciesSet {
    fn empty(table: u64, universe: usize) -> Self {
        SpeciesSet {
            table,
            universe: universe as u32,
            words: SmallVec::from_elem(0, universe.div_ceil(64)),
        }
    }

    /// Size of the background set this set lives in.
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn table_id(&self) -> u64 {
        self.table
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.universe() && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    /// # Panics
    /// If `k` is outside the background set.
    pub fn insert(&mut self, k: usize) {
        assert!(k < self.universe(), "species index {k} out of range");
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn remove(&mut self, k: usize) {
        if k < self.universe() {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn with(&self, k: usize) -> SpeciesSet {
        let mut s = self.clone();
        s.insert(k);
        s
    }

    pub fn without(&self, k: usize) -> SpeciesSet {
        let mut s = self.clone();
        s.remove(k);
        s
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn same_table(&self, other: &SpeciesSet) -> bool {
        self.table == other.table && self.universe == other.universe
    }

    pub fn check_compatible(&self, other: &SpeciesSet) -> Result<()> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::SpeciesMismatch)
        }
    }

    fn assert_compatible(&self, other: &SpeciesSet) {
        assert!(self.same_table(other), "species sets over different tables");
    }

    pub fn is_subset(&self, other: &SpeciesSet) -> bool {
        self.assert_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &SpeciesSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &SpeciesSet) -> bool {
        self.assert_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &SpeciesSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &SpeciesSet) {
        self.assert_compatible(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &SpeciesSet) {
        self.assert_compatible(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &SpeciesSet) {
        self.assert_compatible(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// The low 64 members as a bitmask, when the background set fits in one word.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Canonical order: ascending cardinality, then ascending index-order encoding.
    pub fn canonical_cmp(&self, other: &SpeciesSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.encoding_cmp(other))
    }

    /// Compares the sets as binary numbers with bit k = species k.
    pub fn encoding_cmp(&self, other: &SpeciesSet) -> Ordering {
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.words.len().cmp(&other.words.len())
    }
}

impl PartialOrd for SpeciesSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SpeciesSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
            .then_with(|| self.table.cmp(&other.table))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl fmt::Debug for SpeciesSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for &SpeciesSet {
    type Output = SpeciesSet;
    fn bitor(self, rhs: &SpeciesSet) -> SpeciesSet {
        let mut out = self.clone();
        out.union_with(rhs);
        out
    }
}

impl BitAnd for &SpeciesSet {
    type Output = SpeciesSet;
    fn bitand(self, rhs: &SpeciesSet) -> SpeciesSet {
        let mut out = self.clone();
        out.intersect_with(rhs);
        out
    }
}

impl Sub for &SpeciesSet {
    type Output = SpeciesSet;
    fn sub(self, rhs: &SpeciesSet) -> SpeciesSet {
        let mut out = self.clone();
        out.subtract(rhs);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> SpeciesTable {
        SpeciesTable::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn index_roundtrip() {
        let t = abc();
        for (k, n) in t.names().iter().enumerate() {
            assert_eq!(t.index_of(n), Some(k));
        }
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(SpeciesTable::new(["a", "a"]), Err(Error::DuplicateSpecies(_))));
        assert!(matches!(SpeciesTable::new(["1a"]), Err(Error::InvalidName(_))));
        assert!(matches!(SpeciesTable::new([""]), Err(Error::InvalidName(_))));
    }

    #[test]
    fn set_algebra() {
        let t = abc();
        let ab = t.set_from_names(["a", "b"]).unwrap();
        let bc = t.set_from_names(["b", "c"]).unwrap();
        assert_eq!(&ab | &bc, t.full_set());
        assert_eq!(&ab & &bc, t.set_from_names(["b"]).unwrap());
        assert_eq!(&ab - &bc, t.set_from_names(["a"]).unwrap());
        assert!(t.empty_set().is_subset(&ab));
        assert!(ab.is_subset(&t.full_set()));
        assert!(!ab.is_subset(&bc));
        assert_eq!(t.format_set(&ab), "{a, b}");
    }

    #[test]
    fn canonical_order() {
        let t = abc();
        let mut all: Vec<SpeciesSet> = (0..8u64).map(|m| t.set_from_mask(m)).collect();
        all.sort();
        let masks: Vec<u64> = all.iter().map(|s| s.to_mask().unwrap()).collect();
        assert_eq!(masks, vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn tables_are_distinguished() {
        let t = abc();
        let u = SpeciesTable::new(["x", "y", "z"]).unwrap();
        assert!(t.check(&u.empty_set()).is_err());
        assert!(t.empty_set().check_compatible(&u.empty_set()).is_err());
        assert!(t.check(&abc().full_set()).is_ok());
    }

    #[test]
    fn wide_sets() {
        let names: Vec<String> = (0..100).map(|k| format!("s{k}")).collect();
        let t = SpeciesTable::new(names).unwrap();
        let s = t.set_from_indices([0, 63, 64, 99]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 99]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_mask(), None);
        assert_eq!(t.full_set().len(), 100);
    }

    #[test]
    fn blocker_display() {
        let t = SpeciesTable::new(["PI3K", "iPI3K", "iX"]).unwrap();
        assert_eq!(t.display_name(1), "ι_PI3K");
        assert_eq!(t.display_name(2), "iX");
    }
}
