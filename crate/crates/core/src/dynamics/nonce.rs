//! Nonce extension: every reaction is copied with extra reactants and
//! inhibitors drawn from fresh species, which never changes `res` on the
//! original alphabet.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::reaction::{Reaction, ReactionSystem};
use crate::species::{SpeciesSet, SpeciesTable};

/// Largest number of extra species accepted by [`NonceMode::Full`].
pub const FULL_NONCE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonceMode {
    /// All `3^m` disjoint pairs `(R', I')` per reaction.
    Full,
    /// The original reaction plus up to `k - 1` distinct random pairs per reaction.
    Sample { k: usize, seed: u64 },
}

/// Extra-species membership of one copy: 0 absent, 1 reactant, 2 inhibitor.
type Digits = Vec<u8>;

pub fn nonce_extension<S: AsRef<str>>(
    system: &ReactionSystem,
    extra: &[S],
    mode: NonceMode,
) -> Result<ReactionSystem> {
    let base = system.species();
    for name in extra {
        if base.index_of(name.as_ref()).is_some() {
            return Err(Error::NameCollision(format!(
                "extra species {} already exists",
                name.as_ref()
            )));
        }
    }
    let table = base
        .with_appended(extra.iter().map(|s| s.as_ref().to_string()))
        .map_err(|e| match e {
            Error::DuplicateSpecies(n) => Error::NameCollision(format!("extra species {n} listed twice")),
            other => other,
        })?;
    let m = extra.len();
    let offset = base.len();

    let patterns: Vec<Vec<Digits>> = match mode {
        NonceMode::Full => {
            if m > FULL_NONCE_LIMIT {
                return Err(Error::InputSetTooLarge {
                    size: m,
                    limit: FULL_NONCE_LIMIT,
                });
            }
            let all = all_patterns(m);
            vec![all; system.reactions().len()]
        }
        NonceMode::Sample { k, seed } => {
            if k == 0 {
                return Err(Error::InvalidQuery("nonce sample size must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            system
                .reactions()
                .iter()
                .map(|_| sample_patterns(m, k, &mut rng))
                .collect()
        }
    };

    let lift = |s: &SpeciesSet| lift_set(&table, s);
    let mut reactions = Vec::new();
    for (r, pats) in system.reactions().iter().zip(patterns) {
        for (k, digits) in pats.iter().enumerate() {
            let mut reactants = lift(r.reactants());
            let mut inhibitors = lift(r.inhibitors());
            for (j, &d) in digits.iter().enumerate() {
                match d {
                    1 => reactants.insert(offset + j),
                    2 => inhibitors.insert(offset + j),
                    _ => {}
                }
            }
            let label = match (r.label(), k) {
                (l, 0) => l.map(str::to_string),
                (Some(l), _) => Some(format!("{l}_n{k}")),
                (None, _) => None,
            };
            reactions.push(Reaction::unchecked(label, reactants, inhibitors, lift(r.products())));
        }
    }
    ReactionSystem::new(table, reactions)
}

fn lift_set(table: &SpeciesTable, s: &SpeciesSet) -> SpeciesSet {
    table
        .set_from_indices(s.iter())
        .expect("base indices fit the extended table")
}

/// Ternary counting with the first extra species as the lowest digit; the all-zero pattern comes first.
fn all_patterns(m: usize) -> Vec<Digits> {
    let total = 3usize.pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let d = (code % 3) as u8;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

fn sample_patterns(m: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Digits> {
    let zero = vec![0u8; m];
    let available = if m >= 40 {
        u128::MAX
    } else {
        3u128.pow(m as u32) - 1
    };
    if available <= (k - 1) as u128 {
        return all_patterns(m);
    }
    let mut seen: HashSet<Digits> = HashSet::new();
    seen.insert(zero.clone());
    let mut out = vec![zero];
    while out.len() < k {
        let d: Digits = (0..m).map(|_| rng.gen_range(0..3u8)).collect();
        if seen.insert(d.clone()) {
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> ReactionSystem {
        let t = SpeciesTable::new(["p"]).unwrap();
        let r = Reaction::new(Some("r".into()), t.empty_set(), t.empty_set(), t.full_set()).unwrap();
        ReactionSystem::new(t, vec![r]).unwrap()
    }

    #[test]
    fn no_extra_is_identity() {
        let sys = single();
        let ext = nonce_extension::<&str>(&sys, &[], NonceMode::Full).unwrap();
        assert_eq!(ext, sys);
    }

    #[test]
    fn one_extra_species() {
        let sys = single();
        let ext = nonce_extension(&sys, &["z"], NonceMode::Full).unwrap();
        let t = ext.species();
        let s = |n: &[&str]| t.set_from_names(n.iter().copied()).unwrap();
        let got: Vec<(SpeciesSet, SpeciesSet)> = ext
            .reactions()
            .iter()
            .map(|r| (r.reactants().clone(), r.inhibitors().clone()))
            .collect();
        assert_eq!(got, vec![(s(&[]), s(&[])), (s(&["z"]), s(&[])), (s(&[]), s(&["z"]))]);
        let labels: Vec<_> = ext.reactions().iter().map(|r| r.label().unwrap()).collect();
        assert_eq!(labels, ["r", "r_n1", "r_n2"]);
    }

    #[test]
    fn conservative_on_base_alphabet() {
        let sys = single();
        let ext = nonce_extension(&sys, &["y", "z"], NonceMode::Full).unwrap();
        assert_eq!(ext.reactions().len(), 9);
        let t = ext.species();
        for mask in 0..8u64 {
            let z = t.set_from_mask(mask);
            let base_part = sys.species().set_from_indices(z.iter().filter(|&k| k == 0)).unwrap();
            assert_eq!(ext.res(&z).iter().collect::<Vec<_>>(), sys.res(&base_part).iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sampling_is_seeded_and_keeps_original() {
        let sys = single();
        let names: Vec<String> = (0..12).map(|k| format!("z{k}")).collect();
        let a = nonce_extension(&sys, &names, NonceMode::Sample { k: 5, seed: 7 }).unwrap();
        let b = nonce_extension(&sys, &names, NonceMode::Sample { k: 5, seed: 7 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reactions().len(), 5);
        assert!(a.reactions()[0].reactants().is_empty() && a.reactions()[0].inhibitors().is_empty());
        assert!(matches!(nonce_extension(&sys, &names, NonceMode::Full), Err(Error::InputSetTooLarge { .. })));
    }

    #[test]
    fn collisions() {
        let sys = single();
        assert!(matches!(nonce_extension(&sys, &["p"], NonceMode::Full), Err(Error::NameCollision(_))));
        assert!(matches!(nonce_extension(&sys, &["z", "z"], NonceMode::Full), Err(Error::NameCollision(_))));
    }
}
