//! Nonce extensions add fresh species to every reaction without changing the
//! dynamics on the original species.

use rscontrol::dynamics::{nonce_extension, NonceMode};
use rscontrol::format::{parse_model, serialize_model, ModelDocument};
use rscontrol::subsets::canonical_subsets;

const MODEL: &str = "\
@species a, b
r1: {a} | {} -> {b}
r2: {} | {b} -> {a}
";

fn main() -> rscontrol::Result<()> {
    let base = parse_model(MODEL)?.system;
    let full = nonce_extension(&base, &["x"], NonceMode::Full)?;
    let sampled = nonce_extension(&base, &["x", "y"], NonceMode::Sample { k: 3, seed: 0 })?;
    print!("{}", serialize_model(&ModelDocument::new(full.clone())));

    for ext in [&full, &sampled] {
        let t = ext.species();
        for z in canonical_subsets(&t.full_set(), t.len()) {
            let restricted = base.species().set_from_names(t.names_of(&z).iter().filter(|n| base.species().index_of(n).is_some()))?;
            let expected = base.result_all(&restricted)?;
            let got = ext.result_all(&z)?;
            assert_eq!(t.names_of(&got), base.species().names_of(&expected));
        }
        println!("{} reactions over {} species: res unchanged on the base species", ext.reactions().len(), t.len());
    }
    Ok(())
}
