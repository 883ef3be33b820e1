//! Which states are results of some state? Preimage certificates versus a scan.

use rscontrol::dynamics::{image_membership, projected_image_membership};
use rscontrol::format::parse_model;
use rscontrol::subsets::canonical_subsets;

const MODEL: &str = "\
@species a, b, c, d
{a} | {b} -> {c}
{b} | {} -> {b, d}
{c} | {d} -> {a}
";

fn main() -> rscontrol::Result<()> {
    let system = parse_model(MODEL)?.system;
    let table = system.species();
    let full = table.full_set();
    for v in canonical_subsets(&full, full.len()) {
        match image_membership(&system, &v) {
            Some(cert) => {
                assert!(cert.verify(&system));
                println!("{:<14} = res({})", table.format_set(&v), table.format_set(&cert.preimage));
            }
            None => println!("{:<14} unreachable", table.format_set(&v)),
        }
    }
    let t = table.set_from_names(["a", "c"])?;
    let y = table.set_from_names(["c"])?;
    let hit = projected_image_membership(&system, &y, &t);
    println!("some result V has V ∩ {{a, c}} = {{c}}: {}", hit.is_some());
    Ok(())
}
