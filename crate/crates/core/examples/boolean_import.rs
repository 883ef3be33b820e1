//! Translates a Boolean network into a reaction system and checks that one
//! `res` application agrees with one synchronous update on every assignment.

use rscontrol::format::{bn_to_reactions, parse_boolean_network, serialize_model, ModelDocument};

const NETWORK: &str = "\
@input u
x = u & !z | y
y = x
z = !u
";

fn main() -> rscontrol::Result<()> {
    let bn = parse_boolean_network(NETWORK)?;
    let system = bn_to_reactions(&bn, true)?;
    print!("{}", serialize_model(&ModelDocument::new(system.clone())));

    let table = system.species();
    let n = bn.variables.len();
    for bits in 0..1u32 << n {
        let assignment: Vec<bool> = (0..n).map(|k| bits >> k & 1 == 1).collect();
        let on = bn.variables.iter().zip(&assignment).filter(|(_, &b)| b).map(|(v, _)| v.as_str());
        let state = table.set_from_names(on)?;
        let next = bn.sync_update(&assignment);
        let result = system.result_all(&state)?;
        for (k, v) in bn.variables.iter().enumerate() {
            if bn.updates[k].is_some() {
                assert_eq!(result.contains(table.index_of(v).unwrap()), next[k]);
            }
        }
    }
    println!("res agrees with the synchronous update on all {} assignments", 1u32 << n);
    Ok(())
}
