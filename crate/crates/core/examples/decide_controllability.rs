//! Exhaustive controllability decisions, the least n, and a minimal input set
//! on a small system.

use rscontrol::control::{
    decide_controllable, decide_target_controllable, minimal_i, minimal_n, ContextConstraint, DecideOptions, Scope,
};
use rscontrol::format::parse_model;

const MODEL: &str = "\
@species a, b, c, d
{a} | {b} -> {b}
{b} | {a} -> {c}
{c} | {} -> {a}
{d} | {c} -> {d}
";

fn main() -> rscontrol::Result<()> {
    let system = parse_model(MODEL)?.system;
    let table = system.species();
    let options = DecideOptions::default();

    let scan = minimal_n(&system, None, Scope::Exhaustive, &options, false)?;
    for (n, v) in &scan.verdicts {
        print!("n = {n}: {} after {} pairs", v.decision, v.pairs_checked);
        if let Some((x, y)) = &v.counterexample {
            print!(", fails {} -> {}", table.format_set(x), table.format_set(y));
        }
        println!();
    }
    println!("least n: {:?}", scan.minimal);

    let report = minimal_i(&system, None, &table.full_set(), Scope::Exhaustive, &options)?;
    match &report.minimal {
        Some(i) => println!("inclusion-minimal I: {}", table.format_set(i)),
        None => println!("not controllable even with I = S"),
    }

    let t = table.set_from_names(["a", "d"])?;
    let empty = ContextConstraint::AllowedSet(table.empty_set());
    let tc = decide_target_controllable(&system, &t, &empty, Scope::Exhaustive, &options)?;
    let sampled = decide_controllable(&system, &ContextConstraint::MaxCardinality(1), Scope::Sampled { k: 50, seed: 7 }, &options)?;
    println!("target {{a, d}} with no inputs: {}", tc.decision);
    println!("n = 1, 50 sampled pairs: counterexample found = {}", !sampled.decision);
    Ok(())
}
