//! Attractors of the signalling model under three drug-like constant contexts.

use rscontrol::dynamics::{attractor_report, orbit};
use rscontrol::models::load_builtin;

fn main() -> rscontrol::Result<()> {
    let corpus = load_builtin();
    let system = corpus.system();
    let table = system.species();
    let start = corpus.state("S19").expect("bundled state");
    let markers = [table.set_from_names(["Pro"])?, table.set_from_names(["uPro"])?];

    for context in [&["GF", "PRAS40"][..], &["GF", "icycE"], &["GF", "icycE", "PRAS40"]] {
        let c = table.set_from_names(context.iter().copied())?;
        let o = orbit(system, start, &c, 10_000)?;
        let counts = attractor_report(&o, &markers);
        println!(
            "{:<24} transient {:>2}  cycle {:>2}  Pro {:>2}  uPro {:>2}",
            table.display_set(&c),
            o.transient.len(),
            o.period(),
            counts[0],
            counts[1]
        );
    }
    Ok(())
}
