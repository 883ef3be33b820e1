//! Shortest context sequences steering the signalling model out of
//! uncontrolled proliferation, with the inhibitor choices restricted.

use rscontrol::control::{search_witness, verify_witness, ContextConstraint, ControlQuery, SearchOptions};
use rscontrol::format::{export_trace, ExportOptions, TraceFormat};
use rscontrol::models::load_builtin;

fn main() -> rscontrol::Result<()> {
    let corpus = load_builtin();
    let system = corpus.system();
    let table = system.species();
    let s19 = corpus.state("S19").expect("bundled state").clone();
    let targets = table.set_from_names(["Pro", "uPro"])?;
    let markers = corpus.markers();

    for allowed in [&["GF", "iPI3K"][..], &["GF", "icycE"], &["GF", "iPI3K", "icycE"]] {
        let i = table.set_from_names(allowed.iter().copied())?;
        // Reach a state with neither Pro nor uPro, starting exactly at S19.
        let query = ControlQuery::new(s19.clone(), table.empty_set(), ContextConstraint::AllowedSet(i.clone()))
            .with_targets(targets.clone())
            .pinned();
        let report = search_witness(system, &query, &SearchOptions::default())?;
        println!("C ⊆ {}: {} states visited", table.display_set(&i), report.visited);
        match report.witness {
            Some(w) => {
                assert!(verify_witness(system, &query, &w.contexts).ok());
                let options = ExportOptions {
                    markers: Some(&markers),
                    first_index: 0,
                };
                print!("{}", export_trace(&w.trace, table, TraceFormat::Table, &options));
            }
            None => println!("  no witness"),
        }
    }
    Ok(())
}
