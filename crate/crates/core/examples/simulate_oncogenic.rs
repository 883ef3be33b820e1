//! Replays the bundled signalling model under a constant growth-factor context
//! and prints the trace with proliferation status.

use rscontrol::format::{export_trace, ExportOptions, TraceFormat};
use rscontrol::models::{golden_replay, load_builtin};
use rscontrol::{run_process, ContextSequence, Initial};

fn main() -> rscontrol::Result<()> {
    let corpus = load_builtin();
    let system = corpus.system();
    let table = system.species();

    // D_0 = ∅ and twenty {GF} contexts: D_1 = res({GF}) is the first published row.
    let gf = table.set_from_names(["GF"])?;
    let trace = run_process(system, &ContextSequence::constant(gf, 20)?, &Initial::Context)?;
    let markers = corpus.markers();
    let options = ExportOptions {
        markers: Some(&markers),
        first_index: 0,
    };
    print!("{}", export_trace(&trace, table, TraceFormat::Table, &options));

    for name in ["table3", "table4", "table5"] {
        let report = golden_replay(corpus, name)?;
        println!("{name}: {}", if report.passed() { "matches" } else { "differs" });
    }
    Ok(())
}
