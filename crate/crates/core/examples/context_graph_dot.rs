//! The context graph reachable from the growth-factor state when only the
//! two inhibitors may be added, written as DOT on stdout.

use rscontrol::dynamics::{context_graph, GraphOptions};
use rscontrol::models::load_builtin;

fn main() -> rscontrol::Result<()> {
    let corpus = load_builtin();
    let system = corpus.system();
    let table = system.species();
    let input = table.set_from_names(["iPI3K", "icycE"])?;
    let seed = table.set_from_names(["GF"])?;
    let graph = context_graph(system, &input, &[seed], &GraphOptions::default())?;
    eprintln!("{} nodes, {} edges", graph.nodes.len(), graph.edges.len());
    print!("{}", graph.to_dot(table));
    Ok(())
}
