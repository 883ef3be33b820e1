//! Seed-restricted I-context graphs and their DOT export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::reaction::ReactionSystem;
use crate::species::{SpeciesSet, SpeciesTable};
use crate::subsets::canonical_subsets;

/// How an edge target is computed from a node `X` and a context `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeSemantics {
    /// `C ∪ res(X)`, one step of an interactive process.
    #[default]
    Step,
    /// `res(X ∪ C)`.
    Result,
}

#[derive(Debug, Clone)]
pub struct GraphOptions {
    pub node_budget: usize,
    pub semantics: EdgeSemantics,
    /// Largest accepted `|I|`.
    pub max_input: usize,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions {
            node_budget: 100_000,
            semantics: EdgeSemantics::Step,
            max_input: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub context: SpeciesSet,
    pub to: usize,
}

/// Nodes in breadth-first layers, each layer sorted by encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextGraph {
    pub nodes: Vec<SpeciesSet>,
    pub edges: Vec<GraphEdge>,
    pub input_set: SpeciesSet,
    pub seeds: Vec<SpeciesSet>,
    pub semantics: EdgeSemantics,
    /// Set when the node budget stopped the closure; edges leaving the kept nodes may be missing.
    pub truncated: bool,
}

pub fn context_graph(
    system: &ReactionSystem,
    input_set: &SpeciesSet,
    seeds: &[SpeciesSet],
    options: &GraphOptions,
) -> Result<ContextGraph> {
    let table = system.species();
    table.check(input_set)?;
    for s in seeds {
        table.check(s)?;
    }
    if options.node_budget == 0 {
        return Err(Error::InvalidQuery("node budget must be at least 1".into()));
    }
    if input_set.len() > options.max_input {
        return Err(Error::InputSetTooLarge {
            size: input_set.len(),
            limit: options.max_input,
        });
    }
    let contexts: Vec<SpeciesSet> = canonical_subsets(input_set, input_set.len()).collect();

    let mut index: HashMap<SpeciesSet, usize> = HashMap::new();
    let mut nodes: Vec<SpeciesSet> = Vec::new();
    let mut edges = Vec::new();
    let mut truncated = false;

    let mut sorted_seeds: Vec<SpeciesSet> = seeds.to_vec();
    sorted_seeds.sort_by(|a, b| a.encoding_cmp(b));
    sorted_seeds.dedup();
    for s in sorted_seeds {
        if nodes.len() == options.node_budget {
            truncated = true;
            break;
        }
        index.insert(s.clone(), nodes.len());
        nodes.push(s);
    }
    let mut frontier = 0..nodes.len();
    while !frontier.is_empty() {
        let successors: Vec<Vec<SpeciesSet>> = nodes[frontier.clone()]
            .par_iter()
            .map(|x| {
                let res = system.res(x);
                contexts
                    .iter()
                    .map(|c| match options.semantics {
                        EdgeSemantics::Step => &res | c,
                        EdgeSemantics::Result => system.res(&(x | c)),
                    })
                    .collect()
            })
            .collect();
        let mut fresh: BTreeSet<EncodingKey> = BTreeSet::new();
        let mut pending = Vec::new();
        for (from, succ) in frontier.clone().zip(successors) {
            for (c, to) in contexts.iter().zip(succ) {
                if !index.contains_key(&to) {
                    fresh.insert(EncodingKey(to.clone()));
                }
                pending.push((from, c.clone(), to));
            }
        }
        let layer_start = nodes.len();
        for EncodingKey(s) in fresh {
            if nodes.len() == options.node_budget {
                truncated = true;
                break;
            }
            index.insert(s.clone(), nodes.len());
            nodes.push(s);
        }
        for (from, context, to) in pending {
            match index.get(&to) {
                Some(&to) => edges.push(GraphEdge { from, context, to }),
                None => truncated = true,
            }
        }
        frontier = layer_start..nodes.len();
    }

    Ok(ContextGraph {
        nodes,
        edges,
        input_set: input_set.clone(),
        seeds: seeds.to_vec(),
        semantics: options.semantics,
        truncated,
    })
}

#[derive(PartialEq, Eq)]
struct EncodingKey(SpeciesSet);

impl PartialOrd for EncodingKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EncodingKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.encoding_cmp(&other.0)
    }
}

impl ContextGraph {
    /// The edge set as `(from-state, context, to-state)` triples.
    pub fn edge_triples(&self) -> impl Iterator<Item = (&SpeciesSet, &SpeciesSet, &SpeciesSet)> {
        self.edges
            .iter()
            .map(|e| (&self.nodes[e.from], &e.context, &self.nodes[e.to]))
    }

    /// DOT text. Parallel edges between the same nodes share one arrow whose
    /// label lists their contexts in canonical order.
    pub fn to_dot(&self, table: &SpeciesTable) -> String {
        let mut out = String::from("digraph context_graph {\n");
        let _ = writeln!(out, "  graph [truncated={}];", self.truncated);
        let _ = writeln!(out, "  node [shape=box];");
        for (k, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{k} [label=\"{}\"];", table.format_set(n));
        }
        let mut grouped: BTreeMap<(usize, usize), Vec<&SpeciesSet>> = BTreeMap::new();
        for e in &self.edges {
            grouped.entry((e.from, e.to)).or_default().push(&e.context);
        }
        for ((from, to), mut ctxs) in grouped {
            ctxs.sort();
            let label: Vec<String> = ctxs.iter().map(|c| table.format_set(c)).collect();
            let _ = writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", label.join("; "));
        }
        out.push_str("}\n");
        out
    }
}
