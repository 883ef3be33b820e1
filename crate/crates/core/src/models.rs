//! Bundled oncogenic signalling model, its named states, and golden traces.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::boolnet::{parse_boolean_network, BooleanNetwork};
use crate::format::context::parse_context_sequence;
use crate::format::model::{parse_model, ModelDocument};
use crate::process::{run_process, ContextSequence, Initial, ProcessTrace};
use crate::reaction::ReactionSystem;
use crate::species::SpeciesSet;
use crate::status::{StatusLabel, StatusMarkers};

/// Embedded corpus files, by file name.
pub const CORPUS_FILES: [(&str, &str); 7] = [
    ("oncogenic.rs.txt", include_str!("../corpus/oncogenic.rs.txt")),
    ("oncogenic.bn.txt", include_str!("../corpus/oncogenic.bn.txt")),
    ("states.json", include_str!("../corpus/states.json")),
    ("traces.json", include_str!("../corpus/traces.json")),
    ("table3.ctx.txt", include_str!("../corpus/table3.ctx.txt")),
    ("table4.ctx.txt", include_str!("../corpus/table4.ctx.txt")),
    ("table5.ctx.txt", include_str!("../corpus/table5.ctx.txt")),
];

fn corpus_file(name: &str) -> &'static str {
    CORPUS_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .unwrap_or_else(|| panic!("corpus file {name} is not embedded"))
}

/// A replayable table: contexts from `D_0 = initial`, expected `D_i` and statuses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTrace {
    pub name: String,
    pub contexts: ContextSequence,
    pub initial: SpeciesSet,
    /// Row label and expected result set, one per context.
    pub results: Vec<(String, SpeciesSet)>,
    pub status: Vec<StatusLabel>,
    /// Index of the first row in the published numbering.
    pub first_index: usize,
}

#[derive(Debug, Clone)]
pub struct GoldenCorpus {
    pub model: ModelDocument,
    pub network: BooleanNetwork,
    /// Named states in corpus order.
    pub states: Vec<(String, SpeciesSet)>,
    pub traces: BTreeMap<String, GoldenTrace>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceSpec {
    contexts: String,
    initial: String,
    results: Vec<String>,
    status: Vec<StatusLabel>,
    first_index: usize,
}

impl GoldenCorpus {
    fn parse() -> Result<Self> {
        let model = parse_model(corpus_file("oncogenic.rs.txt"))?;
        let network = parse_boolean_network(corpus_file("oncogenic.bn.txt"))?;
        let table = model.system.species().clone();
        let raw: serde_json::Map<String, serde_json::Value> = serde_json::from_str(corpus_file("states.json"))?;
        let mut states = Vec::new();
        for (name, value) in raw {
            let names: Vec<String> = serde_json::from_value(value)?;
            states.push((name, table.set_from_names(&names)?));
        }
        let mut corpus = GoldenCorpus {
            model,
            network,
            states,
            traces: BTreeMap::new(),
        };
        let specs: BTreeMap<String, TraceSpec> = serde_json::from_str(corpus_file("traces.json"))?;
        for (name, spec) in specs {
            let named = |n: &str| {
                corpus
                    .state(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidQuery(format!("unknown named state {n}")))
            };
            let trace = GoldenTrace {
                contexts: parse_context_sequence(corpus_file(&spec.contexts), &table)?,
                initial: named(&spec.initial)?,
                results: spec
                    .results
                    .iter()
                    .map(|n| Ok((n.clone(), named(n)?)))
                    .collect::<Result<_>>()?,
                status: spec.status,
                first_index: spec.first_index,
                name: name.clone(),
            };
            if trace.results.len() != trace.contexts.len() || trace.status.len() != trace.contexts.len() {
                return Err(Error::InvalidQuery(format!("golden trace {name} has ragged rows")));
            }
            corpus.traces.insert(name, trace);
        }
        Ok(corpus)
    }

    pub fn system(&self) -> &ReactionSystem {
        &self.model.system
    }

    pub fn state(&self, name: &str) -> Option<&SpeciesSet> {
        self.states.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Named states keyed by name, for query files and `@name` references.
    pub fn named_states(&self) -> BTreeMap<String, SpeciesSet> {
        self.states.iter().cloned().collect()
    }

    pub fn markers(&self) -> StatusMarkers {
        let t = self.system().species();
        StatusMarkers {
            proliferation: t.set_from_names(["Pro"]).expect("corpus has Pro"),
            uncontrolled: t.set_from_names(["uPro"]).expect("corpus has uPro"),
        }
    }

    /// `uPro` present gives uncontrolled proliferation, else `Pro` gives proliferation.
    pub fn classify_status(&self, state: &SpeciesSet) -> StatusLabel {
        self.markers().classify(state)
    }

    pub fn trace(&self, name: &str) -> Result<&GoldenTrace> {
        self.traces.get(name).ok_or_else(|| Error::UnknownTrace(name.to_string()))
    }

    /// Writes every corpus file into `dir`; returns the written paths.
    pub fn dump(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        CORPUS_FILES
            .iter()
            .map(|(name, text)| {
                let path = dir.join(name);
                std::fs::write(&path, text)?;
                Ok(path)
            })
            .collect()
    }
}

/// The bundled corpus, parsed once.
pub fn load_builtin() -> &'static GoldenCorpus {
    static CORPUS: OnceLock<GoldenCorpus> = OnceLock::new();
    CORPUS.get_or_init(|| GoldenCorpus::parse().expect("embedded corpus is valid"))
}

/// Status of a state over the bundled model's species.
pub fn classify_status(state: &SpeciesSet) -> StatusLabel {
    load_builtin().classify_status(state)
}

#[derive(Debug, Clone)]
pub struct RowMismatch<T> {
    pub row: usize,
    pub expected: T,
    pub actual: T,
}

#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub name: String,
    pub trace: ProcessTrace,
    pub result_mismatches: Vec<RowMismatch<SpeciesSet>>,
    pub status_mismatches: Vec<RowMismatch<StatusLabel>>,
    /// `(j, i)` for the first row `i` whose result repeats row `j`.
    pub cycle: Option<(usize, usize)>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.result_mismatches.is_empty() && self.status_mismatches.is_empty()
    }
}

pub fn golden_replay(corpus: &GoldenCorpus, name: &str) -> Result<ReplayReport> {
    let golden = corpus.trace(name)?;
    let trace = run_process(corpus.system(), &golden.contexts, &Initial::Given(golden.initial.clone()))?;
    let markers = corpus.markers();
    let mut result_mismatches = Vec::new();
    let mut status_mismatches = Vec::new();
    for (i, ((_, expected), got)) in golden.results.iter().zip(&trace.results).enumerate() {
        if expected != got {
            result_mismatches.push(RowMismatch {
                row: i,
                expected: expected.clone(),
                actual: got.clone(),
            });
        }
        let status = markers.classify(&trace.states[i]);
        if status != golden.status[i] {
            status_mismatches.push(RowMismatch {
                row: i,
                expected: golden.status[i],
                actual: status,
            });
        }
    }
    let cycle = crate::format::trace::repeated_results(&trace)
        .into_iter()
        .enumerate()
        .find_map(|(i, j)| j.map(|j| (j, i)));
    Ok(ReplayReport {
        name: name.to_string(),
        trace,
        result_mismatches,
        status_mismatches,
        cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = load_builtin();
        assert_eq!(c.system().species().len(), 35);
        assert_eq!(c.system().reactions().len(), 25);
        assert_eq!(c.states.len(), 35);
    }

    #[test]
    fn named_states() {
        let c = load_builtin();
        let t = c.system().species();
        let s8 = t
            .set_from_names(["MAPK", "PIP3", "AKT", "cycE", "E2F", "mTORC1", "EIF4F", "S6K", "uPro"])
            .unwrap();
        assert_eq!(c.state("S8"), Some(&s8));
        assert_eq!(c.state("S19"), Some(&s8));
        let y6 = t.set_from_names(["RTK", "RAS", "MAPK", "FOXO3", "Rb", "TSC", "PRAS40"]).unwrap();
        assert_eq!(c.state("Y6"), Some(&y6));
    }

    #[test]
    fn statuses() {
        let c = load_builtin();
        assert_eq!(classify_status(c.state("S2").unwrap()), StatusLabel::Proliferation);
        assert_eq!(classify_status(c.state("S7").unwrap()), StatusLabel::NoProliferation);
        assert_eq!(classify_status(c.state("S13").unwrap()), StatusLabel::UncontrolledProliferation);
        let both = c.system().species().set_from_names(["Pro", "uPro"]).unwrap();
        assert_eq!(classify_status(&both), StatusLabel::UncontrolledProliferation);
    }

    #[test]
    fn first_result_is_image_of_gf() {
        let c = load_builtin();
        let gf = c.system().species().set_from_names(["GF"]).unwrap();
        assert_eq!(&c.system().res(&gf), c.state("S1").unwrap());
    }

    #[test]
    fn golden_traces_replay() {
        let c = load_builtin();
        for name in ["table3", "table4", "table5"] {
            let r = golden_replay(c, name).unwrap();
            assert!(r.passed(), "{name}: {:?} {:?}", r.result_mismatches, r.status_mismatches);
        }
        assert_eq!(golden_replay(c, "table3").unwrap().cycle, Some((7, 18)));
        assert!(matches!(golden_replay(c, "table9"), Err(Error::UnknownTrace(_))));
    }

    #[test]
    fn dump_writes_every_file() {
        let dir = std::env::temp_dir().join(format!("rscontrol-dump-{}", std::process::id()));
        let paths = load_builtin().dump(&dir).unwrap();
        assert_eq!(paths.len(), CORPUS_FILES.len());
        assert_eq!(std::fs::read_to_string(dir.join("table3.ctx.txt")).unwrap(), "{GF} x19\n");
        std::fs::remove_dir_all(dir).unwrap();
    }
}
