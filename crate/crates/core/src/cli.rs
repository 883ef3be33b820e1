//! The `rsctl` command line.
//!
//! Exit codes: 0 success or true, 1 decided false or no witness, 2 invalid
//! input, 64 usage or I/O error.
//!
//! States are given as inline sets (`{A, B}`), as `@file` references holding
//! a set, or by name (`@S19`, `S_19`) when the model is the bundled one.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::control::{
    decide_controllable, decide_target_controllable, minimal_i, minimal_n, search_witness,
    verify_witness_from, ContextConstraint, ControlQuery, ControllabilityVerdict, DecideOptions, Scope,
    SearchOptions, DEFAULT_EXHAUSTIVE_CEILING, EXHAUSTIVE_HARD_LIMIT,
};
use crate::dynamics::{attractor_report, context_graph, orbit, EdgeSemantics, GraphOptions};
use crate::error::Error;
use crate::format::{
    bn_to_reactions, export_trace, parse_boolean_network, parse_context_sequence, parse_model, parse_name_list,
    parse_set, serialize_model, ExportOptions, ModelDocument, TraceFormat,
};
use crate::models::{golden_replay, load_builtin};
use crate::process::{run_process, Initial};
use crate::species::{SpeciesSet, SpeciesTable};
use crate::status::StatusMarkers;

/// Model argument that selects the bundled oncogenic model.
pub const BUILTIN_MODEL: &str = "@oncogenic";

#[derive(Debug, Parser)]
#[command(name = "rsctl", version, about = "Reaction systems: simulation, attractors, and controllability")]
pub struct CliConfig {
    /// Output format: table, json, or csv (csv for simulate only).
    #[arg(long, global = true, default_value = "table")]
    pub format: TraceFormat,
    /// Worker threads; defaults to the number of CPUs. Output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for every sampled choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the query's depth limit.
    #[arg(long, global = true)]
    pub depth_limit: Option<usize>,
    /// Largest |S| for exhaustive decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_CEILING)]
    pub exhaustive_ceiling: usize,
    /// Raise the exhaustive ceiling to the hard limit.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a model.
    Validate { model: String },
    /// Run an interactive process over a context sequence.
    Simulate(SimulateArgs),
    /// Transient and cycle under a constant context.
    Orbit(OrbitArgs),
    /// Search a shortest witness for a query file.
    Reach(ReachArgs),
    /// Decide (target) controllability, or search a minimal n or I.
    Decide(DecideArgs),
    /// Translate a Boolean network into a reaction-system model.
    ImportBn(ImportArgs),
    /// Seed-restricted context graph as DOT.
    Graph(GraphArgs),
    /// Dump or replay the bundled corpus.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub model: String,
    /// Context file, or an inline sequence such as "{GF} x19".
    pub contexts: String,
    /// Initial result set D_0.
    #[arg(long, conflicts_with = "initial_mode")]
    pub initial: Option<String>,
    /// `context` starts from D_0 = ∅.
    #[arg(long, value_parser = ["context"])]
    pub initial_mode: Option<String>,
    /// Proliferation and uncontrolled-proliferation markers, e.g. "Pro,uPro".
    #[arg(long)]
    pub markers: Option<String>,
    /// Number shown for the first row.
    #[arg(long, default_value_t = 0)]
    pub first_index: usize,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    pub model: String,
    #[arg(long)]
    pub context: String,
    /// D_0; the first state is start ∪ context.
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
    /// Species whose occurrences in the cycle are counted, e.g. "Pro,uPro".
    #[arg(long)]
    pub markers: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReachArgs {
    pub model: String,
    pub query: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    pub model: String,
    /// `n=K` for |C| ≤ K, or `I=<set>` for C ⊆ I.
    #[arg(long, required_unless_present_any = ["minimal_n", "minimal_i"])]
    pub constraint: Option<String>,
    /// Target set T.
    #[arg(long)]
    pub targets: Option<String>,
    /// Scan n = 0, 1, … for the least n that makes the system controllable.
    #[arg(long, conflicts_with_all = ["constraint", "minimal_i"])]
    pub minimal_n: bool,
    /// With --minimal-n, keep scanning after the first success.
    #[arg(long, requires = "minimal_n")]
    pub all_n: bool,
    /// Shrink START greedily to an inclusion-minimal I.
    #[arg(long = "minimal-I", visible_alias = "minimal-i", value_name = "START", conflicts_with = "constraint")]
    pub minimal_i: Option<String>,
    /// Check K random pairs instead of all pairs.
    #[arg(long, value_name = "K")]
    pub samples: Option<usize>,
    /// Also decide with T = S through both entry points and compare.
    #[arg(long, requires = "constraint")]
    pub check_full_targets: bool,
}

#[derive(Debug, Args)]
pub struct ImportArgs {
    pub network: PathBuf,
    /// Omit the ι blocking species.
    #[arg(long)]
    pub no_blocking: bool,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub description: Option<String>,
    /// Write the model here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    pub model: String,
    #[arg(long)]
    pub input_set: String,
    /// Seed states; defaults to ∅.
    #[arg(long, num_args = 1..)]
    pub seeds: Vec<String>,
    /// Write DOT here instead of stdout.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub node_budget: usize,
    /// Edges X → res(X ∪ C) instead of X → C ∪ res(X).
    #[arg(long)]
    pub result_edges: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Write the corpus files into DIR.
    #[arg(long, value_name = "DIR")]
    pub dump: Option<PathBuf>,
    /// Replay a golden trace (table3, table4, table5, or all).
    #[arg(long, value_name = "NAME")]
    pub replay: Vec<String>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Invalid(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Usage(_) | CliError::Io(_) => 64,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T = i32> = Result<T, CliError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    64
                }
            };
        }
    };
    let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
    let outcome = match config.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&config, &mut buf_out, &mut buf_err)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => execute(&config, &mut buf_out, &mut buf_err),
    };
    let _ = out.write_all(&buf_out);
    let _ = err.write_all(&buf_err);
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn execute(config: &CliConfig, out: &mut Vec<u8>, err: &mut Vec<u8>) -> CliResult {
    if config.format == TraceFormat::Csv && !matches!(config.command, Command::Simulate(_)) {
        return Err(CliError::Usage("csv output is only available for simulate".into()));
    }
    let json = config.format == TraceFormat::Json;
    match &config.command {
        Command::Validate { model } => cmd_validate(model, json, out),
        Command::Simulate(a) => cmd_simulate(config, a, out),
        Command::Orbit(a) => cmd_orbit(a, json, out),
        Command::Reach(a) => cmd_reach(config, a, out, err),
        Command::Decide(a) => cmd_decide(config, a, out),
        Command::ImportBn(a) => cmd_import_bn(a, out),
        Command::Graph(a) => cmd_graph(a, json, out),
        Command::Corpus(a) => cmd_corpus(a, json, out),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

struct Loaded {
    doc: ModelDocument,
    /// Bundled named states, present when the model has the bundled species.
    named: BTreeMap<String, SpeciesSet>,
}

impl Loaded {
    fn table(&self) -> &SpeciesTable {
        self.doc.system.species()
    }

    fn state(&self, text: &str) -> CliResult<SpeciesSet> {
        let t = text.trim();
        if t.starts_with('{') {
            return Ok(parse_set(t, self.table())?);
        }
        let (is_ref, body) = match t.strip_prefix('@') {
            Some(b) => (true, b),
            None => (false, t),
        };
        if let Some(s) = self.named.get(body) {
            return Ok(s.clone());
        }
        if is_ref {
            let text = read_file(Path::new(body))?;
            return Ok(parse_name_list(text.trim(), self.table())?);
        }
        Err(CliError::Invalid(format!(
            "cannot read state {t:?}: expected {{A, B}}, @file, or a bundled state name"
        )))
    }

    fn markers(&self, text: &str) -> CliResult<Vec<SpeciesSet>> {
        text.split(',')
            .map(|n| Ok(self.table().set_from_names([n.trim()])?))
            .collect()
    }
}

fn load_model(arg: &str) -> CliResult<Loaded> {
    let doc = if arg == BUILTIN_MODEL {
        load_builtin().model.clone()
    } else {
        parse_model(&read_file(Path::new(arg))?)?
    };
    let corpus = load_builtin();
    let mut named = BTreeMap::new();
    if doc.system.species().names() == corpus.system().species().names() {
        for (name, set) in &corpus.states {
            let set = doc.system.species().set_from_names(corpus.system().species().names_of(set))?;
            // S19 is also reachable as S_19.
            let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
            named.insert(format!("{head}_{digits}"), set.clone());
            named.insert(name.clone(), set);
        }
    }
    Ok(Loaded { doc, named })
}

fn status_markers(loaded: &Loaded, text: &str) -> CliResult<StatusMarkers> {
    let mut m = loaded.markers(text)?.into_iter();
    let proliferation = m
        .next()
        .ok_or_else(|| CliError::Invalid("--markers needs at least one species".into()))?;
    let uncontrolled = m.next().unwrap_or_else(|| loaded.table().empty_set());
    if m.next().is_some() {
        return Err(CliError::Invalid("--markers takes at most two species".into()));
    }
    Ok(StatusMarkers {
        proliferation,
        uncontrolled,
    })
}

fn cmd_validate(model: &str, json: bool, out: &mut dyn Write) -> CliResult {
    let loaded = match load_model(model) {
        Ok(l) => l,
        Err(CliError::Invalid(msg)) => {
            if json {
                writeln!(out, "{}", json!({"valid": false, "errors": [msg]}))?;
            } else {
                writeln!(out, "invalid: {msg}")?;
            }
            return Ok(2);
        }
        Err(e) => return Err(e),
    };
    let sys = &loaded.doc.system;
    if json {
        let doc = json!({
            "valid": true,
            "name": loaded.doc.name,
            "species": sys.species().len(),
            "reactions": sys.reactions().len(),
        });
        writeln!(out, "{doc}")?;
    } else {
        let name = loaded.doc.name.as_deref().unwrap_or("model");
        writeln!(
            out,
            "valid: {name}, {} species, {} reactions",
            sys.species().len(),
            sys.reactions().len()
        )?;
    }
    Ok(0)
}

fn cmd_simulate(config: &CliConfig, a: &SimulateArgs, out: &mut dyn Write) -> CliResult {
    let loaded = load_model(&a.model)?;
    let table = loaded.table();
    let text = if a.contexts.trim_start().starts_with('{') {
        a.contexts.clone()
    } else {
        read_file(Path::new(&a.contexts))?
    };
    let contexts = parse_context_sequence(&text, table)?;
    let initial = match &a.initial {
        Some(s) => Initial::Given(loaded.state(s)?),
        None => Initial::Context,
    };
    let markers = a.markers.as_deref().map(|m| status_markers(&loaded, m)).transpose()?;
    let trace = run_process(&loaded.doc.system, &contexts, &initial)?;
    let options = ExportOptions {
        markers: markers.as_ref(),
        first_index: a.first_index,
    };
    out.write_all(export_trace(&trace, table, config.format, &options).as_bytes())?;
    Ok(0)
}

fn cmd_orbit(a: &OrbitArgs, json: bool, out: &mut dyn Write) -> CliResult {
    let loaded = load_model(&a.model)?;
    let table = loaded.table();
    let context = loaded.state(&a.context)?;
    let start = match &a.start {
        Some(s) => loaded.state(s)?,
        None => table.empty_set(),
    };
    let markers = match &a.markers {
        Some(m) => loaded.markers(m)?,
        None => Vec::new(),
    };
    let o = orbit(&loaded.doc.system, &start, &context, a.max_steps)?;
    let counts = attractor_report(&o, &markers);
    let names = |v: &[SpeciesSet]| v.iter().map(|s| table.names_of(s)).collect::<Vec<_>>();
    if json {
        let marker_counts: BTreeMap<String, usize> = markers
            .iter()
            .zip(&counts)
            .map(|(m, c)| (table.names_of(m).join(","), *c))
            .collect();
        let doc = json!({
            "context": table.names_of(&context),
            "transient": names(&o.transient),
            "cycle": names(&o.cycle),
            "period": o.period(),
            "marker_counts": marker_counts,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
        return Ok(0);
    }
    writeln!(out, "context: {}", table.format_set(&context))?;
    writeln!(out, "transient: {} states", o.transient.len())?;
    writeln!(out, "cycle: {} states", o.period())?;
    for (m, c) in markers.iter().zip(&counts) {
        writeln!(out, "{}: {c} of {} cycle states", table.names_of(m).join(","), o.period())?;
    }
    for (k, w) in o.states().enumerate() {
        let tag = if k < o.transient.len() { "transient" } else { "cycle" };
        writeln!(out, "{k:>4}  {tag:<9}  {}", table.format_set(w))?;
    }
    Ok(0)
}

fn cmd_reach(config: &CliConfig, a: &ReachArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let loaded = load_model(&a.model)?;
    let table = loaded.table();
    let system = &loaded.doc.system;
    let text = read_file(&a.query)?;
    let mut query = ControlQuery::from_json(&text, table, &loaded.named)?;
    if let Some(d) = config.depth_limit {
        query.depth_limit = d;
        query.validate(table)?;
    }
    let report = search_witness(system, &query, &SearchOptions::default())?;
    let json = config.format == TraceFormat::Json;
    let Some(w) = report.witness else {
        let reason = if report.exhausted {
            format!("none: no reachable state meets the target ({} states visited)", report.visited)
        } else {
            format!("none within depth {}", query.depth_limit)
        };
        if json {
            let doc = json!({"found": false, "visited": report.visited, "exhausted": report.exhausted});
            writeln!(out, "{doc}")?;
        } else {
            writeln!(out, "{reason}")?;
        }
        return Ok(1);
    };
    if w.hit_index == 0 {
        writeln!(err, "warning: the source already meets the target; 0-length witness")?;
    }
    let d0 = match &w.initial {
        Initial::Given(d) => Some(d),
        Initial::Context => None,
    };
    let check = verify_witness_from(system, &query, d0, &w.contexts);
    if !check.ok() {
        return Err(CliError::Invalid(format!(
            "internal: witness failed replay: {}",
            check.reason.unwrap_or_default()
        )));
    }
    if json {
        let witness: serde_json::Value = serde_json::from_str(&w.to_json(table)).expect("valid json");
        let doc = json!({"found": true, "visited": report.visited, "witness": witness});
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
        return Ok(0);
    }
    writeln!(out, "witness: hit at step {} ({} states visited)", w.hit_index, report.visited)?;
    if let Some(d) = d0 {
        writeln!(out, "initial result: {}", table.format_set(d))?;
    }
    out.write_all(export_trace(&w.trace, table, TraceFormat::Table, &ExportOptions::default()).as_bytes())?;
    Ok(0)
}

fn parse_constraint(loaded: &Loaded, text: &str) -> CliResult<ContextConstraint> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| CliError::Invalid(format!("constraint {text:?}: expected n=K or I=<set>")))?;
    match key.trim() {
        "n" => value
            .trim()
            .parse()
            .map(ContextConstraint::MaxCardinality)
            .map_err(|_| CliError::Invalid(format!("constraint {text:?}: n must be a count"))),
        "I" => Ok(ContextConstraint::AllowedSet(loaded.state(value)?)),
        other => Err(CliError::Invalid(format!("unknown constraint kind {other:?} (n, I)"))),
    }
}

fn verdict_json(table: &SpeciesTable, v: &ControllabilityVerdict) -> serde_json::Value {
    json!({
        "decision": v.decision,
        "exhaustive": v.exhaustive,
        "pairs_checked": v.pairs_checked,
        "counterexample": v.counterexample.as_ref().map(|(x, y)| json!({
            "X": table.names_of(x),
            "Y": table.names_of(y),
        })),
    })
}

fn verdict_text(table: &SpeciesTable, v: &ControllabilityVerdict) -> String {
    let head = match (v.decision, v.exhaustive) {
        (true, true) => "controllable".to_string(),
        (true, false) => "no counterexample found among the sampled pairs".to_string(),
        (false, _) => "not controllable".to_string(),
    };
    let mut s = format!("{head} ({} pairs checked)", v.pairs_checked);
    if let Some((x, y)) = &v.counterexample {
        s += &format!("; counterexample X = {}, Y = {}", table.format_set(x), table.format_set(y));
    }
    s
}

fn cmd_decide(config: &CliConfig, a: &DecideArgs, out: &mut dyn Write) -> CliResult {
    let loaded = load_model(&a.model)?;
    let table = loaded.table();
    let system = &loaded.doc.system;
    let json = config.format == TraceFormat::Json;
    let options = DecideOptions {
        ceiling: if config.force {
            EXHAUSTIVE_HARD_LIMIT
        } else {
            config.exhaustive_ceiling
        },
        ..DecideOptions::default()
    };
    let scope = match a.samples {
        Some(k) => Scope::Sampled { k, seed: config.seed },
        None => Scope::Exhaustive,
    };
    let targets = a.targets.as_deref().map(|t| loaded.state(t)).transpose()?;
    let full = table.full_set();
    let t = targets.as_ref().unwrap_or(&full);

    if a.minimal_n {
        let report = minimal_n(system, targets.as_ref(), scope, &options, !a.all_n)?;
        if json {
            let verdicts: Vec<_> = report
                .verdicts
                .iter()
                .map(|(n, v)| json!({"n": n, "verdict": verdict_json(table, v)}))
                .collect();
            let doc = json!({"minimal_n": report.minimal, "verdicts": verdicts});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
        } else {
            for (n, v) in &report.verdicts {
                writeln!(out, "n = {n}: {}", verdict_text(table, v))?;
            }
            match report.minimal {
                Some(n) => writeln!(out, "minimal n: {n}")?,
                None => writeln!(out, "minimal n: none")?,
            }
        }
        return Ok(if report.minimal.is_some() { 0 } else { 1 });
    }

    if let Some(start) = &a.minimal_i {
        let start = loaded.state(start)?;
        let report = minimal_i(system, targets.as_ref(), &start, scope, &options)?;
        if json {
            let trials: Vec<_> = report
                .trials
                .iter()
                .map(|(i, ok)| json!({"I": table.names_of(i), "decision": ok}))
                .collect();
            let doc = json!({
                "minimal_I": report.minimal.as_ref().map(|m| table.names_of(m)),
                "start": verdict_json(table, &report.start_verdict),
                "trials": trials,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
        } else {
            writeln!(out, "I = {}: {}", table.format_set(&start), verdict_text(table, &report.start_verdict))?;
            for (i, ok) in &report.trials {
                writeln!(out, "I = {}: {}", table.format_set(i), if *ok { "controllable" } else { "not controllable" })?;
            }
            match &report.minimal {
                Some(m) => writeln!(out, "minimal I: {}", table.format_set(m))?,
                None => writeln!(out, "minimal I: none (start set is not sufficient)")?,
            }
        }
        return Ok(if report.minimal.is_some() { 0 } else { 1 });
    }

    let constraint = parse_constraint(&loaded, a.constraint.as_deref().expect("required by clap"))?;
    let verdict = decide_target_controllable(system, t, &constraint, scope, &options)?;
    let mut code = if verdict.decision { 0 } else { 1 };
    let comparison = if a.check_full_targets {
        let plain = decide_controllable(system, &constraint, scope, &options)?;
        let full_t = decide_target_controllable(system, &full, &constraint, scope, &options)?;
        let same = plain == full_t;
        if !same {
            code = 1;
        }
        Some(same)
    } else {
        None
    };
    if json {
        let mut doc = json!({
            "constraint": constraint.describe(table),
            "targets": table.names_of(t),
            "verdict": verdict_json(table, &verdict),
        });
        if let Some(same) = comparison {
            doc["identical_verdicts"] = json!(same);
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        writeln!(out, "constraint: {}", constraint.describe(table))?;
        if targets.is_some() {
            writeln!(out, "targets: {}", table.format_set(t))?;
        }
        writeln!(out, "{}", verdict_text(table, &verdict))?;
        match comparison {
            Some(true) => writeln!(out, "T = S check: identical verdicts")?,
            Some(false) => writeln!(out, "T = S check: verdicts differ")?,
            None => {}
        }
    }
    Ok(code)
}

fn cmd_import_bn(a: &ImportArgs, out: &mut dyn Write) -> CliResult {
    let bn = parse_boolean_network(&read_file(&a.network)?)?;
    let doc = ModelDocument {
        system: bn_to_reactions(&bn, !a.no_blocking)?,
        name: a.name.clone(),
        description: a.description.clone(),
    };
    let text = serialize_model(&doc);
    match &a.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_graph(a: &GraphArgs, json: bool, out: &mut dyn Write) -> CliResult {
    let loaded = load_model(&a.model)?;
    let table = loaded.table();
    let input = loaded.state(&a.input_set)?;
    let seeds = if a.seeds.is_empty() {
        vec![table.empty_set()]
    } else {
        a.seeds.iter().map(|s| loaded.state(s)).collect::<CliResult<Vec<_>>>()?
    };
    let options = GraphOptions {
        node_budget: a.node_budget,
        semantics: if a.result_edges {
            EdgeSemantics::Result
        } else {
            EdgeSemantics::Step
        },
        ..GraphOptions::default()
    };
    let g = context_graph(&loaded.doc.system, &input, &seeds, &options)?;
    let text = if json {
        let edges: Vec<_> = g
            .edges
            .iter()
            .map(|e| json!({"from": e.from, "context": table.names_of(&e.context), "to": e.to}))
            .collect();
        let nodes: Vec<_> = g.nodes.iter().map(|n| table.names_of(n)).collect();
        let doc = json!({"nodes": nodes, "edges": edges, "truncated": g.truncated});
        serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
    } else {
        g.to_dot(table)
    };
    match &a.dot {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            writeln!(
                out,
                "{} nodes, {} edges{}",
                g.nodes.len(),
                g.edges.len(),
                if g.truncated { " (truncated)" } else { "" }
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_corpus(a: &CorpusArgs, json: bool, out: &mut dyn Write) -> CliResult {
    let corpus = load_builtin();
    if let Some(dir) = &a.dump {
        for path in corpus.dump(dir)? {
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    let mut names: Vec<String> = Vec::new();
    for r in &a.replay {
        if r == "all" {
            names.extend(corpus.traces.keys().cloned());
        } else {
            names.push(r.clone());
        }
    }
    if a.dump.is_none() && names.is_empty() {
        let sys = corpus.system();
        writeln!(out, "model: {} species, {} reactions", sys.species().len(), sys.reactions().len())?;
        let states: Vec<&str> = corpus.states.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(out, "states: {}", states.join(" "))?;
        let traces: Vec<&str> = corpus.traces.keys().map(String::as_str).collect();
        writeln!(out, "traces: {}", traces.join(" "))?;
        return Ok(0);
    }
    let mut code = 0;
    let mut docs = Vec::new();
    for name in names {
        let report = golden_replay(corpus, &name)?;
        let first = corpus.trace(&name)?.first_index;
        if !report.passed() {
            code = 1;
        }
        if json {
            docs.push(json!({
                "trace": name,
                "passed": report.passed(),
                "rows": report.trace.len(),
                "result_mismatches": report.result_mismatches.iter().map(|m| m.row + first).collect::<Vec<_>>(),
                "status_mismatches": report.status_mismatches.iter().map(|m| m.row + first).collect::<Vec<_>>(),
                "cycle": report.cycle.map(|(j, i)| [j + first, i + first]),
            }));
            continue;
        }
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{name}: {verdict}, {} rows", report.trace.len());
        if let Some((j, i)) = report.cycle {
            line += &format!(", result {} = result {}", i + first, j + first);
        }
        writeln!(out, "{line}")?;
        for m in &report.result_mismatches {
            writeln!(
                out,
                "  row {}: expected {}, got {}",
                m.row + first,
                corpus.system().species().format_set(&m.expected),
                corpus.system().species().format_set(&m.actual)
            )?;
        }
        for m in &report.status_mismatches {
            writeln!(out, "  row {} status: expected {}, got {}", m.row + first, m.expected, m.actual)?;
        }
    }
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&docs).expect("serializes"))?;
    }
    Ok(code)
}
