//! Trace export as an aligned text table, JSON, or CSV.
//!
//! JSON schema: `{"contexts":[[..]],"results":[[..]],"states":[[..]],"status":[..]}`
//! with species as names sorted by table index; `status` is present only when
//! markers are given.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::process::ProcessTrace;
use crate::species::{SpeciesSet, SpeciesTable};
use crate::status::{StatusLabel, StatusMarkers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for TraceFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(TraceFormat::Table),
            "json" => Ok(TraceFormat::Json),
            "csv" => Ok(TraceFormat::Csv),
            other => Err(format!("unknown format {other:?} (table, json, csv)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExportOptions<'a> {
    pub markers: Option<&'a StatusMarkers>,
    /// Number shown for the first row.
    pub first_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub contexts: Vec<Vec<String>>,
    pub results: Vec<Vec<String>>,
    pub states: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Vec<StatusLabel>>,
}

impl TraceJson {
    pub fn new(trace: &ProcessTrace, table: &SpeciesTable, markers: Option<&StatusMarkers>) -> Self {
        let names = |v: &[SpeciesSet]| v.iter().map(|s| table.names_of(s)).collect();
        TraceJson {
            contexts: names(&trace.contexts),
            results: names(&trace.results),
            states: names(&trace.states),
            status: markers.map(|m| trace.states.iter().map(|w| m.classify(w)).collect()),
        }
    }

    pub fn to_trace(&self, table: &SpeciesTable) -> Result<ProcessTrace> {
        let sets = |v: &[Vec<String>]| -> Result<Vec<SpeciesSet>> {
            v.iter().map(|n| table.set_from_names(n)).collect()
        };
        let trace = ProcessTrace {
            contexts: sets(&self.contexts)?,
            results: sets(&self.results)?,
            states: sets(&self.states)?,
        };
        if trace.contexts.len() != trace.results.len() || trace.results.len() != trace.states.len() {
            return Err(Error::InvalidQuery("trace sequences differ in length".into()));
        }
        Ok(trace)
    }
}

/// For each index, the earliest earlier index with the same result set.
pub fn repeated_results(trace: &ProcessTrace) -> Vec<Option<usize>> {
    let mut first: HashMap<&SpeciesSet, usize> = HashMap::new();
    trace
        .results
        .iter()
        .enumerate()
        .map(|(i, d)| match first.get(d) {
            Some(&j) => Some(j),
            None => {
                first.insert(d, i);
                None
            }
        })
        .collect()
}

pub fn export_trace(
    trace: &ProcessTrace,
    table: &SpeciesTable,
    format: TraceFormat,
    options: &ExportOptions<'_>,
) -> String {
    match format {
        TraceFormat::Table => export_table(trace, table, options),
        TraceFormat::Json => {
            let mut s = serde_json::to_string_pretty(&TraceJson::new(trace, table, options.markers))
                .expect("trace serializes");
            s.push('\n');
            s
        }
        TraceFormat::Csv => export_csv(trace, table, options),
    }
}

fn export_table(trace: &ProcessTrace, table: &SpeciesTable, options: &ExportOptions<'_>) -> String {
    let repeats = repeated_results(trace);
    let mut header = vec!["step", "context", "result"];
    if options.markers.is_some() {
        header.push("status");
    }
    header.push("note");
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(trace.len());
    for i in 0..trace.len() {
        let mut row = vec![
            (options.first_index + i).to_string(),
            table.display_set(&trace.contexts[i]),
            table.display_set(&trace.results[i]),
        ];
        if let Some(m) = options.markers {
            row.push(m.classify(&trace.states[i]).to_string());
        }
        row.push(match repeats[i] {
            Some(j) => format!("= step {} (cycle)", options.first_index + j),
            None => String::new(),
        });
        rows.push(row);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain(std::iter::once(header[c].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (c, cell) in cells.iter().enumerate() {
            if c + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.clone());
    for r in &rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn export_csv(trace: &ProcessTrace, table: &SpeciesTable, options: &ExportOptions<'_>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["step", "context", "result", "state", "status"])
        .expect("in-memory write");
    for i in 0..trace.len() {
        let status = options
            .markers
            .map(|m| m.classify(&trace.states[i]).to_string())
            .unwrap_or_default();
        w.write_record([
            (options.first_index + i).to_string(),
            table.format_set(&trace.contexts[i]),
            table.format_set(&trace.results[i]),
            table.format_set(&trace.states[i]),
            status,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{run_process, ContextSequence, Initial};
    use crate::reaction::ReactionSystem;

    fn one_step() -> (ReactionSystem, ProcessTrace) {
        let t = SpeciesTable::new(["a"]).unwrap();
        let sys = ReactionSystem::new(t.clone(), vec![]).unwrap();
        let trace = run_process(
            &sys,
            &ContextSequence::new(vec![t.empty_set()]).unwrap(),
            &Initial::Context,
        )
        .unwrap();
        (sys, trace)
    }

    #[test]
    fn single_row_table() {
        let (sys, trace) = one_step();
        let text = export_trace(&trace, sys.species(), TraceFormat::Table, &ExportOptions::default());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "0     {}       {}");
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let (sys, trace) = one_step();
        let text = export_trace(&trace, sys.species(), TraceFormat::Json, &ExportOptions::default());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["contexts", "results", "states"]);
        let back: TraceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_trace(sys.species()).unwrap(), trace);
    }

    #[test]
    fn csv_columns() {
        let (sys, trace) = one_step();
        let text = export_trace(&trace, sys.species(), TraceFormat::Csv, &ExportOptions::default());
        assert_eq!(text, "step,context,result,state,status\n0,{},{},{},\n");
    }
}
