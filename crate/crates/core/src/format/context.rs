//! Context files (`.ctx.txt`) and inline set literals.

use crate::error::Result;
use crate::format::scan::{strip_comment, Cursor};
use crate::process::ContextSequence;
use crate::species::{SpeciesSet, SpeciesTable};

fn resolve(cur: &Cursor<'_>, table: &SpeciesTable, items: &[(String, usize)]) -> Result<SpeciesSet> {
    let mut set = table.empty_set();
    for (name, col) in items {
        match table.index_of(name) {
            Some(k) => set.insert(k),
            None => return Err(cur.error_at(*col, format!("unknown species: {name}"))),
        }
    }
    Ok(set)
}

/// One context per line: `{a, b}` or `{}`, optionally followed by `xN`.
pub fn parse_context_sequence(text: &str, table: &SpeciesTable) -> Result<ContextSequence> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let mut cur = Cursor::new(strip_comment(line), k + 1);
        if cur.at_end() {
            continue;
        }
        let items = cur.set()?;
        let set = resolve(&cur, table, &items)?;
        let mut times = 1;
        if cur.eat('x') || cur.eat('*') {
            times = cur.number()?;
        }
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        out.extend(std::iter::repeat_n(set, times));
    }
    ContextSequence::new(out)
}

pub fn serialize_context_sequence(contexts: &ContextSequence, table: &SpeciesTable) -> String {
    let mut out = String::new();
    let items = contexts.as_slice();
    let mut k = 0;
    while k < items.len() {
        let mut run = 1;
        while k + run < items.len() && items[k + run] == items[k] {
            run += 1;
        }
        out.push_str(&table.format_set(&items[k]));
        if run > 1 {
            out.push_str(&format!(" x{run}"));
        }
        out.push('\n');
        k += run;
    }
    out
}

/// A single inline set literal such as `{GF, iPI3K}`.
pub fn parse_set(text: &str, table: &SpeciesTable) -> Result<SpeciesSet> {
    let mut cur = Cursor::new(text, 1);
    let items = cur.set()?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    resolve(&cur, table, &items)
}

/// `a, b` (no braces) or a braced literal.
pub fn parse_name_list(text: &str, table: &SpeciesTable) -> Result<SpeciesSet> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_set(trimmed, table);
    }
    let mut cur = Cursor::new(trimmed, 1);
    let items = cur.name_list()?;
    resolve(&cur, table, &items)
}
