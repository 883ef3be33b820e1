//! Model files (`.rs.txt`).
//!
//! ```text
//! # comments and blank lines are ignored
//! @name oncogenic_signalling
//! @species GF, RTK, iRTK
//! rRTK: {GF} | {iRTK} -> {RTK}
//! {RTK} | {} -> {GF}
//! ```
//!
//! Species are indexed in first-appearance order: `@species` lines first,
//! then reactants, inhibitors, and products of each reaction in file order.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::format::scan::{strip_comment, Cursor};
use crate::reaction::{Reaction, ReactionSystem};
use crate::species::{SpeciesSet, SpeciesTable};

/// A reaction system plus optional metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub system: ReactionSystem,
    pub name: Option<String>,
    pub description: Option<String>,
}

impl ModelDocument {
    pub fn new(system: ReactionSystem) -> Self {
        ModelDocument {
            system,
            name: None,
            description: None,
        }
    }
}

struct RawReaction {
    line: usize,
    label: Option<(String, usize)>,
    sets: [Vec<(String, usize)>; 3],
}

pub fn parse_model(text: &str) -> Result<ModelDocument> {
    let mut name = None;
    let mut description = None;
    let mut order: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut raw = Vec::new();

    let mut note = |s: &str, order: &mut Vec<String>| {
        if seen.insert(s.to_string()) {
            order.push(s.to_string());
        }
    };

    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let body = strip_comment(line);
        let mut cur = Cursor::new(body, line_no);
        if cur.at_end() {
            continue;
        }
        if cur.eat('@') {
            let (directive, col) = cur.ident()?;
            match directive.as_str() {
                "name" => name = Some(cur.take_rest().to_string()),
                "description" => description = Some(cur.take_rest().to_string()),
                "species" => {
                    for (s, _) in cur.name_list()? {
                        note(&s, &mut order);
                    }
                }
                other => return Err(cur.error_at(col, format!("unknown directive @{other}"))),
            }
            continue;
        }
        let label = if cur.peek() == Some('{') {
            None
        } else {
            let l = cur.ident()?;
            cur.expect(':')?;
            Some(l)
        };
        let reactants = cur.set()?;
        cur.expect('|')?;
        let inhibitors = cur.set()?;
        if !cur.eat_str("->") {
            return Err(cur.error("expected '->'"));
        }
        let products = cur.set()?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        for (s, _) in reactants.iter().chain(&inhibitors).chain(&products) {
            note(s, &mut order);
        }
        raw.push(RawReaction {
            line: line_no,
            label,
            sets: [reactants, inhibitors, products],
        });
    }

    let table = SpeciesTable::new(order)?;
    let mut labels = HashSet::new();
    let mut reactions = Vec::with_capacity(raw.len());
    for r in raw {
        let err = |column: usize, message: String| Error::Parse {
            line: r.line,
            column,
            message,
        };
        if let Some((l, col)) = &r.label {
            if !labels.insert(l.clone()) {
                return Err(err(*col, format!("duplicate label: {l}")));
            }
        }
        let [rs, is, ps] = &r.sets;
        let set = |items: &[(String, usize)]| {
            table.set_from_names(items.iter().map(|(s, _)| s.as_str()))
        };
        let (reactants, inhibitors, products) = (set(rs)?, set(is)?, set(ps)?);
        let overlap = &reactants & &inhibitors;
        if !overlap.is_empty() {
            let col = is
                .iter()
                .find(|(s, _)| overlap.contains(table.index_of(s).unwrap()))
                .map_or(1, |(_, c)| *c);
            return Err(err(
                col,
                format!("reactants and inhibitors overlap: {}", table.names_of(&overlap).join(", ")),
            ));
        }
        if products.is_empty() {
            return Err(err(1, "empty product set".to_string()));
        }
        reactions.push(Reaction::unchecked(
            r.label.map(|(l, _)| l),
            reactants,
            inhibitors,
            products,
        ));
    }
    Ok(ModelDocument {
        system: ReactionSystem::new(table, reactions)?,
        name,
        description,
    })
}

fn write_set(out: &mut String, table: &SpeciesTable, set: &SpeciesSet) {
    out.push_str(&table.format_set(set));
}

/// Canonical text. Unlabeled reactions get `r<k>` (1-based position), made unique.
pub fn serialize_model(doc: &ModelDocument) -> String {
    let table = doc.system.species();
    let mut out = String::new();
    if let Some(name) = &doc.name {
        out.push_str(&format!("@name {name}\n"));
    }
    if let Some(d) = &doc.description {
        out.push_str(&format!("@description {d}\n"));
    }
    out.push_str("@species");
    if !table.is_empty() {
        out.push(' ');
        out.push_str(&table.names().join(", "));
    }
    out.push('\n');

    let mut used: HashSet<String> = doc
        .system
        .reactions()
        .iter()
        .filter_map(|r| r.label().map(str::to_string))
        .collect();
    for (k, r) in doc.system.reactions().iter().enumerate() {
        let label = match r.label() {
            Some(l) => l.to_string(),
            None => {
                let mut l = format!("r{}", k + 1);
                while used.contains(&l) {
                    l.push('_');
                }
                used.insert(l.clone());
                l
            }
        };
        out.push_str(&label);
        out.push_str(": ");
        write_set(&mut out, table, r.reactants());
        out.push_str(" | ");
        write_set(&mut out, table, r.inhibitors());
        out.push_str(" -> ");
        write_set(&mut out, table, r.products());
        out.push('\n');
    }
    out
}
