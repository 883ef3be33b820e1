//! Boolean networks in disjunctive normal form and their translation to reaction systems.
//!
//! File syntax (`.bn.txt`):
//!
//! ```text
//! @input GF
//! RTK = (GF & FOXO3) | (GF & !S6K & !MAPK)
//! FOXO3 = !AKT | !MAPK
//! ```
//!
//! Each update function must already be a flat DNF: a conjunction may be
//! wrapped in one pair of parentheses, nothing else may be. Variables without
//! an update function are declared with `@input`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::format::scan::{strip_comment, Cursor};
use crate::reaction::{Reaction, ReactionSystem};
use crate::species::{SpeciesTable, BLOCKER_PREFIX};

const NOT_DNF: &str = "formula is not in disjunctive normal form";

/// One conjunction: positive and negated literals, in written order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Conjunction {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

impl Conjunction {
    /// Evaluates under the assignment `value`.
    pub fn eval(&self, value: impl Fn(&str) -> bool) -> bool {
        self.pos.iter().all(|v| value(v)) && self.neg.iter().all(|v| !value(v))
    }
}

/// A disjunction of conjunctions; never empty.
pub type Dnf = Vec<Conjunction>;

/// Variables in declaration order, each with an optional update function.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BooleanNetwork {
    pub variables: Vec<String>,
    pub updates: Vec<Option<Dnf>>,
}

impl BooleanNetwork {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// One synchronous update of every variable with a function; inputs keep their value.
    pub fn sync_update(&self, state: &[bool]) -> Vec<bool> {
        let index: HashMap<&str, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(k, v)| (v.as_str(), k))
            .collect();
        self.updates
            .iter()
            .enumerate()
            .map(|(k, f)| match f {
                Some(dnf) => dnf.iter().any(|c| c.eval(|v| state[index[v]])),
                None => state[k],
            })
            .collect()
    }
}

/// Parses a single DNF formula, e.g. `!AKT | !MAPK`.
pub fn parse_dnf(text: &str) -> Result<Dnf> {
    let mut cur = Cursor::new(text, 1);
    let dnf = dnf(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error(NOT_DNF));
    }
    Ok(dnf)
}

fn dnf(cur: &mut Cursor<'_>) -> Result<Dnf> {
    let mut out = vec![conjunction(cur)?];
    while cur.eat('|') {
        out.push(conjunction(cur)?);
    }
    Ok(out)
}

fn conjunction(cur: &mut Cursor<'_>) -> Result<Conjunction> {
    let start = cur.column();
    let wrapped = cur.eat('(');
    let mut c = Conjunction::default();
    loop {
        let negated = cur.eat('!');
        match cur.peek() {
            Some('(') | Some(')') | Some('|') if negated => return Err(cur.error(NOT_DNF)),
            Some('(') => return Err(cur.error(NOT_DNF)),
            _ => {}
        }
        let (name, col) = cur.ident()?;
        let (same, other) = if negated {
            (&mut c.neg, &c.pos)
        } else {
            (&mut c.pos, &c.neg)
        };
        if other.contains(&name) {
            return Err(cur.error_at(
                col,
                format!("variable {name} appears both positive and negated in one conjunction"),
            ));
        }
        if !same.contains(&name) {
            same.push(name);
        }
        if !cur.eat('&') {
            break;
        }
    }
    if wrapped {
        if cur.peek() == Some('|') {
            return Err(cur.error(NOT_DNF));
        }
        cur.expect(')').map_err(|_| cur.error_at(start, NOT_DNF))?;
    } else if cur.peek() == Some(')') {
        return Err(cur.error(NOT_DNF));
    }
    Ok(c)
}

pub fn parse_boolean_network(text: &str) -> Result<BooleanNetwork> {
    let mut bn = BooleanNetwork::default();
    let mut declared: HashMap<String, usize> = HashMap::new();
    let mut uses: Vec<(String, usize, usize)> = Vec::new();

    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let mut cur = Cursor::new(strip_comment(line), line_no);
        if cur.at_end() {
            continue;
        }
        let mut declare = |name: String, col: usize, f: Option<Dnf>, cur: &Cursor<'_>| {
            if declared.contains_key(&name) {
                return Err(cur.error_at(col, format!("variable {name} declared twice")));
            }
            declared.insert(name.clone(), bn.variables.len());
            bn.variables.push(name);
            bn.updates.push(f);
            Ok(())
        };
        if cur.eat('@') {
            let (directive, col) = cur.ident()?;
            if directive != "input" {
                return Err(cur.error_at(col, format!("unknown directive @{directive}")));
            }
            for (name, col) in cur.name_list()? {
                declare(name, col, None, &cur)?;
            }
            continue;
        }
        let (name, col) = cur.ident()?;
        cur.expect('=')?;
        let formula_start = cur.column();
        let f = dnf(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error(NOT_DNF));
        }
        for c in &f {
            for v in c.pos.iter().chain(&c.neg) {
                uses.push((v.clone(), line_no, formula_start));
            }
        }
        declare(name, col, Some(f), &cur)?;
    }
    for (v, line, column) in uses {
        if !declared.contains_key(&v) {
            return Err(Error::Parse {
                line,
                column,
                message: format!("undeclared variable: {v}"),
            });
        }
    }
    Ok(bn)
}

pub fn serialize_boolean_network(bn: &BooleanNetwork) -> String {
    let mut out = String::new();
    let inputs: Vec<&str> = bn
        .variables
        .iter()
        .zip(&bn.updates)
        .filter(|(_, f)| f.is_none())
        .map(|(v, _)| v.as_str())
        .collect();
    if !inputs.is_empty() {
        out.push_str(&format!("@input {}\n", inputs.join(", ")));
    }
    for (v, f) in bn.variables.iter().zip(&bn.updates) {
        let Some(f) = f else { continue };
        let conj: Vec<String> = f
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .pos
                    .iter()
                    .cloned()
                    .chain(c.neg.iter().map(|n| format!("!{n}")))
                    .collect();
                if f.len() > 1 && lits.len() > 1 {
                    format!("({})", lits.join(" & "))
                } else {
                    lits.join(" & ")
                }
            })
            .collect();
        out.push_str(&format!("{v} = {}\n", conj.join(" | ")));
    }
    out
}

/// Name of the blocking inhibitor of `variable`.
pub fn blocker_name(variable: &str) -> String {
    format!("{BLOCKER_PREFIX}{variable}")
}

/// One reaction `(pos(C), neg(C) ∪ {ι_x}, {x})` per conjunction `C` of each update `x`.
///
/// With `blocking`, every variable that has an update function gets a fresh
/// inhibitor species `i<x>` appended after the variables.
pub fn bn_to_reactions(bn: &BooleanNetwork, blocking: bool) -> Result<ReactionSystem> {
    let mut names = bn.variables.clone();
    if blocking {
        let vars: HashSet<&str> = bn.variables.iter().map(String::as_str).collect();
        for (v, f) in bn.variables.iter().zip(&bn.updates) {
            if f.is_some() {
                let b = blocker_name(v);
                if vars.contains(b.as_str()) {
                    return Err(Error::NameCollision(format!(
                        "blocking species {b} clashes with a variable"
                    )));
                }
                names.push(b);
            }
        }
    }
    let table = SpeciesTable::new(names)?;
    let mut used = HashSet::new();
    let mut reactions = Vec::new();
    for (v, f) in bn.variables.iter().zip(&bn.updates) {
        let Some(f) = f else { continue };
        for (k, c) in f.iter().enumerate() {
            let mut label = if f.len() == 1 {
                format!("r{v}")
            } else {
                format!("r{v}_{}", k + 1)
            };
            while !used.insert(label.clone()) {
                label.push('_');
            }
            let reactants = table.set_from_names(&c.pos)?;
            let mut inhibitors = table.set_from_names(&c.neg)?;
            if blocking {
                inhibitors.insert(table.index_of(&blocker_name(v)).expect("blocker interned"));
            }
            let products = table.set_from_names([v])?;
            reactions.push(Reaction::new(Some(label), reactants, inhibitors, products)?);
        }
    }
    ReactionSystem::new(table, reactions)
}
