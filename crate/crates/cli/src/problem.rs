//! Problem files.
//!
//! ```text
//! # comment
//! field 2
//! vars x2 x1
//! dependent y
//! order global
//! weights
//! global 9 3 2
//! local 0 1 0
//! relations
//! y^2 + x1^9 + y*x2^3
//! define z = x2*x1
//! ideal
//! x2*x1
//! x1^3
//! end
//! ```
//!
//! Sections appear in this order; `dependent`, `weights`, `relations` and
//! `define` are optional. Weight rows have one column per variable,
//! dependent variables first, and may start with `local` or `global`
//! (default: the order kind).

use std::sync::Arc;

use qth_core::gb::RingPresentation;
use qth_core::poly::{
    is_identifier, parse_poly_with, validate_weights, Aliases, FlatRing, OrderKind, Poly, WeightRow,
};
use qth_core::qthpower::Ideal;
use qth_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct Problem {
    pub presentation: Arc<RingPresentation>,
    pub ideal: Ideal,
    pub aliases: Aliases,
    /// Weight-function axioms that fail on a sample, one line each.
    pub warnings: Vec<String>,
}

impl Problem {
    pub fn ring(&self) -> &Arc<FlatRing> {
        &self.presentation.ring
    }

    pub fn parse_poly(&self, src: &str) -> Result<Poly> {
        parse_poly_with(src, self.ring(), Some(&self.aliases))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Start,
    Field,
    Vars,
    Dependent,
    Order,
    Weights,
    Relations,
    Define,
    Ideal,
    End,
}

impl Section {
    fn keyword(s: &str) -> Option<Section> {
        Some(match s {
            "field" => Section::Field,
            "vars" => Section::Vars,
            "dependent" => Section::Dependent,
            "order" => Section::Order,
            "weights" => Section::Weights,
            "relations" => Section::Relations,
            "define" => Section::Define,
            "ideal" => Section::Ideal,
            "end" => Section::End,
            _ => return None,
        })
    }
}

fn at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Shifts a polynomial parse error to its place in the file.
fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => at(line, column + offset, message),
        other => other,
    }
}

#[derive(Default)]
struct Raw {
    q: Option<u32>,
    vars: Vec<String>,
    dependent: Vec<String>,
    kind: Option<OrderKind>,
    rows: Vec<(usize, Option<bool>, Vec<i64>)>,
    relations: Vec<(usize, usize, String)>,
    defines: Vec<(usize, usize, String, String)>,
    ideal: Vec<(usize, usize, String)>,
}

pub fn load_problem(path: &std::path::Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw = scan(text)?;
    build(raw)
}

fn scan(text: &str) -> Result<Raw> {
    let mut raw = Raw::default();
    let mut section = Section::Start;
    for (k, full) in text.lines().enumerate() {
        let ln = k + 1;
        let body = full.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap();
        if let Some(next) = Section::keyword(head) {
            if section == Section::End {
                return Err(at(ln, indent + 1, "content after 'end'"));
            }
            let repeatable = next == Section::Define && section == Section::Define;
            if next <= section && !repeatable {
                return Err(at(ln, indent + 1, format!("section '{head}' out of order")));
            }
            if next != Section::Field && raw.q.is_none() {
                return Err(at(ln, indent + 1, "the file must start with 'field'"));
            }
            if next > Section::Vars && raw.vars.is_empty() {
                return Err(at(ln, indent + 1, "missing 'vars' section"));
            }
            if next > Section::Order && raw.kind.is_none() {
                return Err(at(ln, indent + 1, "missing 'order' section"));
            }
            if next == Section::End && section < Section::Ideal {
                return Err(at(ln, indent + 1, "missing 'ideal' section"));
            }
            let rest: Vec<&str> = words.collect();
            let col = indent + head.len() + 2;
            match next {
                Section::Field => {
                    let [q] = rest[..] else {
                        return Err(at(ln, col, "expected one modulus after 'field'"));
                    };
                    let q: u32 = q.parse().map_err(|_| at(ln, col, format!("bad modulus '{q}'")))?;
                    raw.q = Some(q);
                }
                Section::Vars | Section::Dependent => {
                    if rest.is_empty() && next == Section::Vars {
                        return Err(at(ln, col, "expected variable names"));
                    }
                    let names: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
                    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                        return Err(at(ln, col, format!("invalid variable name '{bad}'")));
                    }
                    if next == Section::Vars {
                        raw.vars = names;
                    } else {
                        raw.dependent = names;
                    }
                }
                Section::Order => {
                    raw.kind = Some(match rest[..] {
                        ["global"] => OrderKind::Global,
                        ["local"] => OrderKind::Local,
                        _ => return Err(at(ln, col, "expected 'global' or 'local'")),
                    });
                }
                Section::Define => {
                    let Some(eq) = body.find('=') else {
                        return Err(at(ln, col, "expected 'define <name> = <polynomial>'"));
                    };
                    let name = body[indent + head.len()..eq].trim().to_string();
                    if !is_identifier(&name) {
                        return Err(at(ln, col, format!("invalid alias name '{name}'")));
                    }
                    raw.defines.push((ln, eq + 1, name, body[eq + 1..].to_string()));
                }
                _ => {
                    if !rest.is_empty() {
                        return Err(at(ln, col, format!("unexpected text after '{head}'")));
                    }
                }
            }
            section = next;
            continue;
        }
        match section {
            Section::Weights => {
                let mut cells: Vec<&str> = trimmed.split_whitespace().collect();
                let sense = match cells[0] {
                    "local" => Some(true),
                    "global" => Some(false),
                    _ => None,
                };
                if sense.is_some() {
                    cells.remove(0);
                }
                let row = cells
                    .iter()
                    .map(|c| c.parse::<i64>().map_err(|_| at(ln, indent + 1, format!("bad weight '{c}'"))))
                    .collect::<Result<Vec<_>>>()?;
                raw.rows.push((ln, sense, row));
            }
            Section::Relations => raw.relations.push((ln, indent, trimmed.to_string())),
            Section::Ideal => raw.ideal.push((ln, indent, trimmed.to_string())),
            Section::Start => return Err(at(ln, indent + 1, "the file must start with 'field'")),
            Section::End => return Err(at(ln, indent + 1, "content after 'end'")),
            _ => return Err(at(ln, indent + 1, format!("unexpected line in section '{:?}'", section).to_lowercase())),
        }
    }
    if section != Section::End {
        return Err(at(text.lines().count() + 1, 1, "missing 'end'"));
    }
    Ok(raw)
}

fn build(raw: Raw) -> Result<Problem> {
    let kind = raw.kind.expect("checked by scan");
    let local = kind == OrderKind::Local;
    let rows = if raw.rows.is_empty() {
        None
    } else {
        Some(
            raw.rows
                .into_iter()
                .map(|(_, sense, w)| WeightRow::new(w, sense.unwrap_or(local)))
                .collect(),
        )
    };
    let ring = FlatRing::new(raw.q.expect("checked by scan"), raw.dependent, raw.vars, vec![], kind, rows)?;
    let mut aliases = Aliases::new();
    let relations = raw
        .relations
        .iter()
        .map(|(ln, off, s)| parse_poly_with(s, &ring, None).map_err(|e| relocate(e, *ln, *off)))
        .collect::<Result<Vec<_>>>()?;
    let report = validate_weights(&ring, &relations);
    let mut warnings: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("weight function: {} fails for {} and {}", v.property, v.left, v.right))
        .collect();
    for (k, ok) in report.relation_balance.iter().enumerate() {
        if !ok {
            warnings.push(format!("weight function: relation {} is not balanced", k + 1));
        }
    }
    let presentation = Arc::new(RingPresentation::new(&ring, &relations)?);
    for (ln, off, name, value) in &raw.defines {
        if ring.var_index(name).is_some() {
            return Err(at(*ln, 1, format!("alias '{name}' shadows a variable")));
        }
        let p = parse_poly_with(value, &ring, Some(&aliases)).map_err(|e| relocate(e, *ln, *off))?;
        aliases.insert(name.clone(), p);
    }
    let gens = raw
        .ideal
        .iter()
        .map(|(ln, off, s)| parse_poly_with(s, &ring, Some(&aliases)).map_err(|e| relocate(e, *ln, *off)))
        .collect::<Result<Vec<_>>>()?;
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::input("the ideal has no nonzero generator"));
    }
    let ideal = Ideal::new(&presentation, gens)?;
    Ok(Problem {
        presentation,
        ideal,
        aliases,
        warnings,
    })
}
