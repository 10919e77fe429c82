//! Text formats for lattices and automorphism groups, plus deterministic
//! JSON/TSV/dot emitters used by the CLI.
//!
//! Lattice grammar (UTF-8, LF or CRLF accepted, LF emitted, `#` comments):
//!
//! ```text
//! name: pentagon          # optional
//! elements: 0 a b c 1
//! covers:
//! 0 < a
//! a < b
//! ```
//!
//! Group grammar: one generator per line, `perm: a->b b->a`, with unlisted
//! elements fixed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMorphism};

/// A parsed lattice source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFile {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeFile {
    /// Validates the covers and builds the lattice.
    pub fn build(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_covers(&self.elements, &self.covers)
    }

    pub fn from_lattice(name: &str, lat: &FiniteLattice) -> Self {
        LatticeFile {
            name: name.to_string(),
            elements: (0..lat.size()).map(|i| lat.name(i).to_string()).collect(),
            covers: lat
                .covers()
                .into_iter()
                .map(|(a, b)| (lat.name(a).to_string(), lat.name(b).to_string()))
                .collect(),
        }
    }
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::SyntaxError { line, msg: msg.to_string() }
}

/// Strips comments and returns (1-based line number, trimmed content) for
/// non-blank lines.
fn logical_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

/// Parses the lattice grammar into a structured file.
pub fn parse_lattice(text: &str) -> Result<LatticeFile> {
    let mut name = String::new();
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut seen_elements = false;
    let mut in_covers = false;
    for (lineno, body) in logical_lines(text) {
        if let Some(rest) = body.strip_prefix("name:") {
            if seen_elements || in_covers {
                return Err(syntax(lineno, "name: must precede elements:"));
            }
            name = rest.trim().to_string();
        } else if let Some(rest) = body.strip_prefix("elements:") {
            if seen_elements {
                return Err(syntax(lineno, "duplicate elements: line"));
            }
            seen_elements = true;
            for tok in rest.split_whitespace() {
                if !valid_ident(tok) {
                    return Err(syntax(lineno, &format!("invalid identifier `{tok}`")));
                }
                if elements.iter().any(|e| e == tok) {
                    return Err(Error::DuplicateElement(tok.to_string()));
                }
                elements.push(tok.to_string());
            }
        } else if body == "covers:" {
            if !seen_elements {
                return Err(syntax(lineno, "covers: before elements:"));
            }
            if in_covers {
                return Err(syntax(lineno, "duplicate covers: line"));
            }
            in_covers = true;
        } else if in_covers {
            let mut parts = body.split('<');
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a.trim(), b.trim()),
                _ => return Err(syntax(lineno, "expected `a < b`")),
            };
            for x in [a, b] {
                if !valid_ident(x) {
                    return Err(syntax(lineno, &format!("invalid identifier `{x}`")));
                }
                if !elements.iter().any(|e| e == x) {
                    return Err(Error::UnknownElement(x.to_string()));
                }
            }
            covers.push((a.to_string(), b.to_string()));
        } else {
            return Err(syntax(lineno, "expected name:, elements: or covers:"));
        }
    }
    if !seen_elements {
        return Err(syntax(text.lines().count().max(1), "missing elements: line"));
    }
    Ok(LatticeFile { name, elements, covers })
}

/// Serializes a lattice file in normalized form (LF, no comments; parsing
/// the output reproduces the file byte-stably).
pub fn serialize_lattice(file: &LatticeFile) -> String {
    let mut out = String::new();
    if !file.name.is_empty() {
        let _ = writeln!(out, "name: {}", file.name);
    }
    let _ = writeln!(out, "elements: {}", file.elements.join(" "));
    let _ = writeln!(out, "covers:");
    for (a, b) in &file.covers {
        let _ = writeln!(out, "{a} < {b}");
    }
    out
}

/// Parses group generators and verifies each to be an automorphism of the
/// given lattice.
pub fn parse_group(text: &str, lat: &FiniteLattice) -> Result<Vec<LatticeMorphism>> {
    let mut gens = Vec::new();
    for (lineno, body) in logical_lines(text) {
        let Some(rest) = body.strip_prefix("perm:") else {
            return Err(syntax(lineno, "expected `perm: a->b ...`"));
        };
        let mut map: Vec<usize> = (0..lat.size()).collect();
        let mut touched = vec![false; lat.size()];
        for tok in rest.split_whitespace() {
            let Some((a, b)) = tok.split_once("->") else {
                return Err(syntax(lineno, &format!("expected `a->b`, got `{tok}`")));
            };
            let ai = lat.index_of(a).ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            let bi = lat.index_of(b).ok_or_else(|| Error::UnknownElement(b.to_string()))?;
            if touched[ai] {
                return Err(Error::NotAPermutation(format!(
                    "element `{a}` mapped twice"
                )));
            }
            touched[ai] = true;
            map[ai] = bi;
        }
        let mut seen = vec![false; lat.size()];
        for &t in &map {
            if seen[t] {
                return Err(Error::NotAPermutation(format!(
                    "element `{}` has two preimages",
                    lat.name(t)
                )));
            }
            seen[t] = true;
        }
        let g = LatticeMorphism::new(lat.clone(), lat.clone(), map);
        if !g.is_automorphism() {
            // name a violated pair for the error message
            for x in 0..lat.size() {
                for y in 0..lat.size() {
                    if g.apply(lat.meet(x, y)) != lat.meet(g.apply(x), g.apply(y))
                        || g.apply(lat.join(x, y)) != lat.join(g.apply(x), g.apply(y))
                    {
                        return Err(Error::NotAnAutomorphism(format!(
                            "pair ({}, {}) not preserved",
                            lat.name(x),
                            lat.name(y)
                        )));
                    }
                }
            }
            return Err(Error::NotAnAutomorphism("order not preserved".to_string()));
        }
        gens.push(g);
    }
    Ok(gens)
}

/// Serializes generators in the group grammar (moved points only).
pub fn serialize_group(lat: &FiniteLattice, gens: &[LatticeMorphism]) -> String {
    let mut out = String::new();
    for g in gens {
        let moves: Vec<String> = (0..lat.size())
            .filter(|&x| g.apply(x) != x)
            .map(|x| format!("{}->{}", lat.name(x), lat.name(g.apply(x))))
            .collect();
        let _ = writeln!(out, "perm: {}", moves.join(" "));
    }
    out
}

/// Minimal deterministic JSON value with stable key order.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object(pairs: Vec<(&str, Json)>) -> Json {
        Json::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn strings<S: AsRef<str>>(items: &[S]) -> Json {
        Json::Array(items.iter().map(|s| Json::Str(s.as_ref().to_string())).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Array(items) => {
                out.push('[');
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    it.write(out);
                }
                out.push(']');
            }
            Json::Object(pairs) => {
                out.push('{');
                for (i, (k, v)) in pairs.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    Json::Str(k.clone()).write(out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// TSV emitter: header row plus data rows, tab-separated, LF line ends.
pub fn emit_tsv<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let join = |cells: Vec<&str>| cells.join("\t");
    let _ = writeln!(out, "{}", join(header.iter().map(|s| s.as_ref()).collect()));
    for row in rows {
        let _ = writeln!(out, "{}", join(row.iter().map(|s| s.as_str()).collect()));
    }
    out
}

/// Plain Graphviz export of the Hasse diagram (covers point upward).
pub fn emit_dot(name: &str, lat: &FiniteLattice) -> String {
    let mut out = String::new();
    let ident: BTreeMap<usize, String> =
        (0..lat.size()).map(|i| (i, format!("n{i}"))).collect();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  rankdir=BT;");
    for i in 0..lat.size() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", ident[&i], lat.name(i));
    }
    for (a, b) in lat.covers() {
        let _ = writeln!(out, "  {} -> {};", ident[&a], ident[&b]);
    }
    let _ = writeln!(out, "}}");
    out
}
