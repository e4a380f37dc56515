//! Line-oriented documents for G-maps, rules and rule schemes.
//!
//! ```text
//! gmap 2
//! embedding color : <a0 a1> -> color
//! embedding point : <a1 a2> -> point
//! node a color=#555555 point=(0, 2)
//! arc a b a1
//! arc a a a2
//! ```
//!
//! `arc u v aN` stands for the arc pair `u → v`, `v → u` (a single arc when
//! `u = v`); `darc u v aN` is one directed arc; `_` leaves an arc
//! unlabelled. Rule documents start with `rule <n>` and hold `L`, `K` and
//! `R` sections; scheme documents start with `scheme <n>`, label right-hand
//! nodes with numbered terms `(k)` declared as `(k) = <term>` or with quoted
//! terms, and leave `L` and `K` unlabelled.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gmap::{EmbeddingOp, GMap, GMapSpec};
use crate::graph::{ArcLabel, IGraph};
use crate::rewrite::Rule;
use crate::scheme::{parse_term, parse_value, Expr, RuleScheme};
use crate::value::{Sort, Value};

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, message: other.to_string() },
    })
}

/// Meaningful lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str, keyword: &[&str]) -> Result<(String, u8)> {
    let mut words = text.split_whitespace();
    let (Some(kind), Some(n), None) = (words.next(), words.next(), words.next()) else {
        return perr(line, format!("expected `{} <dimension>`", keyword.join("|")));
    };
    if !keyword.contains(&kind) {
        return perr(line, format!("expected `{} <dimension>`", keyword.join("|")));
    }
    let n = n.parse::<u8>().or_else(|_| perr(line, format!("bad dimension `{n}`")))?;
    Ok((kind.to_string(), n))
}

fn parse_embedding(line: usize, text: &str, spec: &mut GMapSpec) -> Result<()> {
    let body = text.strip_prefix("embedding").unwrap_or(text).trim();
    let Some((name, rest)) = body.split_once(':') else {
        return perr(line, "expected `embedding <name> : <orbit> -> <sort>`");
    };
    let Some((orbit, sort)) = rest.split_once("->") else {
        return perr(line, "expected `-> <sort>`");
    };
    let name = name.trim();
    if !is_ident(name) {
        return perr(line, format!("bad embedding name `{name}`"));
    }
    at_line(line, (|| {
        spec.add_embedding(EmbeddingOp {
            name: name.to_string(),
            domain: orbit.trim().parse()?,
            sort: Sort::parse_data(sort.trim())?,
        })
    })())
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Splits `name k1=v1 k2=v2 …` where values may contain spaces.
fn split_node(line: usize, text: &str) -> Result<(String, Vec<(String, String)>)> {
    let body = text.strip_prefix("node").unwrap_or(text).trim_start();
    let (name, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
    if name.is_empty() || name.contains('=') {
        return perr(line, "expected a node name");
    }
    let rest = rest.trim();
    let bytes: Vec<char> = rest.chars().collect();
    let mut starts = Vec::new();
    let mut in_quote = false;
    for (k, c) in bytes.iter().enumerate() {
        if *c == '"' {
            in_quote = !in_quote;
        }
        if in_quote || !(k == 0 || bytes[k - 1].is_whitespace()) {
            continue;
        }
        let ident: String = bytes[k..].iter().take_while(|c| c.is_alphanumeric() || **c == '_').collect();
        if !ident.is_empty() && bytes.get(k + ident.chars().count()) == Some(&'=') {
            starts.push((k, ident));
        }
    }
    if !rest.is_empty() && starts.first().map(|(k, _)| *k) != Some(0) {
        return perr(line, format!("expected `index=value` after node `{name}`"));
    }
    let mut fields = Vec::new();
    for (n, (k, key)) in starts.iter().enumerate() {
        let from = k + key.chars().count() + 1;
        let to = starts.get(n + 1).map_or(bytes.len(), |(k, _)| *k);
        let value: String = bytes[from..to].iter().collect();
        fields.push((key.clone(), value.trim().to_string()));
    }
    Ok((name.to_string(), fields))
}

fn parse_label(line: usize, text: &str, dimension: u8) -> Result<Option<ArcLabel>> {
    if text == "_" {
        return Ok(None);
    }
    let l = text
        .parse::<ArcLabel>()
        .or_else(|_| perr(line, format!("bad arc label `{text}`")))?;
    if l.0 > dimension {
        return perr(line, format!("arc label {l} exceeds dimension {dimension}"));
    }
    Ok(Some(l))
}

fn arc_id(source: &str, label: Option<ArcLabel>, target: &str) -> String {
    match label {
        Some(l) => format!("{source}-{l}-{target}"),
        None => format!("{source}-_-{target}"),
    }
}

fn add_named_arc<L: Clone + PartialEq>(g: &mut IGraph<L>, s: &str, t: &str, l: Option<ArcLabel>) -> Result<()> {
    let base = arc_id(s, l, t);
    let mut name = base.clone();
    let mut k = 2;
    while g.contains_arc(&name) {
        name = format!("{base}~{k}");
        k += 1;
    }
    g.add_arc(name, s, t, l)
}

fn parse_arc<L: Clone + PartialEq>(line: usize, text: &str, dimension: u8, g: &mut IGraph<L>) -> Result<()> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let [kind, s, t, l] = words.as_slice() else {
        return perr(line, "expected `arc <u> <v> <label>`");
    };
    let label = parse_label(line, l, dimension)?;
    for n in [s, t] {
        if !g.contains_node(n) {
            return perr(line, format!("unknown node `{n}`"));
        }
    }
    at_line(line, add_named_arc(g, s, t, label))?;
    if *kind == "arc" && s != t {
        at_line(line, add_named_arc(g, t, s, label))?;
    }
    Ok(())
}

/// Reads a G-map document. Constraint violations are not checked here.
pub fn parse_gmap(text: &str) -> Result<GMap> {
    let mut it = lines(text).peekable();
    let Some((l0, header)) = it.next() else {
        return perr(1, "empty document");
    };
    let (_, dimension) = parse_header(l0, header, &["gmap"])?;
    let mut spec = GMapSpec::new(dimension);
    let mut graph: Option<IGraph<Value>> = None;
    for (line, text) in it {
        let keyword = text.split_whitespace().next().unwrap_or("");
        match keyword {
            "embedding" => {
                if graph.is_some() {
                    return perr(line, "embeddings must precede nodes and arcs");
                }
                parse_embedding(line, text, &mut spec)?;
            }
            "node" => {
                let g = graph.get_or_insert_with(|| IGraph::new(spec.names().cloned()));
                let (name, fields) = split_node(line, text)?;
                at_line(line, g.add_node(name.clone()))?;
                for (key, value) in fields {
                    let op = at_line(line, spec.embedding(&key))?;
                    let v = at_line(line, parse_value(&value))?;
                    if v.sort() != op.sort {
                        return perr(line, format!("`{key}` expects a {}, got `{value}`", op.sort));
                    }
                    at_line(line, g.set_label(&name, &key, v))?;
                }
            }
            "arc" | "darc" => {
                let g = graph.get_or_insert_with(|| IGraph::new(spec.names().cloned()));
                parse_arc(line, text, dimension, g)?;
            }
            other => return perr(line, format!("unexpected `{other}`")),
        }
    }
    let graph = graph.unwrap_or_else(|| IGraph::new(spec.names().cloned()));
    GMap::from_graph(spec, graph)
}

fn write_spec(out: &mut String, kind: &str, spec: &GMapSpec) {
    let _ = writeln!(out, "{kind} {}", spec.dimension);
    for op in spec.embeddings() {
        let _ = writeln!(out, "embedding {op}");
    }
}

fn write_graph<L: Clone + PartialEq>(out: &mut String, g: &IGraph<L>, show: impl Fn(&L) -> String) {
    for n in g.nodes() {
        out.push_str("node ");
        out.push_str(n);
        for (i, v) in g.labels(n).into_iter().flatten() {
            let _ = write!(out, " {i}={}", show(v));
        }
        out.push('\n');
    }
    let mut directed: BTreeMap<(Option<ArcLabel>, &str, &str), usize> = BTreeMap::new();
    for (_, a) in g.arcs() {
        *directed.entry((a.label, a.source.as_str(), a.target.as_str())).or_default() += 1;
    }
    let mut records: Vec<(u16, &str, &str, &str, String)> = Vec::new();
    let key = |l: Option<ArcLabel>| l.map_or(u16::MAX, |l| u16::from(l.0));
    let label = |l: Option<ArcLabel>| l.map_or("_".to_string(), |l| l.to_string());
    for (&(l, s, t), &count) in &directed {
        if s == t {
            for _ in 0..count {
                records.push((key(l), s, t, "arc", label(l)));
            }
            continue;
        }
        let reverse = directed.get(&(l, t, s)).copied().unwrap_or(0);
        let pairs = count.min(reverse);
        if s < t {
            for _ in 0..pairs {
                records.push((key(l), s, t, "arc", label(l)));
            }
        }
        for _ in pairs..count {
            records.push((key(l), s, t, "darc", label(l)));
        }
    }
    records.sort();
    for (_, s, t, kind, l) in records {
        let _ = writeln!(out, "{kind} {s} {t} {l}");
    }
}

/// Canonical text of a G-map: embeddings and nodes by name, arcs by
/// (label, endpoints).
pub fn write_gmap(g: &GMap) -> String {
    let mut out = String::new();
    write_spec(&mut out, "gmap", &g.spec);
    write_graph(&mut out, &g.graph, Value::to_string);
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_gmap(path: impl AsRef<Path>) -> Result<GMap> {
    parse_gmap(&read(path.as_ref())?)
}

pub fn save_gmap(g: &GMap, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &write_gmap(g))
}

/// A parsed rule document.
#[derive(Clone, Debug, PartialEq)]
pub enum RuleDocument {
    Rule { spec: GMapSpec, rule: Rule },
    Scheme { spec: GMapSpec, scheme: RuleScheme },
}

impl RuleDocument {
    pub fn spec(&self) -> &GMapSpec {
        match self {
            RuleDocument::Rule { spec, .. } | RuleDocument::Scheme { spec, .. } => spec,
        }
    }
}

fn scheme_label(line: usize, text: &str, refs: &BTreeMap<u32, Expr>) -> Result<Expr> {
    if let Some(q) = text.strip_prefix('"').and_then(|t| t.strip_suffix('"')) {
        return at_line(line, parse_term(q));
    }
    if let Some(k) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        if let Ok(k) = k.trim().parse::<u32>() {
            return refs
                .get(&k)
                .cloned()
                .ok_or_else(|| Error::Parse { line, message: format!("undeclared term ({k})") });
        }
    }
    perr(line, format!("scheme labels are `(k)` or quoted terms, got `{text}`"))
}

/// Reads a rule or rule-scheme document.
pub fn parse_rule_document(text: &str) -> Result<RuleDocument> {
    let mut it = lines(text);
    let Some((l0, header)) = it.next() else {
        return perr(1, "empty document");
    };
    let (kind, dimension) = parse_header(l0, header, &["rule", "scheme"])?;
    let is_scheme = kind == "scheme";
    let mut spec = GMapSpec::new(dimension);
    let mut refs: BTreeMap<u32, Expr> = BTreeMap::new();
    let mut sections: Vec<(String, IGraph<Value>, IGraph<Expr>)> = Vec::new();
    for (line, text) in it {
        if matches!(text, "L" | "K" | "R") {
            let expected = ["L", "K", "R"][sections.len().min(2)];
            if sections.len() >= 3 || text != expected {
                return perr(line, format!("expected section `{expected}`"));
            }
            sections.push((text.to_string(), IGraph::new(spec.names().cloned()), IGraph::new(spec.names().cloned())));
            continue;
        }
        let keyword = text.split_whitespace().next().unwrap_or("");
        if sections.is_empty() {
            if keyword == "embedding" {
                parse_embedding(line, text, &mut spec)?;
            } else if text.starts_with('(') && is_scheme {
                let Some((k, body)) = text.split_once('=') else {
                    return perr(line, "expected `(k) = <term>`");
                };
                let k = k
                    .trim()
                    .strip_prefix('(')
                    .and_then(|k| k.strip_suffix(')'))
                    .and_then(|k| k.trim().parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse { line, message: format!("bad reference `{}`", k.trim()) })?;
                let e = at_line(line, parse_term(body.trim()))?;
                at_line(line, e.sort(&spec))?;
                if refs.insert(k, e).is_some() {
                    return perr(line, format!("term ({k}) declared twice"));
                }
            } else {
                return perr(line, format!("unexpected `{keyword}` before the `L` section"));
            }
            continue;
        }
        let (name, values, exprs) = sections.last_mut().expect("non-empty");
        match keyword {
            "node" => {
                let (node, fields) = split_node(line, text)?;
                at_line(line, values.add_node(node.clone()))?;
                at_line(line, exprs.add_node(node.clone()))?;
                for (key, value) in fields {
                    let op = at_line(line, spec.embedding(&key))?;
                    if is_scheme {
                        if name != "R" {
                            return perr(line, format!("scheme section {name} must be unlabelled"));
                        }
                        let e = scheme_label(line, &value, &refs)?;
                        at_line(line, exprs.set_label(&node, &key, e))?;
                    } else {
                        let v = at_line(line, parse_value(&value))?;
                        if v.sort() != op.sort {
                            return perr(line, format!("`{key}` expects a {}, got `{value}`", op.sort));
                        }
                        at_line(line, values.set_label(&node, &key, v))?;
                    }
                }
            }
            "arc" | "darc" => {
                parse_arc(line, text, dimension, values)?;
                parse_arc(line, text, dimension, exprs)?;
            }
            other => return perr(line, format!("unexpected `{other}`")),
        }
    }
    if sections.len() != 3 {
        return perr(text.lines().count().max(1), "expected sections L, K and R");
    }
    let mut it = sections.into_iter();
    let (mut l, mut k, mut r) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
    Ok(if is_scheme {
        RuleDocument::Scheme {
            scheme: Rule::new(std::mem::take(&mut l.2), std::mem::take(&mut k.2), std::mem::take(&mut r.2))?,
            spec,
        }
    } else {
        RuleDocument::Rule {
            rule: Rule::new(std::mem::take(&mut l.1), std::mem::take(&mut k.1), std::mem::take(&mut r.1))?,
            spec,
        }
    })
}

/// Canonical text of a concrete rule.
pub fn write_rule(spec: &GMapSpec, rule: &Rule) -> String {
    let mut out = String::new();
    write_spec(&mut out, "rule", spec);
    for (name, g) in [("L", &rule.left), ("K", &rule.kernel), ("R", &rule.right)] {
        out.push_str(name);
        out.push('\n');
        write_graph(&mut out, g, Value::to_string);
    }
    out
}

/// Canonical text of a rule scheme; terms are numbered by first use.
pub fn write_scheme(spec: &GMapSpec, scheme: &RuleScheme) -> String {
    let mut numbering: Vec<Expr> = Vec::new();
    for n in scheme.right.nodes() {
        for (_, e) in scheme.right.labels(n).into_iter().flatten() {
            if !numbering.contains(e) {
                numbering.push(e.clone());
            }
        }
    }
    let mut out = String::new();
    write_spec(&mut out, "scheme", spec);
    for (k, e) in numbering.iter().enumerate() {
        let _ = writeln!(out, "({}) = {e}", k + 1);
    }
    for (name, g) in [("L", &scheme.left), ("K", &scheme.kernel), ("R", &scheme.right)] {
        out.push_str(name);
        out.push('\n');
        write_graph(&mut out, g, |e| {
            format!("({})", numbering.iter().position(|x| x == e).expect("numbered") + 1)
        });
    }
    out
}

pub fn write_rule_document(doc: &RuleDocument) -> String {
    match doc {
        RuleDocument::Rule { spec, rule } => write_rule(spec, rule),
        RuleDocument::Scheme { spec, scheme } => write_scheme(spec, scheme),
    }
}

pub fn load_rule_document(path: impl AsRef<Path>) -> Result<RuleDocument> {
    parse_rule_document(&read(path.as_ref())?)
}

pub fn save_rule_document(doc: &RuleDocument, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &write_rule_document(doc))
}
