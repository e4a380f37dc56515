use std::collections::{BTreeMap, BTreeSet};

use super::{orbit_partition, GMapSpec};
use crate::graph::{IGraph, NodeId};
use crate::report::Report;
use crate::value::Value;

/// Every arc carries a label in `α0…αn`.
pub fn check_arc_labels<L: Clone + PartialEq>(g: &IGraph<L>, dimension: u8) -> Report {
    let mut r = Report::new();
    for (id, arc) in g.arcs() {
        match arc.label {
            None => r.push("arc-labels", [id.clone(), "unlabelled".to_string()]),
            Some(l) if l.0 > dimension => r.push("arc-labels", [id.clone(), l.to_string()]),
            _ => {}
        }
    }
    r
}

/// Every arc has a reversed arc with the same label; a loop is its own reverse.
pub fn check_non_orientation<L: Clone + PartialEq>(g: &IGraph<L>) -> Report {
    let pairs: BTreeSet<(&str, &str, Option<u8>)> = g
        .arcs()
        .map(|(_, a)| (a.source.as_str(), a.target.as_str(), a.label.map(|l| l.0)))
        .collect();
    let mut r = Report::new();
    for (id, a) in g.arcs() {
        if !pairs.contains(&(a.target.as_str(), a.source.as_str(), a.label.map(|l| l.0))) {
            r.push("non-orientation", [id.clone()]);
        }
    }
    r
}

/// Out-degree per (node, label).
fn out_degrees<L: Clone + PartialEq>(g: &IGraph<L>) -> BTreeMap<(&str, u8), Vec<&str>> {
    let mut out: BTreeMap<(&str, u8), Vec<&str>> = BTreeMap::new();
    for (_, a) in g.arcs() {
        if let Some(l) = a.label {
            out.entry((a.source.as_str(), l.0)).or_default().push(a.target.as_str());
        }
    }
    out
}

/// Each node sources exactly one arc per label `α0…αn`.
pub fn check_adjacent_arcs<L: Clone + PartialEq>(g: &IGraph<L>, dimension: u8) -> Report {
    let out = out_degrees(g);
    let mut r = Report::new();
    for v in g.nodes() {
        for l in 0..=dimension {
            let count = out.get(&(v.as_str(), l)).map_or(0, Vec::len);
            if count != 1 {
                r.push("adjacent-arcs", [v.clone(), format!("a{l}"), count.to_string()]);
            }
        }
    }
    r
}

/// `v.αi.αj.αi.αj = v` for all `0 ≤ i`, `i + 2 ≤ j ≤ n`. Skipped when the
/// adjacent-arcs constraint fails, since links are then not functions.
pub fn check_cycles<L: Clone + PartialEq>(g: &IGraph<L>, dimension: u8) -> Report {
    let mut r = Report::new();
    if !check_adjacent_arcs(g, dimension).is_pass() {
        r.skip("cycles", "adjacent-arcs failed");
        return r;
    }
    let out = out_degrees(g);
    let step = |v: &str, l: u8| out[&(v, l)][0];
    for v in g.nodes() {
        for i in 0..=dimension {
            for j in (i + 2)..=dimension {
                let w = step(step(step(step(v, i), j), i), j);
                if w != v {
                    r.push("cycles", [v.clone(), format!("a{i}"), format!("a{j}")]);
                }
            }
        }
    }
    r
}

/// Arc labels, non-orientation, adjacent arcs and cycles.
pub fn check_topology<L: Clone + PartialEq>(g: &IGraph<L>, dimension: u8) -> Report {
    let mut r = check_arc_labels(g, dimension);
    r.extend(check_non_orientation(g));
    r.extend(check_adjacent_arcs(g, dimension));
    r.extend(check_cycles(g, dimension));
    r
}

/// For every embedding `π : <o> → s`, all nodes of each `<o>`-orbit carry the
/// same defined `π`-label of sort `s`.
///
/// A failing orbit is reported as `embedding <π> <seed> <node…>`, listing the
/// nodes that are undefined or disagree with the orbit's most frequent value.
pub fn check_embedding(g: &IGraph<Value>, spec: &GMapSpec) -> Report {
    let mut r = Report::new();
    for op in spec.embeddings() {
        if !g.has_index(&op.name) {
            r.push("embedding", [op.name.clone(), "missing-index".to_string()]);
            continue;
        }
        for orbit in orbit_partition(g, &op.domain) {
            let mut members: Vec<&NodeId> = orbit.nodes.iter().collect();
            members.sort();
            let mut counts: BTreeMap<&Value, usize> = BTreeMap::new();
            for n in &members {
                if let Some(v) = g.label(n, &op.name) {
                    if v.sort() != op.sort {
                        r.push("embedding-sort", [op.name.clone(), (*n).clone(), v.sort().to_string()]);
                    }
                    *counts.entry(v).or_default() += 1;
                }
            }
            // most frequent value, smallest on ties
            let majority = counts
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                .map(|(v, _)| *v);
            let odd: Vec<String> = members
                .iter()
                .filter(|n| g.label(n, &op.name) != majority || majority.is_none())
                .map(|n| (*n).clone())
                .collect();
            if !odd.is_empty() {
                let mut w = vec![op.name.clone(), orbit.seed.clone()];
                w.extend(odd);
                r.push("embedding", w);
            }
        }
    }
    r
}
