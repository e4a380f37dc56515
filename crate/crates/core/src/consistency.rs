//! Syntactic conditions under which a rule preserves G-map consistency.

use std::collections::{BTreeMap, BTreeSet};

use crate::gmap::{check_arc_labels, check_non_orientation, orbit_partition, GMapSpec, OrbitType};
use crate::graph::{ArcLabel, IGraph, NodeId};
use crate::report::Report;
use crate::rewrite::Rule;

fn out_labels<L: Clone + PartialEq>(g: &IGraph<L>, x: &str) -> Vec<Option<ArcLabel>> {
    let mut v: Vec<_> = g.out_arcs(x).map(|(_, a)| a.label).collect();
    v.sort();
    v
}

/// Nodes reachable from `x` along a walk labelled `labels`.
fn walk<L: Clone + PartialEq>(g: &IGraph<L>, x: &str, labels: &[u8]) -> BTreeSet<NodeId> {
    let mut frontier = BTreeSet::from([x.to_string()]);
    for l in labels {
        frontier = frontier
            .iter()
            .flat_map(|n| {
                g.out_arcs(n)
                    .filter(|(_, a)| a.label == Some(ArcLabel(*l)))
                    .map(|(_, a)| a.target.clone())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    frontier
}

fn has_cycle<L: Clone + PartialEq>(g: &IGraph<L>, x: &str, i: u8, j: u8) -> bool {
    walk(g, x, &[i, j, i, j]).contains(x)
}

/// Non-orientation, adjacent-arc and cycle preservation conditions.
pub fn check_topo_preservation<L: Clone + PartialEq>(rule: &Rule<L>, dimension: u8) -> Report {
    let mut r = Report::new();
    for (side, g) in [("L", &rule.left), ("K", &rule.kernel), ("R", &rule.right)] {
        for v in check_arc_labels(g, dimension).violations() {
            let mut w = vec![side.to_string()];
            w.extend(v.witness.iter().cloned());
            r.push("arc-labels", w);
        }
        for v in check_non_orientation(g).violations() {
            let mut w = vec![side.to_string()];
            w.extend(v.witness.iter().cloned());
            r.push("non-orientation", w);
        }
    }

    for x in rule.kernel.nodes() {
        let (l, rr) = (out_labels(&rule.left, x), out_labels(&rule.right, x));
        if l != rr {
            let show = |v: &[Option<ArcLabel>]| {
                v.iter()
                    .map(|l| l.map_or("_".to_string(), |l| l.to_string()))
                    .collect::<Vec<_>>()
                    .join("+")
            };
            r.push("adjacent-arcs", ["preserved".to_string(), x.clone(), show(&l), show(&rr)]);
        }
    }
    let full: Vec<Option<ArcLabel>> = (0..=dimension).map(|l| Some(ArcLabel(l))).collect();
    for (kind, g, nodes) in [
        ("removed", &rule.left, rule.deleted_nodes()),
        ("added", &rule.right, rule.added_nodes()),
    ] {
        for x in nodes {
            let labels = out_labels(g, &x);
            if labels != full {
                for l in 0..=dimension {
                    let count = labels.iter().filter(|o| **o == Some(ArcLabel(l))).count();
                    if count != 1 {
                        r.push("adjacent-arcs", [kind.to_string(), x.clone(), format!("a{l}"), count.to_string()]);
                    }
                }
                if labels.iter().any(Option::is_none) {
                    r.push("adjacent-arcs", [kind.to_string(), x.clone(), "_".to_string(), "unlabelled".to_string()]);
                }
            }
        }
    }

    let added = rule.added_nodes();
    for i in 0..=dimension {
        for j in (i + 2)..=dimension {
            let pair = [format!("a{i}"), format!("a{j}")];
            for x in &added {
                if !has_cycle(&rule.right, x, i, j) {
                    r.push("cycles", ["added".to_string(), x.clone(), pair[0].clone(), pair[1].clone()]);
                }
            }
            for x in rule.kernel.nodes() {
                if has_cycle(&rule.left, x, i, j) {
                    if !has_cycle(&rule.right, x, i, j) {
                        r.push("cycles", ["broken".to_string(), x.clone(), pair[0].clone(), pair[1].clone()]);
                    }
                    continue;
                }
                let touched: Vec<_> = rule
                    .left
                    .incident_arcs(x)
                    .filter(|(_, a)| matches!(a.label, Some(l) if l.0 == i || l.0 == j))
                    .map(|(id, _)| id.clone())
                    .collect();
                for id in touched {
                    if !rule.kernel.contains_arc(&id) {
                        r.push("cycles", ["incomplete".to_string(), x.clone(), pair[0].clone(), pair[1].clone(), id]);
                    }
                }
            }
        }
    }
    r
}

/// Whether every node of the orbit sources exactly one arc per label of `o`;
/// returns the first offending (node, label).
fn orbit_incompleteness<L: Clone + PartialEq>(
    g: &IGraph<L>,
    nodes: &[NodeId],
    o: &OrbitType,
) -> Option<(NodeId, u8)> {
    for n in nodes {
        for l in o.labels() {
            if g.out_arcs(n).filter(|(_, a)| a.label == Some(ArcLabel(*l))).count() != 1 {
                return Some((n.clone(), *l));
            }
        }
    }
    None
}

/// Uniformity of every `<o>`-orbit of `R` for each embedding `π : <o> → s`.
pub fn check_orbit_uniformity<L: Clone + PartialEq>(right: &IGraph<L>, spec: &GMapSpec) -> Report {
    let mut r = Report::new();
    for op in spec.embeddings() {
        for orbit in orbit_partition(right, &op.domain) {
            let mut nodes = orbit.nodes.clone();
            nodes.sort();
            let first = right.label(&nodes[0], &op.name);
            let odd: Vec<NodeId> = nodes
                .iter()
                .filter(|n| right.label(n, &op.name) != first)
                .cloned()
                .collect();
            if !odd.is_empty() {
                let mut w = vec![op.name.clone(), nodes[0].clone()];
                w.extend(odd);
                r.push("non-consistent-embedding", w);
            }
        }
    }
    r
}

/// Embedding preservation: (a) uniform `π`-labels on each `<o>`-orbit of
/// `R`; (b) complete `<o>`-orbits in `R` around added nodes and around nodes
/// whose `π`-label changes.
pub fn check_embedding_preservation<L: Clone + PartialEq>(rule: &Rule<L>, spec: &GMapSpec) -> Report {
    let mut r = check_orbit_uniformity(&rule.right, spec);
    for op in spec.embeddings() {
        let orbits: BTreeMap<NodeId, Vec<NodeId>> = orbit_partition(&rule.right, &op.domain)
            .into_iter()
            .flat_map(|o| {
                let nodes = o.nodes.clone();
                o.nodes.into_iter().map(move |n| (n, nodes.clone()))
            })
            .collect();
        for x in rule.right.nodes() {
            let changed = !rule.kernel.contains_node(x)
                || (rule.left.contains_node(x) && rule.left.label(x, &op.name) != rule.right.label(x, &op.name));
            if !changed {
                continue;
            }
            if let Some((n, l)) = orbit_incompleteness(&rule.right, &orbits[x], &op.domain) {
                r.push("incomplete-redefinition", [op.name.clone(), x.clone(), n, format!("a{l}")]);
            }
        }
    }
    r
}

/// Both preservation checks; the embedding check only runs once the
/// topological one passes.
pub fn check_rule_consistency<L: Clone + PartialEq>(rule: &Rule<L>, spec: &GMapSpec) -> Report {
    let mut r = check_topo_preservation(rule, spec.dimension);
    if r.is_pass() {
        r.extend(check_embedding_preservation(rule, spec));
    } else {
        r.skip("embedding-preservation", "topological preservation failed");
    }
    r
}
