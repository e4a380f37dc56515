//! Brute-force oracles shared by the integration tests. None of them call
//! into the library code they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gmap_core::gmap::{GMapSpec, OrbitType};
use gmap_core::graph::{ArcLabel, IGraph, Morphism, NodeId};
use gmap_core::rewrite::{Match, Rule};
use gmap_core::value::Value;

/// Reflexive, symmetric, transitive closure of the arcs labelled in
/// `labels`, by Warshall's algorithm on a boolean matrix.
#[allow(clippy::needless_range_loop)]
pub fn closure_classes(g: &IGraph<Value>, labels: &[u8]) -> Vec<BTreeSet<NodeId>> {
    let names: Vec<NodeId> = g.nodes().cloned().collect();
    let index: BTreeMap<&NodeId, usize> = names.iter().enumerate().map(|(k, n)| (n, k)).collect();
    let n = names.len();
    let mut m = vec![vec![false; n]; n];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = true;
    }
    for (_, a) in g.arcs() {
        if a.label.is_some_and(|l| labels.contains(&l.0)) {
            let (s, t) = (index[&a.source], index[&a.target]);
            m[s][t] = true;
            m[t][s] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..n {
        if seen.contains(&i) {
            continue;
        }
        let class: BTreeSet<NodeId> = (0..n).filter(|&j| m[i][j]).map(|j| names[j].clone()).collect();
        seen.extend((0..n).filter(|&j| m[i][j]));
        out.push(class);
    }
    out
}

pub fn closure_orbit(g: &IGraph<Value>, labels: &[u8], seed: &str) -> BTreeSet<NodeId> {
    closure_classes(g, labels)
        .into_iter()
        .find(|c| c.contains(seed))
        .expect("seed is a node")
}

/// One value per domain class meeting the traversal orbit, sorted.
pub fn quotient_collect(g: &IGraph<Value>, spec: &GMapSpec, emb: &str, traversal: &[u8], seed: &str) -> Vec<Value> {
    let op = spec.embedding(emb).expect("declared embedding");
    let walk = closure_orbit(g, traversal, seed);
    let mut out: Vec<Value> = closure_classes(g, op.domain.labels())
        .into_iter()
        .filter(|c| c.iter().any(|n| walk.contains(n)))
        .map(|c| {
            let first = c.iter().find(|n| walk.contains(*n)).expect("non-empty intersection");
            g.label(first, emb).expect("labelled").clone()
        })
        .collect();
    out.sort();
    out
}

pub fn orbit_type(labels: &[u8]) -> OrbitType {
    OrbitType::new(labels.iter().copied()).expect("increasing labels")
}

/// The pushout complement `D` of `K → L → G`: delete the images of
/// `L \ K`, erase labels that `K` leaves undefined.
pub fn pushout_complement(rule: &Rule, m: &Match, g: &IGraph<Value>) -> IGraph<Value> {
    let mut d = IGraph::new(g.indices().iter().cloned());
    let deleted: BTreeSet<&NodeId> =
        rule.left.nodes().filter(|x| !rule.kernel.contains_node(x)).map(|x| &m.morphism.nodes[x]).collect();
    let deleted_arcs: BTreeSet<&String> = rule
        .left
        .arcs()
        .filter(|(id, _)| !rule.kernel.contains_arc(id))
        .map(|(id, _)| &m.morphism.arcs[id])
        .collect();
    let preimage: BTreeMap<&NodeId, &NodeId> = m.morphism.nodes.iter().map(|(x, y)| (y, x)).collect();
    for n in g.nodes().filter(|n| !deleted.contains(n)) {
        d.add_node(n.clone()).unwrap();
        for (i, v) in g.labels(n).into_iter().flatten() {
            let erased = preimage
                .get(n)
                .is_some_and(|x| rule.kernel.label(x, i).is_none() && rule.left.label(x, i).is_some());
            if !erased {
                d.set_label(n, i, v.clone()).unwrap();
            }
        }
    }
    for (id, a) in g.arcs().filter(|(id, _)| !deleted_arcs.contains(id)) {
        d.add_arc(id.clone(), a.source.clone(), a.target.clone(), a.label).unwrap();
    }
    d
}

/// Restriction of the match to `K`, as a morphism into `D`.
pub fn kernel_match(rule: &Rule, m: &Match) -> Morphism {
    Morphism {
        nodes: rule.kernel.nodes().map(|x| (x.clone(), m.morphism.nodes[x].clone())).collect(),
        arcs: rule.kernel.arcs().map(|(id, _)| (id.clone(), m.morphism.arcs[id].clone())).collect(),
    }
}

pub fn inclusion<L: Clone + PartialEq>(g: &IGraph<L>) -> Morphism {
    Morphism {
        nodes: g.nodes().map(|x| (x.clone(), x.clone())).collect(),
        arcs: g.arcs().map(|(id, _)| (id.clone(), id.clone())).collect(),
    }
}

/// Whether `m : a → b` is a label-preserving graph morphism: structure
/// preserved, defined labels kept.
pub fn is_morphism(m: &Morphism, a: &IGraph<Value>, b: &IGraph<Value>) -> bool {
    if m.nodes.len() != a.node_count() || m.arcs.len() != a.arc_count() {
        return false;
    }
    for x in a.nodes() {
        let Some(y) = m.nodes.get(x) else { return false };
        if !b.contains_node(y) {
            return false;
        }
        for (i, v) in a.labels(x).into_iter().flatten() {
            if b.label(y, i) != Some(v) {
                return false;
            }
        }
    }
    for (id, arc) in a.arcs() {
        let Some(target) = m.arcs.get(id).and_then(|t| b.arc(t)) else { return false };
        if m.nodes[&arc.source] != target.source || m.nodes[&arc.target] != target.target {
            return false;
        }
        if arc.label.is_some() && arc.label != target.label {
            return false;
        }
    }
    true
}

/// Every label-preserving morphism `a → b`, by exhaustive enumeration.
pub fn all_morphisms(a: &IGraph<Value>, b: &IGraph<Value>) -> Vec<Morphism> {
    let xs: Vec<NodeId> = a.nodes().cloned().collect();
    let ys: Vec<NodeId> = b.nodes().cloned().collect();
    let arcs: Vec<(String, gmap_core::graph::Arc)> = a.arcs().map(|(id, a)| (id.clone(), a.clone())).collect();
    let mut out = Vec::new();
    let mut nodes = BTreeMap::new();
    enumerate_nodes(a, b, &xs, &ys, &arcs, 0, &mut nodes, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_nodes(
    a: &IGraph<Value>,
    b: &IGraph<Value>,
    xs: &[NodeId],
    ys: &[NodeId],
    arcs: &[(String, gmap_core::graph::Arc)],
    k: usize,
    nodes: &mut BTreeMap<NodeId, NodeId>,
    out: &mut Vec<Morphism>,
) {
    if k == xs.len() {
        let mut arc_map = BTreeMap::new();
        enumerate_arcs(b, arcs, 0, nodes, &mut arc_map, out);
        return;
    }
    for y in ys {
        let ok = a
            .labels(&xs[k])
            .into_iter()
            .flatten()
            .all(|(i, v)| b.label(y, i) == Some(v));
        if ok {
            nodes.insert(xs[k].clone(), y.clone());
            enumerate_nodes(a, b, xs, ys, arcs, k + 1, nodes, out);
            nodes.remove(&xs[k]);
        }
    }
}

fn enumerate_arcs(
    b: &IGraph<Value>,
    arcs: &[(String, gmap_core::graph::Arc)],
    k: usize,
    nodes: &BTreeMap<NodeId, NodeId>,
    map: &mut BTreeMap<String, String>,
    out: &mut Vec<Morphism>,
) {
    if k == arcs.len() {
        out.push(Morphism { nodes: nodes.clone(), arcs: map.clone() });
        return;
    }
    let (id, arc) = &arcs[k];
    let candidates: Vec<String> = b
        .arcs()
        .filter(|(_, t)| {
            t.source == nodes[&arc.source]
                && t.target == nodes[&arc.target]
                && (arc.label.is_none() || arc.label == t.label)
        })
        .map(|(tid, _)| tid.clone())
        .collect();
    for c in candidates {
        map.insert(id.clone(), c);
        enumerate_arcs(b, arcs, k + 1, nodes, map, out);
    }
    map.remove(id);
}

pub fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    Morphism {
        nodes: f.nodes.iter().map(|(x, y)| (x.clone(), g.nodes[y].clone())).collect(),
        arcs: f.arcs.iter().map(|(x, y)| (x.clone(), g.arcs[y].clone())).collect(),
    }
}

/// A graph with unlabelled nodes `0..n` and the given arcs.
pub fn small_graph(n: usize, arcs: &[(usize, usize, Option<u8>)]) -> IGraph<Value> {
    let mut g = IGraph::new(Vec::<String>::new());
    for k in 0..n {
        g.add_node(k.to_string()).unwrap();
    }
    for (k, (s, t, l)) in arcs.iter().enumerate() {
        g.add_arc(format!("e{k}"), s.to_string(), t.to_string(), l.map(ArcLabel)).unwrap();
    }
    g
}

/// Every graph on at most `max_nodes` nodes with at most `max_arcs` arcs
/// drawn, as a multiset, from all endpoint pairs and the given labels.
pub fn all_small_graphs(max_nodes: usize, max_arcs: usize, labels: &[Option<u8>]) -> Vec<IGraph<Value>> {
    let mut out = Vec::new();
    for n in 0..=max_nodes {
        let mut kinds = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for l in labels {
                    kinds.push((s, t, *l));
                }
            }
        }
        let mut chosen = Vec::new();
        multisets(&kinds, 0, max_arcs, &mut chosen, &mut |arcs| out.push(small_graph(n, arcs)));
    }
    out
}

fn multisets<T: Clone>(items: &[T], from: usize, left: usize, chosen: &mut Vec<T>, emit: &mut dyn FnMut(&[T])) {
    emit(chosen);
    if left == 0 {
        return;
    }
    for k in from..items.len() {
        chosen.push(items[k].clone());
        multisets(items, k, left - 1, chosen, emit);
        chosen.pop();
    }
}
