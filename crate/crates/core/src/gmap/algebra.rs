use std::collections::BTreeSet;

use super::{orbit, orbit_classes, GMapSpec, OrbitType};
use crate::error::{Error, Result};
use crate::graph::{ArcLabel, IGraph, NodeId};
use crate::value::Value;

/// `v.π`; `None` when the label is undefined.
pub fn access<'g>(g: &'g IGraph<Value>, spec: &GMapSpec, node: &str, embedding: &str) -> Result<Option<&'g Value>> {
    spec.embedding(embedding)?;
    if !g.contains_node(node) {
        return Err(Error::UnknownNode(node.to_string()));
    }
    Ok(g.label(node, embedding))
}

/// `v.αi`: the target of the unique αi-arc sourced at `node`.
pub fn link<L: Clone + PartialEq>(g: &IGraph<L>, node: &str, label: ArcLabel) -> Result<NodeId> {
    if !g.contains_node(node) {
        return Err(Error::UnknownNode(node.to_string()));
    }
    let targets: Vec<&NodeId> = g
        .out_arcs(node)
        .filter(|(_, a)| a.label == Some(label))
        .map(|(_, a)| &a.target)
        .collect();
    match targets.as_slice() {
        [t] => Ok((*t).clone()),
        _ => Err(Error::Link {
            node: node.to_string(),
            label: label.0,
            count: targets.len(),
        }),
    }
}

/// `π{<o'>(v)}`: one `π`-label per `π`-domain class of the whole graph that
/// meets the traversal orbit `<o'>(v)`.
pub fn collect(
    g: &IGraph<Value>,
    spec: &GMapSpec,
    embedding: &str,
    traversal: &OrbitType,
    node: &str,
) -> Result<Value> {
    let op = spec.embedding(embedding)?;
    let walk = orbit(g, traversal, node)?;
    let classes = orbit_classes(g, &op.domain);
    let mut seen = BTreeSet::new();
    let mut values = Vec::new();
    for w in &walk.nodes {
        if !seen.insert(&classes[w]) {
            continue;
        }
        let v = g.label(w, embedding).ok_or_else(|| Error::UndefinedLabel {
            node: w.clone(),
            embedding: embedding.to_string(),
        })?;
        values.push(v.clone());
    }
    Ok(Value::multiset(values))
}
