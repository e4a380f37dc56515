use std::collections::{BTreeMap, BTreeSet};

use super::{ArcId, IGraph, NodeId};
use crate::error::{Error, Result};
use crate::report::Report;

/// A pair of maps on nodes and arcs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    pub nodes: BTreeMap<NodeId, NodeId>,
    pub arcs: BTreeMap<ArcId, ArcId>,
}

impl Morphism {
    pub fn identity<L: Clone + PartialEq>(g: &IGraph<L>) -> Self {
        Self {
            nodes: g.nodes().map(|n| (n.clone(), n.clone())).collect(),
            arcs: g.arcs().map(|(a, _)| (a.clone(), a.clone())).collect(),
        }
    }

    pub fn node(&self, n: &str) -> Option<&NodeId> {
        self.nodes.get(n)
    }

    pub fn arc(&self, a: &str) -> Option<&ArcId> {
        self.arcs.get(a)
    }

    pub fn is_injective(&self) -> bool {
        let n: BTreeSet<_> = self.nodes.values().collect();
        let a: BTreeSet<_> = self.arcs.values().collect();
        n.len() == self.nodes.len() && a.len() == self.arcs.len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        let lookup = |map: &BTreeMap<String, String>, k: &String| {
            map.get(k)
                .cloned()
                .ok_or_else(|| Error::NotAMorphism(format!("composition undefined at `{k}`")))
        };
        Ok(Morphism {
            nodes: self
                .nodes
                .iter()
                .map(|(k, v)| Ok((k.clone(), lookup(&other.nodes, v)?)))
                .collect::<Result<_>>()?,
            arcs: self
                .arcs
                .iter()
                .map(|(k, v)| Ok((k.clone(), lookup(&other.arcs, v)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Image of the node set.
    pub fn node_image(&self) -> BTreeSet<NodeId> {
        self.nodes.values().cloned().collect()
    }

    pub fn arc_image(&self) -> BTreeSet<ArcId> {
        self.arcs.values().cloned().collect()
    }
}

/// Checks that `m` is a morphism `g → h`: totality, commuting with source and
/// target, preservation of every defined arc label and node label.
///
/// Ids named by `m` that do not exist in `g` or `h` are an error; every other
/// failure is a report line.
pub fn check_morphism<L: Clone + PartialEq>(m: &Morphism, g: &IGraph<L>, h: &IGraph<L>) -> Result<Report> {
    for (k, v) in &m.nodes {
        if !g.contains_node(k) {
            return Err(Error::UnknownNode(k.clone()));
        }
        if !h.contains_node(v) {
            return Err(Error::UnknownNode(v.clone()));
        }
    }
    for (k, v) in &m.arcs {
        if !g.contains_arc(k) {
            return Err(Error::UnknownArc(k.clone()));
        }
        if !h.contains_arc(v) {
            return Err(Error::UnknownArc(v.clone()));
        }
    }
    let mut report = Report::new();
    for n in g.nodes() {
        let Some(image) = m.nodes.get(n) else {
            report.push("totality", [format!("node:{n}")]);
            continue;
        };
        for (index, value) in g.labels(n).into_iter().flatten() {
            if h.label(image, index) != Some(value) {
                report.push("node-label", [n.clone(), image.clone(), index.clone()]);
            }
        }
    }
    for (id, arc) in g.arcs() {
        let Some(image_id) = m.arcs.get(id) else {
            report.push("totality", [format!("arc:{id}")]);
            continue;
        };
        let image = h.arc(image_id).expect("checked above");
        if m.nodes.get(&arc.source) != Some(&image.source) {
            report.push("source", [id.clone(), image_id.clone()]);
        }
        if m.nodes.get(&arc.target) != Some(&image.target) {
            report.push("target", [id.clone(), image_id.clone()]);
        }
        if arc.label.is_some() && arc.label != image.label {
            report.push("arc-label", [id.clone(), image_id.clone()]);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ArcLabel;
    use crate::value::Value;

    fn two_arcs() -> IGraph {
        let mut g = IGraph::new(["point"]);
        g.add_node("u").unwrap();
        g.add_node("v").unwrap();
        g.add_arc("p", "u", "v", Some(ArcLabel(0))).unwrap();
        g.add_arc("q", "u", "v", Some(ArcLabel(1))).unwrap();
        g.set_label("u", "point", Value::point(0, 0)).unwrap();
        g
    }

    #[test]
    fn identity_passes() {
        let g = two_arcs();
        assert!(check_morphism(&Morphism::identity(&g), &g, &g).unwrap().is_pass());
    }

    #[test]
    fn label_swap_fails() {
        let g = two_arcs();
        let mut m = Morphism::identity(&g);
        m.arcs.insert("p".into(), "q".into());
        let report = check_morphism(&m, &g, &g).unwrap();
        assert!(report.fails("arc-label"));
        assert!(!report.fails("source"));
    }

    #[test]
    fn unknown_ids_are_errors() {
        let g = two_arcs();
        let mut m = Morphism::identity(&g);
        m.nodes.insert("u".into(), "w".into());
        assert!(matches!(check_morphism(&m, &g, &g), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn unlabelled_source_maps_anywhere() {
        let g = two_arcs();
        let base = g.strip_labels();
        let m = Morphism::identity(&g);
        assert!(check_morphism(&m, &base, &g).unwrap().is_pass());
        // the reverse direction loses the point label
        assert!(check_morphism(&m, &g, &base).unwrap().fails("node-label"));
    }
}
