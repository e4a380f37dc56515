//! Multi-labelled graphs: every node carries one partial label per index,
//! arcs carry at most one α-label.

mod morphism;
mod pushout;

pub use morphism::{check_morphism, Morphism};
pub use pushout::{pushout, Pushout};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::value::Value;

pub type NodeId = String;
pub type ArcId = String;

/// The arc label αi, written `a<i>` in files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcLabel(pub u8);

impl ArcLabel {
    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl FromStr for ArcLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('a')
            .or_else(|| s.strip_prefix('α'))
            .ok_or_else(|| Error::Unsupported(format!("`{s}` is not an arc label")))?;
        digits
            .parse::<u8>()
            .map(ArcLabel)
            .map_err(|_| Error::Unsupported(format!("`{s}` is not an arc label")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub source: NodeId,
    pub target: NodeId,
    pub label: Option<ArcLabel>,
}

/// An I-labelled graph. `L` is the label datum: concrete [`Value`]s for
/// G-maps and rules, expressions for graph schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IGraph<L = Value> {
    indices: BTreeSet<String>,
    nodes: BTreeMap<NodeId, BTreeMap<String, L>>,
    arcs: BTreeMap<ArcId, Arc>,
}

impl<L> Default for IGraph<L> {
    fn default() -> Self {
        Self {
            indices: BTreeSet::new(),
            nodes: BTreeMap::new(),
            arcs: BTreeMap::new(),
        }
    }
}

impl<L: Clone + PartialEq> IGraph<L> {
    pub fn new<I, S>(indices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            indices: indices.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn indices(&self) -> &BTreeSet<String> {
        &self.indices
    }

    pub fn has_index(&self, index: &str) -> bool {
        self.indices.contains(index)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node names in lexicographic order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes.keys()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&ArcId, &Arc)> {
        self.arcs.iter()
    }

    pub fn contains_node(&self, node: &str) -> bool {
        self.nodes.contains_key(node)
    }

    pub fn contains_arc(&self, arc: &str) -> bool {
        self.arcs.contains_key(arc)
    }

    pub fn arc(&self, arc: &str) -> Option<&Arc> {
        self.arcs.get(arc)
    }

    pub fn add_node(&mut self, node: impl Into<NodeId>) -> Result<()> {
        let node = node.into();
        if self.nodes.contains_key(&node) {
            return Err(Error::DuplicateNode(node));
        }
        self.nodes.insert(node, BTreeMap::new());
        Ok(())
    }

    /// Adds `node` unless it already exists.
    pub fn ensure_node(&mut self, node: impl Into<NodeId>) {
        self.nodes.entry(node.into()).or_default();
    }

    pub fn add_arc(
        &mut self,
        arc: impl Into<ArcId>,
        source: impl Into<NodeId>,
        target: impl Into<NodeId>,
        label: Option<ArcLabel>,
    ) -> Result<()> {
        let (arc, source, target) = (arc.into(), source.into(), target.into());
        if self.arcs.contains_key(&arc) {
            return Err(Error::DuplicateArc(arc));
        }
        for end in [&source, &target] {
            if !self.nodes.contains_key(end) {
                return Err(Error::UnknownNode(end.clone()));
            }
        }
        self.arcs.insert(arc, Arc { source, target, label });
        Ok(())
    }

    pub fn set_arc_label(&mut self, arc: &str, label: Option<ArcLabel>) -> Result<()> {
        let a = self.arcs.get_mut(arc).ok_or_else(|| Error::UnknownArc(arc.into()))?;
        a.label = label;
        Ok(())
    }

    /// Removes a node and every arc incident to it.
    pub fn remove_node(&mut self, node: &str) -> Result<()> {
        self.nodes.remove(node).ok_or_else(|| Error::UnknownNode(node.into()))?;
        self.arcs.retain(|_, a| a.source != node && a.target != node);
        Ok(())
    }

    pub fn remove_arc(&mut self, arc: &str) -> Result<Arc> {
        self.arcs.remove(arc).ok_or_else(|| Error::UnknownArc(arc.into()))
    }

    pub fn label(&self, node: &str, index: &str) -> Option<&L> {
        self.nodes.get(node).and_then(|l| l.get(index))
    }

    /// Defined labels of `node`, keyed by index.
    pub fn labels(&self, node: &str) -> Option<&BTreeMap<String, L>> {
        self.nodes.get(node)
    }

    pub fn set_label(&mut self, node: &str, index: &str, value: L) -> Result<()> {
        if !self.indices.contains(index) {
            return Err(Error::UnknownIndex(index.into()));
        }
        let labels = self.nodes.get_mut(node).ok_or_else(|| Error::UnknownNode(node.into()))?;
        labels.insert(index.to_string(), value);
        Ok(())
    }

    pub fn clear_label(&mut self, node: &str, index: &str) -> Result<Option<L>> {
        let labels = self.nodes.get_mut(node).ok_or_else(|| Error::UnknownNode(node.into()))?;
        Ok(labels.remove(index))
    }

    /// Arcs whose source is `node`, in arc-name order.
    pub fn out_arcs<'a>(&'a self, node: &'a str) -> impl Iterator<Item = (&'a ArcId, &'a Arc)> + 'a {
        self.arcs.iter().filter(move |(_, a)| a.source == node)
    }

    /// Arcs with `node` as source or target.
    pub fn incident_arcs<'a>(&'a self, node: &'a str) -> impl Iterator<Item = (&'a ArcId, &'a Arc)> + 'a {
        self.arcs
            .iter()
            .filter(move |(_, a)| a.source == node || a.target == node)
    }

    /// Every node has every index defined.
    pub fn is_totally_labelled(&self) -> bool {
        self.nodes
            .values()
            .all(|labels| self.indices.iter().all(|i| labels.contains_key(i)))
    }

    /// The base: same nodes, arcs and arc labels, no node labels.
    pub fn strip_labels(&self) -> IGraph<L> {
        IGraph {
            indices: self.indices.clone(),
            nodes: self.nodes.keys().map(|n| (n.clone(), BTreeMap::new())).collect(),
            arcs: self.arcs.clone(),
        }
    }

    /// The i-component: a single-index graph keeping only the `index` labels.
    pub fn project(&self, index: &str) -> Result<IGraph<L>> {
        if !self.indices.contains(index) {
            return Err(Error::UnknownIndex(index.into()));
        }
        let nodes = self
            .nodes
            .iter()
            .map(|(n, labels)| {
                let kept = labels
                    .get(index)
                    .map(|v| (index.to_string(), v.clone()))
                    .into_iter()
                    .collect();
                (n.clone(), kept)
            })
            .collect();
        Ok(IGraph {
            indices: BTreeSet::from([index.to_string()]),
            nodes,
            arcs: self.arcs.clone(),
        })
    }

    /// Same nodes, arcs, endpoints and arc labels.
    pub fn same_base<M>(&self, other: &IGraph<M>) -> bool {
        self.first_base_difference(other).is_none()
    }

    fn first_base_difference<M>(&self, other: &IGraph<M>) -> Option<String> {
        let mine: Vec<_> = self.nodes.keys().collect();
        let theirs: Vec<_> = other.nodes.keys().collect();
        if mine != theirs {
            let diff = self
                .nodes
                .keys()
                .find(|n| !other.nodes.contains_key(*n))
                .or_else(|| other.nodes.keys().find(|n| !self.nodes.contains_key(*n)))
                .expect("node sets differ");
            return Some(format!("node `{diff}`"));
        }
        for (id, arc) in &self.arcs {
            if other.arcs.get(id) != Some(arc) {
                return Some(format!("arc `{id}`"));
            }
        }
        other
            .arcs
            .keys()
            .find(|id| !self.arcs.contains_key(*id))
            .map(|id| format!("arc `{id}`"))
    }

    /// Relabels nodes through `f`, keeping the base.
    pub fn try_map_labels<M, F>(&self, mut f: F) -> Result<IGraph<M>>
    where
        F: FnMut(&NodeId, &str, &L) -> Result<M>,
    {
        let mut nodes = BTreeMap::new();
        for (n, labels) in &self.nodes {
            let mut out = BTreeMap::new();
            for (i, l) in labels {
                out.insert(i.clone(), f(n, i, l)?);
            }
            nodes.insert(n.clone(), out);
        }
        Ok(IGraph {
            indices: self.indices.clone(),
            nodes,
            arcs: self.arcs.clone(),
        })
    }

    /// The same base with an empty labelling over another label type.
    pub fn base_as<M>(&self) -> IGraph<M> {
        IGraph {
            indices: self.indices.clone(),
            nodes: self.nodes.keys().map(|n| (n.clone(), BTreeMap::new())).collect(),
            arcs: self.arcs.clone(),
        }
    }

    /// Restriction to a node set: keeps arcs whose endpoints both survive.
    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> IGraph<L> {
        IGraph {
            indices: self.indices.clone(),
            nodes: self
                .nodes
                .iter()
                .filter(|(n, _)| keep.contains(*n))
                .map(|(n, l)| (n.clone(), l.clone()))
                .collect(),
            arcs: self
                .arcs
                .iter()
                .filter(|(_, a)| keep.contains(&a.source) && keep.contains(&a.target))
                .map(|(id, a)| (id.clone(), a.clone()))
                .collect(),
        }
    }
}

/// Copy of `g` with every node renamed through `f`; arcs keep their names.
pub fn rename_nodes<L: Clone + PartialEq>(g: &IGraph<L>, f: impl Fn(&str) -> String) -> IGraph<L> {
    IGraph {
        indices: g.indices.clone(),
        nodes: g.nodes.iter().map(|(n, l)| (f(n), l.clone())).collect(),
        arcs: g
            .arcs
            .iter()
            .map(|(id, a)| {
                let arc = Arc {
                    source: f(&a.source),
                    target: f(&a.target),
                    label: a.label,
                };
                (id.clone(), arc)
            })
            .collect(),
    }
}

/// Recombines components sharing one base into a single I-labelled graph.
///
/// Index sets of the components must be disjoint; the result's index set is
/// their union.
pub fn product<L: Clone + PartialEq>(components: &[IGraph<L>]) -> Result<IGraph<L>> {
    let Some(first) = components.first() else {
        return Ok(IGraph::default());
    };
    let mut out = first.clone();
    for c in &components[1..] {
        if let Some(diff) = first.first_base_difference(c) {
            return Err(Error::BaseMismatch(diff));
        }
        for index in &c.indices {
            if !out.indices.insert(index.clone()) {
                return Err(Error::BaseMismatch(format!("index `{index}` appears in two components")));
            }
        }
        for (n, labels) in &c.nodes {
            let target = out.nodes.get_mut(n).expect("same base");
            for (i, v) in labels {
                target.insert(i.clone(), v.clone());
            }
        }
    }
    Ok(out)
}
