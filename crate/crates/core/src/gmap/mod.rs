//! Generalized maps as arc-labelled graphs, their orbits, consistency
//! constraints and the embedding algebra (access, link, collect).

mod algebra;
mod checks;

pub use algebra::{access, collect, link};
pub use checks::{
    check_adjacent_arcs, check_arc_labels, check_cycles, check_embedding, check_non_orientation,
    check_topology,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ArcId, ArcLabel, IGraph, NodeId};
use crate::report::Report;
use crate::value::{Sort, Value};

/// A strictly increasing subword of `α0 α1 … αn`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitType(Vec<u8>);

impl OrbitType {
    pub fn new(labels: impl IntoIterator<Item = u8>) -> Result<Self> {
        let labels: Vec<u8> = labels.into_iter().collect();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OrbitType(format!("{labels:?} is not strictly increasing")));
        }
        Ok(Self(labels))
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, label: ArcLabel) -> bool {
        self.0.contains(&label.0)
    }

    pub fn max_label(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Fails when a label exceeds `dimension`.
    pub fn check_dimension(&self, dimension: u8) -> Result<()> {
        match self.max_label() {
            Some(l) if l > dimension => Err(Error::LabelOutOfRange { label: l, dimension }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "a{l}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for OrbitType {
    type Err = Error;

    /// Accepts `<a1 a2>`, `a1 a2`, `<a0,a1>` and `<>`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .unwrap_or(inner);
        let labels = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<ArcLabel>()
                    .map(|l| l.0)
                    .map_err(|_| Error::OrbitType(format!("`{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitType::new(labels)
    }
}

/// An embedding operation `π : <o> → s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingOp {
    pub name: String,
    pub domain: OrbitType,
    pub sort: Sort,
}

impl fmt::Display for EmbeddingOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.domain, self.sort)
    }
}

/// Dimension plus embedding signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GMapSpec {
    pub dimension: u8,
    embeddings: BTreeMap<String, EmbeddingOp>,
}

impl GMapSpec {
    pub fn new(dimension: u8) -> Self {
        Self { dimension, embeddings: BTreeMap::new() }
    }

    pub fn with_embedding(mut self, name: &str, domain: &str, sort: Sort) -> Result<Self> {
        self.add_embedding(EmbeddingOp {
            name: name.to_string(),
            domain: domain.parse()?,
            sort,
        })?;
        Ok(self)
    }

    pub fn add_embedding(&mut self, op: EmbeddingOp) -> Result<()> {
        op.domain.check_dimension(self.dimension)?;
        if matches!(op.sort, Sort::Node | Sort::Multi(_)) {
            return Err(Error::Sort(format!("embedding `{}` must carry a data sort", op.name)));
        }
        if self.embeddings.contains_key(&op.name) {
            return Err(Error::Unsupported(format!("embedding `{}` declared twice", op.name)));
        }
        self.embeddings.insert(op.name.clone(), op);
        Ok(())
    }

    pub fn embedding(&self, name: &str) -> Result<&EmbeddingOp> {
        self.embeddings
            .get(name)
            .ok_or_else(|| Error::UnknownEmbedding(name.to_string()))
    }

    /// Embeddings in name order.
    pub fn embeddings(&self) -> impl Iterator<Item = &EmbeddingOp> {
        self.embeddings.values()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.embeddings.keys()
    }

    /// The 2D signature used by the bundled fixtures: points on vertices,
    /// colors on faces.
    pub fn points_and_colors() -> Self {
        GMapSpec::new(2)
            .with_embedding("point", "<a1 a2>", Sort::Point)
            .and_then(|s| s.with_embedding("color", "<a0 a1>", Sort::Color))
            .expect("static signature")
    }
}

/// An embedded n-G-map: a graph over the signature's embedding names.
#[derive(Clone, Debug, PartialEq)]
pub struct GMap {
    pub spec: GMapSpec,
    pub graph: IGraph<Value>,
}

impl GMap {
    pub fn new(spec: GMapSpec) -> Self {
        let graph = IGraph::new(spec.names().cloned());
        Self { spec, graph }
    }

    pub fn from_graph(spec: GMapSpec, graph: IGraph<Value>) -> Result<Self> {
        let names: BTreeSet<String> = spec.names().cloned().collect();
        if &names != graph.indices() {
            return Err(Error::BaseMismatch("graph indices differ from the embedding names".into()));
        }
        Ok(Self { spec, graph })
    }

    pub fn dimension(&self) -> u8 {
        self.spec.dimension
    }

    /// Adds the arc pair `u -αi- v`; a loop is a single arc.
    pub fn sew(&mut self, u: &str, v: &str, label: u8) -> Result<()> {
        if label > self.spec.dimension {
            return Err(Error::LabelOutOfRange { label, dimension: self.spec.dimension });
        }
        let l = Some(ArcLabel(label));
        self.graph.add_arc(arc_name(u, label, v), u, v, l)?;
        if u != v {
            self.graph.add_arc(arc_name(v, label, u), v, u, l)?;
        }
        Ok(())
    }

    pub fn orbit(&self, orbit_type: &OrbitType, node: &str) -> Result<Orbit> {
        orbit(&self.graph, orbit_type, node)
    }

    pub fn check_topology(&self) -> Report {
        check_topology(&self.graph, self.spec.dimension)
    }

    pub fn check_embedding(&self) -> Report {
        check_embedding(&self.graph, &self.spec)
    }

    /// All topological and embedding checks.
    pub fn check(&self) -> Report {
        let mut r = self.check_topology();
        r.extend(self.check_embedding());
        r
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_pass()
    }

    pub fn access(&self, node: &str, embedding: &str) -> Result<Option<&Value>> {
        access(&self.graph, &self.spec, node, embedding)
    }

    pub fn link(&self, node: &str, label: u8) -> Result<NodeId> {
        link(&self.graph, node, ArcLabel(label))
    }

    pub fn collect(&self, embedding: &str, traversal: &OrbitType, node: &str) -> Result<Value> {
        collect(&self.graph, &self.spec, embedding, traversal, node)
    }
}

/// Canonical name of the arc `source -αi-> target`.
pub fn arc_name(source: &str, label: u8, target: &str) -> ArcId {
    format!("{source}-a{label}-{target}")
}

/// The subgraph `G<o>(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub seed: NodeId,
    pub orbit_type: OrbitType,
    /// Breadth-first discovery order, seed first.
    pub nodes: Vec<NodeId>,
    pub arcs: BTreeSet<ArcId>,
}

impl Orbit {
    pub fn node_set(&self) -> BTreeSet<NodeId> {
        self.nodes.iter().cloned().collect()
    }

    pub fn contains(&self, node: &str) -> bool {
        self.nodes.iter().any(|n| n == node)
    }
}

/// Undirected neighbourhoods restricted to arcs labelled in an orbit type,
/// sorted by (label, neighbour name).
pub(crate) fn orbit_adjacency<L: Clone + PartialEq>(
    g: &IGraph<L>,
    orbit_type: &OrbitType,
) -> BTreeMap<NodeId, Vec<(u8, NodeId, ArcId)>> {
    let mut adj: BTreeMap<NodeId, Vec<(u8, NodeId, ArcId)>> = BTreeMap::new();
    for (id, arc) in g.arcs() {
        let Some(label) = arc.label.filter(|l| orbit_type.contains(*l)) else { continue };
        adj.entry(arc.source.clone())
            .or_default()
            .push((label.0, arc.target.clone(), id.clone()));
        adj.entry(arc.target.clone())
            .or_default()
            .push((label.0, arc.source.clone(), id.clone()));
    }
    for list in adj.values_mut() {
        list.sort();
    }
    adj
}

fn bfs(adj: &BTreeMap<NodeId, Vec<(u8, NodeId, ArcId)>>, seed: &str) -> (Vec<NodeId>, BTreeSet<ArcId>) {
    let mut seen = BTreeSet::from([seed.to_string()]);
    let mut order = vec![seed.to_string()];
    let mut arcs = BTreeSet::new();
    let mut queue = VecDeque::from([seed.to_string()]);
    while let Some(n) = queue.pop_front() {
        for (_, m, id) in adj.get(&n).into_iter().flatten() {
            arcs.insert(id.clone());
            if seen.insert(m.clone()) {
                order.push(m.clone());
                queue.push_back(m.clone());
            }
        }
    }
    (order, arcs)
}

/// The `<o>`-orbit of `node`: its equivalence class under the closure of
/// arcs labelled in `o`, with every such arc between class members.
pub fn orbit<L: Clone + PartialEq>(g: &IGraph<L>, orbit_type: &OrbitType, node: &str) -> Result<Orbit> {
    if !g.contains_node(node) {
        return Err(Error::UnknownNode(node.to_string()));
    }
    let adj = orbit_adjacency(g, orbit_type);
    let (nodes, arcs) = bfs(&adj, node);
    Ok(Orbit {
        seed: node.to_string(),
        orbit_type: orbit_type.clone(),
        nodes,
        arcs,
    })
}

/// Partition of all nodes into `<o>`-orbits, each seeded at its smallest
/// node name, ordered by seed.
pub fn orbit_partition<L: Clone + PartialEq>(g: &IGraph<L>, orbit_type: &OrbitType) -> Vec<Orbit> {
    let adj = orbit_adjacency(g, orbit_type);
    let mut assigned = BTreeSet::new();
    let mut out = Vec::new();
    for n in g.nodes() {
        if assigned.contains(n) {
            continue;
        }
        let (nodes, arcs) = bfs(&adj, n);
        assigned.extend(nodes.iter().cloned());
        out.push(Orbit {
            seed: n.clone(),
            orbit_type: orbit_type.clone(),
            nodes,
            arcs,
        });
    }
    out
}

/// Maps every node to the seed of its `<o>`-orbit.
pub fn orbit_classes<L: Clone + PartialEq>(g: &IGraph<L>, orbit_type: &OrbitType) -> BTreeMap<NodeId, NodeId> {
    orbit_partition(g, orbit_type)
        .into_iter()
        .flat_map(|o| {
            let seed = o.seed.clone();
            o.nodes.into_iter().map(move |n| (n, seed.clone()))
        })
        .collect()
}
