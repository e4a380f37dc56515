//! Double-pushout rules with relabeling, matching and direct transformation.

mod matcher;

pub use matcher::{are_isomorphic, find_isomorphism, find_monomorphisms, LabelMode};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{check_morphism, IGraph, Morphism, NodeId};
use crate::report::Report;
use crate::value::Value;

/// A rule `L ⊇ K ⊆ R`; the inclusions are identities on shared names.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<L = Value> {
    pub left: IGraph<L>,
    pub kernel: IGraph<L>,
    pub right: IGraph<L>,
}

impl<L: Clone + PartialEq> Rule<L> {
    /// Builds a rule, checking that `K` is a labelled subgraph of `L` and `R`.
    pub fn new(left: IGraph<L>, kernel: IGraph<L>, right: IGraph<L>) -> Result<Self> {
        let rule = Rule { left, kernel, right };
        rule.check_inclusions()?;
        Ok(rule)
    }

    /// `G ⊇ G ⊆ G`.
    pub fn identity(g: &IGraph<L>) -> Self {
        Rule {
            left: g.clone(),
            kernel: g.clone(),
            right: g.clone(),
        }
    }

    /// `R ⊇ K ⊆ L`.
    pub fn inverse(&self) -> Self {
        Rule {
            left: self.right.clone(),
            kernel: self.kernel.clone(),
            right: self.left.clone(),
        }
    }

    pub fn check_inclusions(&self) -> Result<()> {
        if self.left.indices() != self.kernel.indices() || self.right.indices() != self.kernel.indices() {
            return Err(Error::BaseMismatch("L, K and R have different index sets".into()));
        }
        let id = Morphism::identity(&self.kernel);
        for (side, g) in [("L", &self.left), ("R", &self.right)] {
            let report = match check_morphism(&id, &self.kernel, g) {
                Ok(r) => r,
                Err(e) => return Err(Error::NotSubgraph(format!("K ⊄ {side}: {e}"))),
            };
            if !report.is_pass() {
                return Err(Error::NotSubgraph(format!("K ⊄ {side}: {}", report.to_string().trim_end())));
            }
        }
        Ok(())
    }

    /// Nodes of `L \ K`.
    pub fn deleted_nodes(&self) -> BTreeSet<NodeId> {
        self.left.nodes().filter(|n| !self.kernel.contains_node(n)).cloned().collect()
    }

    /// Nodes of `R \ K`.
    pub fn added_nodes(&self) -> BTreeSet<NodeId> {
        self.right.nodes().filter(|n| !self.kernel.contains_node(n)).cloned().collect()
    }

    /// Largest arc label used on either side.
    pub fn max_arc_label(&self) -> Option<u8> {
        [&self.left, &self.right]
            .iter()
            .flat_map(|g| g.arcs().filter_map(|(_, a)| a.label.map(|l| l.0)))
            .max()
    }
}

/// The label conditions on a rule: an item unlabelled (at some index) on one
/// side must belong to `K` and be unlabelled on the other side as well.
pub fn validate_rule<L: Clone + PartialEq>(rule: &Rule<L>) -> Result<Report> {
    rule.check_inclusions()?;
    let mut r = Report::new();
    for (side, this, other) in [("L", &rule.left, &rule.right), ("R", &rule.right, &rule.left)] {
        for x in this.nodes() {
            for i in this.indices() {
                if this.label(x, i).is_some() {
                    continue;
                }
                if !rule.kernel.contains_node(x) {
                    r.push("node-label-condition", [side.to_string(), x.clone(), i.clone(), "not-in-K".into()]);
                } else if other.label(x, i).is_some() {
                    r.push("node-label-condition", [side.to_string(), x.clone(), i.clone(), "labelled-opposite".into()]);
                }
            }
        }
        for (id, arc) in this.arcs() {
            if arc.label.is_some() {
                continue;
            }
            if !rule.kernel.contains_arc(id) {
                r.push("arc-label-condition", [side.to_string(), id.clone(), "not-in-K".into()]);
            } else if other.arc(id).and_then(|a| a.label).is_some() {
                r.push("arc-label-condition", [side.to_string(), id.clone(), "labelled-opposite".into()]);
            }
        }
    }
    Ok(r)
}

/// An injective label-preserving morphism `L → G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Match {
    pub morphism: Morphism,
}

impl Match {
    pub fn new(morphism: Morphism) -> Self {
        Self { morphism }
    }

    pub fn node(&self, x: &str) -> Option<&NodeId> {
        self.morphism.nodes.get(x)
    }

    /// `x=m(x)` pairs joined by commas.
    pub fn describe(&self) -> String {
        self.morphism
            .nodes
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Every match of the rule's left-hand side in `g`, in deterministic order.
pub fn find_matches<L: Clone + PartialEq>(rule: &Rule<L>, g: &IGraph<L>) -> Vec<Match> {
    find_matches_with(rule, g, &BTreeMap::new())
}

/// Matches extending a partial node binding.
pub fn find_matches_with<L: Clone + PartialEq>(
    rule: &Rule<L>,
    g: &IGraph<L>,
    fixed: &BTreeMap<NodeId, NodeId>,
) -> Vec<Match> {
    find_monomorphisms(&rule.left, g, LabelMode::Preserve, fixed, None)
        .into_iter()
        .map(Match::new)
        .collect()
}

/// No deleted node of `m(L) \ m(K)` may touch an arc of `G` outside `m(L)`.
pub fn check_dangling<L: Clone + PartialEq>(rule: &Rule<L>, m: &Match, g: &IGraph<L>) -> Report {
    let mut r = Report::new();
    let matched_arcs = m.morphism.arc_image();
    for x in rule.deleted_nodes() {
        let Some(image) = m.node(&x) else { continue };
        for (id, _) in g.incident_arcs(image) {
            if !matched_arcs.contains(id) {
                r.push("dangling", [x.clone(), image.clone(), id.clone()]);
            }
        }
    }
    r
}

/// The result of a direct transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<L = Value> {
    pub graph: IGraph<L>,
    /// `m* : R → H`
    pub comatch: Morphism,
}

/// Smallest `k ≥ 1` such that `n{k}_` prefixed names of `nodes` and `arcs`
/// are all free in `g`.
pub fn fresh_prefix<L: Clone + PartialEq>(g: &IGraph<L>, nodes: &BTreeSet<NodeId>, arcs: &BTreeSet<String>) -> String {
    (1..)
        .map(|k| format!("n{k}_"))
        .find(|p| {
            nodes.iter().all(|n| !g.contains_node(&format!("{p}{n}")))
                && arcs.iter().all(|a| !g.contains_arc(&format!("{p}{a}")))
        })
        .expect("unbounded search")
}

/// Applies `rule` at `m` by relabeling double pushout.
///
/// `D` is `G` without `m(L \ K)`, with labels erased at `m(x)` where `K` is
/// unlabelled but `L` is labelled; `H` adds fresh copies of `R \ K` and
/// writes every label `R` defines.
pub fn apply<L: Clone + PartialEq>(rule: &Rule<L>, m: &Match, g: &IGraph<L>) -> Result<Derivation<L>> {
    let report = validate_rule(rule)?;
    if !report.is_pass() {
        return Err(Error::InvalidRule(report));
    }
    let morphism = check_morphism(&m.morphism, &rule.left, g)?;
    if !morphism.is_pass() {
        return Err(Error::NotAMorphism(morphism.to_string().trim_end().to_string()));
    }
    if !m.morphism.is_injective() {
        return Err(Error::NotInjective("match".into()));
    }
    let dangling = check_dangling(rule, m, g);
    if !dangling.is_pass() {
        return Err(Error::Dangling(dangling));
    }

    let mut h = g.clone();
    for (id, _) in rule.left.arcs() {
        if !rule.kernel.contains_arc(id) {
            h.remove_arc(&m.morphism.arcs[id])?;
        }
    }
    for x in rule.deleted_nodes() {
        h.remove_node(&m.morphism.nodes[&x])?;
    }
    for x in rule.kernel.nodes() {
        for i in rule.kernel.indices() {
            if rule.kernel.label(x, i).is_none() && rule.left.label(x, i).is_some() {
                h.clear_label(&m.morphism.nodes[x], i)?;
            }
        }
    }
    for (id, arc) in rule.kernel.arcs() {
        if arc.label.is_none() && rule.left.arc(id).and_then(|a| a.label).is_some() {
            h.set_arc_label(&m.morphism.arcs[id], None)?;
        }
    }

    let added = rule.added_nodes();
    let added_arcs: BTreeSet<String> = rule
        .right
        .arcs()
        .filter(|(id, _)| !rule.kernel.contains_arc(id))
        .map(|(id, _)| id.clone())
        .collect();
    let prefix = fresh_prefix(&h, &added, &added_arcs);
    let mut comatch = Morphism::default();
    for x in rule.right.nodes() {
        let image = if added.contains(x) {
            let name = format!("{prefix}{x}");
            h.add_node(name.clone())?;
            name
        } else {
            m.morphism.nodes[x].clone()
        };
        comatch.nodes.insert(x.clone(), image);
    }
    for (id, arc) in rule.right.arcs() {
        let image = if added_arcs.contains(id) {
            let name = format!("{prefix}{id}");
            h.add_arc(
                name.clone(),
                comatch.nodes[&arc.source].clone(),
                comatch.nodes[&arc.target].clone(),
                arc.label,
            )?;
            name
        } else {
            m.morphism.arcs[id].clone()
        };
        if arc.label.is_some() {
            h.set_arc_label(&image, arc.label)?;
        }
        comatch.arcs.insert(id.clone(), image);
    }
    for x in rule.right.nodes() {
        for (i, v) in rule.right.labels(x).into_iter().flatten() {
            h.set_label(&comatch.nodes[x], i, v.clone())?;
        }
    }
    Ok(Derivation { graph: h, comatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::graph::ArcLabel;

    fn node_rule(l: Option<Value>, k: Option<Value>, r: Option<Value>) -> Rule {
        let build = |v: Option<Value>| {
            let mut g = IGraph::new(["point"]);
            g.add_node("x").unwrap();
            if let Some(v) = v {
                g.set_label("x", "point", v).unwrap();
            }
            g
        };
        Rule::new(build(l), build(k), build(r)).unwrap()
    }

    #[test]
    fn single_labelled_node_rule_is_valid() {
        let p = Some(Value::point(1, 1));
        let rule = node_rule(p.clone(), p.clone(), p);
        assert!(validate_rule(&rule).unwrap().is_pass());
    }

    #[test]
    fn unlabelled_deleted_node_violates_the_conditions() {
        let mut left: IGraph = IGraph::new(["point"]);
        left.add_node("x").unwrap();
        let empty = IGraph::new(["point"]);
        let rule = Rule::new(left, empty.clone(), empty).unwrap();
        let r = validate_rule(&rule).unwrap();
        assert!(r.fails("node-label-condition"));
        assert_eq!(r.violations()[0].witness, vec!["L", "x", "point", "not-in-K"]);
    }

    #[test]
    fn kernel_must_be_a_subgraph() {
        let mut k: IGraph = IGraph::new(["point"]);
        k.add_node("y").unwrap();
        let l = IGraph::new(["point"]);
        assert!(matches!(Rule::new(l.clone(), k, l), Err(Error::NotSubgraph(_))));
    }

    #[test]
    fn fig5_rule_is_valid_and_applies() {
        let rule = bundled::insert_vertex_rule();
        assert!(validate_rule(&rule).unwrap().is_pass());
        let house = bundled::house();
        let matches = find_matches(&rule, &house.graph);
        assert_eq!(matches.len(), 1);
        assert!(check_dangling(&rule, &matches[0], &house.graph).is_pass());
        let d = apply(&rule, &matches[0], &house.graph).unwrap();
        assert_eq!(d.graph.node_count(), 18);
        let h = crate::gmap::GMap::from_graph(house.spec.clone(), d.graph).unwrap();
        assert!(h.check().is_pass(), "{}", h.check());
    }

    #[test]
    fn relabel_only_rule_changes_one_label() {
        let rule = node_rule(Some(Value::point(0, 2)), None, Some(Value::point(7, 7)));
        let house = bundled::house();
        let mut g = house.graph.project("point").unwrap();
        let matches = find_matches(&rule, &g);
        assert_eq!(matches.len(), 2);
        let d = apply(&rule, &matches[0], &g).unwrap();
        let target = matches[0].node("x").unwrap().clone();
        g.set_label(&target, "point", Value::point(7, 7)).unwrap();
        assert_eq!(d.graph, g);
    }

    #[test]
    fn identity_rule_reproduces_the_host() {
        let house = bundled::house();
        let rule = Rule::identity(&house.graph);
        let m = find_matches(&rule, &house.graph);
        assert!(m.iter().any(|m| m.morphism == Morphism::identity(&house.graph)));
        let d = apply(&rule, &m[0], &house.graph).unwrap();
        assert!(are_isomorphic(&d.graph, &house.graph));
    }

    #[test]
    fn dangling_deletion_is_refused() {
        let mut left = IGraph::new(["point"]);
        left.add_node("x").unwrap();
        left.set_label("x", "point", Value::point(0, 2)).unwrap();
        let empty = IGraph::new(["point"]);
        let rule = Rule::new(left, empty.clone(), empty).unwrap();
        let g = bundled::house().graph.project("point").unwrap();
        let m = &find_matches(&rule, &g)[0];
        let r = check_dangling(&rule, m, &g);
        assert!(r.fails("dangling"));
        assert!(matches!(apply(&rule, m, &g), Err(Error::Dangling(_))));
    }

    #[test]
    fn deleting_an_isolated_node_succeeds() {
        let mut left = IGraph::new(["point"]);
        left.add_node("x").unwrap();
        left.set_label("x", "point", Value::point(1, 1)).unwrap();
        left.add_arc("l", "x", "x", Some(ArcLabel(0))).unwrap();
        let empty = IGraph::new(["point"]);
        let rule = Rule::new(left.clone(), empty.clone(), empty).unwrap();
        let mut g = left.clone();
        g.add_node("y").unwrap();
        let m = &find_matches(&rule, &g)[0];
        let d = apply(&rule, m, &g).unwrap();
        assert_eq!(d.graph.nodes().collect::<Vec<_>>(), vec!["y"]);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut g: IGraph = IGraph::new(Vec::<String>::new());
        g.add_node("n1_x").unwrap();
        let nodes = BTreeSet::from(["x".to_string()]);
        assert_eq!(fresh_prefix(&g, &nodes, &BTreeSet::new()), "n2_");
    }
}
