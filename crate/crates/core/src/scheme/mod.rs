//! Embedding expressions, graph schemes, rule schemes and their
//! instantiation into concrete rules by orbit saturation.

mod eval;
mod expr;
mod parse;

pub use eval::{eval_expression, eval_graph_scheme, Assignment};
pub use expr::Expr;
pub use parse::{parse_expression, parse_term, parse_value};

use std::collections::{BTreeMap, BTreeSet};

use crate::consistency::{check_orbit_uniformity, check_topo_preservation};
use crate::error::{Error, Result};
use crate::gmap::{orbit, orbit_partition, GMap, GMapSpec};
use crate::graph::{check_morphism, ArcId, IGraph, Morphism, NodeId};
use crate::report::Report;
use crate::rewrite::{apply, validate_rule, Derivation, Match, Rule};
use crate::value::Value;

/// A graph whose node labels are embedding terms.
pub type GraphScheme = IGraph<Expr>;

/// A rule over graph schemes; only the right-hand side carries labels.
pub type RuleScheme = Rule<Expr>;

/// Which `(π, v)` couples are saturated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    /// Couples where the right-hand side (re)defines `π` at a kernel node.
    Trigger,
    /// Every embedding at every kernel node.
    Full,
}

/// Checks a rule scheme: unlabelled left-hand side, well-sorted right-hand
/// labels over left-hand variables, labelled added nodes, syntactically
/// uniform orbits, and the topological preservation conditions.
pub fn validate_scheme(rs: &RuleScheme, spec: &GMapSpec) -> Report {
    let mut r = Report::new();
    if let Err(e) = rs.check_inclusions() {
        r.push("scheme-inclusion", [e.to_string()]);
        return r;
    }
    for g in [&rs.left, &rs.kernel] {
        for x in g.nodes() {
            for i in g.labels(x).into_iter().flatten().map(|(i, _)| i) {
                r.push("scheme-left-labelled", [x.clone(), i.clone()]);
            }
        }
    }
    let added = rs.added_nodes();
    for x in rs.right.nodes() {
        for op in spec.embeddings() {
            let Some(e) = rs.right.label(x, &op.name) else {
                if added.contains(x) {
                    r.push("scheme-added-unlabelled", [x.clone(), op.name.clone()]);
                }
                continue;
            };
            match e.sort(spec) {
                Ok(s) if s == op.sort => {}
                Ok(s) => r.push("scheme-sort", [x.clone(), op.name.clone(), s.to_string()]),
                Err(err) => r.push("scheme-sort", [x.clone(), op.name.clone(), err.to_string()]),
            }
            for v in e.variables() {
                if !rs.left.contains_node(&v) {
                    r.push("scheme-variable", [x.clone(), op.name.clone(), v]);
                }
            }
        }
    }
    r.extend(check_orbit_uniformity(&rs.right, spec));
    r.extend(check_topo_preservation(rs, spec.dimension));
    r
}

/// The `(π, v)` couples to saturate, in canonical order.
pub fn saturation_triggers(rs: &RuleScheme, spec: &GMapSpec, mode: Saturation) -> Vec<(String, NodeId)> {
    let mut out = Vec::new();
    for op in spec.embeddings() {
        for v in rs.kernel.nodes() {
            if mode == Saturation::Full || rs.right.label(v, &op.name).is_some() {
                out.push((op.name.clone(), v.clone()));
            }
        }
    }
    out
}

/// An instantiated rule `r[m]` with its match `m* : L[m] → G`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub rule: Rule,
    pub matching: Match,
}

/// Instantiates `rs` at `m` with trigger saturation.
pub fn instantiate(rs: &RuleScheme, m: &Match, g: &GMap) -> Result<Instance> {
    instantiate_with(rs, m, g, &saturation_triggers(rs, &g.spec, Saturation::Trigger))
}

fn prefix_for(g: &IGraph<Value>, nodes: &BTreeSet<NodeId>, arcs: &BTreeSet<ArcId>) -> String {
    let clear = |p: &str| {
        nodes.iter().all(|n| !g.contains_node(&format!("{p}{n}"))) && arcs.iter().all(|a| !g.contains_arc(&format!("{p}{a}")))
    };
    if clear("") {
        return String::new();
    }
    (1..).map(|k| format!("s{k}_")).find(|p| clear(p)).expect("unbounded search")
}

/// Instantiates `rs` at `m`, saturating the given couples in the given order.
///
/// `L[m]` is `m(L_T)` glued with the host orbit `G<o>(m(v))` of every couple
/// `(π, v)`; `K[m]` drops the images of deleted items; `R[m]` adds renamed
/// copies of the added items. Labels are then set per `<o>`-orbit of
/// `R[m]`: an orbit holding an evaluated right-hand term takes that value in
/// `R[m]` and the host values in `L[m]`, with `K[m]` unlabelled; any other
/// orbit stays unlabelled on all three sides, which keeps the host values.
/// Deleted nodes carry their host labels in `L[m]`.
pub fn instantiate_with(rs: &RuleScheme, m: &Match, g: &GMap, triggers: &[(String, NodeId)]) -> Result<Instance> {
    let host = &g.graph;
    let spec = &g.spec;
    let base: IGraph<Value> = rs.left.base_as();
    let report = check_morphism(&m.morphism, &base, host)?;
    if !report.is_pass() {
        return Err(Error::NotAMorphism(report.to_string().trim_end().to_string()));
    }
    if !m.morphism.is_injective() {
        return Err(Error::NotInjective("match".into()));
    }
    let sigma: Assignment = m.morphism.nodes.clone();

    let mut nodes: BTreeSet<NodeId> = m.morphism.node_image();
    let mut arcs: BTreeSet<ArcId> = m.morphism.arc_image();
    for (pi, v) in triggers {
        let op = spec.embedding(pi)?;
        let image = m.node(v).ok_or_else(|| Error::UnknownNode(v.clone()))?;
        let o = orbit(host, &op.domain, image)?;
        nodes.extend(o.nodes);
        arcs.extend(o.arcs);
    }

    let mut left: IGraph<Value> = IGraph::new(spec.names().cloned());
    for n in &nodes {
        left.add_node(n.clone())?;
    }
    for id in &arcs {
        let a = host.arc(id).expect("host arc");
        left.add_arc(id.clone(), a.source.clone(), a.target.clone(), a.label)?;
    }

    let mut kernel = left.clone();
    for (id, _) in rs.left.arcs() {
        if !rs.kernel.contains_arc(id) {
            kernel.remove_arc(&m.morphism.arcs[id])?;
        }
    }
    for x in rs.deleted_nodes() {
        kernel.remove_node(&m.morphism.nodes[&x])?;
    }
    for (id, a) in rs.kernel.arcs() {
        if a.label.is_none() {
            kernel.set_arc_label(&m.morphism.arcs[id], None)?;
        }
    }

    let added = rs.added_nodes();
    let added_arcs: BTreeSet<ArcId> = rs
        .right
        .arcs()
        .filter(|(id, _)| !rs.kernel.contains_arc(id))
        .map(|(id, _)| id.clone())
        .collect();
    let prefix = prefix_for(host, &added, &added_arcs);
    let rename = |x: &str| -> NodeId {
        if added.contains(x) {
            format!("{prefix}{x}")
        } else {
            m.morphism.nodes[x].clone()
        }
    };
    let mut right = kernel.clone();
    for x in &added {
        right.add_node(rename(x))?;
    }
    for (id, a) in rs.right.arcs() {
        if added_arcs.contains(id) {
            right.add_arc(format!("{prefix}{id}"), rename(&a.source), rename(&a.target), a.label)?;
        } else if a.label.is_some() {
            right.set_arc_label(&m.morphism.arcs[id], a.label)?;
        }
    }

    for x in rs.deleted_nodes() {
        let image = &m.morphism.nodes[&x];
        for (i, v) in host.labels(image).into_iter().flatten() {
            left.set_label(image, i, v.clone())?;
        }
    }
    for op in spec.embeddings() {
        let mut seeds: BTreeMap<NodeId, Value> = BTreeMap::new();
        for x in rs.right.nodes() {
            if let Some(e) = rs.right.label(x, &op.name) {
                seeds.insert(rename(x), eval_expression(e, &sigma, g)?);
            }
        }
        for o in orbit_partition(&right, &op.domain) {
            let mut members = o.nodes.clone();
            members.sort();
            let mut value: Option<(&NodeId, &Value)> = None;
            for n in &members {
                let Some(v) = seeds.get(n) else { continue };
                match value {
                    Some((_, first)) if first != v => {
                        return Err(Error::SaturationConflict {
                            node: n.clone(),
                            embedding: op.name.clone(),
                            first: first.to_string(),
                            second: v.to_string(),
                        })
                    }
                    Some(_) => {}
                    None => value = Some((n, v)),
                }
            }
            let Some((_, v)) = value else { continue };
            for n in &members {
                right.set_label(n, &op.name, v.clone())?;
                if left.contains_node(n) {
                    if let Some(old) = host.label(n, &op.name) {
                        left.set_label(n, &op.name, old.clone())?;
                    }
                }
            }
        }
    }

    let rule = Rule::new(left, kernel, right)?;
    let matching = Match::new(Morphism::identity(&rule.left));
    Ok(Instance { rule, matching })
}

/// The scheme of a concrete rule: unlabelled left and kernel, right labels
/// as constant terms.
pub fn from_rule(rule: &Rule) -> RuleScheme {
    let right = rule
        .right
        .try_map_labels(|_, _, v| Ok(Expr::Literal(v.clone())))
        .expect("infallible");
    Rule {
        left: rule.left.base_as(),
        kernel: rule.kernel.base_as(),
        right,
    }
}

/// The result of applying a scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeApplication {
    pub instance: Instance,
    pub derivation: Derivation,
    pub result: GMap,
}

/// Instantiates `rs` at `m` and applies the instance at `m*`.
pub fn apply_scheme(rs: &RuleScheme, m: &Match, g: &GMap) -> Result<SchemeApplication> {
    let instance = instantiate(rs, m, g)?;
    let derivation = apply(&instance.rule, &instance.matching, &g.graph)?;
    let result = GMap::from_graph(g.spec.clone(), derivation.graph.clone())?;
    Ok(SchemeApplication { instance, derivation, result })
}

/// Matches of a scheme's left-hand side in `g`.
pub fn find_scheme_matches(rs: &RuleScheme, g: &IGraph<Value>, fixed: &BTreeMap<NodeId, NodeId>) -> Vec<Match> {
    let rule: Rule = Rule {
        left: rs.left.base_as(),
        kernel: rs.kernel.base_as(),
        right: rs.right.base_as(),
    };
    crate::rewrite::find_matches_with(&rule, g, fixed)
}

/// Validates an instantiated rule as a concrete rule.
pub fn check_instance(instance: &Instance) -> Result<Report> {
    validate_rule(&instance.rule)
}
