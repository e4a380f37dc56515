//! Seeded random graphs, G-maps, rules and documents for property tests.
//!
//! Every generator draws from a [`ChaCha8Rng`]; [`rng`] seeds it from the
//! `GMAP_SEED` environment variable so failures can be replayed.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gmap::{arc_name, link, orbit, orbit_partition, GMap, GMapSpec, OrbitType};
use crate::graph::{ArcLabel, IGraph, NodeId};
use crate::io::RuleDocument;
use crate::rewrite::Rule;
use crate::scheme::{Expr, RuleScheme};
use crate::value::{ratio, rational, BinOp, Rational, Sort, Value};

pub const SEED_VAR: &str = "GMAP_SEED";
pub const DEFAULT_SEED: u64 = 0x5EED;

/// `GMAP_SEED` as a decimal or `0x` hexadecimal integer, else the default.
pub fn seed() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| {
            let s = s.trim();
            match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16).ok(),
                None => s.parse().ok(),
            }
        })
        .unwrap_or(DEFAULT_SEED)
}

/// A generator for one named stream; distinct streams are independent.
pub fn rng(stream: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed() ^ h)
}

fn label(l: u8) -> Option<ArcLabel> {
    Some(ArcLabel(l))
}

/// Unlabelled nodes `v0 …` with `arcs` random arcs; about one arc in ten
/// carries no label.
pub fn random_graph(rng: &mut impl Rng, nodes: usize, arcs: usize, max_label: u8) -> IGraph<Value> {
    let mut g = IGraph::new(Vec::<String>::new());
    for k in 0..nodes {
        g.add_node(format!("v{k}")).expect("fresh node");
    }
    if nodes == 0 {
        return g;
    }
    for k in 0..arcs {
        let s = format!("v{}", rng.gen_range(0..nodes));
        let t = format!("v{}", rng.gen_range(0..nodes));
        let l = if rng.gen_bool(0.9) { label(rng.gen_range(0..=max_label)) } else { None };
        g.add_arc(format!("e{k}"), s, t, l).expect("fresh arc");
    }
    g
}

fn coordinate(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-4..=8), [1, 1, 2][rng.gen_range(0..3)])
}

fn random_point(rng: &mut impl Rng) -> Value {
    Value::Point(coordinate(rng), coordinate(rng))
}

fn small_scalar(rng: &mut impl Rng) -> Value {
    Value::Scalar(rational(rng.gen_range(0..3)))
}

fn random_color(rng: &mut impl Rng) -> Value {
    const PALETTE: [u8; 5] = [0x00, 0x55, 0x88, 0xBB, 0xFF];
    let mut c = || *PALETTE.choose(rng).expect("non-empty");
    Value::rgb(c(), c(), c())
}

/// A valid 2-G-map over points and colors with at most `max_darts` darts:
/// closed or open polygons, some edges sewn pairwise along `a2`.
pub fn random_gmap(rng: &mut impl Rng, max_darts: usize) -> GMap {
    let mut g = GMap::new(GMapSpec::points_and_colors());
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut next = 0usize;
    let mut budget = max_darts;
    while budget >= 2 {
        let sides = rng.gen_range(1..=4).min(budget / 2);
        budget -= 2 * sides;
        let darts: Vec<String> = (next..next + 2 * sides).map(|k| format!("d{k:02}")).collect();
        next += 2 * sides;
        for d in &darts {
            g.graph.add_node(d.clone()).expect("fresh dart");
        }
        let closed = rng.gen_bool(0.8);
        for i in 0..sides {
            let (a, b) = (&darts[2 * i], &darts[2 * i + 1]);
            g.sew(a, b, 0).expect("fresh arc");
            edges.push((a.clone(), b.clone()));
            let c = &darts[(2 * i + 2) % darts.len()];
            if i + 1 < sides || closed {
                g.sew(b, c, 1).expect("fresh arc");
            } else {
                g.sew(b, b, 1).expect("fresh arc");
                g.sew(c, c, 1).expect("fresh arc");
            }
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    edges.shuffle(rng);
    let mut sewn = BTreeSet::new();
    let mut k = 0;
    while k + 1 < edges.len() {
        if rng.gen_bool(0.6) {
            let ((a, b), (c, d)) = (&edges[k], &edges[k + 1]);
            let (c, d) = if rng.gen_bool(0.5) { (c, d) } else { (d, c) };
            g.sew(a, c, 2).expect("fresh arc");
            g.sew(b, d, 2).expect("fresh arc");
            sewn.extend([a.clone(), b.clone(), c.clone(), d.clone()]);
        }
        k += 2;
    }
    let darts: Vec<NodeId> = g.graph.nodes().cloned().collect();
    for d in darts.iter().filter(|d| !sewn.contains(*d)) {
        g.sew(d, d, 2).expect("fresh arc");
    }
    embed(rng, &mut g);
    g
}

/// Labels every vertex with a random point and every face with a random
/// color, uniformly per orbit.
pub fn embed(rng: &mut impl Rng, g: &mut GMap) {
    let vertex = OrbitType::new([1, 2]).expect("static");
    let face = OrbitType::new([0, 1]).expect("static");
    for o in orbit_partition(&g.graph, &vertex) {
        let p = random_point(rng);
        for n in &o.nodes {
            g.graph.set_label(n, "point", p.clone()).expect("known node");
        }
    }
    for o in orbit_partition(&g.graph, &face) {
        let c = random_color(rng);
        for n in &o.nodes {
            g.graph.set_label(n, "color", c.clone()).expect("known node");
        }
    }
}

/// `K = L ∩ R`: common nodes and identical arcs, labels kept only where
/// both sides agree.
pub fn kernel_of(left: &IGraph<Value>, right: &IGraph<Value>) -> IGraph<Value> {
    let mut k = IGraph::new(left.indices().iter().cloned());
    for n in left.nodes().filter(|n| right.contains_node(n)) {
        k.add_node(n.clone()).expect("fresh node");
        for i in left.indices() {
            if let (Some(a), Some(b)) = (left.label(n, i), right.label(n, i)) {
                if a == b {
                    k.set_label(n, i, a.clone()).expect("known node");
                }
            }
        }
    }
    for (id, a) in left.arcs() {
        if right.arc(id) == Some(a) {
            k.add_arc(id.clone(), a.source.clone(), a.target.clone(), a.label).expect("fresh arc");
        }
    }
    k
}

/// A rule over one scalar index `p` with at most three left-hand nodes,
/// satisfying the label conditions.
pub fn random_rule(rng: &mut impl Rng) -> Rule {
    let mut left = IGraph::new(["p"]);
    let n = rng.gen_range(1..=3);
    let mut bare = BTreeSet::new();
    for k in 0..n {
        let x = format!("l{k}");
        left.add_node(x.clone()).expect("fresh node");
        if rng.gen_bool(0.85) {
            left.set_label(&x, "p", small_scalar(rng)).expect("known node");
        } else {
            bare.insert(x);
        }
    }
    for k in 0..rng.gen_range(0..=3) {
        let s = format!("l{}", rng.gen_range(0..n));
        let t = format!("l{}", rng.gen_range(0..n));
        left.add_arc(format!("la{k}"), s, t, label(rng.gen_range(0..=2))).expect("fresh arc");
    }
    let kept: BTreeSet<NodeId> = left
        .nodes()
        .filter(|x| bare.contains(*x) || rng.gen_bool(0.7))
        .cloned()
        .collect();
    let mut kernel = left.induced(&kept);
    let arcs: Vec<String> = kernel.arcs().map(|(id, _)| id.clone()).collect();
    for id in arcs {
        if !rng.gen_bool(0.7) {
            kernel.remove_arc(&id).expect("known arc");
        }
    }
    for x in &kept {
        if !bare.contains(x) && rng.gen_bool(0.4) {
            kernel.clear_label(x, "p").expect("known node");
        }
    }
    let mut right = kernel.clone();
    for x in &kept {
        if !bare.contains(x) && right.label(x, "p").is_none() {
            right.set_label(x, "p", small_scalar(rng)).expect("known node");
        }
    }
    for k in 0..rng.gen_range(0..=2) {
        let x = format!("r{k}");
        right.add_node(x.clone()).expect("fresh node");
        right.set_label(&x, "p", small_scalar(rng)).expect("known node");
    }
    let nodes: Vec<NodeId> = right.nodes().cloned().collect();
    if !nodes.is_empty() {
        for k in 0..rng.gen_range(0..=2) {
            let s = nodes.choose(rng).expect("non-empty").clone();
            let t = nodes.choose(rng).expect("non-empty").clone();
            right.add_arc(format!("ra{k}"), s, t, label(rng.gen_range(0..=2))).expect("fresh arc");
        }
    }
    Rule::new(left, kernel, right).expect("inclusions hold by construction")
}

/// A totally labelled host containing a copy of `rule.left`, padded with
/// extra nodes and arcs up to `max_nodes` nodes.
pub fn random_host(rng: &mut impl Rng, rule: &Rule, max_nodes: usize) -> IGraph<Value> {
    let mut g = IGraph::new(["p"]);
    for x in rule.left.nodes() {
        let h = format!("h{x}");
        g.add_node(h.clone()).expect("fresh node");
        let v = rule
            .left
            .label(x, "p")
            .cloned()
            .unwrap_or_else(|| Value::Scalar(rational(rng.gen_range(0..3))));
        g.set_label(&h, "p", v).expect("known node");
    }
    for (id, a) in rule.left.arcs() {
        g.add_arc(format!("h{id}"), format!("h{}", a.source), format!("h{}", a.target), a.label)
            .expect("fresh arc");
    }
    let extra = max_nodes.saturating_sub(rule.left.node_count());
    for k in 0..rng.gen_range(0..=extra) {
        let x = format!("x{k}");
        g.add_node(x.clone()).expect("fresh node");
        g.set_label(&x, "p", Value::Scalar(rational(rng.gen_range(0..3)))).expect("known node");
    }
    let nodes: Vec<NodeId> = g.nodes().cloned().collect();
    for k in 0..rng.gen_range(0..=4) {
        let s = nodes.choose(rng).expect("non-empty").clone();
        let t = nodes.choose(rng).expect("non-empty").clone();
        g.add_arc(format!("xa{k}"), s, t, label(rng.gen_range(0..=2))).expect("fresh arc");
    }
    g
}

/// Removes the arc pair (or loop) `u -αi- v` if present.
fn unsew(g: &mut IGraph<Value>, u: &str, v: &str, l: u8) {
    let _ = g.remove_arc(&arc_name(u, l, v));
    if u != v {
        let _ = g.remove_arc(&arc_name(v, l, u));
    }
}

fn sew(g: &mut IGraph<Value>, u: &str, v: &str, l: u8) {
    let _ = g.add_arc(arc_name(u, l, v), u, v, label(l));
    if u != v {
        let _ = g.add_arc(arc_name(v, l, u), v, u, label(l));
    }
}

fn relabel_orbit(g: &mut IGraph<Value>, o: &OrbitType, seed: &str, index: &str, v: &Value) {
    let nodes = orbit(g, o, seed).expect("known node").nodes;
    for n in nodes {
        g.set_label(&n, index, v.clone()).expect("known node");
    }
}

/// A candidate G-map rule built on a region of `g`: the left-hand side is
/// the subgraph induced by some faces, the right-hand side a local edit
/// (recolor, move, split, sew, unsew, delete or add a face). Candidates are
/// not guaranteed to pass the consistency checks.
pub fn random_region_rule(rng: &mut impl Rng, g: &GMap) -> Rule {
    let face = OrbitType::new([0, 1]).expect("static");
    let vertex = OrbitType::new([1, 2]).expect("static");
    let faces = orbit_partition(&g.graph, &face);
    let mut region = BTreeSet::new();
    let whole = rng.gen_bool(0.3);
    for f in &faces {
        if whole || rng.gen_bool(0.5) {
            region.extend(f.nodes.iter().cloned());
        }
    }
    if region.is_empty() {
        if let Some(f) = faces.choose(rng) {
            region.extend(f.nodes.iter().cloned());
        }
    }
    let left = g.graph.induced(&region);
    let mut right = left.clone();
    let darts: Vec<NodeId> = left.nodes().cloned().collect();
    let fresh = |k: usize| format!("new{k}");
    match (rng.gen_range(0..7), darts.choose(rng)) {
        (_, None) => {}
        (0, Some(d)) => relabel_orbit(&mut right, &face, d, "color", &random_color(rng)),
        (1, Some(d)) => relabel_orbit(&mut right, &vertex, d, "point", &random_point(rng)),
        (2, Some(d)) => {
            let edge = orbit(&left, &OrbitType::new([0, 2]).expect("static"), d).expect("known dart");
            let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
            for x in &edge.nodes {
                if let Ok(y) = link(&left, x, ArcLabel(0)) {
                    if *x < y {
                        pairs.push((x.clone(), y));
                    }
                }
            }
            let mut made: BTreeMap<NodeId, NodeId> = BTreeMap::new();
            for (k, (x, y)) in pairs.iter().enumerate() {
                let (nx, ny) = (fresh(2 * k), fresh(2 * k + 1));
                unsew(&mut right, x, y, 0);
                for (n, from) in [(&nx, x), (&ny, y)] {
                    right.add_node(n.clone()).expect("fresh node");
                    if let Some(c) = left.label(from, "color") {
                        right.set_label(n, "color", c.clone()).expect("known node");
                    }
                    made.insert(from.clone(), n.clone());
                }
                sew(&mut right, x, &nx, 0);
                sew(&mut right, &nx, &ny, 1);
                sew(&mut right, &ny, y, 0);
            }
            for (x, nx) in &made {
                match link(&left, x, ArcLabel(2)) {
                    Ok(x2) if made.contains_key(&x2) => sew(&mut right, nx, &made[&x2], 2),
                    Ok(x2) if x2 == *x => sew(&mut right, nx, nx, 2),
                    _ => {}
                }
            }
            if let Some((x, y)) = pairs.first() {
                if let (Some(Value::Point(ax, ay)), Some(Value::Point(bx, by))) =
                    (left.label(x, "point"), left.label(y, "point"))
                {
                    let two = rational(2);
                    let mid = Value::Point((ax + bx) / &two, (ay + by) / &two);
                    for n in made.values() {
                        right.set_label(n, "point", mid.clone()).expect("known node");
                    }
                }
            }
        }
        (3, Some(d)) => {
            if let (Ok(d2), Ok(e)) = (link(&left, d, ArcLabel(2)), link(&left, d, ArcLabel(0))) {
                if let Ok(e2) = link(&left, &e, ArcLabel(2)) {
                    if d2 != *d && e != *d {
                        unsew(&mut right, d, &d2, 2);
                        unsew(&mut right, &e, &e2, 2);
                        for n in [d, &d2, &e, &e2] {
                            sew(&mut right, n, n, 2);
                        }
                    }
                }
            }
        }
        (4, Some(d)) => {
            let free: Vec<&NodeId> = darts
                .iter()
                .filter(|x| *x != d && link(&left, x, ArcLabel(2)).ok().as_ref() == Some(*x))
                .collect();
            let (Ok(d0), Some(&y)) = (link(&left, d, ArcLabel(0)), free.choose(rng)) else {
                return rule_from(left, right);
            };
            let Ok(y0) = link(&left, y, ArcLabel(0)) else { return rule_from(left, right) };
            let ends = BTreeSet::from([d.clone(), d0.clone(), y.clone(), y0.clone()]);
            let free_d = link(&left, d, ArcLabel(2)).ok().as_ref() == Some(d)
                && link(&left, &d0, ArcLabel(2)).ok().as_ref() == Some(&d0);
            if ends.len() == 4 && free_d && link(&left, &y0, ArcLabel(2)).ok().as_ref() == Some(&y0) {
                for n in &ends {
                    unsew(&mut right, n, n, 2);
                }
                sew(&mut right, d, y, 2);
                sew(&mut right, &d0, &y0, 2);
                for n in [d, &d0] {
                    if let Some(p) = right.label(n, "point").cloned() {
                        relabel_orbit(&mut right, &vertex, n, "point", &p);
                    }
                }
            }
        }
        (5, Some(d)) => {
            let f = orbit(&left, &face, d).expect("known dart").node_set();
            for x in &f {
                if let Ok(x2) = link(&left, x, ArcLabel(2)) {
                    if !f.contains(&x2) {
                        unsew(&mut right, x, &x2, 2);
                        sew(&mut right, &x2, &x2, 2);
                    }
                }
            }
            for x in &f {
                right.remove_node(x).expect("known node");
            }
        }
        _ => {
            let sides = rng.gen_range(1..=3);
            let names: Vec<String> = (0..2 * sides).map(fresh).collect();
            let (p, c) = (random_point(rng), random_color(rng));
            for n in &names {
                right.add_node(n.clone()).expect("fresh node");
                right.set_label(n, "color", c.clone()).expect("known node");
                right.set_label(n, "point", p.clone()).expect("known node");
                sew(&mut right, n, n, 2);
            }
            for i in 0..sides {
                sew(&mut right, &names[2 * i], &names[2 * i + 1], 0);
                sew(&mut right, &names[2 * i + 1], &names[(2 * i + 2) % names.len()], 1);
            }
        }
    }
    rule_from(left, right)
}

fn rule_from(left: IGraph<Value>, right: IGraph<Value>) -> Rule {
    let kernel = kernel_of(&left, &right);
    Rule::new(left, kernel, right).expect("kernel is the intersection")
}

const EMBEDDINGS: [(&str, &str, Sort); 4] = [
    ("color", "<a0 a1>", Sort::Color),
    ("point", "<a1 a2>", Sort::Point),
    ("shift", "<a0>", Sort::Vector),
    ("weight", "<>", Sort::Scalar),
];

fn random_spec(rng: &mut impl Rng) -> GMapSpec {
    let dimension = rng.gen_range(0..=3u8);
    let mut spec = GMapSpec::new(dimension);
    for (name, domain, sort) in EMBEDDINGS {
        let domain: OrbitType = domain.parse().expect("static orbit");
        if domain.max_label().is_none_or(|m| m <= dimension) && rng.gen_bool(0.6) {
            spec = spec.with_embedding(name, &domain.to_string(), sort).expect("fresh embedding");
        }
    }
    spec
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-20..=20), [1, 2, 3, 4, 5, 7][rng.gen_range(0..6)])
}

fn random_value(rng: &mut impl Rng, sort: &Sort) -> Value {
    match sort {
        Sort::Scalar => Value::Scalar(random_rational(rng)),
        Sort::Point => Value::Point(random_rational(rng), random_rational(rng)),
        Sort::Vector => Value::Vector(random_rational(rng), random_rational(rng)),
        _ if rng.gen_bool(0.8) => random_color(rng),
        _ => Value::Color(random_rational(rng), random_rational(rng), random_rational(rng)),
    }
}

fn random_arcs<L: Clone + PartialEq>(rng: &mut impl Rng, g: &mut IGraph<L>, dimension: u8, count: usize) {
    let nodes: Vec<NodeId> = g.nodes().cloned().collect();
    if nodes.is_empty() {
        return;
    }
    for k in 0..count {
        let s = nodes.choose(rng).expect("non-empty").clone();
        let t = if rng.gen_bool(0.2) { s.clone() } else { nodes.choose(rng).expect("non-empty").clone() };
        let l = if rng.gen_bool(0.9) { label(rng.gen_range(0..=dimension)) } else { None };
        let id = format!("{s}-{}-{t}", l.map_or("_".to_string(), |l| l.to_string()));
        let id = if g.contains_arc(&id) { format!("{id}~{k}") } else { id };
        g.add_arc(id.clone(), s.clone(), t.clone(), l).expect("fresh arc");
        if s != t && rng.gen_bool(0.7) {
            let back = format!("{t}-{}-{s}", l.map_or("_".to_string(), |l| l.to_string()));
            let back = if g.contains_arc(&back) { format!("{back}~{k}r") } else { back };
            g.add_arc(back, t, s, l).expect("fresh arc");
        }
    }
}

fn node_name(rng: &mut impl Rng, k: usize) -> String {
    ["n", "dart", "x_", "v", "é"][rng.gen_range(0..5)].to_string() + &k.to_string()
}

/// A random, not necessarily valid, G-map document.
pub fn random_gmap_document(rng: &mut impl Rng) -> GMap {
    let spec = random_spec(rng);
    let mut g = GMap::new(spec.clone());
    let n = rng.gen_range(0..=8);
    for k in 0..n {
        let x = node_name(rng, k);
        g.graph.add_node(x.clone()).expect("fresh node");
        for op in spec.embeddings() {
            if rng.gen_bool(0.7) {
                g.graph.set_label(&x, &op.name, random_value(rng, &op.sort)).expect("known node");
            }
        }
    }
    let arcs = rng.gen_range(0..=10);
    random_arcs(rng, &mut g.graph, spec.dimension, arcs);
    g
}

fn random_node_term(rng: &mut impl Rng, spec: &GMapSpec, vars: &[NodeId]) -> Expr {
    let mut e = Expr::var(vars.choose(rng).expect("non-empty"));
    while rng.gen_bool(0.3) {
        e = e.link(rng.gen_range(0..=spec.dimension));
    }
    e
}

fn random_leaf(rng: &mut impl Rng, spec: &GMapSpec, vars: &[NodeId], sort: &Sort, accessible: &[String]) -> Expr {
    match accessible.choose(rng) {
        Some(name) if rng.gen_bool(0.8) => random_node_term(rng, spec, vars).access(name),
        _ => Expr::Literal(random_value(rng, sort)),
    }
}

fn random_expr(rng: &mut impl Rng, spec: &GMapSpec, vars: &[NodeId], sort: &Sort, depth: u32) -> Option<Expr> {
    let accessible: Vec<String> = spec.embeddings().filter(|op| &op.sort == sort).map(|op| op.name.clone()).collect();
    let leaf = |rng: &mut _| random_leaf(rng, spec, vars, sort, &accessible);
    if depth == 0 || rng.gen_bool(0.4) {
        return Some(leaf(rng));
    }
    Some(match (sort, rng.gen_range(0..4)) {
        (Sort::Point, 0) | (Sort::Color, 0) => {
            let l = random_expr(rng, spec, vars, sort, depth - 1)?;
            let r = random_expr(rng, spec, vars, sort, depth - 1)?;
            if matches!((&l, &r), (Expr::Literal(_), Expr::Literal(_))) {
                return Some(l);
            }
            Expr::binary(BinOp::Div, Expr::binary(BinOp::Add, l, r), Expr::Literal(Value::Scalar(rational(2))))
        }
        (Sort::Point, 1) => {
            let p = leaf(rng);
            if matches!(p, Expr::Literal(_)) {
                return Some(p);
            }
            Expr::binary(BinOp::Add, p, Expr::Literal(random_value(rng, &Sort::Vector)))
        }
        (_, 2) => {
            let name = accessible.choose(rng)?;
            let traversal = OrbitType::new((0..=spec.dimension).filter(|_| rng.gen_bool(0.6))).ok()?;
            Expr::Call(
                "mean".into(),
                vec![Expr::Collect { embedding: name.clone(), orbit: traversal, node: Box::new(random_node_term(rng, spec, vars)) }],
            )
        }
        (Sort::Scalar, 3) | (Sort::Vector, 3) => {
            let e = random_expr(rng, spec, vars, sort, depth - 1)?;
            if matches!(e, Expr::Literal(_)) {
                return Some(e);
            }
            if rng.gen_bool(0.5) {
                Expr::Neg(Box::new(e))
            } else {
                Expr::binary(BinOp::Mul, e, Expr::Literal(Value::Scalar(random_rational(rng))))
            }
        }
        _ => leaf(rng),
    })
}

/// A random rule or rule-scheme document. Rules satisfy the inclusions
/// but not necessarily the label conditions.
pub fn random_rule_document(rng: &mut impl Rng) -> RuleDocument {
    let spec = random_spec(rng);
    let names: Vec<String> = spec.names().cloned().collect();
    let mut left: IGraph<Value> = IGraph::new(names.iter().cloned());
    for k in 0..rng.gen_range(1..=4) {
        left.add_node(node_name(rng, k)).expect("fresh node");
    }
    let arcs = rng.gen_range(0..=5);
    random_arcs(rng, &mut left, spec.dimension, arcs);
    let keep: BTreeSet<NodeId> = left.nodes().filter(|_| rng.gen_bool(0.7)).cloned().collect();
    let mut kernel = left.induced(&keep);
    let mut right = kernel.clone();
    for k in 0..rng.gen_range(0..=3) {
        right.add_node(format!("new{k}")).expect("fresh node");
    }
    let extra = rng.gen_range(0..=3);
    let before: BTreeSet<String> = right.arcs().map(|(id, _)| id.clone()).collect();
    random_arcs(rng, &mut right, spec.dimension, extra);
    let added: Vec<String> = right.arcs().map(|(id, _)| id.clone()).filter(|id| !before.contains(id)).collect();
    for id in added {
        if left.contains_arc(&id) {
            let a = right.remove_arc(&id).expect("known arc");
            right.add_arc(format!("{id}'"), a.source, a.target, a.label).expect("fresh arc");
        }
    }
    if rng.gen_bool(0.5) {
        let vars: Vec<NodeId> = left.nodes().cloned().collect();
        let mut rs: RuleScheme = Rule::new(left.base_as(), kernel.base_as(), right.base_as()).expect("inclusions");
        let nodes: Vec<NodeId> = rs.right.nodes().cloned().collect();
        for n in nodes {
            for op in spec.embeddings() {
                if rng.gen_bool(0.5) {
                    if let Some(e) = random_expr(rng, &spec, &vars, &op.sort, 2) {
                        rs.right.set_label(&n, &op.name, e).expect("known node");
                    }
                }
            }
        }
        return RuleDocument::Scheme { spec, scheme: rs };
    }
    for g in [&mut left, &mut kernel, &mut right] {
        let nodes: Vec<NodeId> = g.nodes().cloned().collect();
        for n in nodes {
            for op in spec.embeddings() {
                if rng.gen_bool(0.5) {
                    let _ = g.set_label(&n, &op.name, random_value(rng, &op.sort));
                }
            }
        }
    }
    for n in keep {
        for i in &names {
            if let Some(v) = kernel.label(&n, i).cloned() {
                left.set_label(&n, i, v.clone()).expect("known node");
                right.set_label(&n, i, v).expect("known node");
            }
        }
    }
    RuleDocument::Rule { spec, rule: Rule::new(left, kernel, right).expect("inclusions") }
}
