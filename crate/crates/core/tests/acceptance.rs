//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use gmap_core::bundled;
use gmap_core::consistency::check_rule_consistency;
use gmap_core::generate::{self, random_gmap, random_gmap_document, random_graph, random_host, random_region_rule, random_rule, random_rule_document};
use gmap_core::gmap::{collect, orbit, orbit_partition, GMap, GMapSpec};
use gmap_core::graph::{pushout, IGraph, Morphism};
use gmap_core::io::{load_gmap, load_rule_document, parse_gmap, parse_rule_document, save_gmap, save_rule_document, write_gmap, write_rule_document};
use gmap_core::rewrite::{apply, are_isomorphic, check_dangling, find_matches, validate_rule, Match};
use gmap_core::scheme::{
    apply_scheme, find_scheme_matches, instantiate_with, saturation_triggers, Instance, RuleScheme, Saturation,
};
use gmap_core::value::{ratio, Value};

use common::*;

const ORBIT_GRAPHS: usize = 200;
const ORBIT_MAX_NODES: usize = 20;
const COLLECT_MAPS: usize = 100;
const COLLECT_MAX_DARTS: usize = 20;
const DPO_TRIPLES: usize = 500;
const DPO_MAX_NODES: usize = 10;
const PUSHOUT_MAX_SPAN_NODES: usize = 4;
const PUSHOUT_MAX_COCONE_NODES: usize = 5;
const SOUND_RULES: usize = 300;
const SOUND_MAX_DARTS: usize = 16;
const SPLIT_EDGE_NODES: usize = 22;
const SATURATION_ORDERS: usize = 20;
const ROUND_TRIP_DOCUMENTS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn point(x: (i64, i64), y: (i64, i64)) -> Value {
    Value::Point(ratio(x.0, x.1), ratio(y.0, y.1))
}

fn house_point(house: &GMap, node: &str) -> Value {
    house.graph.label(node, "point").cloned().expect("house darts carry points")
}

fn fixture_validity() -> Outcome {
    let house = bundled::house();
    ensure(house.graph.node_count() == 14, || format!("house has {} nodes", house.graph.node_count()))?;
    ensure(house.is_valid(), || format!("house fails:\n{}", house.check()))?;
    let expected_loop = BTreeSet::from(["adjacent-arcs".to_string()]);
    let expected_label = BTreeSet::from(["embedding".to_string()]);
    let loops: Vec<String> = house.graph.arcs().filter(|(_, a)| a.source == a.target).map(|(id, _)| id.clone()).collect();
    for id in &loops {
        let mut g = house.clone();
        g.graph.remove_arc(id).unwrap();
        let failed = g.check().failed_checks();
        ensure(failed == expected_loop, || format!("removing loop {id} fails {failed:?}"))?;
    }
    let mut labels = 0;
    for n in house.graph.nodes() {
        for op in house.spec.embeddings() {
            let mut g = house.clone();
            g.graph.clear_label(n, &op.name).unwrap();
            let failed = g.check().failed_checks();
            ensure(failed == expected_label, || format!("clearing {}:{n} fails {failed:?}", op.name))?;
            labels += 1;
        }
    }
    Ok(format!("{} loops, {labels} labels removed one at a time", loops.len()))
}

fn orbit_oracle() -> Outcome {
    let mut rng = generate::rng("acceptance-orbit");
    let mut checked = 0;
    for _ in 0..ORBIT_GRAPHS {
        let n = rng.gen_range(1..=ORBIT_MAX_NODES);
        let arcs = rng.gen_range(0..=2 * n);
        let g = random_graph(&mut rng, n, arcs, 3);
        let labels: Vec<u8> = (0..=3).filter(|_| rng.gen_bool(0.5)).collect();
        let ot = orbit_type(&labels);
        for v in g.nodes() {
            let got = orbit(&g, &ot, v).unwrap();
            let nodes = closure_orbit(&g, &labels, v);
            let arcs: BTreeSet<String> = g
                .arcs()
                .filter(|(_, a)| a.label.is_some_and(|l| labels.contains(&l.0)) && nodes.contains(&a.source))
                .map(|(id, _)| id.clone())
                .collect();
            ensure(got.node_set() == nodes && got.nodes.len() == nodes.len(), || format!("nodes of {ot}({v}) differ"))?;
            ensure(got.arcs == arcs, || format!("arcs of {ot}({v}) differ"))?;
            checked += 1;
        }
    }
    Ok(format!("{ORBIT_GRAPHS} graphs, {checked} orbits"))
}

fn collect_oracle() -> Outcome {
    let house = bundled::house();
    let full = orbit_type(&[0, 1, 2]);
    let got = collect(&house.graph, &house.spec, "point", &full, "a").map_err(|e| e.to_string())?;
    let expected = Value::multiset(["a", "c", "d", "k", "l"].map(|n| house_point(&house, n)).to_vec());
    ensure(got == expected, || format!("house collect gave {got}"))?;
    let ps: BTreeSet<Value> = ["a", "c", "d", "k", "l"].map(|n| house_point(&house, n)).into();
    ensure(
        ps == BTreeSet::from([point((0, 1), (2, 1)), point((0, 1), (1, 1)), point((1, 1), (1, 1)), point((0, 1), (0, 1)), point((1, 1), (0, 1))]),
        || "house points are not A..E".into(),
    )?;
    let mut rng = generate::rng("acceptance-collect");
    let mut checked = 0;
    for _ in 0..COLLECT_MAPS {
        let g = random_gmap(&mut rng, COLLECT_MAX_DARTS);
        ensure(g.is_valid(), || format!("generator produced an invalid map:\n{}", g.check()))?;
        for v in g.graph.nodes() {
            for traversal in [&[0u8, 1, 2][..], &[0, 1], &[0, 2], &[1, 2], &[0], &[1], &[2], &[]] {
                for op in g.spec.embeddings() {
                    let Value::Multi(mut got) = collect(&g.graph, &g.spec, &op.name, &orbit_type(traversal), v).map_err(|e| e.to_string())? else {
                        return Err("collect did not return a multiset".into());
                    };
                    got.sort();
                    ensure(got == quotient_collect(&g.graph, &g.spec, &op.name, traversal, v), || {
                        format!("collect {}<{traversal:?}>({v}) differs", op.name)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("house = {{A,B,C,D,E}}, {COLLECT_MAPS} maps, {checked} collects"))
}

fn dpo_recomputation() -> Outcome {
    let mut rng = generate::rng("acceptance-dpo");
    let (mut triples, mut applied, mut attempts) = (0, 0, 0);
    while triples < DPO_TRIPLES {
        attempts += 1;
        ensure(attempts < 50 * DPO_TRIPLES, || format!("only {triples} triples generated"))?;
        let rule = random_rule(&mut rng);
        let g = random_host(&mut rng, &rule, DPO_MAX_NODES);
        if g.node_count() > DPO_MAX_NODES {
            continue;
        }
        let matches = find_matches(&rule, &g);
        let Some(m) = matches.choose(&mut rng) else { continue };
        triples += 1;
        let dangling_ok = check_dangling(&rule, m, &g).is_pass();
        let result = apply(&rule, m, &g);
        ensure(result.is_ok() == dangling_ok, || {
            format!("apply {} but dangling {}", if result.is_ok() { "succeeded" } else { "failed" }, dangling_ok)
        })?;
        let Ok(h) = result else { continue };
        applied += 1;
        let d = pushout_complement(&rule, m, &g);
        let k_to_d = kernel_match(&rule, m);
        let k_in = inclusion(&rule.kernel);
        let left = pushout(&k_to_d, &k_in, &rule.kernel, &d, &rule.left).map_err(|e| e.to_string())?;
        ensure(are_isomorphic(&left.graph, &g), || "D +K L is not G".into())?;
        let right = pushout(&k_to_d, &k_in, &rule.kernel, &d, &rule.right).map_err(|e| e.to_string())?;
        ensure(are_isomorphic(&right.graph, &h.graph), || "D +K R is not H".into())?;
    }
    Ok(format!("{triples} triples, {applied} applied"))
}

/// One representative per isomorphism class.
fn up_to_iso(graphs: Vec<IGraph<Value>>) -> Vec<IGraph<Value>> {
    let mut out: Vec<IGraph<Value>> = Vec::new();
    for g in graphs {
        if !out.iter().any(|h| are_isomorphic(h, &g)) {
            out.push(g);
        }
    }
    out
}

/// Span objects up to isomorphism: `A` on at most two nodes and one arc,
/// `B` and `C` on at most `max_nodes` nodes and one arc.
fn span_objects(max_nodes: usize) -> (Vec<IGraph<Value>>, Vec<IGraph<Value>>) {
    let a = up_to_iso(all_small_graphs(2, 1, &[Some(0)]));
    let bc = up_to_iso(all_small_graphs(max_nodes, 1, &[Some(0)]));
    (a, bc)
}

/// Cocone targets: every graph on at most two nodes and two arcs, the
/// pushout object itself, and the pushout object with a fresh loop or node.
fn cocone_targets(small: &[IGraph<Value>], d: &IGraph<Value>) -> Vec<IGraph<Value>> {
    let mut out = small.to_vec();
    if d.node_count() <= PUSHOUT_MAX_COCONE_NODES {
        out.push(d.clone());
        if let Some(n) = d.nodes().next().cloned() {
            let mut extra = d.clone();
            extra.add_arc("extra", n.clone(), n, Some(gmap_core::graph::ArcLabel(0))).unwrap();
            out.push(extra);
        }
    }
    if d.node_count() < PUSHOUT_MAX_COCONE_NODES {
        let mut bigger = d.clone();
        bigger.add_node("fresh").unwrap();
        out.push(bigger);
    }
    out
}

/// The cocone `(u . g', u . f')` as the images of the items of `B` then `C`.
fn cocone_key(u: &Morphism, from_b: &Morphism, from_c: &Morphism) -> Vec<String> {
    let mut key = Vec::new();
    for m in [from_b, from_c] {
        key.extend(m.nodes.values().map(|y| u.nodes[y].clone()));
        key.extend(m.arcs.values().map(|y| u.arcs[y].clone()));
    }
    key
}

fn pushout_universality() -> Outcome {
    let (mut squares, mut cocones) = (0usize, 0usize);
    let (sources, targets) = span_objects(PUSHOUT_MAX_SPAN_NODES);
    let small = up_to_iso(all_small_graphs(2, 2, &[Some(0)]));
    for a in &sources {
        for b in &targets {
            let fs = all_morphisms(a, b);
            for c in &targets {
                let gs: Vec<Morphism> = all_morphisms(a, c).into_iter().filter(Morphism::is_injective).collect();
                for f in &fs {
                    for g in &gs {
                        let po = pushout(f, g, a, b, c).map_err(|e| e.to_string())?;
                        squares += 1;
                        for x in cocone_targets(&small, &po.graph) {
                            let ps = all_morphisms(b, &x);
                            let qs = all_morphisms(c, &x);
                            let qg: Vec<Morphism> = qs.iter().map(|q| compose(g, q)).collect();
                            let mut expected = 0usize;
                            for p in &ps {
                                let pf = compose(f, p);
                                expected += qg.iter().filter(|q| **q == pf).count();
                            }
                            let mut induced = BTreeSet::new();
                            for u in all_morphisms(&po.graph, &x) {
                                let commutes = a.nodes().all(|n| u.nodes[&po.from_b.nodes[&f.nodes[n]]] == u.nodes[&po.from_c.nodes[&g.nodes[n]]])
                                    && a.arcs().all(|(e, _)| u.arcs[&po.from_b.arcs[&f.arcs[e]]] == u.arcs[&po.from_c.arcs[&g.arcs[e]]]);
                                ensure(commutes, || "induced pair is not a cocone".into())?;
                                ensure(induced.insert(cocone_key(&u, &po.from_b, &po.from_c)), || "two mediating maps for one cocone".into())?;
                            }
                            ensure(induced.len() == expected, || {
                                format!("{} mediating maps for {expected} cocones", induced.len())
                            })?;
                            cocones += expected;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{squares} squares, {cocones} cocones each factored uniquely"))
}

fn gmap_sound() -> Outcome {
    let mut rng = generate::rng("acceptance-sound");
    let spec = GMapSpec::points_and_colors();
    let (mut rules, mut applications, mut attempts) = (0, 0, 0);
    while rules < SOUND_RULES {
        attempts += 1;
        ensure(attempts < 100 * SOUND_RULES, || format!("only {rules} consistent rules generated"))?;
        let g = random_gmap(&mut rng, SOUND_MAX_DARTS);
        let rule = random_region_rule(&mut rng, &g);
        if !validate_rule(&rule).map_err(|e| e.to_string())?.is_pass() || !check_rule_consistency(&rule, &spec).is_pass() {
            continue;
        }
        rules += 1;
        for m in find_matches(&rule, &g.graph) {
            if !check_dangling(&rule, &m, &g.graph).is_pass() {
                continue;
            }
            let h = apply(&rule, &m, &g.graph).map_err(|e| e.to_string())?;
            let h = GMap::from_graph(g.spec.clone(), h.graph).map_err(|e| e.to_string())?;
            ensure(h.check_topology().is_pass(), || format!("topology broken:\n{}", h.check_topology()))?;
            ensure(h.check_embedding().is_pass(), || format!("embedding broken:\n{}", h.check_embedding()))?;
            applications += 1;
        }
    }
    let incomplete = check_rule_consistency(&bundled::incomplete_redefinition_rule(), &spec).failed_checks();
    ensure(incomplete == BTreeSet::from(["incomplete-redefinition".to_string()]), || {
        format!("incomplete redefinition rule fails {incomplete:?}")
    })?;
    let inconsistent = check_rule_consistency(&bundled::inconsistent_vertex_rule(), &spec).failed_checks();
    ensure(inconsistent == BTreeSet::from(["non-consistent-embedding".to_string()]), || {
        format!("inconsistent added vertex rule fails {inconsistent:?}")
    })?;
    Ok(format!(
        "{rules} rules ({attempts} drawn), {applications} applications valid; redefinition and added-vertex rules rejected"
    ))
}

fn single_match(rs: &RuleScheme, g: &GMap, pairs: &[(&str, &str)]) -> Result<Match, String> {
    let fixed: BTreeMap<String, String> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let mut ms = find_scheme_matches(rs, &g.graph, &fixed);
    ensure(ms.len() == 1, || format!("{} matches for {pairs:?}", ms.len()))?;
    Ok(ms.remove(0))
}

fn golden_figures() -> Outcome {
    let house = bundled::house();
    let mut failures = Vec::new();

    let split = apply_scheme(&bundled::split_edge(), &single_match(&bundled::split_edge(), &house, &[("e", "e"), ("f", "f")])?, &house)
        .map_err(|e| e.to_string())?;
    let n = split.result.graph.node_count();
    if n != SPLIT_EDGE_NODES {
        failures.push(format!("edge split has {n} nodes, expected {SPLIT_EDGE_NODES}"));
    }
    if !split.result.is_valid() {
        failures.push(format!("edge split invalid:\n{}", split.result.check()));
    }
    let (b, c) = (house_point(&house, "e"), house_point(&house, "f"));
    let (Value::Point(bx, by), Value::Point(cx, cy)) = (&b, &c) else { return Err("points expected".into()) };
    let two = ratio(2, 1);
    let mid = Value::Point((bx + cx) / &two, (by + cy) / &two);
    let added: Vec<&String> = split.result.graph.nodes().filter(|n| !house.graph.contains_node(n)).collect();
    if added.is_empty() || added.iter().any(|n| split.result.graph.label(n, "point") != Some(&mid)) {
        failures.push("new vertex is not at (B+C)/2".into());
    }

    let tri = apply_scheme(&bundled::triangulate(), &single_match(&bundled::triangulate(), &house, &[("a", "a"), ("c", "c")])?, &house)
        .map_err(|e| e.to_string())?;
    if !tri.result.is_valid() {
        failures.push(format!("triangulation invalid:\n{}", tri.result.check()));
    }
    let corners = ["a", "c", "d"].map(|n| house_point(&house, n));
    let (mut sx, mut sy) = (ratio(0, 1), ratio(0, 1));
    for p in &corners {
        let Value::Point(x, y) = p else { return Err("points expected".into()) };
        sx += x;
        sy += y;
    }
    let three = ratio(3, 1);
    let center = Value::Point(sx / &three, sy / &three);
    let at_center = tri.result.graph.nodes().filter(|n| tri.result.graph.label(n, "point") == Some(&center)).count();
    if at_center != 6 {
        failures.push(format!("{at_center} darts at the triangle center"));
    }
    let blend = |x: &str| -> Option<Value> {
        let own = house.graph.label(x, "color")?;
        let across = house.graph.label(&house.link(x, 2).ok()?, "color")?;
        let (Value::Color(r1, g1, b1), Value::Color(r2, g2, b2)) = (own, across) else { return None };
        Some(Value::Color((r1 + r2) / &two, (g1 + g2) / &two, (b1 + b2) / &two))
    };
    let faces: Vec<_> = orbit_partition(&tri.result.graph, &orbit_type(&[0, 1]))
        .into_iter()
        .filter(|f| f.nodes.iter().any(|n| tri.result.graph.label(n, "point") == Some(&center)))
        .collect();
    if faces.len() != 3 {
        failures.push(format!("{} triangles around the center", faces.len()));
    }
    for face in &faces {
        let outer = face.nodes.iter().find(|n| house.graph.contains_node(n)).cloned().unwrap_or_default();
        let want = blend(&outer);
        let got = tri.result.graph.label(&face.seed, "color").cloned();
        if want.is_none() || got != want {
            failures.push(format!("triangle at {outer} colored {got:?}, expected {want:?}"));
        }
    }

    let tr = bundled::translate();
    for v in house.graph.nodes() {
        let app = apply_scheme(&tr, &single_match(&tr, &house, &[("a", v)])?, &house).map_err(|e| e.to_string())?;
        let cell = house.orbit(&orbit_type(&[1, 2]), v).unwrap().node_set();
        for n in house.graph.nodes() {
            let before = house_point(&house, n);
            let after = app.result.graph.label(n, "point").cloned();
            let want = match (&before, cell.contains(n)) {
                (Value::Point(x, y), true) => Some(Value::Point(x + ratio(1, 1), y + ratio(2, 1))),
                _ => Some(before.clone()),
            };
            if after != want {
                failures.push(format!("translate at {v} moved {n} to {after:?}"));
            }
        }
    }

    if failures.is_empty() {
        Ok(format!("split {n} nodes at {mid}, center {center}, translation exact at all 14 darts"))
    } else {
        Err(failures.join("; "))
    }
}

fn same_instance(a: &Instance, b: &Instance) -> bool {
    are_isomorphic(&a.rule.left, &b.rule.left)
        && are_isomorphic(&a.rule.kernel, &b.rule.kernel)
        && are_isomorphic(&a.rule.right, &b.rule.right)
}

fn saturation_invariance() -> Outcome {
    let mut rng = generate::rng("acceptance-saturation");
    let mut hosts = vec![bundled::house()];
    for _ in 0..5 {
        hosts.push(random_gmap(&mut rng, 16));
    }
    let (mut cases, mut full_cases) = (0, 0);
    for (name, rs) in bundled::schemes() {
        for g in &hosts {
            let triggers = saturation_triggers(&rs, &g.spec, Saturation::Trigger);
            let full = saturation_triggers(&rs, &g.spec, Saturation::Full);
            for m in find_scheme_matches(&rs, &g.graph, &BTreeMap::new()) {
                let base = instantiate_with(&rs, &m, g, &triggers).map_err(|e| format!("{name}: {e}"))?;
                for _ in 0..SATURATION_ORDERS {
                    let mut order = triggers.clone();
                    order.shuffle(&mut rng);
                    let inst = instantiate_with(&rs, &m, g, &order).map_err(|e| format!("{name}: {e}"))?;
                    ensure(same_instance(&inst, &base), || format!("{name} at {}: order changes the instance", m.describe()))?;
                }
                cases += 1;
                let wide = instantiate_with(&rs, &m, g, &full).map_err(|e| format!("{name}: {e}"))?;
                let narrow = apply(&base.rule, &base.matching, &g.graph);
                let broad = apply(&wide.rule, &wide.matching, &g.graph);
                ensure(narrow.is_ok() == broad.is_ok(), || format!("{name} at {}: modes disagree on applicability", m.describe()))?;
                if let (Ok(x), Ok(y)) = (narrow, broad) {
                    ensure(are_isomorphic(&x.graph, &y.graph), || format!("{name} at {}: modes give different results", m.describe()))?;
                    full_cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} matches x {SATURATION_ORDERS} orders; trigger = full on {full_cases} applications"))
}

fn serialization() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("doc");
    for (name, text) in bundled::GMAP_FILES {
        let g = parse_gmap(text).map_err(|e| format!("{name}: {e}"))?;
        save_gmap(&g, &path).map_err(|e| e.to_string())?;
        let again = load_gmap(&path).map_err(|e| e.to_string())?;
        ensure(write_gmap(&again) == *text, || format!("{name} does not round-trip"))?;
        ensure(std::fs::read_to_string(&path).map_err(|e| e.to_string())? == *text, || format!("{name} is rewritten"))?;
    }
    for (name, text) in bundled::RULE_FILES {
        let r = parse_rule_document(text).map_err(|e| format!("{name}: {e}"))?;
        save_rule_document(&r, &path).map_err(|e| e.to_string())?;
        let again = load_rule_document(&path).map_err(|e| e.to_string())?;
        ensure(write_rule_document(&again) == *text, || format!("{name} does not round-trip"))?;
        ensure(std::fs::read_to_string(&path).map_err(|e| e.to_string())? == *text, || format!("{name} is rewritten"))?;
    }
    let mut rng = generate::rng("acceptance-serialization");
    for k in 0..ROUND_TRIP_DOCUMENTS {
        let g = random_gmap_document(&mut rng);
        save_gmap(&g, &path).map_err(|e| e.to_string())?;
        let first = std::fs::read(&path).map_err(|e| e.to_string())?;
        save_gmap(&load_gmap(&path).map_err(|e| format!("map {k}: {e}"))?, &path).map_err(|e| e.to_string())?;
        ensure(std::fs::read(&path).map_err(|e| e.to_string())? == first, || format!("random map {k} changes on reload"))?;

        let doc = random_rule_document(&mut rng);
        save_rule_document(&doc, &path).map_err(|e| e.to_string())?;
        let first = std::fs::read(&path).map_err(|e| e.to_string())?;
        save_rule_document(&load_rule_document(&path).map_err(|e| format!("rule {k}: {e}"))?, &path).map_err(|e| e.to_string())?;
        ensure(std::fs::read(&path).map_err(|e| e.to_string())? == first, || format!("random rule {k} changes on reload"))?;
    }
    Ok(format!(
        "{} fixtures, {ROUND_TRIP_DOCUMENTS} random maps, {ROUND_TRIP_DOCUMENTS} random rule documents",
        bundled::GMAP_FILES.len() + bundled::RULE_FILES.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("fixture-validity", fixture_validity),
        ("orbit-oracle", orbit_oracle),
        ("collect-oracle", collect_oracle),
        ("dpo-recomputation", dpo_recomputation),
        ("pushout-universality", pushout_universality),
        ("consistent-rules-are-sound", gmap_sound),
        ("golden-figures", golden_figures),
        ("saturation-invariance", saturation_invariance),
        ("serialization", serialization),
    ];
    println!("acceptance: GMAP_SEED={:#x}", generate::seed());
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
