use std::collections::BTreeMap;

use super::{check_morphism, product, IGraph, Morphism};
use crate::error::{Error, Result};

/// The pushout object `D = B +_A C` with its two coprojections.
#[derive(Clone, Debug, PartialEq)]
pub struct Pushout<L = crate::value::Value> {
    pub graph: IGraph<L>,
    /// `f' : C → D`
    pub from_c: Morphism,
    /// `g' : B → D`
    pub from_b: Morphism,
}

/// Pushout of `f : A → B` and an injective `g : A → C`.
///
/// Items of `B` become `B:x` and items of `C` outside `g(A)` become `C:y`.
/// Node labels are computed index by index on the projections and then
/// recombined with [`product`].
pub fn pushout<L: Clone + PartialEq + std::fmt::Display>(
    f: &Morphism,
    g: &Morphism,
    a: &IGraph<L>,
    b: &IGraph<L>,
    c: &IGraph<L>,
) -> Result<Pushout<L>> {
    if a.indices() != b.indices() || a.indices() != c.indices() {
        return Err(Error::BaseMismatch("index sets of A, B and C differ".into()));
    }
    for (name, m, src, dst) in [("f", f, a, b), ("g", g, a, c)] {
        let report = check_morphism(m, src, dst)?;
        if !report.is_pass() {
            return Err(Error::NotAMorphism(format!("{name}: {}", report.to_string().trim_end())));
        }
    }
    if !g.is_injective() {
        return Err(Error::NotInjective("g".into()));
    }

    let indices: Vec<String> = a.indices().iter().cloned().collect();
    let (graph, from_b, from_c) = if indices.is_empty() {
        glue(f, g, b, c, None)?
    } else {
        let mut parts = Vec::with_capacity(indices.len());
        let mut maps = None;
        for i in &indices {
            let (d, fb, fc) = glue(f, g, &b.project(i)?, &c.project(i)?, Some(i))?;
            parts.push(d);
            maps.get_or_insert((fb, fc));
        }
        let (fb, fc) = maps.expect("at least one index");
        (product(&parts)?, fb, fc)
    };
    Ok(Pushout { graph, from_c, from_b })
}

fn b_name(x: &str) -> String {
    format!("B:{x}")
}

fn c_name(y: &str) -> String {
    format!("C:{y}")
}

/// Gluing on one component; `index` is the only index that may carry labels.
fn glue<L: Clone + PartialEq + std::fmt::Display>(
    f: &Morphism,
    g: &Morphism,
    b: &IGraph<L>,
    c: &IGraph<L>,
    index: Option<&str>,
) -> Result<(IGraph<L>, Morphism, Morphism)> {
    // g is injective, so every C item in g(A) has exactly one preimage.
    let g_inv_nodes: BTreeMap<&String, &String> = g.nodes.iter().map(|(k, v)| (v, k)).collect();
    let g_inv_arcs: BTreeMap<&String, &String> = g.arcs.iter().map(|(k, v)| (v, k)).collect();

    let mut d = IGraph::new(index.into_iter().map(str::to_string));
    let mut from_b = Morphism::default();
    let mut from_c = Morphism::default();

    for x in b.nodes() {
        d.add_node(b_name(x))?;
        from_b.nodes.insert(x.clone(), b_name(x));
    }
    for y in c.nodes() {
        let image = match g_inv_nodes.get(y) {
            Some(pre) => b_name(&f.nodes[*pre]),
            None => {
                d.add_node(c_name(y))?;
                c_name(y)
            }
        };
        from_c.nodes.insert(y.clone(), image);
    }
    for (id, arc) in b.arcs() {
        d.add_arc(b_name(id), b_name(&arc.source), b_name(&arc.target), arc.label)?;
        from_b.arcs.insert(id.clone(), b_name(id));
    }
    for (id, arc) in c.arcs() {
        let image = match g_inv_arcs.get(id) {
            Some(pre) => {
                let target = b_name(&f.arcs[*pre]);
                if let Some(label) = arc.label {
                    match d.arc(&target).and_then(|x| x.label) {
                        Some(existing) if existing != label => {
                            return Err(Error::LabelConflict { item: target, index: "arc".into() })
                        }
                        _ => d.set_arc_label(&target, Some(label))?,
                    }
                }
                target
            }
            None => {
                let name = c_name(id);
                d.add_arc(
                    name.clone(),
                    from_c.nodes[&arc.source].clone(),
                    from_c.nodes[&arc.target].clone(),
                    arc.label,
                )?;
                name
            }
        };
        from_c.arcs.insert(id.clone(), image);
    }

    if let Some(i) = index {
        for x in b.nodes() {
            if let Some(v) = b.label(x, i) {
                d.set_label(&b_name(x), i, v.clone())?;
            }
        }
        for y in c.nodes() {
            let Some(v) = c.label(y, i) else { continue };
            let target = &from_c.nodes[y];
            match d.label(target, i) {
                Some(existing) if existing != v => {
                    return Err(Error::LabelConflict { item: target.clone(), index: i.to_string() });
                }
                _ => d.set_label(target, i, v.clone())?,
            }
        }
    }
    Ok((d, from_b, from_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ArcLabel;
    use crate::value::Value;

    fn graph(nodes: &[&str]) -> IGraph {
        let mut g = IGraph::new(["i"]);
        for n in nodes {
            g.add_node(*n).unwrap();
        }
        g
    }

    fn inclusion(a: &IGraph) -> Morphism {
        Morphism::identity(a)
    }

    #[test]
    fn gluing_over_a_point() {
        let a = graph(&["x"]);
        let b = graph(&["x", "y"]);
        let mut c = graph(&["x"]);
        c.set_label("x", "i", Value::point(3, 4)).unwrap();
        let po = pushout(&inclusion(&a), &inclusion(&a), &a, &b, &c).unwrap();
        assert_eq!(po.graph.node_count(), 2);
        assert_eq!(po.graph.label("B:x", "i"), Some(&Value::point(3, 4)));
        assert_eq!(po.graph.label("B:y", "i"), None);
        assert_eq!(po.from_c.nodes["x"], "B:x");
    }

    #[test]
    fn empty_interface_gives_disjoint_union() {
        let a = graph(&[]);
        let mut b = graph(&["p", "q"]);
        b.add_arc("e", "p", "q", Some(ArcLabel(1))).unwrap();
        let c = graph(&["p"]);
        let po = pushout(&Morphism::default(), &Morphism::default(), &a, &b, &c).unwrap();
        assert_eq!(po.graph.node_count(), 3);
        assert_eq!(po.graph.arc_count(), 1);
        assert!(po.graph.contains_node("C:p"));
    }

    #[test]
    fn label_conflict_is_reported() {
        let a = graph(&["x"]);
        let mut b = graph(&["x"]);
        b.set_label("x", "i", Value::point(0, 0)).unwrap();
        let mut c = graph(&["x"]);
        c.set_label("x", "i", Value::point(1, 0)).unwrap();
        match pushout(&inclusion(&a), &inclusion(&a), &a, &b, &c) {
            Err(Error::LabelConflict { item, index }) => {
                assert_eq!(item, "B:x");
                assert_eq!(index, "i");
            }
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn non_injective_g_is_rejected() {
        let a = graph(&["x", "y"]);
        let b = graph(&["x", "y"]);
        let c = graph(&["z"]);
        let mut g = Morphism::default();
        g.nodes.insert("x".into(), "z".into());
        g.nodes.insert("y".into(), "z".into());
        assert!(matches!(
            pushout(&inclusion(&a), &g, &a, &b, &c),
            Err(Error::NotInjective(_))
        ));
    }

    #[test]
    fn non_injective_f_merges_c_items() {
        let a = graph(&["x", "y"]);
        let b = graph(&["z"]);
        let c = graph(&["x", "y", "w"]);
        let mut f = Morphism::default();
        f.nodes.insert("x".into(), "z".into());
        f.nodes.insert("y".into(), "z".into());
        let po = pushout(&f, &inclusion(&a), &a, &b, &c).unwrap();
        assert_eq!(po.graph.node_count(), 2);
        assert_eq!(po.from_c.nodes["x"], po.from_c.nodes["y"]);
    }
}
