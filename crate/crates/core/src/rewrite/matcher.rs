//! Subgraph monomorphism search by backtracking.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Arc, ArcId, ArcLabel, IGraph, Morphism, NodeId};

/// How node and arc labels of the pattern constrain their images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelMode {
    /// Defined pattern labels must be equal in the host; undefined ones
    /// match anything.
    Preserve,
    /// Labels must be identical, defined or not.
    Exact,
}

struct Host<'a> {
    out: BTreeMap<&'a str, Vec<(&'a ArcId, &'a Arc)>>,
    inc: BTreeMap<&'a str, Vec<(&'a ArcId, &'a Arc)>>,
}

impl<'a> Host<'a> {
    fn new<L: Clone + PartialEq>(g: &'a IGraph<L>) -> Self {
        let mut out: BTreeMap<&str, Vec<_>> = BTreeMap::new();
        let mut inc: BTreeMap<&str, Vec<_>> = BTreeMap::new();
        for (id, a) in g.arcs() {
            out.entry(a.source.as_str()).or_default().push((id, a));
            inc.entry(a.target.as_str()).or_default().push((id, a));
        }
        Self { out, inc }
    }

    fn out(&self, n: &str) -> &[(&'a ArcId, &'a Arc)] {
        self.out.get(n).map_or(&[], Vec::as_slice)
    }

    fn inc(&self, n: &str) -> &[(&'a ArcId, &'a Arc)] {
        self.inc.get(n).map_or(&[], Vec::as_slice)
    }
}

fn arc_compatible(p: Option<ArcLabel>, h: Option<ArcLabel>, mode: LabelMode) -> bool {
    match mode {
        LabelMode::Preserve => p.is_none() || p == h,
        LabelMode::Exact => p == h,
    }
}

/// Counts of (direction, label) over a node's arcs; loops count once as out.
fn signature(host: &Host<'_>, n: &str) -> BTreeMap<(bool, Option<ArcLabel>), usize> {
    let mut sig = BTreeMap::new();
    for (_, a) in host.out(n) {
        *sig.entry((true, a.label)).or_default() += 1;
    }
    for (_, a) in host.inc(n) {
        if a.source != a.target {
            *sig.entry((false, a.label)).or_default() += 1;
        }
    }
    sig
}

/// Whether a pattern signature fits under a host signature.
fn signature_fits(
    p: &BTreeMap<(bool, Option<ArcLabel>), usize>,
    h: &BTreeMap<(bool, Option<ArcLabel>), usize>,
    mode: LabelMode,
) -> bool {
    match mode {
        LabelMode::Exact => p == h,
        LabelMode::Preserve => {
            // labelled arcs need a same-labelled host arc; unlabelled ones
            // only need some arc in the same direction
            let mut total_p = [0usize; 2];
            let mut total_h = [0usize; 2];
            for ((dir, l), c) in p {
                total_p[*dir as usize] += c;
                if l.is_some() && h.get(&(*dir, *l)).copied().unwrap_or(0) < *c {
                    return false;
                }
            }
            for ((dir, _), c) in h {
                total_h[*dir as usize] += c;
            }
            total_p[0] <= total_h[0] && total_p[1] <= total_h[1]
        }
    }
}

/// Pattern nodes in connectivity order: breadth-first from each not yet
/// reached node, taken in name order.
fn search_order<L: Clone + PartialEq>(p: &IGraph<L>, fixed: &BTreeMap<NodeId, NodeId>) -> Vec<NodeId> {
    let mut adj: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (_, a) in p.arcs() {
        adj.entry(&a.source).or_default().insert(&a.target);
        adj.entry(&a.target).or_default().insert(&a.source);
    }
    let mut seen = BTreeSet::new();
    let mut order = Vec::new();
    let roots = fixed
        .keys()
        .map(String::as_str)
        .chain(p.nodes().map(String::as_str))
        .collect::<Vec<_>>();
    for root in roots {
        if !p.contains_node(root) || !seen.insert(root) {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        while let Some(n) = queue.pop_front() {
            order.push(n.to_string());
            for m in adj.get(n).into_iter().flatten() {
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
    }
    order
}

struct Search<'a, L> {
    p: &'a IGraph<L>,
    h: &'a IGraph<L>,
    host: Host<'a>,
    pat: Host<'a>,
    mode: LabelMode,
    order: Vec<NodeId>,
    fixed: &'a BTreeMap<NodeId, NodeId>,
    limit: Option<usize>,
    out: Vec<Morphism>,
}

impl<'a, L: Clone + PartialEq> Search<'a, L> {
    fn labels_fit(&self, pn: &str, hn: &str) -> bool {
        let pl = self.p.labels(pn).expect("pattern node");
        let hl = self.h.labels(hn).expect("host node");
        match self.mode {
            LabelMode::Exact => pl == hl,
            LabelMode::Preserve => pl.iter().all(|(i, v)| hl.get(i) == Some(v)),
        }
    }

    /// Arcs between `pn` and already assigned pattern nodes (including
    /// loops) must have enough compatible counterparts in the host.
    fn arcs_fit(&self, pn: &str, hn: &str, nodes: &BTreeMap<NodeId, NodeId>) -> bool {
        let mut groups: BTreeMap<(&str, &str), Vec<Option<ArcLabel>>> = BTreeMap::new();
        let incident = self
            .pat
            .out(pn)
            .iter()
            .chain(self.pat.inc(pn).iter().filter(|(_, a)| a.source != a.target));
        for (_, a) in incident {
            let other = if a.source == pn { &a.target } else { &a.source };
            if other == pn || nodes.contains_key(other) {
                groups.entry((a.source.as_str(), a.target.as_str())).or_default().push(a.label);
            }
        }
        let image = |x: &str| -> String {
            if x == pn {
                hn.to_string()
            } else {
                nodes[x].clone()
            }
        };
        for ((s, t), labels) in groups {
            let (hs, ht) = (image(s), image(t));
            let mut avail: Vec<Option<ArcLabel>> = self
                .host
                .out(&hs)
                .iter()
                .filter(|(_, a)| a.target == ht)
                .map(|(_, a)| a.label)
                .collect();
            if self.mode == LabelMode::Exact {
                let mut want = labels.clone();
                want.sort();
                avail.sort();
                if want != avail {
                    return false;
                }
                continue;
            }
            // labelled arcs first, unlabelled ones take what remains
            let mut sorted = labels.clone();
            sorted.sort_by_key(|l| l.is_none());
            for l in sorted {
                match avail.iter().position(|h| arc_compatible(l, *h, self.mode)) {
                    Some(k) => {
                        avail.swap_remove(k);
                    }
                    None => return false,
                }
            }
        }
        true
    }

    fn candidates(&self, pn: &str, nodes: &BTreeMap<NodeId, NodeId>) -> Vec<NodeId> {
        if let Some(h) = self.fixed.get(pn) {
            return vec![h.clone()];
        }
        for (_, a) in self.pat.out(pn) {
            if a.target != pn {
                if let Some(img) = nodes.get(&a.target) {
                    let set: BTreeSet<NodeId> =
                        self.host.inc(img).iter().map(|(_, b)| b.source.clone()).collect();
                    return set.into_iter().collect();
                }
            }
        }
        for (_, a) in self.pat.inc(pn) {
            if a.source != pn {
                if let Some(img) = nodes.get(&a.source) {
                    let set: BTreeSet<NodeId> =
                        self.host.out(img).iter().map(|(_, b)| b.target.clone()).collect();
                    return set.into_iter().collect();
                }
            }
        }
        self.h.nodes().cloned().collect()
    }

    fn nodes(&mut self, depth: usize, nodes: &mut BTreeMap<NodeId, NodeId>, used: &mut BTreeSet<NodeId>) {
        if self.limit.is_some_and(|l| self.out.len() >= l) {
            return;
        }
        if depth == self.order.len() {
            let arcs: Vec<(&ArcId, &Arc)> = self.p.arcs().collect();
            self.arcs(&arcs, 0, nodes, &mut BTreeMap::new(), &mut BTreeSet::new());
            return;
        }
        let pn = self.order[depth].clone();
        let psig = signature(&self.pat, &pn);
        for hn in self.candidates(&pn, nodes) {
            if used.contains(&hn) || !self.h.contains_node(&hn) {
                continue;
            }
            if !self.labels_fit(&pn, &hn)
                || !signature_fits(&psig, &signature(&self.host, &hn), self.mode)
                || !self.arcs_fit(&pn, &hn, nodes)
            {
                continue;
            }
            nodes.insert(pn.clone(), hn.clone());
            used.insert(hn.clone());
            self.nodes(depth + 1, nodes, used);
            used.remove(&hn);
            nodes.remove(&pn);
        }
    }

    fn arcs(
        &mut self,
        arcs: &[(&ArcId, &Arc)],
        k: usize,
        nodes: &BTreeMap<NodeId, NodeId>,
        map: &mut BTreeMap<ArcId, ArcId>,
        used: &mut BTreeSet<ArcId>,
    ) {
        if self.limit.is_some_and(|l| self.out.len() >= l) {
            return;
        }
        if k == arcs.len() {
            self.out.push(Morphism {
                nodes: nodes.clone(),
                arcs: map.clone(),
            });
            return;
        }
        let (id, a) = arcs[k];
        let (hs, ht) = (&nodes[&a.source], &nodes[&a.target]);
        let options: Vec<ArcId> = self
            .host
            .out(hs)
            .iter()
            .filter(|(hid, b)| &b.target == ht && !used.contains(*hid) && arc_compatible(a.label, b.label, self.mode))
            .map(|(hid, _)| (*hid).clone())
            .collect();
        for hid in options {
            map.insert(id.clone(), hid.clone());
            used.insert(hid.clone());
            self.arcs(arcs, k + 1, nodes, map, used);
            used.remove(&hid);
            map.remove(id);
        }
    }
}

/// All injective morphisms `p → h` extending `fixed`, sorted, at most
/// `limit` of them.
pub fn find_monomorphisms<L: Clone + PartialEq>(
    p: &IGraph<L>,
    h: &IGraph<L>,
    mode: LabelMode,
    fixed: &BTreeMap<NodeId, NodeId>,
    limit: Option<usize>,
) -> Vec<Morphism> {
    let fixed_images: BTreeSet<&NodeId> = fixed.values().collect();
    if fixed_images.len() != fixed.len() || fixed.iter().any(|(k, v)| !p.contains_node(k) || !h.contains_node(v)) {
        return Vec::new();
    }
    if p.node_count() > h.node_count() || p.arc_count() > h.arc_count() {
        return Vec::new();
    }
    let mut search = Search {
        p,
        h,
        host: Host::new(h),
        pat: Host::new(p),
        mode,
        order: search_order(p, fixed),
        fixed,
        limit,
        out: Vec::new(),
    };
    search.nodes(0, &mut BTreeMap::new(), &mut BTreeSet::new());
    let mut out = search.out;
    out.sort();
    out
}

/// An isomorphism `a → b` respecting every label exactly, if any.
pub fn find_isomorphism<L: Clone + PartialEq>(a: &IGraph<L>, b: &IGraph<L>) -> Option<Morphism> {
    if a.indices() != b.indices() || a.node_count() != b.node_count() || a.arc_count() != b.arc_count() {
        return None;
    }
    find_monomorphisms(a, b, LabelMode::Exact, &BTreeMap::new(), Some(1)).pop()
}

pub fn are_isomorphic<L: Clone + PartialEq>(a: &IGraph<L>, b: &IGraph<L>) -> bool {
    find_isomorphism(a, b).is_some()
}
