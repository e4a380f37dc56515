//! Documents shipped with the library: the house G-map, the vertex
//! insertion rules and the bundled rule schemes.

use crate::gmap::GMap;
use crate::io::{parse_gmap, parse_rule_document, RuleDocument};
use crate::rewrite::Rule;
use crate::scheme::RuleScheme;

pub const HOUSE_GMAP: &str = include_str!("../fixtures/house.gmap");
pub const VERTEX_GMAP: &str = include_str!("../fixtures/vertex.gmap");
pub const EMPTY_GMAP: &str = include_str!("../fixtures/empty.gmap");

pub const INSERT_VERTEX_RULE: &str = include_str!("../fixtures/insert-vertex.rule");
pub const INCOMPLETE_REDEFINITION_RULE: &str = include_str!("../fixtures/incomplete-redefinition.rule");
pub const INCONSISTENT_VERTEX_RULE: &str = include_str!("../fixtures/inconsistent-vertex.rule");
pub const IDENTITY_RULE: &str = include_str!("../fixtures/identity.rule");
pub const SPLIT_EDGE_SCHEME: &str = include_str!("../fixtures/split-edge.rule");
pub const TRIANGULATE_SCHEME: &str = include_str!("../fixtures/triangulate.rule");
pub const TRANSLATE_SCHEME: &str = include_str!("../fixtures/translate.rule");

pub const GMAP_FILES: &[(&str, &str)] = &[
    ("house.gmap", HOUSE_GMAP),
    ("vertex.gmap", VERTEX_GMAP),
    ("empty.gmap", EMPTY_GMAP),
];

pub const RULE_FILES: &[(&str, &str)] = &[
    ("insert-vertex.rule", INSERT_VERTEX_RULE),
    ("incomplete-redefinition.rule", INCOMPLETE_REDEFINITION_RULE),
    ("inconsistent-vertex.rule", INCONSISTENT_VERTEX_RULE),
    ("identity.rule", IDENTITY_RULE),
    ("split-edge.rule", SPLIT_EDGE_SCHEME),
    ("triangulate.rule", TRIANGULATE_SCHEME),
    ("translate.rule", TRANSLATE_SCHEME),
];

fn gmap(text: &str) -> GMap {
    parse_gmap(text).expect("bundled G-map parses")
}

fn rule(text: &str) -> Rule {
    match parse_rule_document(text).expect("bundled rule parses") {
        RuleDocument::Rule { rule, .. } => rule,
        RuleDocument::Scheme { .. } => panic!("expected a concrete rule"),
    }
}

fn scheme(text: &str) -> RuleScheme {
    match parse_rule_document(text).expect("bundled scheme parses") {
        RuleDocument::Scheme { scheme, .. } => scheme,
        RuleDocument::Rule { .. } => panic!("expected a rule scheme"),
    }
}

/// Two faces (a triangle on a square) sharing one edge; 14 darts.
pub fn house() -> GMap {
    gmap(HOUSE_GMAP)
}

/// A lone vertex: two darts sewn by a2.
pub fn vertex() -> GMap {
    gmap(VERTEX_GMAP)
}

/// Inserts a vertex in the middle of the shared house edge.
pub fn insert_vertex_rule() -> Rule {
    rule(INSERT_VERTEX_RULE)
}

/// Moves one vertex without its full orbit.
pub fn incomplete_redefinition_rule() -> Rule {
    rule(INCOMPLETE_REDEFINITION_RULE)
}

/// Inserts a vertex whose darts disagree on the point.
pub fn inconsistent_vertex_rule() -> Rule {
    rule(INCONSISTENT_VERTEX_RULE)
}

pub fn identity_rule() -> Rule {
    rule(IDENTITY_RULE)
}

/// Splits an edge between two faces at its midpoint.
pub fn split_edge() -> RuleScheme {
    scheme(SPLIT_EDGE_SCHEME)
}

/// Fans a triangle around its barycenter; each new face blends the colors
/// on both sides of its outer edge.
pub fn triangulate() -> RuleScheme {
    scheme(TRIANGULATE_SCHEME)
}

/// Moves a vertex by `<1, 2>`.
pub fn translate() -> RuleScheme {
    scheme(TRANSLATE_SCHEME)
}

pub fn schemes() -> Vec<(&'static str, RuleScheme)> {
    vec![("split-edge", split_edge()), ("triangulate", triangulate()), ("translate", translate())]
}
