//! Embedded generalized maps as partially labelled graphs.
//!
//! A G-map is a graph whose arcs carry labels `a0 … an` and whose nodes
//! carry one optional value per embedding. Rules `L ⊇ K ⊆ R` rewrite such
//! graphs by double pushout; rule schemes compute right-hand labels from
//! terms over the match and are completed to whole orbits before use.

pub mod bundled;
pub mod consistency;
pub mod error;
pub mod generate;
pub mod gmap;
pub mod graph;
pub mod io;
pub mod report;
pub mod rewrite;
pub mod scheme;
pub mod svg;
pub mod value;

pub use error::{Error, Result};
pub use gmap::{GMap, GMapSpec, OrbitType};
pub use graph::{ArcLabel, IGraph, Morphism, NodeId};
pub use report::Report;
pub use rewrite::{apply, Derivation, Match, Rule};
pub use value::{Sort, Value};
