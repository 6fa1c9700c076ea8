//! Graphical equational reasoning for compact closed categories.

pub mod bangbox;
pub mod compose;
pub mod concrete;
pub mod corpus;
pub mod derive;
pub mod egraph;
pub mod label;
pub mod error;
pub mod graph;
pub mod io;
mod iso;
pub mod matcher;
pub mod rewrite;
pub mod rule;
pub mod session;
pub mod zx;

pub use egraph::{e_match, e_matches, EGraph, EMatch, HeartPartition};
pub use error::{Error, Result};
pub use graph::{Edge, End, Graph, GraphMorphism, Matching, OpenGraph, SubgraphSpec};
pub use matcher::{AnyLabel, EqLabel, LabelMatcher, MatchOptions};
