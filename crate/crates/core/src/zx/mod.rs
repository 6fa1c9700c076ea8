//! The ZX calculus: angle expressions, vertex labels, generators, the
//! axiom set and a tensor semantics used to check it.

pub mod angle;
pub mod axioms;
pub mod generators;
pub mod label;
pub mod semantics;

pub use angle::{match_angle, AngleExpr, AngleSubstitution};
pub use label::{Colour, NodeLabel, Zx};
