//! Hooks the kernel needs from vertex labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

/// A vertex label. The default value labels boundary, exterior and
/// split-introduced vertices. Labels may mention variables, which !-box
/// copying renames and expands.
pub trait VertexLabel: Clone + Default + PartialEq + Debug {
    fn variables(&self) -> BTreeSet<String> {
        BTreeSet::new()
    }

    /// Renames variables; those missing from `map` are kept.
    fn rename_variables(&self, _map: &BTreeMap<String, String>) -> Self {
        self.clone()
    }

    /// Replaces `var` by the sum of `var` and `copies`, or by zero when
    /// `keep` is false and `copies` is empty.
    fn expand_variable(&self, _var: &str, _keep: bool, _copies: &[String]) -> Self {
        self.clone()
    }
}

impl VertexLabel for () {}

impl VertexLabel for String {}
