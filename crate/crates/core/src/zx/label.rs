use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::label::VertexLabel;
use crate::rule::LabelTheory;

use super::angle::{match_angle, AngleExpr, AngleSubstitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Z,
    X,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Z => Colour::X,
            Colour::X => Colour::Z,
        }
    }
}

/// A ZX vertex: a spider of either colour with an angle, a Hadamard node,
/// or a wire point (boundary and exterior vertices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "angle")]
pub enum NodeLabel {
    #[default]
    Wire,
    Z(AngleExpr),
    X(AngleExpr),
    H,
}

impl NodeLabel {
    pub fn spider(c: Colour, angle: AngleExpr) -> Self {
        match c {
            Colour::Z => NodeLabel::Z(angle),
            Colour::X => NodeLabel::X(angle),
        }
    }

    pub fn colour(&self) -> Option<Colour> {
        match self {
            NodeLabel::Z(_) => Some(Colour::Z),
            NodeLabel::X(_) => Some(Colour::X),
            _ => None,
        }
    }

    pub fn angle(&self) -> Option<&AngleExpr> {
        match self {
            NodeLabel::Z(a) | NodeLabel::X(a) => Some(a),
            _ => None,
        }
    }

    /// Swaps Z and X.
    pub fn colour_dual(&self) -> Self {
        match self {
            NodeLabel::Z(a) => NodeLabel::X(a.clone()),
            NodeLabel::X(a) => NodeLabel::Z(a.clone()),
            other => other.clone(),
        }
    }

    fn map_angle(&self, f: impl Fn(&AngleExpr) -> AngleExpr) -> Self {
        match self {
            NodeLabel::Z(a) => NodeLabel::Z(f(a)),
            NodeLabel::X(a) => NodeLabel::X(f(a)),
            other => other.clone(),
        }
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Wire => write!(f, "wire"),
            NodeLabel::Z(a) => write!(f, "Z({a})"),
            NodeLabel::X(a) => write!(f, "X({a})"),
            NodeLabel::H => write!(f, "H"),
        }
    }
}

impl VertexLabel for NodeLabel {
    fn variables(&self) -> BTreeSet<String> {
        self.angle()
            .map(|a| a.coefficients().keys().cloned().collect())
            .unwrap_or_default()
    }

    fn rename_variables(&self, map: &BTreeMap<String, String>) -> Self {
        self.map_angle(|a| a.rename(map))
    }

    fn expand_variable(&self, var: &str, keep: bool, copies: &[String]) -> Self {
        self.map_angle(|a| a.expand(var, keep, copies))
    }
}

/// The ZX label model: undirected matching, angles matched by
/// [`match_angle`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Zx;

impl LabelTheory for Zx {
    type Label = NodeLabel;
    type Subst = AngleSubstitution;

    fn directed(&self) -> bool {
        false
    }

    fn empty_subst(&self) -> AngleSubstitution {
        AngleSubstitution::new()
    }

    fn match_label(
        &self,
        pattern: &NodeLabel,
        target: &NodeLabel,
        theta: &AngleSubstitution,
    ) -> Option<AngleSubstitution> {
        match (pattern, target) {
            (NodeLabel::Z(p), NodeLabel::Z(t)) | (NodeLabel::X(p), NodeLabel::X(t)) => {
                match_angle(p, t, theta)
            }
            (NodeLabel::H, NodeLabel::H) | (NodeLabel::Wire, NodeLabel::Wire) => Some(theta.clone()),
            _ => None,
        }
    }

    fn apply_subst(&self, label: &NodeLabel, theta: &AngleSubstitution) -> Result<NodeLabel> {
        Ok(label.map_angle(|a| a.substitute(theta)))
    }
}
