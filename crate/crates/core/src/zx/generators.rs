//! Single-vertex generators and helpers for assembling diagrams from them.

use crate::concrete::{compose, identity, tensor, ConcreteGraph, Sign};
use crate::error::Result;
use crate::graph::Graph;

use super::angle::AngleExpr;
use super::label::{Colour, NodeLabel};

pub type Diagram = ConcreteGraph<NodeLabel>;

fn single(label: NodeLabel, n_in: usize, n_out: usize) -> Diagram {
    let mut g = Graph::new();
    g.add_vertex("v", label).unwrap();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for i in 0..n_in {
        let b = format!("in{i}");
        g.add_vertex(b.clone(), NodeLabel::Wire).unwrap();
        g.add_edge(format!("a{i}"), b.clone(), "v").unwrap();
        dom.push(b);
    }
    for j in 0..n_out {
        let b = format!("out{j}");
        g.add_vertex(b.clone(), NodeLabel::Wire).unwrap();
        g.add_edge(format!("b{j}"), "v", b.clone()).unwrap();
        cod.push(b);
    }
    ConcreteGraph::new(g, dom, cod).expect("generator is well formed")
}

/// A spider with the given arity.
pub fn spider(c: Colour, angle: AngleExpr, n_in: usize, n_out: usize) -> Diagram {
    single(NodeLabel::spider(c, angle), n_in, n_out)
}

/// `δ`: one input, two outputs.
pub fn delta(c: Colour) -> Diagram {
    spider(c, AngleExpr::zero(), 1, 2)
}

/// `ε`: one input, no outputs.
pub fn epsilon(c: Colour) -> Diagram {
    spider(c, AngleExpr::zero(), 1, 0)
}

pub fn delta_dag(c: Colour) -> Diagram {
    spider(c, AngleExpr::zero(), 2, 1)
}

pub fn epsilon_dag(c: Colour) -> Diagram {
    spider(c, AngleExpr::zero(), 0, 1)
}

/// The phase shift `α`: one input, one output.
pub fn phase(c: Colour, angle: AngleExpr) -> Diagram {
    spider(c, angle, 1, 1)
}

/// A state with a phase: no inputs, one output.
pub fn point(c: Colour, angle: AngleExpr) -> Diagram {
    spider(c, angle, 0, 1)
}

pub fn hadamard() -> Diagram {
    single(NodeLabel::H, 1, 1)
}

/// `n` parallel qubit wires.
pub fn wires(n: usize) -> Diagram {
    identity(&vec![Sign::Plus; n])
}

/// Output `j` of the result is input `perm[j]`.
pub fn permutation(perm: &[usize]) -> Diagram {
    let mut g = Graph::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for i in 0..perm.len() {
        g.add_vertex(format!("d{i}"), NodeLabel::Wire).unwrap();
        dom.push(format!("d{i}"));
    }
    for (j, &i) in perm.iter().enumerate() {
        g.add_vertex(format!("c{j}"), NodeLabel::Wire).unwrap();
        g.add_edge(format!("w{j}"), format!("d{i}"), format!("c{j}")).unwrap();
        cod.push(format!("c{j}"));
    }
    ConcreteGraph::new(g, dom, cod).expect("permutation is well formed")
}

pub fn swap() -> Diagram {
    permutation(&[1, 0])
}

/// Sequential composition, first diagram first.
pub fn seq(parts: &[Diagram]) -> Result<Diagram> {
    let mut it = parts.iter();
    let mut acc = it.next().cloned().unwrap_or_else(|| wires(0));
    for p in it {
        acc = compose(&acc, p)?;
    }
    Ok(acc)
}

/// Parallel composition, left to right.
pub fn par(parts: &[Diagram]) -> Diagram {
    parts
        .iter()
        .fold(wires(0), |acc, p| tensor(&acc, p))
}

/// The named generators, both colours, plus `H`. Phase generators carry the
/// variable `α`.
pub fn generators() -> Vec<(String, Diagram)> {
    let mut out = Vec::new();
    for (c, tag) in [(Colour::Z, "z"), (Colour::X, "x")] {
        out.push((format!("delta_{tag}"), delta(c)));
        out.push((format!("epsilon_{tag}"), epsilon(c)));
        out.push((format!("delta_dag_{tag}"), delta_dag(c)));
        out.push((format!("epsilon_dag_{tag}"), epsilon_dag(c)));
        out.push((format!("alpha_{tag}"), phase(c, AngleExpr::var("α"))));
    }
    out.push(("h".into(), hadamard()));
    out
}
