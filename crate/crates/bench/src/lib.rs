//! Shared fixtures for the benchmarks.

use bangbox::bangbox::GraphPattern;
use bangbox::rule::{lift_concrete, Rule};
use bangbox::zx::axioms::{qft_initial_diagram, theory};
use bangbox::zx::generators::{par, seq, spider};
use bangbox::zx::{AngleExpr, Colour, NodeLabel};

/// A chain of `n` two-legged Z spiders, each pair joined by two parallel
/// wires, with one dangling input and output.
pub fn spider_ladder(n: usize) -> GraphPattern<NodeLabel> {
    let mut parts = vec![spider(Colour::Z, AngleExpr::frac(1, 4), 1, 2)];
    for _ in 1..n.saturating_sub(1) {
        parts.push(spider(Colour::Z, AngleExpr::zero(), 2, 2));
    }
    parts.push(spider(Colour::Z, AngleExpr::frac(1, 4), 2, 1));
    let d = seq(&parts).expect("ladder composes");
    GraphPattern::plain(lift_concrete(&d).expect("ladder lifts"))
}

/// `n` disjoint copies of the two-qubit Fourier transform start graph.
pub fn qft_batch(n: usize) -> GraphPattern<NodeLabel> {
    let d = par(&vec![qft_initial_diagram().expect("qft"); n]);
    GraphPattern::plain(lift_concrete(&d).expect("batch lifts"))
}

/// Every rule of the ZX theory, axioms then lemmas.
pub fn zx_rules() -> Vec<Rule<NodeLabel>> {
    theory().expect("theory").rules().cloned().collect()
}
