//! The shipped example documents, built in code. The files under
//! `corpus/` are these values serialised; a test keeps them in sync.

use std::collections::{BTreeMap, BTreeSet};

use crate::bangbox::GraphPattern;
use crate::egraph::EGraph;
use crate::error::Result;
use crate::graph::Graph;
use crate::derive::Derivation;
use crate::io::{to_json, DerivationDocument, GraphCollection, GraphDocument, RuleDocument, TheoryBundle};
use crate::rule::{Plain, Rule, Theory};
use crate::zx::axioms::{pattern, qft_final, qft_initial, spider_rule, theory};
use crate::zx::generators::{generators, spider};
use crate::zx::{AngleExpr, Colour, NodeLabel};

/// A pattern with `String` labels; unlisted vertices get the empty label.
pub fn plain_pattern(
    vertices: &[(&str, &str)],
    exterior: &[&str],
    edges: &[(&str, &str, &str)],
    boxes: &[(&str, &[&str])],
) -> Result<GraphPattern<String>> {
    let mut g = Graph::new();
    for (v, l) in vertices {
        g.add_vertex(*v, l.to_string())?;
    }
    for x in exterior {
        g.add_vertex(*x, String::new())?;
    }
    for (e, s, t) in edges {
        g.add_edge(*e, *s, *t)?;
    }
    let ext: BTreeSet<String> = exterior.iter().map(|s| s.to_string()).collect();
    let boxes: BTreeMap<String, BTreeSet<String>> = boxes
        .iter()
        .map(|(b, m)| (b.to_string(), m.iter().map(|s| s.to_string()).collect()))
        .collect();
    GraphPattern::new(EGraph::new(g, ext)?, boxes)
}

/// The !-box chain: a star with two boxed leaves, then copy the first box
/// twice, drop the new copy, and merge the two remaining boxes.
pub fn fig4_chain() -> Result<Vec<(String, GraphPattern<String>)>> {
    let c = ("c", "node");
    let g1 = plain_pattern(
        &[c, ("a", "leaf"), ("b", "leaf")],
        &[],
        &[("ea", "c", "a"), ("eb", "c", "b")],
        &[("i0", &["a"]), ("i1", &["b"])],
    )?;
    let three = [c, ("a", "leaf"), ("a#1", "leaf"), ("b", "leaf")];
    let edges = [("ea", "c", "a"), ("ea#1", "c", "a#1"), ("eb", "c", "b")];
    let g2 = plain_pattern(&three, &[], &edges, &[("i0", &["a"]), ("i0#1", &["a#1"]), ("i1", &["b"])])?;
    let g3 = plain_pattern(&three, &[], &edges, &[("i0", &["a"]), ("i1", &["b"])])?;
    let g4 = plain_pattern(&three, &[], &edges, &[("i0", &["a", "b"])])?;
    Ok(vec![
        ("g1".into(), g1),
        ("g2".into(), g2),
        ("g3".into(), g3),
        ("g4".into(), g4),
    ])
}

/// An e-graph whose exterior vertex has two edges, and a host where those
/// edges meet at an interior vertex with one more edge.
pub fn fig2_pair() -> Result<Vec<(String, GraphPattern<String>)>> {
    let g = plain_pattern(
        &[("u", "node"), ("v", "node")],
        &["x"],
        &[("e1", "u", "x"), ("e2", "v", "x")],
        &[],
    )?;
    let h = plain_pattern(
        &[("u'", "node"), ("v'", "node"), ("w'", "node")],
        &["z"],
        &[("f1", "u'", "w'"), ("f2", "v'", "w'"), ("f3", "w'", "z")],
        &[],
    )?;
    Ok(vec![("g".into(), g), ("h".into(), h)])
}

/// Merging two adjacent unlabelled-colour nodes, each with a boxed fan.
pub fn plain_theory() -> Result<Theory<Plain<String>>> {
    let lhs = plain_pattern(
        &[("u", "node"), ("v", "node")],
        &["a", "b"],
        &[("e", "u", "v"), ("ea", "u", "a"), ("eb", "v", "b")],
        &[("i", &["a"]), ("j", &["b"])],
    )?;
    let rhs = plain_pattern(
        &[("w", "node")],
        &["a", "b"],
        &[("ea", "w", "a"), ("eb", "w", "b")],
        &[("i", &["a"]), ("j", &["b"])],
    )?;
    let same = |b: &str| (b.to_string(), b.to_string());
    let merge = Rule::new("merge", lhs, rhs, BTreeMap::from([same("i"), same("j")]));
    Ok(Theory {
        name: "plain".into(),
        model: Plain::new(),
        axioms: vec![merge],
        lemmas: vec![],
    })
}

pub fn two_spiders() -> Result<GraphPattern<NodeLabel>> {
    pattern(
        &[
            ("u", NodeLabel::Z(AngleExpr::frac(1, 4))),
            ("v", NodeLabel::Z(AngleExpr::frac(1, 2))),
        ],
        &["i0", "o0"],
        &[("a", "i0", "u"), ("b", "u", "v"), ("c", "v", "o0")],
        &[],
    )
}

pub fn single_node() -> Result<GraphPattern<NodeLabel>> {
    let d = spider(Colour::Z, AngleExpr::frac(1, 2), 1, 1);
    Ok(GraphPattern::plain(crate::rule::lift_concrete(&d)?))
}

/// `two_spiders = fused`, by one spider step.
pub fn two_spiders_derivation() -> Result<Derivation<NodeLabel>> {
    let zx = theory()?;
    let mut d = Derivation::new();
    let ax = d.trivial(&zx, "spider_z")?;
    let start = d.refl("two_spiders", two_spiders()?)?;
    d.subst(&zx.model, start, ax, 0)?;
    Ok(d)
}

/// Every corpus file as `(name, canonical text)`.
pub fn files() -> Result<Vec<(String, String)>> {
    let zx = theory()?;
    let gens = GraphCollection::new(
        generators()
            .into_iter()
            .map(|(n, d)| (n, GraphDocument::from_concrete(&d))),
    );
    let collection = |gs: Vec<(String, GraphPattern<String>)>| {
        to_json(&GraphCollection::new(
            gs.into_iter().map(|(n, g)| (n, GraphDocument::from_pattern(&g))),
        ))
    };
    let graph = |g: &GraphPattern<NodeLabel>| GraphDocument::from_pattern(g).to_json();
    Ok(vec![
        ("generators.json".into(), to_json(&gens)),
        ("zx.theory.json".into(), to_json(&TheoryBundle::from_theory(&zx, "zx"))),
        ("plain.theory.json".into(), to_json(&TheoryBundle::from_theory(&plain_theory()?, "plain"))),
        ("spider.rule.json".into(), to_json(&RuleDocument::from_rule(&spider_rule(Colour::Z)?))),
        ("fig4.json".into(), collection(fig4_chain()?)),
        ("fig2.json".into(), collection(fig2_pair()?)),
        ("qft_10.graph.json".into(), graph(&qft_initial()?)),
        ("qft_final.graph.json".into(), graph(&qft_final()?)),
        ("two_spiders.graph.json".into(), graph(&two_spiders()?)),
        ("single_node.graph.json".into(), graph(&single_node()?)),
        (
            "two_spiders.derivation.json".into(),
            to_json(&DerivationDocument::from_derivation("zx", &two_spiders_derivation()?)),
        ),
    ])
}
