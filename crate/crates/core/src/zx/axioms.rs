//! The ZX axioms as rewrite rules, their colour duals, the spider rules,
//! a handful of derived lemmas and the two-qubit Fourier transform example.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;

use crate::bangbox::GraphPattern;
use crate::egraph::EGraph;
use crate::error::Result;
use crate::graph::Graph;
use crate::rule::{lift_concrete, lift_equation, Rule, Theory};

use super::angle::AngleExpr;
use super::generators::*;
use super::label::{Colour, NodeLabel, Zx};

fn alpha() -> AngleExpr {
    AngleExpr::var("α")
}

fn beta() -> AngleExpr {
    AngleExpr::var("β")
}

fn pi() -> AngleExpr {
    AngleExpr::constant(Rational64::from_integer(1))
}

fn suffix(c: Colour) -> &'static str {
    match c {
        Colour::Z => "z",
        Colour::X => "x",
    }
}

/// The equations in their `Z` form, as pairs of concrete diagrams. `c` is
/// the main colour and `o` the other one.
pub fn equations(c: Colour) -> Result<Vec<(&'static str, Diagram, Diagram)>> {
    let o = c.other();
    let w1 = wires(1);
    let d = delta(c);
    Ok(vec![
        (
            "comonoid_assoc",
            seq(&[d.clone(), par(&[d.clone(), w1.clone()])])?,
            seq(&[d.clone(), par(&[w1.clone(), d.clone()])])?,
        ),
        ("comonoid_unit_left", seq(&[d.clone(), par(&[epsilon(c), w1.clone()])])?, w1.clone()),
        ("comonoid_unit_right", seq(&[d.clone(), par(&[w1.clone(), epsilon(c)])])?, w1.clone()),
        ("comonoid_comm", seq(&[d.clone(), swap()])?, d.clone()),
        ("isometry", seq(&[d.clone(), delta_dag(c)])?, w1.clone()),
        (
            "frobenius",
            seq(&[par(&[d.clone(), w1.clone()]), par(&[w1.clone(), delta_dag(c)])])?,
            seq(&[delta_dag(c), d.clone()])?,
        ),
        (
            "compact",
            seq(&[
                par(&[w1.clone(), seq(&[epsilon_dag(c), d.clone()])?]),
                par(&[seq(&[delta_dag(c), epsilon(c)])?, w1.clone()]),
            ])?,
            w1.clone(),
        ),
        (
            "group_def_left",
            seq(&[par(&[point(c, alpha()), w1.clone()]), delta_dag(c)])?,
            phase(c, alpha()),
        ),
        (
            "group_def_right",
            seq(&[par(&[w1.clone(), point(c, alpha())]), delta_dag(c)])?,
            phase(c, alpha()),
        ),
        (
            "group_add",
            seq(&[phase(c, alpha()), phase(c, beta())])?,
            phase(c, alpha().add(&beta())),
        ),
        (
            "group_comm",
            seq(&[phase(c, alpha()), phase(c, beta())])?,
            seq(&[phase(c, beta()), phase(c, alpha())])?,
        ),
        (
            "alpha_commute_left",
            seq(&[phase(c, alpha()), d.clone()])?,
            seq(&[d.clone(), par(&[phase(c, alpha()), w1.clone()])])?,
        ),
        (
            "alpha_commute_right",
            seq(&[phase(c, alpha()), d.clone()])?,
            seq(&[d.clone(), par(&[w1.clone(), phase(c, alpha())])])?,
        ),
        (
            "bialgebra",
            seq(&[delta_dag(o), d.clone()])?,
            seq(&[
                par(&[d.clone(), d.clone()]),
                permutation(&[0, 2, 1, 3]),
                par(&[delta_dag(o), delta_dag(o)]),
            ])?,
        ),
        (
            "bialgebra_copy",
            seq(&[epsilon_dag(o), d.clone()])?,
            par(&[epsilon_dag(o), epsilon_dag(o)]),
        ),
        (
            "pi_commute",
            seq(&[phase(o, pi()), phase(c, alpha())])?,
            seq(&[phase(c, alpha().neg()), phase(o, pi())])?,
        ),
        (
            "pi_copy",
            seq(&[phase(o, pi()), d.clone()])?,
            seq(&[d.clone(), par(&[phase(o, pi()), phase(o, pi())])])?,
        ),
        ("pi_absorb", seq(&[phase(o, pi()), epsilon(c)])?, epsilon(c)),
        (
            "pi_point_copy",
            seq(&[point(o, pi()), d.clone()])?,
            par(&[point(o, pi()), point(o, pi())]),
        ),
        ("h_involution", seq(&[hadamard(), hadamard()])?, w1.clone()),
        (
            "h_delta",
            seq(&[hadamard(), d.clone(), par(&[hadamard(), hadamard()])])?,
            delta(o),
        ),
        ("h_epsilon", seq(&[hadamard(), epsilon(c)])?, epsilon(o)),
        (
            "h_alpha",
            seq(&[hadamard(), phase(c, alpha()), hadamard()])?,
            phase(o, alpha()),
        ),
    ])
}

/// Swaps the colours of every vertex in a rule.
pub fn colour_dual(r: &Rule<NodeLabel>, name: impl Into<String>) -> Rule<NodeLabel> {
    let f = |_: &str, l: &NodeLabel| l.colour_dual();
    Rule::new(name, r.lhs.map_labels(f), r.rhs.map_labels(f), r.box_map.clone())
}

/// Builds a pattern from vertex, exterior, edge and box lists.
pub fn pattern(
    vertices: &[(&str, NodeLabel)],
    exterior: &[&str],
    edges: &[(&str, &str, &str)],
    boxes: &[(&str, &[&str])],
) -> Result<GraphPattern<NodeLabel>> {
    let mut g = Graph::new();
    for (v, l) in vertices {
        g.add_vertex(*v, l.clone())?;
    }
    for x in exterior {
        g.add_vertex(*x, NodeLabel::Wire)?;
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

fn same_boxes(names: &[&str]) -> BTreeMap<String, String> {
    names.iter().map(|b| (b.to_string(), b.to_string())).collect()
}

/// Spider fusion: two adjacent spiders of one colour, each with a !-boxed
/// fan of legs, merge into one whose angle is the sum.
pub fn spider_rule(c: Colour) -> Result<Rule<NodeLabel>> {
    let lhs = pattern(
        &[("u", NodeLabel::spider(c, alpha())), ("v", NodeLabel::spider(c, beta()))],
        &["a", "b"],
        &[("e", "u", "v"), ("ea", "u", "a"), ("eb", "v", "b")],
        &[("i", &["a"]), ("j", &["b"])],
    )?;
    let rhs = pattern(
        &[("w", NodeLabel::spider(c, alpha().add(&beta())))],
        &["a", "b"],
        &[("ea", "w", "a"), ("eb", "w", "b")],
        &[("i", &["a"]), ("j", &["b"])],
    )?;
    Ok(Rule::new(format!("spider_{}", suffix(c)), lhs, rhs, same_boxes(&["i", "j"])))
}

/// A self-loop on a spider can be removed.
pub fn spider_loop_rule(c: Colour) -> Result<Rule<NodeLabel>> {
    let lhs = pattern(
        &[("u", NodeLabel::spider(c, alpha()))],
        &["a"],
        &[("l", "u", "u"), ("ea", "u", "a")],
        &[("i", &["a"])],
    )?;
    let rhs = pattern(
        &[("u", NodeLabel::spider(c, alpha()))],
        &["a"],
        &[("ea", "u", "a")],
        &[("i", &["a"])],
    )?;
    Ok(Rule::new(format!("spider_loop_{}", suffix(c)), lhs, rhs, same_boxes(&["i"])))
}

/// A zero-phase point of the other colour is copied through a spider.
pub fn copy_rule(c: Colour) -> Result<Rule<NodeLabel>> {
    let o = c.other();
    let lhs = pattern(
        &[
            ("u", NodeLabel::spider(c, alpha())),
            ("w", NodeLabel::spider(o, AngleExpr::zero())),
        ],
        &["a"],
        &[("e", "w", "u"), ("ea", "u", "a")],
        &[("i", &["a"])],
    )?;
    let rhs = pattern(
        &[("x", NodeLabel::spider(o, AngleExpr::zero()))],
        &["a"],
        &[("ea", "x", "a")],
        &[("i", &["a", "x"])],
    )?;
    Ok(Rule::new(format!("copy_{}", suffix(c)), lhs, rhs, same_boxes(&["i"])))
}

/// Every axiom: the equations in both colours, then spider fusion for
/// each colour.
pub fn axioms() -> Result<Vec<Rule<NodeLabel>>> {
    let mut out = Vec::new();
    for (name, l, r) in equations(Colour::Z)? {
        let z = lift_equation(&format!("{name}_z"), &l, &r)?;
        let x = colour_dual(&z, format!("{name}_x"));
        out.push(z);
        out.push(x);
    }
    out.push(spider_rule(Colour::Z)?);
    out.push(spider_rule(Colour::X)?);
    Ok(out)
}

/// Derived rules shipped with the theory and trusted by derivations.
pub fn lemmas() -> Result<Vec<Rule<NodeLabel>>> {
    let mut out = Vec::new();
    for c in [Colour::Z, Colour::X] {
        let s = suffix(c);
        out.push(spider_loop_rule(c)?);
        out.push(lift_equation(
            &format!("identity_{s}"),
            &phase(c, AngleExpr::zero()),
            &wires(1),
        )?);
        out.push(lift_equation(
            &format!("h_point_{s}"),
            &seq(&[point(c, alpha()), hadamard()])?,
            &point(c.other(), alpha()),
        )?);
        out.push(copy_rule(c)?);
    }
    Ok(out)
}

pub fn theory() -> Result<Theory<Zx>> {
    Ok(Theory {
        name: "zx".into(),
        model: Zx,
        axioms: axioms()?,
        lemmas: lemmas()?,
    })
}

/// Spider fusion and loop removal for one colour.
pub fn one_colour_rules(c: Colour) -> Result<Vec<Rule<NodeLabel>>> {
    Ok(vec![spider_rule(c)?, spider_loop_rule(c)?])
}

/// Controlled phase by `θ` (a multiple of π): a phase of `θ/2` on each
/// wire plus a phase gadget of `−θ/2`.
pub fn controlled_phase(theta: Rational64) -> Result<Diagram> {
    let half = AngleExpr::constant(theta / 2);
    let gadget = seq(&[
        par(&[wires(2), point(Colour::Z, half.neg())]),
        spider(Colour::X, AngleExpr::zero(), 3, 0),
    ])?;
    seq(&[
        par(&[
            spider(Colour::Z, half.clone(), 1, 2),
            spider(Colour::Z, half, 1, 2),
        ]),
        permutation(&[0, 2, 1, 3]),
        par(&[wires(2), gadget]),
    ])
}

/// The two-qubit Fourier transform circuit, first qubit most significant.
pub fn qft_circuit() -> Result<Diagram> {
    seq(&[
        par(&[hadamard(), wires(1)]),
        controlled_phase(Rational64::new(1, 2))?,
        par(&[wires(1), hadamard()]),
        swap(),
    ])
}

/// The circuit applied to the basis state `|10⟩`.
pub fn qft_initial_diagram() -> Result<Diagram> {
    seq(&[
        par(&[point(Colour::X, pi()), point(Colour::X, AngleExpr::zero())]),
        qft_circuit()?,
    ])
}

/// `|+⟩ ⊗ |−⟩`, the expected output.
pub fn qft_final_diagram() -> Diagram {
    par(&[point(Colour::Z, AngleExpr::zero()), point(Colour::Z, pi())])
}

pub fn qft_initial() -> Result<GraphPattern<NodeLabel>> {
    Ok(GraphPattern::plain(lift_concrete(&qft_initial_diagram()?)?))
}

pub fn qft_final() -> Result<GraphPattern<NodeLabel>> {
    Ok(GraphPattern::plain(lift_concrete(&qft_final_diagram())?))
}
