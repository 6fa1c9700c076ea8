//! Versioned JSON documents for graphs, patterns, rules, theories and
//! derivations, plus DOT export.
//!
//! Output is canonical: vertices, edges and boxes sorted by id, struct
//! fields in declaration order, maps in key order. The content hash is the
//! SHA-256 of the compact canonical text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bangbox::GraphPattern;
use crate::concrete::ConcreteGraph;
use crate::derive::{Derivation, MetaRule, Step, StepArgs};
use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::label::VertexLabel;
use crate::rewrite::{Normalized, TraceStep};
use crate::rule::{LabelTheory, Rule, Theory};
use crate::zx::NodeLabel;

pub const FORMAT_VERSION: u32 = 1;

fn doc_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        path: path.into(),
        message: message.into(),
    }
}

fn check_version(path: &str, v: u32) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(doc_err(format!("{path}version"), format!("unsupported version {v}, expected {FORMAT_VERSION}")))
    }
}

/// Canonical pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}

/// Parses JSON, reporting syntax and schema errors by line and column.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        doc_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })
}

/// Hex SHA-256 of the compact serialisation.
pub fn content_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("documents serialise");
    hex::encode(Sha256::digest(&bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Interior,
    /// Domain or codomain vertex of a concrete graph.
    Boundary,
    Exterior,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct VertexEntry<L> {
    pub id: String,
    pub kind: VertexKind,
    #[serde(default)]
    pub label: L,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxEntry {
    pub name: String,
    pub vertices: Vec<String>,
}

/// A graph, e-graph, graph pattern or concrete graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct GraphDocument<L> {
    pub version: u32,
    pub vertices: Vec<VertexEntry<L>>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_order: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_order: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles: Option<usize>,
    #[serde(default)]
    pub boxes: Vec<BoxEntry>,
    #[serde(default)]
    pub exterior: Vec<String>,
}

impl<L: VertexLabel> GraphDocument<L> {
    fn from_graph(g: &Graph<L>, kind: impl Fn(&str) -> VertexKind) -> Self {
        GraphDocument {
            version: FORMAT_VERSION,
            vertices: g
                .vertices()
                .map(|(id, l)| VertexEntry {
                    id: id.clone(),
                    kind: kind(id),
                    label: l.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(id, e)| EdgeEntry {
                    id: id.clone(),
                    source: e.source.clone(),
                    target: e.target.clone(),
                })
                .collect(),
            dom: None,
            cod: None,
            in_order: None,
            out_order: None,
            circles: None,
            boxes: Vec::new(),
            exterior: Vec::new(),
        }
    }

    pub fn from_pattern(p: &GraphPattern<L>) -> Self {
        let ext = p.egraph().exterior();
        let mut d = Self::from_graph(p.graph(), |v| {
            if ext.contains(v) {
                VertexKind::Exterior
            } else {
                VertexKind::Interior
            }
        });
        d.exterior = ext.iter().cloned().collect();
        d.boxes = p
            .boxes()
            .iter()
            .map(|(b, vs)| BoxEntry {
                name: b.clone(),
                vertices: vs.iter().cloned().collect(),
            })
            .collect();
        d
    }

    pub fn from_concrete(c: &ConcreteGraph<L>) -> Self {
        let mut d = Self::from_graph(&c.graph, |v| {
            if c.is_boundary(v) {
                VertexKind::Boundary
            } else {
                VertexKind::Interior
            }
        });
        d.dom = Some(c.dom.clone());
        d.cod = Some(c.cod.clone());
        d.in_order = Some(c.in_order.clone());
        d.out_order = Some(c.out_order.clone());
        d.circles = Some(c.circles);
        d
    }

    /// Sorts every unordered section.
    pub fn canonical(mut self) -> Self {
        self.vertices.sort_by(|a, b| a.id.cmp(&b.id));
        self.edges.sort_by(|a, b| a.id.cmp(&b.id));
        self.boxes.sort_by(|a, b| a.name.cmp(&b.name));
        for b in &mut self.boxes {
            b.vertices.sort();
        }
        self.exterior.sort();
        self
    }

    /// Referential integrity and kind consistency. `at` prefixes paths.
    pub fn validate_at(&self, at: &str) -> Result<()> {
        check_version(at, self.version)?;
        let mut kinds: BTreeMap<&str, VertexKind> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if kinds.insert(&v.id, v.kind).is_some() {
                return Err(doc_err(format!("{at}vertices[{i}].id"), format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !edge_ids.insert(&e.id) {
                return Err(doc_err(format!("{at}edges[{i}].id"), format!("duplicate edge id {}", e.id)));
            }
            for (field, v) in [("source", &e.source), ("target", &e.target)] {
                if !kinds.contains_key(v.as_str()) {
                    return Err(doc_err(format!("{at}edges[{i}].{field}"), format!("unknown vertex {v}")));
                }
            }
        }
        let declared: BTreeSet<&str> = self.exterior.iter().map(String::as_str).collect();
        let marked: BTreeSet<&str> = kinds
            .iter()
            .filter(|(_, k)| **k == VertexKind::Exterior)
            .map(|(v, _)| *v)
            .collect();
        if declared != marked {
            return Err(doc_err(
                format!("{at}exterior"),
                "exterior names must be exactly the vertices of kind exterior",
            ));
        }
        let has_boundary = kinds.values().any(|k| *k == VertexKind::Boundary);
        match (&self.dom, &self.cod) {
            (Some(dom), Some(cod)) => {
                let mut seen = BTreeSet::new();
                for (field, list) in [("dom", dom), ("cod", cod)] {
                    for (i, v) in list.iter().enumerate() {
                        if kinds.get(v.as_str()) != Some(&VertexKind::Boundary) {
                            return Err(doc_err(format!("{at}{field}[{i}]"), format!("{v} is not a boundary vertex")));
                        }
                        if !seen.insert(v) {
                            return Err(doc_err(format!("{at}{field}[{i}]"), format!("{v} listed twice")));
                        }
                    }
                }
                if let Some(v) = kinds
                    .iter()
                    .find(|(v, k)| **k == VertexKind::Boundary && !seen.contains(&v.to_string()))
                {
                    return Err(doc_err(format!("{at}vertices"), format!("boundary vertex {} is in neither dom nor cod", v.0)));
                }
                if !self.exterior.is_empty() || !self.boxes.is_empty() {
                    return Err(doc_err(format!("{at}dom"), "concrete graphs carry no exterior vertices or boxes"));
                }
            }
            (None, None) if has_boundary => {
                return Err(doc_err(format!("{at}vertices"), "boundary vertices need dom and cod"));
            }
            (None, None) => {}
            _ => return Err(doc_err(format!("{at}dom"), "dom and cod go together")),
        }
        for (field, orders) in [("in_order", &self.in_order), ("out_order", &self.out_order)] {
            for (v, es) in orders.iter().flatten() {
                if !kinds.contains_key(v.as_str()) {
                    return Err(doc_err(format!("{at}{field}.{v}"), format!("unknown vertex {v}")));
                }
                if let Some(e) = es.iter().find(|e| !edge_ids.contains(e)) {
                    return Err(doc_err(format!("{at}{field}.{v}"), format!("unknown edge {e}")));
                }
            }
        }
        let mut names = BTreeSet::new();
        for (i, b) in self.boxes.iter().enumerate() {
            if !names.insert(&b.name) {
                return Err(doc_err(format!("{at}boxes[{i}].name"), format!("duplicate box {}", b.name)));
            }
            if let Some(v) = b.vertices.iter().find(|v| !kinds.contains_key(v.as_str())) {
                return Err(doc_err(format!("{at}boxes[{i}].vertices"), format!("unknown vertex {v}")));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_at("")
    }

    fn graph(&self, at: &str) -> Result<Graph<L>> {
        self.validate_at(at)?;
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.id.clone(), v.label.clone())?;
        }
        for e in &self.edges {
            g.add_edge(e.id.clone(), e.source.clone(), e.target.clone())?;
        }
        Ok(g)
    }

    /// The document as a graph pattern; boundary vertices become exterior
    /// vertices with the same names.
    pub fn to_pattern_at(&self, at: &str) -> Result<GraphPattern<L>> {
        let g = self.graph(at)?;
        let ext: BTreeSet<String> = self
            .vertices
            .iter()
            .filter(|v| v.kind != VertexKind::Interior)
            .map(|v| v.id.clone())
            .collect();
        let boxes = self
            .boxes
            .iter()
            .map(|b| (b.name.clone(), b.vertices.iter().cloned().collect()))
            .collect();
        let eg = EGraph::new(g, ext).map_err(|e| doc_err(format!("{at}exterior"), e.to_string()))?;
        GraphPattern::new(eg, boxes).map_err(|e| doc_err(format!("{at}boxes"), e.to_string()))
    }

    pub fn to_pattern(&self) -> Result<GraphPattern<L>> {
        self.to_pattern_at("")
    }

    pub fn to_concrete(&self) -> Result<ConcreteGraph<L>> {
        let g = self.graph("")?;
        let (Some(dom), Some(cod)) = (&self.dom, &self.cod) else {
            return Err(doc_err("dom", "not a concrete graph"));
        };
        let mut c = match (&self.in_order, &self.out_order) {
            (Some(i), Some(o)) => ConcreteGraph::with_orders(g, dom.clone(), cod.clone(), i.clone(), o.clone()),
            _ => ConcreteGraph::new(g, dom.clone(), cod.clone()),
        }
        .map_err(|e| doc_err("dom", e.to_string()))?;
        c.circles = self.circles.unwrap_or(0);
        Ok(c)
    }
}

impl<L: VertexLabel + Serialize> GraphDocument<L> {
    pub fn to_json(&self) -> String {
        to_json(&self.clone().canonical())
    }

    pub fn hash(&self) -> String {
        content_hash(&self.clone().canonical())
    }
}

pub fn parse_graph<L: VertexLabel + DeserializeOwned>(text: &str) -> Result<GraphDocument<L>> {
    let d: GraphDocument<L> = from_json(text)?;
    d.validate()?;
    Ok(d)
}

/// Canonical text of a graph pattern.
pub fn pattern_json<L: VertexLabel + Serialize>(p: &GraphPattern<L>) -> String {
    GraphDocument::from_pattern(p).to_json()
}

pub fn pattern_hash<L: VertexLabel + Serialize>(p: &GraphPattern<L>) -> String {
    GraphDocument::from_pattern(p).hash()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct RuleDocument<L> {
    pub version: u32,
    pub name: String,
    pub lhs: GraphDocument<L>,
    pub rhs: GraphDocument<L>,
    #[serde(default)]
    pub box_map: BTreeMap<String, String>,
}

impl<L: VertexLabel> RuleDocument<L> {
    pub fn from_rule(r: &Rule<L>) -> Self {
        RuleDocument {
            version: FORMAT_VERSION,
            name: r.name.clone(),
            lhs: GraphDocument::from_pattern(&r.lhs).canonical(),
            rhs: GraphDocument::from_pattern(&r.rhs).canonical(),
            box_map: r.box_map.clone(),
        }
    }

    /// Structural conversion; rule validity is checked separately so that
    /// invalid rules can still be loaded and diagnosed.
    pub fn to_rule_at(&self, at: &str) -> Result<Rule<L>> {
        check_version(at, self.version)?;
        Ok(Rule::new(
            self.name.clone(),
            self.lhs.to_pattern_at(&format!("{at}lhs."))?,
            self.rhs.to_pattern_at(&format!("{at}rhs."))?,
            self.box_map.clone(),
        ))
    }

    pub fn to_rule(&self) -> Result<Rule<L>> {
        self.to_rule_at("")
    }
}

/// A named set of axioms and lemmas over one label model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct TheoryBundle<L> {
    pub version: u32,
    pub name: String,
    /// The label model: `zx` or `plain`.
    pub model: String,
    pub axioms: Vec<RuleDocument<L>>,
    #[serde(default)]
    pub lemmas: Vec<RuleDocument<L>>,
}

impl<L: VertexLabel> TheoryBundle<L> {
    pub fn from_theory<T: LabelTheory<Label = L>>(t: &Theory<T>, model: &str) -> Self {
        TheoryBundle {
            version: FORMAT_VERSION,
            name: t.name.clone(),
            model: model.into(),
            axioms: t.axioms.iter().map(RuleDocument::from_rule).collect(),
            lemmas: t.lemmas.iter().map(RuleDocument::from_rule).collect(),
        }
    }

    pub fn to_theory<T: LabelTheory<Label = L>>(&self, model: T) -> Result<Theory<T>> {
        check_version("", self.version)?;
        let conv = |field: &str, rs: &[RuleDocument<L>]| -> Result<Vec<Rule<L>>> {
            rs.iter()
                .enumerate()
                .map(|(i, r)| r.to_rule_at(&format!("{field}[{i}].")))
                .collect()
        };
        Ok(Theory {
            name: self.name.clone(),
            model,
            axioms: conv("axioms", &self.axioms)?,
            lemmas: conv("lemmas", &self.lemmas)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct StepDocument<L> {
    pub tag: MetaRule,
    #[serde(default)]
    pub premises: Vec<usize>,
    pub args: StepArgs,
    pub conclusion: RuleDocument<L>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct DerivationDocument<L> {
    pub version: u32,
    /// Name of the theory the derivation is checked against.
    pub theory: String,
    pub steps: Vec<StepDocument<L>>,
}

impl<L: VertexLabel> DerivationDocument<L> {
    pub fn from_derivation(theory: &str, d: &Derivation<L>) -> Self {
        DerivationDocument {
            version: FORMAT_VERSION,
            theory: theory.into(),
            steps: d
                .steps
                .iter()
                .map(|s| StepDocument {
                    tag: s.tag,
                    premises: s.premises.clone(),
                    args: s.args.clone(),
                    conclusion: RuleDocument::from_rule(&s.conclusion),
                })
                .collect(),
        }
    }

    pub fn to_derivation(&self) -> Result<Derivation<L>> {
        check_version("", self.version)?;
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(Step {
                    tag: s.tag,
                    premises: s.premises.clone(),
                    args: s.args.clone(),
                    conclusion: s.conclusion.to_rule_at(&format!("steps[{i}].conclusion."))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation { steps })
    }
}

/// Output of normalisation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct NormalizeDocument<L> {
    pub version: u32,
    pub graph: GraphDocument<L>,
    pub trace: Vec<TraceStep>,
    pub normal: bool,
}

impl<L: VertexLabel> NormalizeDocument<L> {
    pub fn from_result(n: &Normalized<L>) -> Self {
        NormalizeDocument {
            version: FORMAT_VERSION,
            graph: GraphDocument::from_pattern(&n.graph).canonical(),
            trace: n.trace.clone(),
            normal: n.normal,
        }
    }
}

/// A named family of graphs, e.g. the generators or a chain of examples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
pub struct GraphCollection<L> {
    pub version: u32,
    pub graphs: BTreeMap<String, GraphDocument<L>>,
}

impl<L: VertexLabel> GraphCollection<L> {
    pub fn new(graphs: impl IntoIterator<Item = (String, GraphDocument<L>)>) -> Self {
        GraphCollection {
            version: FORMAT_VERSION,
            graphs: graphs.into_iter().map(|(n, g)| (n, g.canonical())).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_version("", self.version)?;
        for (n, g) in &self.graphs {
            g.validate_at(&format!("graphs.{n}."))?;
        }
        Ok(())
    }

    pub fn pattern(&self, name: &str) -> Result<GraphPattern<L>> {
        self.graphs
            .get(name)
            .ok_or_else(|| doc_err("graphs", format!("no graph named {name}")))?
            .to_pattern_at(&format!("graphs.{name}."))
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text for a pattern. `style` gives each interior label its
/// text and fill colour; exterior vertices are drawn as small points and
/// boxes as dashed clusters.
pub fn to_dot<L>(p: &GraphPattern<L>, style: impl Fn(&L) -> (String, &'static str)) -> String {
    let mut out = String::from("graph G {\n  node [style=filled, fontname=\"Helvetica\"];\n");
    let node = |out: &mut String, v: &str, indent: &str| {
        let l = p.graph().label(v).expect("vertex exists");
        if p.egraph().is_exterior(v) {
            let _ = writeln!(out, "{indent}{} [shape=point, width=0.08, xlabel={}];", dot_id(v), dot_id(v));
        } else {
            let (text, colour) = style(l);
            let _ = writeln!(out, "{indent}{} [shape=circle, label={}, fillcolor={}];", dot_id(v), dot_id(&text), dot_id(colour));
        }
    };
    for (i, (b, vs)) in p.boxes().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label={};\n    style=dashed;", dot_id(&format!("!{b}")));
        for v in vs {
            node(&mut out, v, "    ");
        }
        out.push_str("  }\n");
    }
    let boxed = p.boxed_vertices();
    for v in p.graph().vertex_ids() {
        if !boxed.contains(v) {
            node(&mut out, v, "  ");
        }
    }
    for (id, e) in p.graph().edges() {
        let _ = writeln!(out, "  {} -- {} [id={}];", dot_id(&e.source), dot_id(&e.target), dot_id(id));
    }
    out.push_str("}\n");
    out
}

/// ZX colouring: green Z spiders, red X spiders, yellow Hadamards.
pub fn zx_style(l: &NodeLabel) -> (String, &'static str) {
    match l {
        NodeLabel::Z(a) => (if a.is_zero() { String::new() } else { a.to_string() }, "green"),
        NodeLabel::X(a) => (if a.is_zero() { String::new() } else { a.to_string() }, "red"),
        NodeLabel::H => ("H".into(), "yellow"),
        NodeLabel::Wire => (String::new(), "white"),
    }
}

/// Plain labels are shown as text on a grey fill.
pub fn plain_style(l: &String) -> (String, &'static str) {
    (l.clone(), "lightgrey")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zx::axioms::{qft_initial, spider_rule};
    use crate::zx::generators::delta;
    use crate::zx::Colour;
    use crate::rule::validate_rule;

    #[test]
    fn empty_graph_round_trips() {
        let p: GraphPattern<NodeLabel> = GraphPattern::plain(EGraph::empty());
        let text = pattern_json(&p);
        let back = parse_graph::<NodeLabel>(&text).unwrap().to_pattern().unwrap();
        assert_eq!(back, p);
        assert_eq!(pattern_json(&back), text);
    }

    #[test]
    fn spider_rule_round_trips_and_validates() {
        let r = spider_rule(Colour::Z).unwrap();
        let text = to_json(&RuleDocument::from_rule(&r));
        let doc: RuleDocument<NodeLabel> = from_json(&text).unwrap();
        let back = doc.to_rule().unwrap();
        assert_eq!(back, r);
        assert!(validate_rule(&back).is_empty());
        assert_eq!(to_json(&RuleDocument::from_rule(&back)), text);
    }

    #[test]
    fn concrete_round_trip() {
        let d = delta(Colour::X);
        let doc = GraphDocument::from_concrete(&d);
        let back = parse_graph::<NodeLabel>(&doc.to_json()).unwrap().to_concrete().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn qft_hash_is_stable() {
        let p = qft_initial().unwrap();
        let reparsed = parse_graph::<NodeLabel>(&pattern_json(&p)).unwrap().to_pattern().unwrap();
        assert_eq!(pattern_hash(&p), pattern_hash(&reparsed));
        assert_eq!(pattern_hash(&p).len(), 64);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = r#"{"version":1,"vertices":[{"id":"a","kind":"interior"}],
            "edges":[{"id":"e","source":"a","target":"zz"}]}"#;
        let err = parse_graph::<NodeLabel>(bad).unwrap_err();
        assert!(err.to_string().contains("edges[0].target"), "{err}");
        let syntax = parse_graph::<NodeLabel>("{\n\"version\": 1,\n\"vertices\": 3}").unwrap_err();
        assert!(syntax.to_string().contains("line 3"), "{syntax}");
        let unknown = parse_graph::<NodeLabel>(r#"{"version":1,"vertices":[],"edges":[],"colour":1}"#).unwrap_err();
        assert!(unknown.to_string().contains("colour"), "{unknown}");
        let version = parse_graph::<NodeLabel>(r#"{"version":7,"vertices":[],"edges":[]}"#).unwrap_err();
        assert!(version.to_string().contains("version"), "{version}");
    }

    #[test]
    fn dot_uses_zx_colours() {
        let p = qft_initial().unwrap();
        let dot = to_dot(&p, zx_style);
        assert!(dot.contains("green") && dot.contains("red") && dot.contains("yellow"));
        assert!(dot.starts_with("graph G {"));
    }
}
