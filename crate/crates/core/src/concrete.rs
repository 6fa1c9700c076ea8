//! Concrete graphs: open graphs with an ordered, signed domain and codomain
//! and an order on the inputs and outputs of every vertex. They are the
//! arrows of the free compact closed category.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{fresh_id, Graph, GraphMorphism};

/// Polarity of a boundary vertex: `+` when its edge points into it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// An object: a list of signs. Atom names carry no information beyond
/// position, so they are not stored.
pub type Object = Vec<Sign>;

/// `A*`: every sign flipped, order kept.
pub fn dual_object(a: &[Sign]) -> Object {
    a.iter().map(|s| s.flip()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteGraph<L> {
    pub graph: Graph<L>,
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    /// Incoming edges of each vertex, in order.
    pub in_order: BTreeMap<String, Vec<String>>,
    /// Outgoing edges of each vertex, in order.
    pub out_order: BTreeMap<String, Vec<String>>,
    /// Closed loops with no vertex, produced by composition.
    pub circles: usize,
}

impl<L: Clone + Default> ConcreteGraph<L> {
    /// Builds a concrete graph whose per-vertex orders follow edge-id order.
    pub fn new(graph: Graph<L>, dom: Vec<String>, cod: Vec<String>) -> Result<Self> {
        let mut in_order = BTreeMap::new();
        let mut out_order = BTreeMap::new();
        for v in graph.vertex_ids() {
            in_order.insert(v.clone(), graph.in_edges(v).cloned().collect());
            out_order.insert(v.clone(), graph.out_edges(v).cloned().collect());
        }
        Self::with_orders(graph, dom, cod, in_order, out_order)
    }

    pub fn with_orders(
        graph: Graph<L>,
        dom: Vec<String>,
        cod: Vec<String>,
        in_order: BTreeMap<String, Vec<String>>,
        out_order: BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        let c = ConcreteGraph {
            graph,
            dom,
            cod,
            in_order,
            out_order,
            circles: 0,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn empty() -> Self {
        ConcreteGraph {
            graph: Graph::new(),
            dom: vec![],
            cod: vec![],
            in_order: BTreeMap::new(),
            out_order: BTreeMap::new(),
            circles: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for v in self.dom.iter().chain(&self.cod) {
            if !self.graph.has_vertex(v) {
                return Err(Error::NoSuchVertex(v.clone()));
            }
            if !seen.insert(v) {
                return Err(Error::Concrete(format!("{v} listed twice on the boundary")));
            }
            if self.graph.degree(v) != 1 {
                return Err(Error::BoundaryDegree(v.clone(), self.graph.degree(v)));
            }
        }
        for v in self.graph.vertex_ids() {
            let mut ins: Vec<&String> = self.in_order.get(v).into_iter().flatten().collect();
            let mut outs: Vec<&String> = self.out_order.get(v).into_iter().flatten().collect();
            ins.sort();
            outs.sort();
            let want_in: Vec<&String> = self.graph.in_edges(v).collect();
            let want_out: Vec<&String> = self.graph.out_edges(v).collect();
            if ins != want_in || outs != want_out {
                return Err(Error::Concrete(format!(
                    "edge orders at {v} are not bijections onto its edges"
                )));
            }
        }
        Ok(())
    }

    pub fn is_boundary(&self, v: &str) -> bool {
        self.dom.iter().chain(&self.cod).any(|b| b == v)
    }

    pub fn interior(&self) -> impl Iterator<Item = &String> {
        self.graph.vertex_ids().filter(|v| !self.is_boundary(v))
    }

    fn sign_of(&self, v: &str) -> Sign {
        if self.graph.in_edges(v).next().is_some() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn dom_signs(&self) -> Object {
        self.dom.iter().map(|v| self.sign_of(v)).collect()
    }

    pub fn cod_signs(&self) -> Object {
        self.cod.iter().map(|v| self.sign_of(v)).collect()
    }

    /// The object `A` with `self: A → B`; the domain vertices carry `A*`.
    pub fn source_object(&self) -> Object {
        dual_object(&self.dom_signs())
    }

    /// The object `B` with `self: A → B`.
    pub fn target_object(&self) -> Object {
        self.cod_signs()
    }

    /// The same arrow with every interior vertex relabelled.
    pub fn map_labels(&self, mut f: impl FnMut(&str, &L) -> L) -> Self {
        ConcreteGraph {
            graph: self.graph.map_labels(|v, l| f(v, l)),
            ..self.clone()
        }
    }

    fn renamed_apart(&self, avoid: &Self) -> Self {
        let mut vmap = BTreeMap::new();
        let mut emap = BTreeMap::new();
        for v in self.graph.vertex_ids() {
            if avoid.graph.has_vertex(v) {
                let id = fresh_id(v, |c| {
                    avoid.graph.has_vertex(c)
                        || self.graph.has_vertex(c)
                        || vmap.values().any(|x: &String| x == c)
                });
                vmap.insert(v.clone(), id);
            }
        }
        for e in self.graph.edge_ids() {
            if avoid.graph.has_edge(e) {
                let id = fresh_id(e, |c| {
                    avoid.graph.has_edge(c)
                        || self.graph.has_edge(c)
                        || emap.values().any(|x: &String| x == c)
                });
                emap.insert(e.clone(), id);
            }
        }
        let rv = |v: &String| vmap.get(v).cloned().unwrap_or_else(|| v.clone());
        let re = |e: &String| emap.get(e).cloned().unwrap_or_else(|| e.clone());
        let order = |m: &BTreeMap<String, Vec<String>>| {
            m.iter()
                .map(|(v, es)| (rv(v), es.iter().map(re).collect()))
                .collect()
        };
        ConcreteGraph {
            graph: self.graph.renamed(&vmap, &emap).expect("renaming is injective"),
            dom: self.dom.iter().map(rv).collect(),
            cod: self.cod.iter().map(rv).collect(),
            in_order: order(&self.in_order),
            out_order: order(&self.out_order),
            circles: self.circles,
        }
    }
}

/// `id_A`: one edge per atom; dom carries `A*`, cod carries `A`.
pub fn identity<L: Clone + Default>(a: &[Sign]) -> ConcreteGraph<L> {
    let mut g = Graph::new();
    let mut dom = vec![];
    let mut cod = vec![];
    for (i, s) in a.iter().enumerate() {
        let (d, c, e) = (format!("d{i}"), format!("c{i}"), format!("w{i}"));
        g.add_vertex(d.clone(), L::default()).unwrap();
        g.add_vertex(c.clone(), L::default()).unwrap();
        match s {
            Sign::Plus => g.add_edge(e, d.clone(), c.clone()).unwrap(),
            Sign::Minus => g.add_edge(e, c.clone(), d.clone()).unwrap(),
        }
        dom.push(d);
        cod.push(c);
    }
    ConcreteGraph::new(g, dom, cod).expect("identity is well formed")
}

/// `d_A : I → A* ⊗ A`.
pub fn unit<L: Clone + Default>(a: &[Sign]) -> ConcreteGraph<L> {
    let id = identity::<L>(a);
    let mut cod = id.dom.clone();
    cod.extend(id.cod.iter().cloned());
    ConcreteGraph {
        dom: vec![],
        cod,
        ..id
    }
}

/// `e_A : A ⊗ A* → I`.
pub fn counit<L: Clone + Default>(a: &[Sign]) -> ConcreteGraph<L> {
    // The domain vertices carry (A ⊗ A*)* = A* + A.
    let id = identity::<L>(a);
    let mut dom = id.dom.clone();
    dom.extend(id.cod.iter().cloned());
    ConcreteGraph {
        dom,
        cod: vec![],
        ..id
    }
}

/// `f ⊗ g`: disjoint union, boundaries concatenated.
pub fn tensor<L: Clone + Default>(f: &ConcreteGraph<L>, g: &ConcreteGraph<L>) -> ConcreteGraph<L> {
    let g = g.renamed_apart(f);
    let mut graph = f.graph.clone();
    for (v, l) in g.graph.vertices() {
        graph.add_vertex(v.clone(), l.clone()).unwrap();
    }
    for (e, edge) in g.graph.edges() {
        graph
            .add_edge(e.clone(), edge.source.clone(), edge.target.clone())
            .unwrap();
    }
    let mut in_order = f.in_order.clone();
    in_order.extend(g.in_order.clone());
    let mut out_order = f.out_order.clone();
    out_order.extend(g.out_order.clone());
    ConcreteGraph {
        graph,
        dom: f.dom.iter().chain(&g.dom).cloned().collect(),
        cod: f.cod.iter().chain(&g.cod).cloned().collect(),
        in_order,
        out_order,
        circles: f.circles + g.circles,
    }
}

/// `g ∘ f`: the codomain of `f` is glued to the domain of `g` and both sets
/// of boundary vertices are erased, joining their edges.
pub fn compose<L: Clone + Default>(
    f: &ConcreteGraph<L>,
    g: &ConcreteGraph<L>,
) -> Result<ConcreteGraph<L>> {
    if f.target_object() != g.source_object() {
        return Err(Error::CompositionType(format!(
            "codomain {:?} does not match domain {:?}",
            f.target_object(),
            g.source_object()
        )));
    }
    let g = g.renamed_apart(f);
    let mut u = tensor_raw(f, &g);
    // Glue each pair into one junction vertex with one edge in and one out.
    let mut junctions = Vec::new();
    for (c, d) in f.cod.iter().zip(&g.dom) {
        let d_edge = u.graph.in_edges(d).chain(u.graph.out_edges(d)).next().unwrap().clone();
        let e = u.graph.remove_edge(&d_edge).unwrap();
        let (s, t) = if e.source == *d {
            (c.clone(), e.target)
        } else {
            (e.source, c.clone())
        };
        u.graph.add_edge(d_edge.clone(), s, t).unwrap();
        u.graph.remove_vertex(d).unwrap();
        u.in_order.remove(d);
        u.out_order.remove(d);
        junctions.push(c.clone());
    }
    // Smooth junctions away.
    for j in junctions {
        let a = u.graph.in_edges(&j).next().cloned();
        let b = u.graph.out_edges(&j).next().cloned();
        let (a, b) = (a.expect("junction input"), b.expect("junction output"));
        u.in_order.remove(&j);
        u.out_order.remove(&j);
        if a == b {
            u.graph.remove_vertex(&j).unwrap();
            u.circles += 1;
            continue;
        }
        let ea = u.graph.remove_edge(&a).unwrap();
        let eb = u.graph.remove_edge(&b).unwrap();
        u.graph.remove_vertex(&j).unwrap();
        u.graph.add_edge(a.clone(), ea.source, eb.target.clone()).unwrap();
        // `a` now enters where `b` used to.
        if let Some(order) = u.in_order.get_mut(&eb.target) {
            for x in order.iter_mut() {
                if *x == b {
                    *x = a.clone();
                }
            }
        }
    }
    u.dom = f.dom.clone();
    u.cod = g.cod.clone();
    u.validate()?;
    Ok(u)
}

fn tensor_raw<L: Clone + Default>(f: &ConcreteGraph<L>, g: &ConcreteGraph<L>) -> ConcreteGraph<L> {
    let mut graph = f.graph.clone();
    for (v, l) in g.graph.vertices() {
        graph.add_vertex(v.clone(), l.clone()).unwrap();
    }
    for (e, edge) in g.graph.edges() {
        graph
            .add_edge(e.clone(), edge.source.clone(), edge.target.clone())
            .unwrap();
    }
    let mut in_order = f.in_order.clone();
    in_order.extend(g.in_order.clone());
    let mut out_order = f.out_order.clone();
    out_order.extend(g.out_order.clone());
    ConcreteGraph {
        graph,
        dom: vec![],
        cod: vec![],
        in_order,
        out_order,
        circles: f.circles + g.circles,
    }
}

/// `⌜f⌝ = (id_{A*} ⊗ f) ∘ d_A : I → A* ⊗ B`.
pub fn name<L: Clone + Default>(f: &ConcreteGraph<L>) -> ConcreteGraph<L> {
    let a = f.source_object();
    let step = tensor(&identity(&dual_object(&a)), f);
    compose(&unit(&a), &step).expect("name is well typed")
}

/// `⌞f⌟ = e_B ∘ (f ⊗ id_{B*}) : A ⊗ B* → I`.
pub fn coname<L: Clone + Default>(f: &ConcreteGraph<L>) -> ConcreteGraph<L> {
    let b = f.target_object();
    let step = tensor(f, &identity(&dual_object(&b)));
    compose(&step, &counit(&b)).expect("coname is well typed")
}

/// `f* = (id_{A*} ⊗ e_B) ∘ (id_{A*} ⊗ f ⊗ id_{B*}) ∘ (d_A ⊗ id_{B*}) : B* → A*`.
pub fn dual<L: Clone + Default>(f: &ConcreteGraph<L>) -> ConcreteGraph<L> {
    let a = f.source_object();
    let b = f.target_object();
    let a_star = dual_object(&a);
    let b_star = dual_object(&b);
    let first = tensor(&unit(&a), &identity(&b_star));
    let middle = tensor(&tensor(&identity(&a_star), f), &identity(&b_star));
    let last = tensor(&identity(&a_star), &counit(&b));
    let x = compose(&first, &middle).expect("dual is well typed");
    compose(&x, &last).expect("dual is well typed")
}

/// Isomorphism of concrete graphs: a bijection fixing dom and cod
/// positionally, respecting labels and every per-vertex edge order, with the
/// same number of circles.
pub fn concrete_iso<L, M>(
    f: &ConcreteGraph<L>,
    g: &ConcreteGraph<M>,
    same: &dyn Fn(&L, &M) -> bool,
) -> Option<GraphMorphism> {
    if f.graph.vertex_count() != g.graph.vertex_count()
        || f.graph.edge_count() != g.graph.edge_count()
        || f.dom.len() != g.dom.len()
        || f.cod.len() != g.cod.len()
        || f.circles != g.circles
    {
        return None;
    }
    let mut iso = Propagation {
        f,
        g,
        same,
        vmap: BTreeMap::new(),
        vused: BTreeSet::new(),
        emap: BTreeMap::new(),
    };
    for (a, b) in f.dom.iter().zip(&g.dom).chain(f.cod.iter().zip(&g.cod)) {
        if !iso.extend(a, b) {
            return None;
        }
    }
    // Components without boundary: anchor one vertex, propagate.
    for comp in f.graph.components() {
        let anchor = comp.iter().next().unwrap();
        if iso.vmap.contains_key(anchor) {
            continue;
        }
        let candidates: Vec<String> = g
            .graph
            .vertex_ids()
            .filter(|w| !iso.vused.contains(*w))
            .cloned()
            .collect();
        let mut found = false;
        for w in candidates {
            let snapshot = (iso.vmap.clone(), iso.vused.clone(), iso.emap.clone());
            if iso.extend(anchor, &w) {
                found = true;
                break;
            }
            (iso.vmap, iso.vused, iso.emap) = snapshot;
        }
        if !found {
            return None;
        }
    }
    Some(GraphMorphism {
        vertex_map: iso.vmap,
        edge_map: iso.emap,
    })
}

struct Propagation<'a, L, M> {
    f: &'a ConcreteGraph<L>,
    g: &'a ConcreteGraph<M>,
    same: &'a dyn Fn(&L, &M) -> bool,
    vmap: BTreeMap<String, String>,
    vused: BTreeSet<String>,
    emap: BTreeMap<String, String>,
}

impl<L, M> Propagation<'_, L, M> {
    fn extend(&mut self, v: &str, w: &str) -> bool {
        let mut stack = vec![(v.to_string(), w.to_string())];
        while let Some((v, w)) = stack.pop() {
            match self.vmap.get(&v) {
                Some(x) if *x == w => continue,
                Some(_) => return false,
                None => {}
            }
            if self.vused.contains(&w)
                || self.f.is_boundary_vertex(&v) != self.g.is_boundary_vertex(&w)
                || !(self.same)(self.f.graph.label(&v).unwrap(), self.g.graph.label(&w).unwrap())
            {
                return false;
            }
            let empty = Vec::new();
            let fin = self.f.in_order.get(&v).unwrap_or(&empty);
            let gin = self.g.in_order.get(&w).unwrap_or(&empty);
            let fout = self.f.out_order.get(&v).unwrap_or(&empty);
            let gout = self.g.out_order.get(&w).unwrap_or(&empty);
            if fin.len() != gin.len() || fout.len() != gout.len() {
                return false;
            }
            self.vmap.insert(v.clone(), w.clone());
            self.vused.insert(w.clone());
            for (a, b) in fin.iter().zip(gin).chain(fout.iter().zip(gout)) {
                match self.emap.get(a) {
                    Some(x) if x == b => continue,
                    Some(_) => return false,
                    None => {}
                }
                if self.emap.values().any(|x| x == b) {
                    return false;
                }
                self.emap.insert(a.clone(), b.clone());
                let ea = self.f.graph.edge(a).unwrap();
                let eb = self.g.graph.edge(b).unwrap();
                stack.push((ea.source.clone(), eb.source.clone()));
                stack.push((ea.target.clone(), eb.target.clone()));
            }
        }
        true
    }
}

impl<L> ConcreteGraph<L> {
    fn is_boundary_vertex(&self, v: &str) -> bool {
        self.dom.iter().chain(&self.cod).any(|b| b == v)
    }
}

/// Edge types and vertex terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labelling {
    pub edge_types: BTreeMap<String, String>,
    pub vertex_terms: BTreeMap<String, String>,
}

/// Term name → (input types, output types).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub terms: BTreeMap<String, (Vec<String>, Vec<String>)>,
}

/// Every interior vertex carries a term whose type is its ordered input
/// and output edge types.
pub fn check_labelling<L: Clone + Default>(
    gamma: &ConcreteGraph<L>,
    theta: &Labelling,
    signature: &Signature,
) -> bool {
    if gamma.graph.edge_ids().any(|e| !theta.edge_types.contains_key(e)) {
        return false;
    }
    let types = |es: Option<&Vec<String>>| -> Vec<String> {
        es.into_iter()
            .flatten()
            .map(|e| theta.edge_types[e].clone())
            .collect()
    };
    gamma.interior().all(|v| {
        let Some(term) = theta.vertex_terms.get(v) else {
            return false;
        };
        let Some((ins, outs)) = signature.terms.get(term) else {
            return false;
        };
        types(gamma.in_order.get(v)) == *ins && types(gamma.out_order.get(v)) == *outs
    })
}
