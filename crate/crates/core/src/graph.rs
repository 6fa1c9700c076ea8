//! Directed multigraphs, open graphs and the open-subgraph operations that
//! matching is defined over.
//!
//! Vertices and edges carry opaque string ids. Every container is ordered
//! (`BTreeMap`/`BTreeSet`) so iteration, enumeration and serialization are
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::matcher::{self, LabelMatcher, MatchOptions};

/// Source/target of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: String,
    pub target: String,
}

/// Which end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Source,
    Target,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Source => End::Target,
            End::Target => End::Source,
        }
    }
}

/// A finite directed graph `(V, E, s, t)` with a label on every vertex.
/// Parallel edges and self-loops are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<L> {
    vertices: BTreeMap<String, L>,
    edges: BTreeMap<String, Edge>,
}

impl<L> Default for Graph<L> {
    fn default() -> Self {
        Graph {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }
}

/// Returns `base` if unused, otherwise `base.1`, `base.2`, ...
pub fn fresh_id(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut n = 1usize;
    loop {
        let candidate = format!("{base}.{n}");
        if !taken(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

impl<L: Clone> Graph<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, label: L) -> Result<()> {
        let id = id.into();
        if self.vertices.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        self.vertices.insert(id, label);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Result<()> {
        let (id, source, target) = (id.into(), source.into(), target.into());
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        for v in [&source, &target] {
            if !self.vertices.contains_key(v) {
                return Err(Error::NoSuchVertex(v.clone()));
            }
        }
        self.edges.insert(id, Edge { source, target });
        Ok(())
    }

    /// Adds an edge under a fresh id derived from `base`; returns the id used.
    pub fn add_fresh_edge(&mut self, base: &str, source: &str, target: &str) -> Result<String> {
        let id = self.fresh_edge_id(base);
        self.add_edge(id.clone(), source, target)?;
        Ok(id)
    }

    /// Adds a vertex under a fresh id derived from `base`; returns the id used.
    pub fn add_fresh_vertex(&mut self, base: &str, label: L) -> String {
        let id = self.fresh_vertex_id(base);
        self.vertices.insert(id.clone(), label);
        id
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, id: &str) -> Result<L> {
        let label = self
            .vertices
            .remove(id)
            .ok_or_else(|| Error::NoSuchVertex(id.to_string()))?;
        self.edges.retain(|_, e| e.source != id && e.target != id);
        Ok(label)
    }

    pub fn remove_edge(&mut self, id: &str) -> Result<Edge> {
        self.edges
            .remove(id)
            .ok_or_else(|| Error::NoSuchEdge(id.to_string()))
    }

    pub fn set_label(&mut self, id: &str, label: L) -> Result<()> {
        match self.vertices.get_mut(id) {
            Some(l) => {
                *l = label;
                Ok(())
            }
            None => Err(Error::NoSuchVertex(id.to_string())),
        }
    }

    pub fn map_labels<M>(&self, mut f: impl FnMut(&str, &L) -> M) -> Graph<M> {
        Graph {
            vertices: self
                .vertices
                .iter()
                .map(|(k, l)| (k.clone(), f(k, l)))
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Renames vertices and edges; ids missing from the maps are kept.
    pub fn renamed(
        &self,
        vertex: &BTreeMap<String, String>,
        edge: &BTreeMap<String, String>,
    ) -> Result<Graph<L>> {
        let rv = |v: &String| vertex.get(v).cloned().unwrap_or_else(|| v.clone());
        let mut g = Graph::new();
        for (v, l) in &self.vertices {
            g.add_vertex(rv(v), l.clone())?;
        }
        for (id, e) in &self.edges {
            let new_id = edge.get(id).cloned().unwrap_or_else(|| id.clone());
            g.add_edge(new_id, rv(&e.source), rv(&e.target))?;
        }
        Ok(g)
    }
}

impl<L> Graph<L> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&String, &L)> {
        self.vertices.iter()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &String> {
        self.vertices.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&String, &Edge)> {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &String> {
        self.edges.keys()
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edges.contains_key(id)
    }

    pub fn label(&self, id: &str) -> Option<&L> {
        self.vertices.get(id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// `in(v)`: edges whose target is `v`, in id order.
    pub fn in_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a String> + 'a {
        self.edges
            .iter()
            .filter(move |(_, e)| e.target == v)
            .map(|(id, _)| id)
    }

    /// `out(v)`: edges whose source is `v`, in id order.
    pub fn out_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a String> + 'a {
        self.edges
            .iter()
            .filter(move |(_, e)| e.source == v)
            .map(|(id, _)| id)
    }

    /// `|in(v)| + |out(v)|`; a self-loop counts twice.
    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .values()
            .map(|e| (e.source == v) as usize + (e.target == v) as usize)
            .sum()
    }

    /// Edge-ends incident at `v`, ordered by edge id then end.
    pub fn incident_ends(&self, v: &str) -> Vec<(String, End)> {
        let mut out = Vec::new();
        for (id, e) in &self.edges {
            if e.source == v {
                out.push((id.clone(), End::Source));
            }
            if e.target == v {
                out.push((id.clone(), End::Target));
            }
        }
        out
    }

    pub fn fresh_vertex_id(&self, base: &str) -> String {
        fresh_id(base, |c| self.vertices.contains_key(c))
    }

    pub fn fresh_edge_id(&self, base: &str) -> String {
        fresh_id(base, |c| self.edges.contains_key(c))
    }

    /// Connected components (reflexive, symmetric, transitive closure of the
    /// successor relation), each as a vertex set; ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<String>> {
        let ids: Vec<&String> = self.vertices.keys().collect();
        let index: BTreeMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges.values() {
            let a = find(&mut parent, index[e.source.as_str()]);
            let b = find(&mut parent, index[e.target.as_str()]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for (i, v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert((*v).clone());
        }
        groups.into_values().collect()
    }

    /// The vertex set `|v|` of the component containing `v`.
    pub fn component_of(&self, v: &str) -> Result<BTreeSet<String>> {
        if !self.has_vertex(v) {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        Ok(self
            .components()
            .into_iter()
            .find(|c| c.contains(v))
            .unwrap_or_default())
    }
}

/// A pair of maps `(f_V, f_E)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphMorphism {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

impl GraphMorphism {
    pub fn identity<L>(g: &Graph<L>) -> Self {
        GraphMorphism {
            vertex_map: g.vertex_ids().map(|v| (v.clone(), v.clone())).collect(),
            edge_map: g.edge_ids().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            vertex_map: self
                .vertex_map
                .iter()
                .filter_map(|(k, v)| other.vertex_map.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
            edge_map: self
                .edge_map
                .iter()
                .filter_map(|(k, v)| other.edge_map.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
        }
    }

    /// Totality plus `s_H ∘ f_E = f_V ∘ s_G` and `t_H ∘ f_E = f_V ∘ t_G`.
    pub fn is_graph_hom<L, M>(&self, g: &Graph<L>, h: &Graph<M>) -> bool {
        self.is_graph_hom_with(g, h, true)
    }

    /// Like [`GraphMorphism::is_graph_hom`]; when `directed` is false an edge
    /// may be mapped with its orientation reversed.
    pub fn is_graph_hom_with<L, M>(&self, g: &Graph<L>, h: &Graph<M>, directed: bool) -> bool {
        if self.vertex_map.len() != g.vertex_count() || self.edge_map.len() != g.edge_count() {
            return false;
        }
        for v in g.vertex_ids() {
            match self.vertex_map.get(v) {
                Some(w) if h.has_vertex(w) => {}
                _ => return false,
            }
        }
        for (id, e) in g.edges() {
            let Some(he) = self.edge_map.get(id).and_then(|x| h.edge(x)) else {
                return false;
            };
            let s = &self.vertex_map[&e.source];
            let t = &self.vertex_map[&e.target];
            let forward = &he.source == s && &he.target == t;
            let backward = &he.source == t && &he.target == s;
            if !(forward || (!directed && backward)) {
                return false;
            }
        }
        true
    }

    pub fn is_injective(&self) -> bool {
        let vs: BTreeSet<_> = self.vertex_map.values().collect();
        let es: BTreeSet<_> = self.edge_map.values().collect();
        vs.len() == self.vertex_map.len() && es.len() == self.edge_map.len()
    }
}

/// An open graph: a graph whose boundary vertices all have degree one.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenGraph<L> {
    graph: Graph<L>,
    boundary: BTreeSet<String>,
}

impl<L> OpenGraph<L> {
    pub fn graph(&self) -> &Graph<L> {
        &self.graph
    }

    pub fn boundary(&self) -> &BTreeSet<String> {
        &self.boundary
    }

    pub fn is_boundary(&self, v: &str) -> bool {
        self.boundary.contains(v)
    }

    /// `Int G`.
    pub fn interior(&self) -> impl Iterator<Item = &String> {
        self.graph
            .vertex_ids()
            .filter(move |v| !self.boundary.contains(*v))
    }

    pub fn into_parts(self) -> (Graph<L>, BTreeSet<String>) {
        (self.graph, self.boundary)
    }
}

impl<L: Clone> OpenGraph<L> {
    pub fn new(graph: Graph<L>, boundary: BTreeSet<String>) -> Result<Self> {
        for b in &boundary {
            if !graph.has_vertex(b) {
                return Err(Error::NoSuchVertex(b.clone()));
            }
            let d = graph.degree(b);
            if d != 1 {
                return Err(Error::BoundaryDegree(b.clone(), d));
            }
        }
        Ok(OpenGraph { graph, boundary })
    }

    pub fn empty() -> Self {
        OpenGraph {
            graph: Graph::new(),
            boundary: BTreeSet::new(),
        }
    }

    /// The same graph viewed as an e-graph whose exterior is the boundary.
    pub fn to_egraph(&self) -> EGraph<L> {
        EGraph::new(self.graph.clone(), self.boundary.clone())
            .expect("boundary is a vertex subset")
    }
}

/// Fresh names used when splitting edge `e`: the source-side half and the
/// target-side half. Each name is used for both the new edge and the new
/// boundary vertex it ends on.
pub fn split_names<L>(g: &Graph<L>, e: &str) -> (String, String) {
    let taken = |c: &str| g.has_vertex(c) || g.has_edge(c);
    let first = fresh_id(&format!("{e}:1"), taken);
    let second = fresh_id(&format!("{e}:2"), |c| taken(c) || c == first);
    (first, second)
}

/// Splits edge `e`: it is replaced by `e1 = s(e) → e1` and `e2 = e2 → t(e)`,
/// both new vertices joining the boundary. Returns the canonical morphism back
/// into `g` (`i_E(e1) = i_E(e2) = e`, `i_V(e1) = t(e)`, `i_V(e2) = s(e)`).
pub fn split_edge<L: Clone + Default>(
    g: &OpenGraph<L>,
    e: &str,
) -> Result<(OpenGraph<L>, GraphMorphism)> {
    let edge = g
        .graph
        .edge(e)
        .cloned()
        .ok_or_else(|| Error::NoSuchEdge(e.to_string()))?;
    let (e1, e2) = split_names(&g.graph, e);
    let mut graph = g.graph.clone();
    graph.remove_edge(e)?;
    graph.add_vertex(e1.clone(), L::default())?;
    graph.add_vertex(e2.clone(), L::default())?;
    graph.add_edge(e1.clone(), edge.source.clone(), e1.clone())?;
    graph.add_edge(e2.clone(), e2.clone(), edge.target.clone())?;
    let mut boundary = g.boundary.clone();
    boundary.insert(e1.clone());
    boundary.insert(e2.clone());

    let mut morph = GraphMorphism::identity(&g.graph);
    morph.edge_map.remove(e);
    morph.vertex_map.insert(e1.clone(), edge.target.clone());
    morph.vertex_map.insert(e2.clone(), edge.source.clone());
    morph.edge_map.insert(e1, e.to_string());
    morph.edge_map.insert(e2, e.to_string());
    Ok((OpenGraph { graph, boundary }, morph))
}

/// `Γ − [v]`: removes the whole component of `v`; returns the inclusion of
/// what remains.
pub fn remove_component<L: Clone>(
    g: &OpenGraph<L>,
    v: &str,
) -> Result<(OpenGraph<L>, GraphMorphism)> {
    let component = g.graph.component_of(v)?;
    let mut graph = g.graph.clone();
    for u in &component {
        graph.remove_vertex(u)?;
    }
    let boundary = g
        .boundary
        .iter()
        .filter(|b| !component.contains(*b))
        .cloned()
        .collect();
    let morph = GraphMorphism::identity(&graph);
    Ok((OpenGraph { graph, boundary }, morph))
}

/// An open subgraph description `(F, U)`. Splits run first, in order, and may
/// name half-edges created by earlier splits; removals follow.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgraphSpec {
    pub split_edges: Vec<String>,
    pub removed_components: Vec<String>,
}

/// Performs the splits of `spec` then the component removals, returning the
/// open subgraph and its canonical embedding into `g`.
pub fn open_subgraph<L: Clone + Default>(
    g: &OpenGraph<L>,
    spec: &SubgraphSpec,
) -> Result<(OpenGraph<L>, GraphMorphism)> {
    let mut current = g.clone();
    let mut to_host = GraphMorphism::identity(&g.graph);
    for e in &spec.split_edges {
        let (next, back) = split_edge(&current, e)?;
        to_host = back.then(&to_host);
        current = next;
    }
    for v in &spec.removed_components {
        if !current.graph.has_vertex(v) {
            // Either dangling or already removed with an earlier component.
            if g.graph.has_vertex(v) || to_host.vertex_map.contains_key(v) {
                continue;
            }
            return Err(Error::NoSuchVertex(v.clone()));
        }
        let (next, back) = remove_component(&current, v)?;
        to_host = back.then(&to_host);
        current = next;
    }
    Ok((current, to_host))
}

/// Strict: every edge of `h` touching the image of `Int g` is itself an image.
pub fn is_strict<L, M>(f: &GraphMorphism, g: &OpenGraph<L>, h: &OpenGraph<M>) -> bool {
    let interior_images: BTreeSet<&String> = g
        .graph
        .vertex_ids()
        .filter(|v| !g.boundary.contains(*v))
        .filter_map(|v| f.vertex_map.get(v))
        .collect();
    let edge_images: BTreeSet<&String> = f.edge_map.values().collect();
    h.graph.edges().all(|(id, e)| {
        !(interior_images.contains(&e.source) || interior_images.contains(&e.target))
            || edge_images.contains(id)
    })
}

/// Exact embedding: a strict, injective graph morphism with
/// `f(v) ∈ ∂H ⇔ v ∈ ∂G`.
pub fn is_exact_embedding<L, M>(f: &GraphMorphism, g: &OpenGraph<L>, h: &OpenGraph<M>) -> bool {
    is_exact_embedding_with(f, g, h, true)
}

pub fn is_exact_embedding_with<L, M>(
    f: &GraphMorphism,
    g: &OpenGraph<L>,
    h: &OpenGraph<M>,
    directed: bool,
) -> bool {
    f.is_graph_hom_with(&g.graph, &h.graph, directed)
        && f.is_injective()
        && g
            .graph
            .vertex_ids()
            .all(|v| g.boundary.contains(v) == h.boundary.contains(&f.vertex_map[v]))
        && is_strict(f, g, h)
}

/// A witness of `needle ≤ haystack`: the open subgraph and the exact
/// embedding of the needle into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub subgraph: SubgraphSpec,
    pub embedding: GraphMorphism,
}

/// Enumerates every witness of `needle ≤ haystack` in a deterministic order.
/// `labels` decides whether an interior needle vertex may map to an interior
/// haystack vertex.
pub fn find_matchings<L, M>(
    needle: &OpenGraph<L>,
    haystack: &OpenGraph<L>,
    labels: &M,
) -> Vec<Matching>
where
    L: Clone + Default,
    M: LabelMatcher<L>,
{
    let n = needle.to_egraph();
    let h = haystack.to_egraph();
    matcher::all_matches(&n, &h, labels, &MatchOptions::default())
        .into_iter()
        .map(|a| a.to_matching(&n, &h))
        .collect()
}

/// `needle ≤ haystack`.
pub fn matches<L, M>(needle: &OpenGraph<L>, haystack: &OpenGraph<L>, labels: &M) -> bool
where
    L: Clone + Default,
    M: LabelMatcher<L>,
{
    matcher::first_match(
        &needle.to_egraph(),
        &haystack.to_egraph(),
        labels,
        &MatchOptions::default(),
    )
    .is_some()
}

/// Isomorphism of open graphs (a bijective exact embedding).
pub fn is_isomorphic<L: PartialEq>(g: &OpenGraph<L>, h: &OpenGraph<L>) -> bool {
    crate::iso::find_isomorphism(
        &g.graph,
        &g.boundary,
        &h.graph,
        &h.boundary,
        &|a: &L, b: &L| a == b,
        true,
    )
    .is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::AnyLabel;

    fn path(n: usize) -> Graph<()> {
        let mut g = Graph::new();
        for i in 0..=n {
            g.add_vertex(format!("v{i}"), ()).unwrap();
        }
        for i in 0..n {
            g.add_edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))
                .unwrap();
        }
        g
    }

    fn open(g: Graph<()>, b: &[&str]) -> OpenGraph<()> {
        OpenGraph::new(g, b.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn split_single_edge() {
        let g = open(path(1), &[]);
        let (s, i) = split_edge(&g, "e0").unwrap();
        assert_eq!(s.graph().vertex_count(), 4);
        assert_eq!(s.graph().edge_count(), 2);
        assert_eq!(s.boundary().len(), 2);
        assert_eq!(s.graph().edge("e0:1").unwrap().source, "v0");
        assert_eq!(s.graph().edge("e0:2").unwrap().target, "v1");
        assert_eq!(i.edge_map["e0:1"], "e0");
        assert_eq!(i.edge_map["e0:2"], "e0");
        assert!(i.is_graph_hom(s.graph(), g.graph()));
        assert!(is_strict(&i, &s, &g));
    }

    #[test]
    fn split_middle_of_path_disconnects() {
        let g = open(path(2), &[]);
        let (s, _) = split_edge(&g, "e0").unwrap();
        assert_eq!(s.graph().components().len(), 2);
    }

    #[test]
    fn split_unknown_edge() {
        let g = open(path(1), &[]);
        assert_eq!(
            split_edge(&g, "nope").unwrap_err(),
            Error::NoSuchEdge("nope".into())
        );
    }

    #[test]
    fn fresh_split_names_avoid_collisions() {
        let mut g = path(1);
        g.add_vertex("e0:1", ()).unwrap();
        let (a, b) = split_names(&g, "e0");
        assert_eq!(a, "e0:1.1");
        assert_eq!(b, "e0:2");
    }

    #[test]
    fn remove_components() {
        let mut g = Graph::new();
        g.add_vertex("a", ()).unwrap();
        g.add_vertex("b", ()).unwrap();
        let g = open(g, &[]);
        let (r, _) = remove_component(&g, "a").unwrap();
        assert_eq!(r.graph().vertex_ids().collect::<Vec<_>>(), vec!["b"]);

        let p = open(path(3), &[]);
        let (r, _) = remove_component(&p, "v2").unwrap();
        assert!(r.graph().is_empty());
        assert!(remove_component(&p, "zz").is_err());
    }

    #[test]
    fn boundary_degree_enforced() {
        assert_eq!(
            OpenGraph::new(path(2), ["v1".to_string()].into()).unwrap_err(),
            Error::BoundaryDegree("v1".into(), 2)
        );
    }

    #[test]
    fn empty_spec_is_identity() {
        let g = open(path(2), &["v0", "v2"]);
        let (s, i) = open_subgraph(&g, &SubgraphSpec::default()).unwrap();
        assert_eq!(s, g);
        assert_eq!(i, GraphMorphism::identity(g.graph()));
    }

    #[test]
    fn split_then_remove_leaves_half_edge() {
        let g = open(path(1), &[]);
        let spec = SubgraphSpec {
            split_edges: vec!["e0".into()],
            removed_components: vec!["v1".into()],
        };
        let (s, i) = open_subgraph(&g, &spec).unwrap();
        assert_eq!(s.graph().vertex_count(), 2);
        assert_eq!(s.graph().edge_count(), 1);
        assert!(i.is_graph_hom(s.graph(), g.graph()));
        assert!(open_subgraph(
            &g,
            &SubgraphSpec {
                split_edges: vec!["x".into()],
                removed_components: vec![]
            }
        )
        .is_err());
    }

    #[test]
    fn identity_is_exact() {
        let g = open(path(3), &["v0", "v3"]);
        assert!(is_exact_embedding(&GraphMorphism::identity(g.graph()), &g, &g));
    }

    #[test]
    fn strictness_violation() {
        let mut lone = Graph::new();
        lone.add_vertex("x", ()).unwrap();
        let lone = open(lone, &[]);
        let h = open(path(1), &[]);
        let f = GraphMorphism {
            vertex_map: [("x".to_string(), "v0".to_string())].into(),
            edge_map: BTreeMap::new(),
        };
        assert!(f.is_graph_hom(lone.graph(), h.graph()));
        assert!(!is_exact_embedding(&f, &lone, &h));
    }

    #[test]
    fn interior_onto_boundary_is_not_exact() {
        let g = open(path(1), &[]);
        let h = open(path(1), &["v0"]);
        assert!(!is_exact_embedding(&GraphMorphism::identity(g.graph()), &g, &h));
    }

    #[test]
    fn iso_basic() {
        let g = open(path(2), &[]);
        assert!(is_isomorphic(&g, &g));
        let mut two = Graph::new();
        for v in ["a", "b", "c", "d"] {
            two.add_vertex(v, ()).unwrap();
        }
        two.add_edge("x", "a", "b").unwrap();
        two.add_edge("y", "c", "d").unwrap();
        let two = open(two, &[]);
        let g4 = open(path(2), &[]);
        assert!(!is_isomorphic(&g4, &two));
    }

    #[test]
    fn self_match_exists() {
        let g = open(path(3), &["v0", "v3"]);
        let ms = find_matchings(&g, &g, &AnyLabel);
        assert!(!ms.is_empty());
        for m in ms {
            let (sub, _) = open_subgraph(&g, &m.subgraph).unwrap();
            assert!(is_exact_embedding(&m.embedding, &g, &sub));
        }
    }
}
