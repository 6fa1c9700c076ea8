//! Graphs with exterior nodes of arbitrary degree, and their matching.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{
    fresh_id, is_exact_embedding_with, open_subgraph, End, Graph, GraphMorphism, OpenGraph,
};
use crate::matcher::{self, Assignment, LabelMatcher, MatchOptions};

/// A graph with a set of exterior vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct EGraph<L> {
    graph: Graph<L>,
    exterior: BTreeSet<String>,
}

/// The ♥ relation on the stubs of a relaxed graph, keyed by the exterior
/// vertex they came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeartPartition {
    pub classes: BTreeMap<String, BTreeSet<String>>,
}

impl HeartPartition {
    pub fn class_of(&self, stub: &str) -> Option<&str> {
        self.classes
            .iter()
            .find(|(_, c)| c.contains(stub))
            .map(|(x, _)| x.as_str())
    }

    pub fn related(&self, a: &str, b: &str) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }
}

/// A witness of `needle ≤_e host`. The heart witness is
/// [`Assignment::heart`]; the explicit open subgraph and embedding come from
/// [`Assignment::to_matching`].
pub type EMatch<S> = Assignment<S>;

/// Name of the stub that replaces end `end` of edge `e` at `x` when `x` is
/// split. A degree-one vertex keeps its own name.
pub fn relax_stub_name<L>(g: &Graph<L>, x: &str, e: &str, end: End) -> String {
    if g.degree(x) == 1 {
        return x.to_string();
    }
    let edge = g.edge(e).expect("incident edge");
    let base = if edge.source == edge.target {
        match end {
            End::Source => format!("{x}/{e}.s"),
            End::Target => format!("{x}/{e}.t"),
        }
    } else {
        format!("{x}/{e}")
    };
    fresh_id(&base, |c| g.has_vertex(c))
}

impl<L> EGraph<L> {
    pub fn graph(&self) -> &Graph<L> {
        &self.graph
    }

    pub fn exterior(&self) -> &BTreeSet<String> {
        &self.exterior
    }

    pub fn is_exterior(&self, v: &str) -> bool {
        self.exterior.contains(v)
    }

    pub fn interior(&self) -> impl Iterator<Item = &String> {
        self.graph
            .vertex_ids()
            .filter(move |v| !self.exterior.contains(*v))
    }

    pub fn interior_count(&self) -> usize {
        self.graph.vertex_count() - self.exterior.len()
    }

    pub fn into_parts(self) -> (Graph<L>, BTreeSet<String>) {
        (self.graph, self.exterior)
    }
}

impl<L: Clone> EGraph<L> {
    pub fn new(graph: Graph<L>, exterior: BTreeSet<String>) -> Result<Self> {
        if let Some(x) = exterior.iter().find(|x| !graph.has_vertex(x)) {
            return Err(Error::NoSuchVertex(x.clone()));
        }
        Ok(EGraph { graph, exterior })
    }

    pub fn empty() -> Self {
        EGraph {
            graph: Graph::new(),
            exterior: BTreeSet::new(),
        }
    }

    pub fn graph_mut(&mut self) -> &mut Graph<L> {
        &mut self.graph
    }

    /// Marks or unmarks `v` as exterior.
    pub fn set_exterior(&mut self, v: &str, exterior: bool) -> Result<()> {
        if !self.graph.has_vertex(v) {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        if exterior {
            self.exterior.insert(v.to_string());
        } else {
            self.exterior.remove(v);
        }
        Ok(())
    }

    /// Removes a vertex, its incident edges and its exterior mark.
    pub fn remove_vertex(&mut self, v: &str) -> Result<L> {
        self.exterior.remove(v);
        self.graph.remove_vertex(v)
    }

    /// The open graph with the same carrier, if every exterior vertex has
    /// degree one.
    pub fn to_open_graph(&self) -> Result<OpenGraph<L>> {
        OpenGraph::new(self.graph.clone(), self.exterior.clone())
    }

    pub fn map_labels<M>(&self, f: impl FnMut(&str, &L) -> M) -> EGraph<M> {
        EGraph {
            graph: self.graph.map_labels(f),
            exterior: self.exterior.clone(),
        }
    }

    /// Renames vertices and edges; ids missing from the maps are kept.
    pub fn renamed(
        &self,
        vertex: &BTreeMap<String, String>,
        edge: &BTreeMap<String, String>,
    ) -> Result<EGraph<L>> {
        Ok(EGraph {
            graph: self.graph.renamed(vertex, edge)?,
            exterior: self
                .exterior
                .iter()
                .map(|v| vertex.get(v).cloned().unwrap_or_else(|| v.clone()))
                .collect(),
        })
    }

    /// Replaces `x` by one fresh vertex per incident edge-end. The new
    /// vertices keep `x`'s label and exterior status. The returned morphism
    /// collapses them back onto `x` and is the identity on edges.
    pub fn split_vertex(&self, x: &str) -> Result<(EGraph<L>, GraphMorphism)> {
        let label = self
            .graph
            .label(x)
            .cloned()
            .ok_or_else(|| Error::NoSuchVertex(x.to_string()))?;
        let ends = self.graph.incident_ends(x);
        let stubs: Vec<String> = ends
            .iter()
            .map(|(e, end)| relax_stub_name(&self.graph, x, e, *end))
            .collect();

        let mut graph = Graph::new();
        for (v, l) in self.graph.vertices() {
            if v != x {
                graph.add_vertex(v.clone(), l.clone())?;
            }
        }
        for s in &stubs {
            graph.add_vertex(s.clone(), label.clone())?;
        }
        let mut endpoints: BTreeMap<(String, End), String> = BTreeMap::new();
        for ((e, end), s) in ends.iter().zip(&stubs) {
            endpoints.insert((e.clone(), *end), s.clone());
        }
        for (id, e) in self.graph.edges() {
            let s = endpoints
                .get(&(id.clone(), End::Source))
                .unwrap_or(&e.source);
            let t = endpoints
                .get(&(id.clone(), End::Target))
                .unwrap_or(&e.target);
            graph.add_edge(id.clone(), s.clone(), t.clone())?;
        }
        let mut exterior = self.exterior.clone();
        if exterior.remove(x) {
            exterior.extend(stubs.iter().cloned());
        }

        let mut morph = GraphMorphism::identity(&graph);
        for s in &stubs {
            morph.vertex_map.insert(s.clone(), x.to_string());
        }
        Ok((EGraph { graph, exterior }, morph))
    }

    /// Splits every exterior vertex, giving an open graph together with the
    /// ♥ partition of its boundary.
    pub fn relax(&self) -> (OpenGraph<L>, HeartPartition) {
        let mut current = self.clone();
        let mut hearts = HeartPartition::default();
        for x in &self.exterior {
            let stubs: BTreeSet<String> = self
                .graph
                .incident_ends(x)
                .iter()
                .map(|(e, end)| relax_stub_name(&self.graph, x, e, *end))
                .collect();
            current = current.split_vertex(x).expect("exterior vertex exists").0;
            hearts.classes.insert(x.clone(), stubs);
        }
        let open = current
            .to_open_graph()
            .expect("relaxed exterior vertices have degree one");
        (open, hearts)
    }
}

impl<L> From<OpenGraph<L>> for EGraph<L> {
    fn from(g: OpenGraph<L>) -> Self {
        let (graph, exterior) = g.into_parts();
        EGraph { graph, exterior }
    }
}

/// Every witness of `needle ≤_e host`, in deterministic order.
pub fn e_match<L, M: LabelMatcher<L>>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    labels: &M,
    opts: &MatchOptions,
) -> Vec<EMatch<M::State>> {
    matcher::all_matches(needle, host, labels, opts)
}

/// `needle ≤_e host`.
pub fn e_matches<L, M: LabelMatcher<L>>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    labels: &M,
    opts: &MatchOptions,
) -> bool {
    matcher::first_match(needle, host, labels, opts).is_some()
}

/// Checks a witness against the definition: builds the open subgraph of
/// `relax(host)` and verifies that the embedding of `relax(needle)` is exact
/// and carries ♥-related stubs to stubs with a common origin.
pub fn verify_ematch<L: Clone + Default, S>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    witness: &EMatch<S>,
    directed: bool,
) -> bool {
    let matching = witness.to_matching(needle, host);
    let (relaxed_needle, needle_hearts) = needle.relax();
    let (relaxed_host, host_hearts) = host.relax();
    let Ok((sub, to_relaxed)) = open_subgraph(&relaxed_host, &matching.subgraph) else {
        return false;
    };
    if !is_exact_embedding_with(&matching.embedding, &relaxed_needle, &sub, directed) {
        return false;
    }
    let origin = |v: &str| -> String {
        let in_relaxed = &to_relaxed.vertex_map[v];
        host_hearts
            .class_of(in_relaxed)
            .map(str::to_string)
            .unwrap_or_else(|| in_relaxed.clone())
    };
    needle_hearts.classes.values().all(|class| {
        let origins: BTreeSet<String> = class
            .iter()
            .map(|s| origin(&matching.embedding.vertex_map[s]))
            .collect();
        origins.len() <= 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::AnyLabel;

    fn eg(vs: &[&str], ext: &[&str], es: &[(&str, &str, &str)]) -> EGraph<()> {
        let mut g = Graph::new();
        for v in vs {
            g.add_vertex(*v, ()).unwrap();
        }
        for (id, s, t) in es {
            g.add_edge(*id, *s, *t).unwrap();
        }
        EGraph::new(g, ext.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn split_degree_zero_deletes() {
        let g = eg(&["x", "y"], &["x"], &[]);
        let (s, _) = g.split_vertex("x").unwrap();
        assert_eq!(s.graph().vertex_count(), 1);
        assert!(s.exterior().is_empty());
    }

    #[test]
    fn split_degree_one_renames_to_itself() {
        let g = eg(&["x", "y"], &["x"], &[("e", "y", "x")]);
        let (s, m) = g.split_vertex("x").unwrap();
        assert_eq!(s, g);
        assert_eq!(m, GraphMorphism::identity(g.graph()));
    }

    #[test]
    fn split_mixed_degrees() {
        let g = eg(
            &["a", "b", "c", "x"],
            &["x"],
            &[("e1", "a", "x"), ("e2", "b", "x"), ("e3", "x", "c")],
        );
        let (s, m) = g.split_vertex("x").unwrap();
        assert_eq!(s.graph().vertex_count(), 6);
        assert_eq!(s.graph().edge_count(), 3);
        assert_eq!(s.exterior().len(), 3);
        for x in s.exterior() {
            assert_eq!(s.graph().degree(x), 1);
            assert_eq!(m.vertex_map[x], "x");
        }
        assert!(m.is_graph_hom(s.graph(), g.graph()));
    }

    #[test]
    fn relax_self_loop() {
        let g = eg(&["x"], &["x"], &[("l", "x", "x")]);
        let (r, hearts) = g.relax();
        assert_eq!(r.graph().vertex_count(), 2);
        assert_eq!(r.boundary().len(), 2);
        let stubs: Vec<_> = r.boundary().iter().collect();
        assert!(hearts.related(stubs[0], stubs[1]));
    }

    #[test]
    fn heart_is_enforced() {
        // needle: one interior vertex with two edges to one exterior vertex
        let needle = eg(&["v", "x"], &["x"], &[("a", "v", "x"), ("b", "v", "x")]);
        let split = eg(
            &["v", "x", "y"],
            &["x", "y"],
            &[("a", "v", "x"), ("b", "v", "y")],
        );
        let joined = eg(&["v", "x"], &["x"], &[("a", "v", "x"), ("b", "v", "x")]);
        let opts = MatchOptions::default();
        assert!(!e_matches(&needle, &split, &AnyLabel, &opts));
        let found = e_match(&needle, &joined, &AnyLabel, &opts);
        assert_eq!(found.len(), 2);
        for w in &found {
            assert!(verify_ematch(&needle, &joined, w, true));
        }
    }

    #[test]
    fn heart_via_interior_origin() {
        // the two ends may also come from one interior host vertex via cuts
        let needle = eg(&["v", "x"], &["x"], &[("a", "v", "x"), ("b", "v", "x")]);
        let host = eg(
            &["v", "w", "p"],
            &["p"],
            &[("a", "v", "w"), ("b", "v", "w"), ("c", "w", "p")],
        );
        let found = e_match(&needle, &host, &AnyLabel, &MatchOptions::default());
        assert_eq!(found.len(), 2);
        for w in &found {
            assert_eq!(w.heart["x"], "w");
            assert!(verify_ematch(&needle, &host, w, true));
        }
    }
}
