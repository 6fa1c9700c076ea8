//! !-boxes: named disjoint vertex sets that may be copied, killed, dropped
//! or merged. A !-boxed e-graph is a graph pattern.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::graph::{fresh_id, Graph};
use crate::iso::for_each_isomorphism;
use crate::label::VertexLabel;

/// An e-graph with a family of named, pairwise disjoint !-boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct BangGraph<L> {
    egraph: EGraph<L>,
    boxes: BTreeMap<String, BTreeSet<String>>,
}

/// Graph patterns are !-boxed e-graphs; exterior vertex ids double as their
/// names.
pub type GraphPattern<L> = BangGraph<L>;

/// The !-box operations, applied in order: copy, then drop, then merge.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct BangWitness {
    /// Copy count per box; absent boxes are copied once (left alone).
    pub copies: BTreeMap<String, usize>,
    /// Boxes (named after copying) whose outline is removed.
    pub dropped: BTreeSet<String>,
    /// Groups of boxes (named after copying) unioned into one box.
    pub merges: Vec<BTreeSet<String>>,
}

impl BangWitness {
    pub fn is_trivial(&self) -> bool {
        self.copies.values().all(|&c| c == 1) && self.dropped.is_empty() && self.merges.is_empty()
    }
}

impl<L> BangGraph<L> {
    pub fn egraph(&self) -> &EGraph<L> {
        &self.egraph
    }

    pub fn graph(&self) -> &Graph<L> {
        self.egraph.graph()
    }

    pub fn boxes(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.boxes
    }

    pub fn box_of(&self, v: &str) -> Option<&str> {
        self.boxes
            .iter()
            .find(|(_, vs)| vs.contains(v))
            .map(|(b, _)| b.as_str())
    }

    pub fn boxed_vertices(&self) -> BTreeSet<String> {
        self.boxes.values().flatten().cloned().collect()
    }
}

impl<L: Clone> BangGraph<L> {
    pub fn new(egraph: EGraph<L>, boxes: BTreeMap<String, BTreeSet<String>>) -> Result<Self> {
        let mut seen: BTreeMap<&String, &String> = BTreeMap::new();
        for (b, vs) in &boxes {
            for v in vs {
                if !egraph.graph().has_vertex(v) {
                    return Err(Error::NoSuchVertex(v.clone()));
                }
                if seen.insert(v, b).is_some() {
                    return Err(Error::OverlappingBoxes(b.clone()));
                }
            }
        }
        Ok(BangGraph { egraph, boxes })
    }

    /// A pattern without boxes.
    pub fn plain(egraph: EGraph<L>) -> Self {
        BangGraph {
            egraph,
            boxes: BTreeMap::new(),
        }
    }

    pub fn into_parts(self) -> (EGraph<L>, BTreeMap<String, BTreeSet<String>>) {
        (self.egraph, self.boxes)
    }

    pub fn map_labels(&self, f: impl FnMut(&str, &L) -> L) -> Self {
        BangGraph {
            egraph: self.egraph.map_labels(f),
            boxes: self.boxes.clone(),
        }
    }

    /// Renames vertices, edges and boxes; missing ids are kept.
    pub fn renamed(
        &self,
        vertex: &BTreeMap<String, String>,
        edge: &BTreeMap<String, String>,
        boxes: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let rv = |v: &String| vertex.get(v).cloned().unwrap_or_else(|| v.clone());
        BangGraph::new(
            self.egraph.renamed(vertex, edge)?,
            self.boxes
                .iter()
                .map(|(b, vs)| {
                    (
                        boxes.get(b).cloned().unwrap_or_else(|| b.clone()),
                        vs.iter().map(rv).collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Copies each box `b` `c(b)` times (boxes absent from `c` are left alone).
/// Copy 0 keeps the original names; copy `k ≥ 1` of vertex, edge or box `x`
/// is named `x#k`. Edges inside a box travel with each copy, edges leaving
/// it fan out to every copy. A count of 0 kills the box. Boxes are processed
/// in name order.
///
/// Variables of labels inside a copied box are renamed `v#k` in copy `k`;
/// labels outside the box see `v` expanded to the sum over all copies, or to
/// zero when the box is killed.
pub fn copy_boxes<L: VertexLabel>(
    c: &BTreeMap<String, usize>,
    g: &BangGraph<L>,
) -> Result<BangGraph<L>> {
    if let Some(b) = c.keys().find(|b| !g.boxes.contains_key(*b)) {
        return Err(Error::NoSuchBox(b.clone()));
    }
    let mut graph = g.egraph.graph().clone();
    let mut exterior = g.egraph.exterior().clone();
    let mut boxes = g.boxes.clone();
    for (b, &n) in c {
        if n == 1 {
            continue;
        }
        let members = g.boxes[b].clone();
        let vars: BTreeSet<String> = members
            .iter()
            .flat_map(|v| graph.label(v).unwrap().variables())
            .collect();
        boxes.remove(b);

        // Edges are replicated from a snapshot taken before any copy of
        // this box exists.
        let touching: Vec<(String, String, String)> = graph
            .edges()
            .filter(|(_, e)| members.contains(&e.source) || members.contains(&e.target))
            .map(|(id, e)| (id.clone(), e.source.clone(), e.target.clone()))
            .collect();
        let mut copy_boxes_new = Vec::new();
        for k in 1..n {
            let mut vmap = BTreeMap::new();
            for v in &members {
                let id = fresh_id(&format!("{v}#{k}"), |x| graph.has_vertex(x));
                let renaming: BTreeMap<String, String> =
                    vars.iter().map(|x| (x.clone(), format!("{x}#{k}"))).collect();
                let label = graph.label(v).unwrap().rename_variables(&renaming);
                graph.add_vertex(id.clone(), label)?;
                if exterior.contains(v) {
                    exterior.insert(id.clone());
                }
                vmap.insert(v.clone(), id);
            }
            for (e, s, t) in &touching {
                let s2 = vmap.get(s).unwrap_or(s).clone();
                let t2 = vmap.get(t).unwrap_or(t).clone();
                let id = fresh_id(&format!("{e}#{k}"), |x| graph.has_edge(x));
                graph.add_edge(id, s2, t2)?;
            }
            let name = fresh_id(&format!("{b}#{k}"), |x| {
                boxes.contains_key(x) || g.boxes.contains_key(x)
            });
            copy_boxes_new.push((name, vmap.values().cloned().collect::<BTreeSet<_>>()));
        }

        // Outside labels: v ↦ v + v#1 + … (or 0 when killed).
        let copies: BTreeMap<String, Vec<String>> = vars
            .iter()
            .map(|x| (x.clone(), (1..n).map(|k| format!("{x}#{k}")).collect()))
            .collect();
        let inside_copies: BTreeSet<String> = copy_boxes_new
            .iter()
            .flat_map(|(_, vs)| vs.iter().cloned())
            .collect();
        let outside: Vec<String> = graph
            .vertex_ids()
            .filter(|v| !members.contains(*v) && !inside_copies.contains(*v))
            .cloned()
            .collect();
        for v in outside {
            let mut label = graph.label(&v).unwrap().clone();
            for (x, cs) in &copies {
                if label.variables().contains(x) {
                    label = label.expand_variable(x, n > 0, cs);
                }
            }
            graph.set_label(&v, label)?;
        }

        if n == 0 {
            for v in &members {
                graph.remove_vertex(v)?;
                exterior.remove(v);
            }
        } else {
            boxes.insert(b.clone(), members.clone());
        }
        for (name, vs) in copy_boxes_new {
            boxes.insert(name, vs);
        }
    }
    BangGraph::new(EGraph::new(graph, exterior)?, boxes)
}

/// Removes the named box outlines, keeping their contents.
pub fn drop_boxes<L: Clone>(k: &BTreeSet<String>, g: &BangGraph<L>) -> Result<BangGraph<L>> {
    let mut out = g.clone();
    for b in k {
        if out.boxes.remove(b).is_none() {
            return Err(Error::NoSuchBox(b.clone()));
        }
    }
    Ok(out)
}

/// Unions each group of boxes into one box named after its least member.
/// Members of a group must be pairwise unconnected.
pub fn merge_boxes<L: Clone>(m: &[BTreeSet<String>], g: &BangGraph<L>) -> Result<BangGraph<L>> {
    let mut out = g.clone();
    let mut used = BTreeSet::new();
    for group in m {
        for b in group {
            if !g.boxes.contains_key(b) {
                return Err(Error::NoSuchBox(b.clone()));
            }
            if !used.insert(b.clone()) {
                return Err(Error::OverlappingBoxes(b.clone()));
            }
        }
        let names: Vec<&String> = group.iter().collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                if boxes_connected(g, a, b) {
                    return Err(Error::MergeConnectivity((*a).clone(), (*b).clone()));
                }
            }
        }
        let Some(first) = names.first() else { continue };
        let mut union = BTreeSet::new();
        for b in &names {
            union.extend(out.boxes.remove(*b).unwrap());
        }
        out.boxes.insert((*first).clone(), union);
    }
    Ok(out)
}

/// Is there an edge between box `a` and box `b`?
pub fn boxes_connected<L>(g: &BangGraph<L>, a: &str, b: &str) -> bool {
    let (va, vb) = (&g.boxes[a], &g.boxes[b]);
    g.graph().edges().any(|(_, e)| {
        (va.contains(&e.source) && vb.contains(&e.target))
            || (vb.contains(&e.source) && va.contains(&e.target))
    })
}

/// Copy, then drop, then merge.
pub fn apply_witness<L: VertexLabel>(w: &BangWitness, g: &BangGraph<L>) -> Result<BangGraph<L>> {
    let copied = copy_boxes(&w.copies, g)?;
    let dropped = drop_boxes(&w.dropped, &copied)?;
    merge_boxes(&w.merges, &dropped)
}

/// Isomorphism of !-boxed e-graphs: a label- and exterior-preserving graph
/// isomorphism carrying boxes onto boxes. Box names are irrelevant.
pub fn bang_isomorphic<L: PartialEq>(g: &BangGraph<L>, h: &BangGraph<L>) -> bool {
    bang_isomorphic_with(g, h, true, false)
}

/// Isomorphism of !-graphs, optionally ignoring edge direction and
/// optionally requiring every exterior vertex to keep its name.
pub fn bang_isomorphic_with<L: PartialEq>(
    g: &BangGraph<L>,
    h: &BangGraph<L>,
    directed: bool,
    keep_exterior_names: bool,
) -> bool {
    if g.boxes.len() != h.boxes.len() {
        return false;
    }
    let mut found = false;
    for_each_isomorphism(
        g.graph(),
        g.egraph.exterior(),
        h.graph(),
        h.egraph.exterior(),
        &|a: &L, b: &L| a == b,
        directed,
        &mut |phi| {
            let names_ok = !keep_exterior_names || g.egraph.exterior().iter().all(|x| &phi[x] == x);
            if names_ok && boxes_correspond(g, h, phi) {
                found = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    found
}

fn boxes_correspond<L>(g: &BangGraph<L>, h: &BangGraph<L>, phi: &BTreeMap<String, String>) -> bool {
    let mut images: Vec<BTreeSet<String>> = g
        .boxes
        .values()
        .map(|vs| vs.iter().map(|v| phi[v].clone()).collect())
        .collect();
    let mut targets: Vec<BTreeSet<String>> = h.boxes.values().cloned().collect();
    images.sort();
    targets.sort();
    images == targets
}

/// The default copy bound for `g ≤_! h`. Nonempty boxes are bounded by
/// vertex counting already; the bound only limits copies of empty boxes.
pub fn copy_bound<L>(h: &BangGraph<L>) -> usize {
    h.graph().vertex_count() + h.boxes.len()
}

fn copy_vectors(names: &[String], bound: usize, mut keep: impl FnMut(&BTreeMap<String, usize>)) {
    let mut counts = vec![0usize; names.len()];
    loop {
        let c: BTreeMap<String, usize> = names.iter().cloned().zip(counts.iter().copied()).collect();
        keep(&c);
        let mut i = 0;
        loop {
            if i == counts.len() {
                return;
            }
            counts[i] += 1;
            if counts[i] <= bound {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Normal form of a copy function: entries equal to 1 are omitted.
fn normal_copies(c: &BTreeMap<String, usize>) -> BTreeMap<String, usize> {
    c.iter()
        .filter(|(_, &n)| n != 1)
        .map(|(b, &n)| (b.clone(), n))
        .collect()
}

/// Every witness of `g ≤_! h` with copy counts at most [`copy_bound`], in
/// deterministic order.
///
/// For each copy function surviving a vertex-count filter, the carrier of the
/// copied graph must be isomorphic to `h`'s, since dropping and merging
/// leave the carrier alone. Each isomorphism then forces which nonempty boxes
/// are kept and which `h` box they merge into; empty boxes are distributed
/// over the `h` boxes combinatorially.
pub fn bang_match<L: VertexLabel>(g: &BangGraph<L>, h: &BangGraph<L>) -> Vec<BangWitness> {
    let names: Vec<String> = g.boxes.keys().cloned().collect();
    let bound = copy_bound(h);
    let base = g.graph().vertex_count() as i64
        - g.boxes.values().map(|b| b.len() as i64).sum::<i64>();
    let target_v = h.graph().vertex_count() as i64;
    let mut out = BTreeSet::new();
    copy_vectors(&names, bound, |c| {
        let size: i64 = base
            + names
                .iter()
                .map(|b| c[b] as i64 * g.boxes[b].len() as i64)
                .sum::<i64>();
        if size != target_v {
            return;
        }
        let copies = normal_copies(c);
        let Ok(gc) = copy_boxes(&copies, g) else { return };
        if gc.graph().edge_count() != h.graph().edge_count() {
            return;
        }
        for_each_isomorphism(
            gc.graph(),
            gc.egraph.exterior(),
            h.graph(),
            h.egraph.exterior(),
            &|a: &L, b: &L| a == b,
            true,
            &mut |phi| {
                box_witnesses(&gc, h, phi, &copies, &mut out);
                ControlFlow::Continue(())
            },
        );
    });
    out.into_iter().collect()
}

fn box_witnesses<L>(
    gc: &BangGraph<L>,
    h: &BangGraph<L>,
    phi: &BTreeMap<String, String>,
    copies: &BTreeMap<String, usize>,
    out: &mut BTreeSet<BangWitness>,
) {
    // h box containing each host vertex
    let host_box: BTreeMap<&String, &String> = h
        .boxes
        .iter()
        .flat_map(|(b, vs)| vs.iter().map(move |v| (v, b)))
        .collect();
    let mut dropped = BTreeSet::new();
    let mut groups: BTreeMap<String, BTreeSet<String>> =
        h.boxes.keys().map(|b| (b.clone(), BTreeSet::new())).collect();
    let mut empty = Vec::new();
    for (b, vs) in &gc.boxes {
        if vs.is_empty() {
            empty.push(b.clone());
            continue;
        }
        let targets: BTreeSet<Option<&&String>> =
            vs.iter().map(|v| host_box.get(&phi[v])).collect();
        match targets.into_iter().collect::<Vec<_>>().as_slice() {
            [Some(t)] => {
                groups.get_mut(**t).unwrap().insert(b.clone());
            }
            _ => {
                dropped.insert(b.clone());
            }
        }
    }
    // Kept boxes must cover each h box exactly.
    for (t, members) in &groups {
        let covered: BTreeSet<String> = members
            .iter()
            .flat_map(|b| gc.boxes[b].iter().map(|v| phi[v].clone()))
            .collect();
        if covered != h.boxes[t] {
            // A box that only partly covers can instead be dropped; but then
            // the remainder is uncovered, so no witness exists.
            return;
        }
    }
    // Boxes grouped with others must be pairwise unconnected.
    for members in groups.values() {
        let ms: Vec<&String> = members.iter().collect();
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                if boxes_connected(gc, a, b) {
                    return;
                }
            }
        }
    }
    let targets: Vec<String> = h.boxes.keys().cloned().collect();
    // Assign each empty box to "drop" (None) or to an h box.
    let mut choice = vec![0usize; empty.len()];
    loop {
        let mut g2 = groups.clone();
        let mut d2 = dropped.clone();
        for (i, b) in empty.iter().enumerate() {
            if choice[i] == 0 {
                d2.insert(b.clone());
            } else {
                g2.get_mut(&targets[choice[i] - 1]).unwrap().insert(b.clone());
            }
        }
        if g2.values().all(|m| !m.is_empty()) {
            out.insert(BangWitness {
                copies: copies.clone(),
                dropped: d2,
                merges: g2.into_values().filter(|m| m.len() >= 2).collect(),
            });
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] <= targets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `g ≤_! h`.
pub fn bang_matches<L: VertexLabel>(g: &BangGraph<L>, h: &BangGraph<L>) -> bool {
    !bang_match(g, h).is_empty()
}

/// The box-free graphs obtained by copying each box between 0 and `bound`
/// times and dropping every box, one per copy tuple.
pub fn instances<L: VertexLabel>(
    g: &BangGraph<L>,
    bound: usize,
) -> Vec<(BTreeMap<String, usize>, EGraph<L>)> {
    let names: Vec<String> = g.boxes.keys().cloned().collect();
    let mut out = Vec::new();
    copy_vectors(&names, bound, |c| {
        let copied = copy_boxes(c, g).expect("box names come from g");
        out.push((c.clone(), copied.egraph));
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize, boxed: bool) -> BangGraph<()> {
        let mut g = Graph::new();
        g.add_vertex("c", ()).unwrap();
        let mut boxes = BTreeMap::new();
        for i in 0..leaves {
            let v = format!("l{i}");
            g.add_vertex(v.clone(), ()).unwrap();
            g.add_edge(format!("e{i}"), "c", v.clone()).unwrap();
            if boxed {
                boxes.insert(format!("b{i}"), BTreeSet::from([v]));
            }
        }
        BangGraph::new(EGraph::new(g, BTreeSet::new()).unwrap(), boxes).unwrap()
    }

    #[test]
    fn copy_identity_and_kill() {
        let g = star(1, true);
        assert_eq!(copy_boxes(&BTreeMap::new(), &g).unwrap(), g);
        let killed = copy_boxes(&BTreeMap::from([("b0".into(), 0)]), &g).unwrap();
        assert_eq!(killed.graph().vertex_count(), 1);
        assert_eq!(killed.graph().edge_count(), 0);
        assert!(killed.boxes().is_empty());
    }

    #[test]
    fn copy_fans_out() {
        let g = star(1, true);
        let c = copy_boxes(&BTreeMap::from([("b0".into(), 3)]), &g).unwrap();
        assert_eq!(c.graph().vertex_count(), 4);
        assert_eq!(c.graph().edge_count(), 3);
        let names: Vec<&String> = c.boxes().keys().collect();
        assert_eq!(names, ["b0", "b0#1", "b0#2"]);
        assert!(c.graph().has_vertex("l0#2"));
        assert!(c.graph().has_edge("e0#1"));
    }

    #[test]
    fn internal_edges_travel_with_copies() {
        let mut g = Graph::new();
        for v in ["a", "b", "o"] {
            g.add_vertex(v, ()).unwrap();
        }
        g.add_edge("in", "a", "b").unwrap();
        g.add_edge("out", "o", "a").unwrap();
        let p = BangGraph::new(
            EGraph::new(g, BTreeSet::new()).unwrap(),
            BTreeMap::from([("b".to_string(), BTreeSet::from(["a".into(), "b".into()]))]),
        )
        .unwrap();
        let c = copy_boxes(&BTreeMap::from([("b".into(), 2)]), &p).unwrap();
        assert_eq!(c.graph().vertex_count(), 5);
        assert_eq!(c.graph().edge_count(), 4);
        let e = c.graph().edge("in#1").unwrap();
        assert_eq!((e.source.as_str(), e.target.as_str()), ("a#1", "b#1"));
    }

    #[test]
    fn merge_rejects_connected_boxes() {
        let mut g = Graph::new();
        g.add_vertex("a", ()).unwrap();
        g.add_vertex("b", ()).unwrap();
        g.add_edge("e", "a", "b").unwrap();
        let p = BangGraph::new(
            EGraph::new(g, BTreeSet::new()).unwrap(),
            BTreeMap::from([
                ("x".to_string(), BTreeSet::from(["a".to_string()])),
                ("y".to_string(), BTreeSet::from(["b".to_string()])),
            ]),
        )
        .unwrap();
        let r = merge_boxes(&[BTreeSet::from(["x".into(), "y".into()])], &p);
        assert!(matches!(r, Err(Error::MergeConnectivity(..))));
    }

    #[test]
    fn boxed_leaf_matches_star() {
        let mut g = Graph::new();
        g.add_vertex("c", ()).unwrap();
        g.add_vertex("l", ()).unwrap();
        g.add_edge("e", "c", "l").unwrap();
        let p = BangGraph::new(
            EGraph::new(g, BTreeSet::new()).unwrap(),
            BTreeMap::from([("b".to_string(), BTreeSet::from(["l".to_string()]))]),
        )
        .unwrap();
        let h = star(4, false);
        let ws = bang_match(&p, &h);
        assert!(!ws.is_empty());
        for w in &ws {
            assert_eq!(w.copies["b"], 4);
            assert!(bang_isomorphic(&apply_witness(w, &p).unwrap(), &h));
        }
    }

    #[test]
    fn instance_counts() {
        let g = star(1, true);
        assert_eq!(instances(&g, 2).len(), 3);
        assert_eq!(instances(&star(2, true), 1).len(), 4);
        assert_eq!(instances(&star(2, false), 5).len(), 1);
    }
}
