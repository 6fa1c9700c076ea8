//! Random small graphs, !-graphs and oracles shared by the property and
//! acceptance suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bangbox::bangbox::{
    apply_witness, bang_isomorphic, boxes_connected, copy_boxes, drop_boxes, instances, merge_boxes,
    BangGraph, BangWitness,
};
use bangbox::graph::{open_subgraph, Graph, OpenGraph, SubgraphSpec};
use bangbox::EGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

const LABELS: [&str; 2] = ["a", "b"];

fn label(r: &mut Rng8) -> String {
    LABELS[r.gen_range(0..LABELS.len())].to_string()
}

/// Random interior multigraph on `n` vertices `v0..`, loops allowed.
fn interior_graph(r: &mut Rng8, n: usize, max_edges: usize) -> Graph<String> {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}"), label(r)).unwrap();
    }
    if n > 0 {
        for k in 0..r.gen_range(0..=max_edges) {
            let s = r.gen_range(0..n);
            let t = r.gen_range(0..n);
            g.add_edge(format!("e{k}"), format!("v{s}"), format!("v{t}")).unwrap();
        }
    }
    g
}

/// An open graph with at most `max_vertices` vertices; boundary vertices
/// carry the empty label.
pub fn open_graph(r: &mut Rng8, max_vertices: usize) -> OpenGraph<String> {
    let n = r.gen_range(1..=max_vertices.min(4));
    let mut g = interior_graph(r, n, 4);
    let b = r.gen_range(0..=max_vertices - n);
    let mut boundary = BTreeSet::new();
    for i in 0..b {
        let x = format!("x{i}");
        let v = format!("v{}", r.gen_range(0..n));
        g.add_vertex(x.clone(), String::new()).unwrap();
        if r.gen_bool(0.5) {
            g.add_edge(format!("bx{i}"), x.clone(), v).unwrap();
        } else {
            g.add_edge(format!("bx{i}"), v, x.clone()).unwrap();
        }
        boundary.insert(x);
    }
    OpenGraph::new(g, boundary).unwrap()
}

/// A random open subgraph: split some edges, then remove some components.
pub fn random_open_subgraph(r: &mut Rng8, g: &OpenGraph<String>) -> OpenGraph<String> {
    let edges: Vec<String> = g.graph().edge_ids().cloned().collect();
    let split_edges: Vec<String> = edges.into_iter().filter(|_| r.gen_bool(0.3)).collect();
    let (split, _) = open_subgraph(
        g,
        &SubgraphSpec {
            split_edges: split_edges.clone(),
            removed_components: vec![],
        },
    )
    .unwrap();
    let reps: Vec<String> = split
        .graph()
        .components()
        .into_iter()
        .filter(|_| r.gen_bool(0.3))
        .map(|c| c.into_iter().next().unwrap())
        .collect();
    open_subgraph(
        g,
        &SubgraphSpec {
            split_edges,
            removed_components: reps,
        },
    )
    .unwrap()
    .0
}

/// Random bijective renaming of vertex and edge ids.
pub fn rename_graph<L: Clone>(r: &mut Rng8, g: &Graph<L>) -> (Graph<L>, BTreeMap<String, String>) {
    let mut vs: Vec<String> = g.vertex_ids().cloned().collect();
    let old = vs.clone();
    vs.shuffle(r);
    let vmap: BTreeMap<String, String> = old
        .iter()
        .zip(&vs)
        .map(|(a, b)| (a.clone(), format!("r{b}")))
        .collect();
    let mut es: Vec<String> = g.edge_ids().cloned().collect();
    let old_e = es.clone();
    es.shuffle(r);
    let emap: BTreeMap<String, String> = old_e
        .iter()
        .zip(&es)
        .map(|(a, b)| (a.clone(), format!("r{b}")))
        .collect();
    (g.renamed(&vmap, &emap).unwrap(), vmap)
}

pub fn rename_open(r: &mut Rng8, g: &OpenGraph<String>) -> OpenGraph<String> {
    let (h, vmap) = rename_graph(r, g.graph());
    let boundary = g.boundary().iter().map(|v| vmap[v].clone()).collect();
    OpenGraph::new(h, boundary).unwrap()
}

pub fn rename_egraph(r: &mut Rng8, g: &EGraph<String>) -> EGraph<String> {
    let (h, vmap) = rename_graph(r, g.graph());
    let ext = g.exterior().iter().map(|v| vmap[v].clone()).collect();
    EGraph::new(h, ext).unwrap()
}

pub fn rename_bang(r: &mut Rng8, g: &BangGraph<String>) -> BangGraph<String> {
    let (h, vmap) = rename_graph(r, g.graph());
    let ext = g.egraph().exterior().iter().map(|v| vmap[v].clone()).collect();
    let boxes = g
        .boxes()
        .iter()
        .map(|(b, vs)| (format!("r{b}"), vs.iter().map(|v| vmap[v].clone()).collect()))
        .collect();
    BangGraph::new(EGraph::new(h, ext).unwrap(), boxes).unwrap()
}

/// An e-graph with at most `max_vertices` vertices, exterior vertices of
/// any degree.
pub fn egraph(r: &mut Rng8, max_vertices: usize) -> EGraph<String> {
    let n = r.gen_range(1..=max_vertices);
    let mut g = interior_graph(r, n, 6);
    let mut ext = BTreeSet::new();
    for i in 0..n {
        if r.gen_bool(0.3) {
            let v = format!("v{i}");
            g.set_label(&v, String::new()).unwrap();
            ext.insert(v);
        }
    }
    EGraph::new(g, ext).unwrap()
}

/// True when an edge joins two boundary vertices.
pub fn has_bare_wire(g: &OpenGraph<String>) -> bool {
    g.graph()
        .edges()
        .any(|(_, e)| g.is_boundary(&e.source) && g.is_boundary(&e.target))
}

/// Drops edges without an interior endpoint, then isolated exterior
/// vertices. These are the shapes that relax to bare wires or to nothing.
pub fn tidy(g: &EGraph<String>) -> EGraph<String> {
    let mut h = g.clone();
    let bad: Vec<String> = g
        .graph()
        .edges()
        .filter(|(_, e)| g.is_exterior(&e.source) && g.is_exterior(&e.target))
        .map(|(id, _)| id.clone())
        .collect();
    for e in bad {
        h.graph_mut().remove_edge(&e).unwrap();
    }
    let isolated: Vec<String> = h
        .exterior()
        .iter()
        .filter(|x| h.graph().degree(x) == 0)
        .cloned()
        .collect();
    for x in isolated {
        h.remove_vertex(&x).unwrap();
    }
    h
}

/// An e-graph without exterior-to-exterior edges or isolated exterior
/// vertices.
pub fn proper_egraph(r: &mut Rng8, max_vertices: usize) -> EGraph<String> {
    tidy(&egraph(r, max_vertices))
}

/// Turns a loop-free interior vertex of positive degree with no exterior
/// neighbour into an exterior vertex; the result is always `≤_e` the input.
pub fn exteriorize(r: &mut Rng8, g: &EGraph<String>) -> Option<EGraph<String>> {
    let graph = g.graph();
    let candidates: Vec<String> = g
        .interior()
        .filter(|v| graph.degree(v) > 0)
        .filter(|v| {
            graph.edges().all(|(_, e)| {
                let touches = e.source == **v || e.target == **v;
                let other = if e.source == **v { &e.target } else { &e.source };
                !touches || (other != *v && !g.is_exterior(other))
            })
        })
        .cloned()
        .collect();
    let v = candidates.choose(r)?;
    let mut h = g.clone();
    h.graph_mut().set_label(v, String::new()).unwrap();
    h.set_exterior(v, true).unwrap();
    Some(h)
}

/// Removes the connected component of a random vertex.
pub fn drop_component(r: &mut Rng8, g: &EGraph<String>) -> Option<EGraph<String>> {
    let vs: Vec<String> = g.graph().vertex_ids().cloned().collect();
    let v = vs.choose(r)?;
    let mut h = g.clone();
    for u in g.graph().component_of(v).unwrap() {
        h.remove_vertex(&u).unwrap();
    }
    Some(h)
}

/// One or two random `≤_e`-decreasing steps (or a renaming).
pub fn e_smaller(r: &mut Rng8, g: &EGraph<String>) -> EGraph<String> {
    let mut h = g.clone();
    for _ in 0..r.gen_range(1..=2) {
        let next = match r.gen_range(0..3) {
            0 => exteriorize(r, &h),
            1 => drop_component(r, &h),
            _ => Some(rename_egraph(r, &h)),
        };
        if let Some(n) = next {
            h = n;
        }
    }
    h
}

/// A !-graph on at most `max_vertices` vertices with up to two nonempty,
/// disjoint boxes.
pub fn bang_graph(r: &mut Rng8, max_vertices: usize) -> BangGraph<String> {
    let e = egraph(r, max_vertices);
    let mut vs: Vec<String> = e.graph().vertex_ids().cloned().collect();
    vs.shuffle(r);
    let mut boxes = BTreeMap::new();
    let n_boxes = r.gen_range(0..=2usize);
    let mut at = 0;
    for b in 0..n_boxes {
        if at >= vs.len() {
            break;
        }
        let size = r.gen_range(1..=2usize).min(vs.len() - at);
        boxes.insert(format!("b{b}"), vs[at..at + size].iter().cloned().collect());
        at += size;
    }
    BangGraph::new(e, boxes).unwrap()
}

/// A random witness for `g`: copies in `0..=max_copy`, a random drop set,
/// and random merges of unconnected pairs.
pub fn random_witness(r: &mut Rng8, g: &BangGraph<String>, max_copy: usize) -> BangWitness {
    let copies: BTreeMap<String, usize> = g
        .boxes()
        .keys()
        .filter_map(|b| {
            let c = r.gen_range(0..=max_copy);
            (c != 1).then(|| (b.clone(), c))
        })
        .collect();
    let copied = copy_boxes(&copies, g).unwrap();
    let dropped: BTreeSet<String> = copied
        .boxes()
        .keys()
        .filter(|_| r.gen_bool(0.25))
        .cloned()
        .collect();
    let after_drop = drop_boxes(&dropped, &copied).unwrap();
    let mut rest: Vec<String> = after_drop.boxes().keys().cloned().collect();
    rest.shuffle(r);
    let mut merges = Vec::new();
    while rest.len() >= 2 && r.gen_bool(0.5) {
        let a = rest.pop().unwrap();
        let b = rest.pop().unwrap();
        if !boxes_connected(&after_drop, &a, &b) {
            merges.push(BTreeSet::from([a, b]));
        }
    }
    BangWitness {
        copies,
        dropped,
        merges,
    }
}

/// Sorts merge groups so witnesses from different enumerations compare.
pub fn normal_witness(mut w: BangWitness) -> BangWitness {
    w.merges.sort();
    w
}

/// Partitions of `items` into exactly `parts` blocks.
fn set_partitions(items: &[String], parts: usize, mut f: impl FnMut(&[BTreeSet<String>])) {
    fn go(
        items: &[String],
        i: usize,
        parts: usize,
        blocks: &mut Vec<BTreeSet<String>>,
        f: &mut dyn FnMut(&[BTreeSet<String>]),
    ) {
        if blocks.len() + (items.len() - i) < parts {
            return;
        }
        if i == items.len() {
            f(blocks);
            return;
        }
        for k in 0..blocks.len() {
            blocks[k].insert(items[i].clone());
            go(items, i + 1, parts, blocks, f);
            blocks[k].remove(&items[i]);
        }
        if blocks.len() < parts {
            blocks.push(BTreeSet::from([items[i].clone()]));
            go(items, i + 1, parts, blocks, f);
            blocks.pop();
        }
    }
    go(items, 0, parts, &mut Vec::new(), &mut f);
}

/// Generate-and-test enumeration of `g ≤_! h`: every copy function with
/// counts up to `bound`, every drop set and every merge partition whose
/// result is isomorphic to `h`.
pub fn bang_match_oracle(g: &BangGraph<String>, h: &BangGraph<String>, bound: usize) -> BTreeSet<BangWitness> {
    let names: Vec<String> = g.boxes().keys().cloned().collect();
    let mut out = BTreeSet::new();
    let mut counts = vec![0usize; names.len()];
    loop {
        let copies: BTreeMap<String, usize> = names
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c != 1)
            .map(|(b, &c)| (b.clone(), c))
            .collect();
        let copied = copy_boxes(&copies, g).unwrap();
        if copied.graph().vertex_count() == h.graph().vertex_count()
            && copied.graph().edge_count() == h.graph().edge_count()
        {
            let boxes: Vec<String> = copied.boxes().keys().cloned().collect();
            for mask in 0..(1u64 << boxes.len()) {
                let dropped: BTreeSet<String> = boxes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, b)| b.clone())
                    .collect();
                let kept: Vec<String> = boxes.iter().filter(|b| !dropped.contains(*b)).cloned().collect();
                // Merging never changes which vertices are boxed.
                let boxed: usize = kept.iter().map(|b| copied.boxes()[b].len()).sum();
                if boxed != h.boxed_vertices().len() {
                    continue;
                }
                let after_drop = drop_boxes(&dropped, &copied).unwrap();
                set_partitions(&kept, h.boxes().len(), |blocks| {
                    let merges: Vec<BTreeSet<String>> =
                        blocks.iter().filter(|b| b.len() >= 2).cloned().collect();
                    if let Ok(result) = merge_boxes(&merges, &after_drop) {
                        if bang_isomorphic(&result, h) {
                            out.insert(normal_witness(BangWitness {
                                copies: copies.clone(),
                                dropped: dropped.clone(),
                                merges,
                            }));
                        }
                    }
                });
            }
        }
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
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

/// Every box-free instance of `h` with counts up to `n` is isomorphic to
/// some instance of `g` with counts up to `n_g`.
pub fn instances_contained(g: &BangGraph<String>, h: &BangGraph<String>, n: usize, n_g: usize) -> bool {
    let gi = instances(g, n_g);
    instances(h, n).iter().all(|(_, hi)| {
        let hi = BangGraph::plain(hi.clone());
        gi.iter().any(|(_, x)| {
            x.graph().vertex_count() == hi.graph().vertex_count()
                && x.graph().edge_count() == hi.graph().edge_count()
                && bang_isomorphic(&BangGraph::plain(x.clone()), &hi)
        })
    })
}

/// The copy bound needed on `g` so that its instances cover those of `h`
/// with counts up to `n`, read off the first witness of `g ≤_! h`.
pub fn covering_bound(g: &BangGraph<String>, h: &BangGraph<String>, n: usize) -> Option<usize> {
    let w = bangbox::bangbox::bang_match(g, h).into_iter().next()?;
    Some(w.copies.values().copied().max().unwrap_or(1).max(1) * n.max(1))
}

/// `g` and `h` match each other and have the same instances with counts up
/// to 2, up to isomorphism.
pub fn same_instances(g: &BangGraph<String>, h: &BangGraph<String>) -> bool {
    match (covering_bound(g, h, 2), covering_bound(h, g, 2)) {
        (Some(ng), Some(nh)) => instances_contained(g, h, 2, ng) && instances_contained(h, g, 2, nh),
        _ => false,
    }
}

/// Applies a witness, returning `None` when merging fails.
pub fn apply(w: &BangWitness, g: &BangGraph<String>) -> Option<BangGraph<String>> {
    apply_witness(w, g).ok()
}

/// Checks reflexivity, transitivity, antisymmetry up to `iso`, and the
/// finite up-set characterisation `a ≤ b ⇔ ↑b ⊆ ↑a` on `family`. Returns
/// the `≤` table for further assertions.
pub fn check_order<T>(
    family: &[T],
    le: impl Fn(&T, &T) -> bool,
    iso: impl Fn(&T, &T) -> bool,
) -> Result<Vec<Vec<bool>>, String> {
    let n = family.len();
    let t: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| le(&family[i], &family[j])).collect())
        .collect();
    for i in 0..n {
        if !t[i][i] {
            return Err(format!("not reflexive at {i}"));
        }
        for j in 0..n {
            if t[i][j] && t[j][i] && !iso(&family[i], &family[j]) {
                return Err(format!("{i} ≤ {j} ≤ {i} but not isomorphic"));
            }
            for k in 0..n {
                if t[i][j] && t[j][k] && !t[i][k] {
                    return Err(format!("{i} ≤ {j} ≤ {k} but not {i} ≤ {k}"));
                }
            }
            let up_contained = (0..n).all(|k| !t[j][k] || t[i][k]);
            if t[i][j] != up_contained {
                return Err(format!("up-set characterisation fails for {i}, {j}"));
            }
        }
    }
    Ok(t)
}

/// `k`, an open subgraph `h` of it, an open subgraph `g` of `h`, a renamed
/// `k` and an unrelated graph, all on at most six vertices. With `proper`,
/// no member has a bare wire.
pub fn open_family(seed: u64, proper: bool) -> Vec<OpenGraph<String>> {
    let mut r = rng(seed);
    let k = open_graph(&mut r, 6);
    let sub = |r: &mut Rng8, g: &OpenGraph<String>| {
        for _ in 0..20 {
            let s = random_open_subgraph(r, g);
            if s.graph().vertex_count() <= 6 && !(proper && has_bare_wire(&s)) {
                return rename_open(r, &s);
            }
        }
        rename_open(r, g)
    };
    let h = sub(&mut r, &k);
    let g = sub(&mut r, &h);
    let k2 = rename_open(&mut r, &k);
    let other = open_graph(&mut r, 6);
    vec![g, h, k, k2, other]
}

/// As [`open_family`] for e-graphs. With `proper`, no member has an
/// isolated exterior vertex or an edge between exterior vertices.
pub fn e_family(seed: u64, proper: bool) -> Vec<EGraph<String>> {
    let mut r = rng(seed);
    let pick = |r: &mut Rng8| if proper { proper_egraph(r, 6) } else { egraph(r, 6) };
    let k = pick(&mut r);
    let h = e_smaller(&mut r, &k);
    let g = e_smaller(&mut r, &h);
    let k2 = rename_egraph(&mut r, &k);
    let other = pick(&mut r);
    vec![g, h, k, k2, other]
}

/// `g`, then `h` and `k` obtained by applying random witnesses, so
/// `g ≤_! h ≤_! k`; plus a renamed `g` and an unrelated graph.
pub fn bang_family(seed: u64) -> Vec<BangGraph<String>> {
    let mut r = rng(seed);
    let g = bang_graph(&mut r, 4);
    let grow = |r: &mut Rng8, g: &BangGraph<String>| {
        for _ in 0..20 {
            let w = random_witness(r, g, 2);
            if let Some(h) = apply(&w, g) {
                if h.graph().vertex_count() <= 6 {
                    return h;
                }
            }
        }
        g.clone()
    };
    let h = grow(&mut r, &g);
    let k = grow(&mut r, &h);
    let g2 = rename_bang(&mut r, &g);
    let other = bang_graph(&mut r, 5);
    vec![g, h, k, g2, other]
}
