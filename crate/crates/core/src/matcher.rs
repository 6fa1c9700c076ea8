//! Enumeration of e-graph matchings.
//!
//! A witness of `G ≤_e H` is an exact embedding of `relax(G)` into an open
//! subgraph of `relax(H)` that respects the ♥ relation. Rather than building
//! those graphs, the search works on `G` and `H` directly:
//!
//! * interior needle vertices map injectively to interior host vertices of
//!   the same degree, and their edge-ends biject onto the host edge-ends;
//! * each needle edge maps to a host edge, or to a piece of one. A host edge
//!   can be cut at most twice, giving a source piece, a middle piece and a
//!   target piece; a needle edge *owns* the host ends its piece reaches;
//! * a needle edge-end at an exterior vertex either owns a host end sitting on
//!   a host exterior vertex, or lies on a cut point;
//! * all edge-ends of one needle exterior vertex must come from the same host
//!   vertex (♥).
//!
//! Cuts are only made where needed: the piece nearest to a host exterior end
//! always owns it. Two witnesses differing only in where an edge is cut next
//! to an exterior vertex would otherwise be reported twice.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::egraph::{relax_stub_name, EGraph};
use crate::graph::{split_edge, End, Graph, GraphMorphism, Matching, OpenGraph, SubgraphSpec};

/// Object-level label matching, threaded through the search as a state
/// (for example, an angle substitution).
pub trait LabelMatcher<L> {
    type State: Clone + std::fmt::Debug;

    fn initial(&self) -> Self::State;

    fn match_label(&self, pattern: &L, target: &L, state: &Self::State) -> Option<Self::State>;
}

/// Ignores labels.
#[derive(Clone, Copy, Debug, Default)]
pub struct AnyLabel;

impl<L> LabelMatcher<L> for AnyLabel {
    type State = ();
    fn initial(&self) {}
    fn match_label(&self, _: &L, _: &L, _: &()) -> Option<()> {
        Some(())
    }
}

/// Requires equal labels.
#[derive(Clone, Copy, Debug, Default)]
pub struct EqLabel;

impl<L: PartialEq> LabelMatcher<L> for EqLabel {
    type State = ();
    fn initial(&self) {}
    fn match_label(&self, a: &L, b: &L, _: &()) -> Option<()> {
        (a == b).then_some(())
    }
}

/// Wraps a plain predicate.
#[derive(Clone, Copy, Debug)]
pub struct PredicateLabel<F>(pub F);

impl<L, F: Fn(&L, &L) -> bool> LabelMatcher<L> for PredicateLabel<F> {
    type State = ();
    fn initial(&self) {}
    fn match_label(&self, a: &L, b: &L, _: &()) -> Option<()> {
        (self.0)(a, b).then_some(())
    }
}

#[derive(Clone, Debug)]
pub struct MatchOptions {
    /// When false, needle edges may map onto host edges of either orientation.
    pub directed: bool,
    /// Host vertices that interior needle vertices may not map to.
    pub forbidden: BTreeSet<String>,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            directed: true,
            forbidden: BTreeSet::new(),
        }
    }
}

impl MatchOptions {
    pub fn undirected() -> Self {
        MatchOptions {
            directed: false,
            ..Default::default()
        }
    }
}

/// Where a needle edge lands in the host.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct EdgeImage {
    pub host_edge: String,
    /// The needle source end lies on the host target side.
    pub reversed: bool,
    /// Whether the needle's source end reaches the host edge's endpoint
    /// (rather than a cut point).
    pub owns_source: bool,
    pub owns_target: bool,
}

impl EdgeImage {
    /// Host end corresponding to a needle end.
    pub fn host_end(&self, needle_end: End) -> End {
        if self.reversed {
            needle_end.flip()
        } else {
            needle_end
        }
    }

    pub fn owns(&self, needle_end: End) -> bool {
        match needle_end {
            End::Source => self.owns_source,
            End::Target => self.owns_target,
        }
    }

    /// Does the image reach the host end `host`?
    pub fn owns_host(&self, host: End) -> bool {
        self.owns(if self.reversed { host.flip() } else { host })
    }

    pub fn piece(&self) -> Piece {
        match (self.owns_host(End::Source), self.owns_host(End::Target)) {
            (true, true) => Piece::Whole,
            (true, false) => Piece::SourceSide,
            (false, true) => Piece::TargetSide,
            (false, false) => Piece::Middle,
        }
    }
}

/// Which part of a host edge a needle edge occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Whole,
    SourceSide,
    Middle,
    TargetSide,
}

/// One witness, expressed against the unrelaxed graphs.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Assignment<S> {
    /// Interior needle vertex → interior host vertex.
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, EdgeImage>,
    /// Needle exterior vertex (of nonzero degree) → the host vertex its
    /// edge-ends come from.
    pub heart: BTreeMap<String, String>,
    pub state: S,
}

impl<S> Assignment<S> {
    /// Host edges each used, with the pieces taken.
    pub fn host_pieces(&self) -> BTreeMap<String, Vec<(Piece, String)>> {
        let mut out: BTreeMap<String, Vec<(Piece, String)>> = BTreeMap::new();
        for (n, img) in &self.edge_map {
            out.entry(img.host_edge.clone())
                .or_default()
                .push((img.piece(), n.clone()));
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// Builds the explicit open subgraph of `relax(host)` and the exact
    /// embedding of `relax(needle)` into it.
    pub fn to_matching<L: Clone + Default>(
        &self,
        needle: &EGraph<L>,
        host: &EGraph<L>,
    ) -> Matching {
        let (relaxed_host, _) = host.relax();
        let mut current: OpenGraph<L> = relaxed_host;
        let mut spec = SubgraphSpec::default();
        // piece → edge id in the subgraph; cut points per piece end.
        let mut piece_edge: BTreeMap<(String, Piece), String> = BTreeMap::new();
        let mut cut_vertex: BTreeMap<(String, Piece, End), String> = BTreeMap::new();
        for (h, pieces) in self.host_pieces() {
            let kinds: BTreeSet<Piece> = pieces.iter().map(|(p, _)| *p).collect();
            if kinds.contains(&Piece::Whole) {
                piece_edge.insert((h.clone(), Piece::Whole), h.clone());
                continue;
            }
            let (first, second) = crate::graph::split_names(current.graph(), &h);
            current = split_edge(&current, &h).expect("host edge exists").0;
            spec.split_edges.push(h.clone());
            // first: s(h) -> first ; second: second -> t(h)
            piece_edge.insert((h.clone(), Piece::TargetSide), second.clone());
            cut_vertex.insert((h.clone(), Piece::TargetSide, End::Source), second.clone());
            if kinds.contains(&Piece::Middle) {
                let (q1, q2) = crate::graph::split_names(current.graph(), &first);
                current = split_edge(&current, &first).expect("half exists").0;
                spec.split_edges.push(first.clone());
                piece_edge.insert((h.clone(), Piece::SourceSide), q1.clone());
                cut_vertex.insert((h.clone(), Piece::SourceSide, End::Target), q1);
                piece_edge.insert((h.clone(), Piece::Middle), q2.clone());
                cut_vertex.insert((h.clone(), Piece::Middle, End::Source), q2);
                cut_vertex.insert((h.clone(), Piece::Middle, End::Target), first.clone());
            } else {
                piece_edge.insert((h.clone(), Piece::SourceSide), first.clone());
                cut_vertex.insert((h.clone(), Piece::SourceSide, End::Target), first.clone());
            }
        }

        let mut embedding = GraphMorphism::default();
        for (v, w) in &self.vertex_map {
            embedding.vertex_map.insert(v.clone(), w.clone());
        }
        let ng = needle.graph();
        let hg = host.graph();
        for (n, img) in &self.edge_map {
            let piece = img.piece();
            let edge_id = piece_edge[&(img.host_edge.clone(), piece)].clone();
            embedding.edge_map.insert(n.clone(), edge_id);
            let ne = ng.edge(n).expect("needle edge");
            for end in [End::Source, End::Target] {
                let nv = match end {
                    End::Source => &ne.source,
                    End::Target => &ne.target,
                };
                if !needle.is_exterior(nv) {
                    continue;
                }
                let stub = relax_stub_name(ng, nv, n, end);
                let hend = img.host_end(end);
                let image = if img.owns(end) {
                    let he = hg.edge(&img.host_edge).expect("host edge");
                    let hv = match hend {
                        End::Source => &he.source,
                        End::Target => &he.target,
                    };
                    relax_stub_name(hg, hv, &img.host_edge, hend)
                } else {
                    cut_vertex[&(img.host_edge.clone(), piece, hend)].clone()
                };
                embedding.vertex_map.insert(stub, image);
            }
        }
        Matching {
            subgraph: spec,
            embedding,
        }
    }
}

struct Indexed<'a, L> {
    ids: Vec<&'a str>,
    labels: Vec<&'a L>,
    exterior: Vec<bool>,
    edge_ids: Vec<&'a str>,
    ends: Vec<[usize; 2]>,
    incident: Vec<Vec<(usize, End)>>,
}

impl<'a, L> Indexed<'a, L> {
    fn new(g: &'a Graph<L>, exterior: &BTreeSet<String>) -> Self {
        let ids: Vec<&str> = g.vertex_ids().map(|s| s.as_str()).collect();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut incident = vec![Vec::new(); ids.len()];
        let mut edge_ids = Vec::new();
        let mut ends = Vec::new();
        for (k, (id, e)) in g.edges().enumerate() {
            let s = index[e.source.as_str()];
            let t = index[e.target.as_str()];
            edge_ids.push(id.as_str());
            ends.push([s, t]);
            incident[s].push((k, End::Source));
            incident[t].push((k, End::Target));
        }
        Indexed {
            labels: ids.iter().map(|v| g.label(v).unwrap()).collect(),
            exterior: ids.iter().map(|v| exterior.contains(*v)).collect(),
            ids,
            edge_ids,
            ends,
            incident,
        }
    }

    fn end_vertex(&self, e: usize, end: End) -> usize {
        match end {
            End::Source => self.ends[e][0],
            End::Target => self.ends[e][1],
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Img {
    h: usize,
    rev: bool,
    // ownership per needle end: [source, target]
    own: [bool; 2],
}

impl Img {
    fn host_end(&self, e: End) -> End {
        if self.rev {
            e.flip()
        } else {
            e
        }
    }
    fn owns_host(&self, host: End) -> bool {
        let n = if self.rev { host.flip() } else { host };
        self.own[end_ix(n)]
    }
    fn piece(&self) -> Piece {
        match (self.owns_host(End::Source), self.owns_host(End::Target)) {
            (true, true) => Piece::Whole,
            (true, false) => Piece::SourceSide,
            (false, true) => Piece::TargetSide,
            (false, false) => Piece::Middle,
        }
    }
}

fn end_ix(e: End) -> usize {
    match e {
        End::Source => 0,
        End::Target => 1,
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct Usage {
    whole: bool,
    source_side: bool,
    middle: bool,
    target_side: bool,
}

impl Usage {
    fn slot(&mut self, p: Piece) -> &mut bool {
        match p {
            Piece::Whole => &mut self.whole,
            Piece::SourceSide => &mut self.source_side,
            Piece::Middle => &mut self.middle,
            Piece::TargetSide => &mut self.target_side,
        }
    }
    fn is_empty(&self) -> bool {
        !(self.whole || self.source_side || self.middle || self.target_side)
    }
    fn can_take(&self, p: Piece) -> bool {
        match p {
            Piece::Whole => self.is_empty(),
            Piece::SourceSide => !self.whole && !self.source_side,
            Piece::Middle => !self.whole && !self.middle,
            Piece::TargetSide => !self.whole && !self.target_side,
        }
    }
    fn owns(&self, host: End) -> bool {
        self.whole
            || match host {
                End::Source => self.source_side,
                End::Target => self.target_side,
            }
    }
}

struct Search<'a, 'm, L, M: LabelMatcher<L>> {
    n: Indexed<'a, L>,
    h: Indexed<'a, L>,
    labels: &'m M,
    directed: bool,
    forbidden: Vec<bool>,
    order: Vec<usize>,
    host_order: Vec<usize>,
    vmap: Vec<usize>,
    hused: Vec<bool>,
    emap: Vec<Option<Img>>,
    usage: Vec<Usage>,
    heart: Vec<usize>,
    heart_refs: Vec<usize>,
    states: Vec<M::State>,
}

type Sink<'s, S> = dyn FnMut(Assignment<S>) -> ControlFlow<()> + 's;

impl<'a, 'm, L, M: LabelMatcher<L>> Search<'a, 'm, L, M> {
    fn new(needle: &'a EGraph<L>, host: &'a EGraph<L>, labels: &'m M, opts: &MatchOptions) -> Self {
        let n = Indexed::new(needle.graph(), needle.exterior());
        let h = Indexed::new(host.graph(), host.exterior());
        let forbidden = h.ids.iter().map(|v| opts.forbidden.contains(*v)).collect();

        // Needle interior vertices: highest degree first, then stay connected.
        let mut order = Vec::new();
        let mut placed = vec![false; n.ids.len()];
        let interior: Vec<usize> = (0..n.ids.len()).filter(|&v| !n.exterior[v]).collect();
        while order.len() < interior.len() {
            let adjacent = |v: usize| {
                n.incident[v].iter().any(|&(e, end)| {
                    let o = n.end_vertex(e, end.flip());
                    placed[o] && !n.exterior[o]
                })
            };
            let pick = interior
                .iter()
                .copied()
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (adjacent(a), n.degree(a))
                        .cmp(&(adjacent(b), n.degree(b)))
                        .then(b.cmp(&a))
                })
                .unwrap();
            placed[pick] = true;
            order.push(pick);
        }

        let mut host_order: Vec<usize> = (0..h.ids.len()).filter(|&v| !h.exterior[v]).collect();
        host_order.sort_by(|&a, &b| h.degree(b).cmp(&h.degree(a)).then(a.cmp(&b)));

        let nv = n.ids.len();
        let ne = n.edge_ids.len();
        let hv = h.ids.len();
        let he = h.edge_ids.len();
        Search {
            labels,
            directed: opts.directed,
            forbidden,
            order,
            host_order,
            vmap: vec![NONE; nv],
            hused: vec![false; hv],
            emap: vec![None; ne],
            usage: vec![Usage::default(); he],
            heart: vec![NONE; nv],
            heart_refs: vec![0; nv],
            states: vec![labels.initial()],
            n,
            h,
        }
    }

    fn host_vertex_ok(&self, nv: usize, hv: usize) -> bool {
        !self.h.exterior[hv]
            && !self.hused[hv]
            && !self.forbidden[hv]
            && self.n.degree(nv) == self.h.degree(hv)
    }

    /// Tries to record needle edge `e` as image `img`; returns false without
    /// side effects when inconsistent.
    fn place(&mut self, e: usize, img: Img) -> bool {
        let piece = img.piece();
        if !self.usage[img.h].can_take(piece) {
            return false;
        }
        let mut new_hearts: Vec<(usize, usize)> = Vec::with_capacity(2);
        for end in [End::Source, End::Target] {
            let nv = self.n.end_vertex(e, end);
            let hv = self.h.end_vertex(img.h, img.host_end(end));
            let owned = img.own[end_ix(end)];
            if self.n.exterior[nv] {
                if owned && !self.h.exterior[hv] {
                    return false;
                }
                let expected = if self.heart[nv] != NONE {
                    Some(self.heart[nv])
                } else {
                    new_hearts.iter().find(|(v, _)| *v == nv).map(|&(_, w)| w)
                };
                if expected.is_some_and(|w| w != hv) {
                    return false;
                }
                new_hearts.push((nv, hv));
            } else {
                if !owned {
                    return false;
                }
                let mapped = self.vmap[nv];
                if mapped != NONE {
                    if mapped != hv {
                        return false;
                    }
                } else if !self.host_vertex_ok(nv, hv) {
                    return false;
                }
            }
        }
        *self.usage[img.h].slot(piece) = true;
        self.emap[e] = Some(img);
        for (nv, hv) in new_hearts {
            self.heart[nv] = hv;
            self.heart_refs[nv] += 1;
        }
        true
    }

    fn unplace(&mut self, e: usize) {
        let img = self.emap[e].take().expect("placed");
        *self.usage[img.h].slot(img.piece()) = false;
        for end in [End::Source, End::Target] {
            let nv = self.n.end_vertex(e, end);
            if self.n.exterior[nv] {
                self.heart_refs[nv] -= 1;
                if self.heart_refs[nv] == 0 {
                    self.heart[nv] = NONE;
                }
            }
        }
    }

    /// Ownership options for needle end `end` of edge `e` mapped onto host
    /// end `hend` of host edge `h`.
    fn own_options(&self, e: usize, end: End, h: usize, hend: End) -> &'static [bool] {
        let nv = self.n.end_vertex(e, end);
        if !self.n.exterior[nv] {
            &[true]
        } else if self.h.exterior[self.h.end_vertex(h, hend)] {
            &[true, false]
        } else {
            &[false]
        }
    }

    fn run(&mut self, sink: &mut Sink<'_, M::State>) -> ControlFlow<()> {
        self.extend_vertex(0, sink)
    }

    fn extend_vertex(&mut self, depth: usize, sink: &mut Sink<'_, M::State>) -> ControlFlow<()> {
        if depth == self.order.len() {
            return self.extend_wires(sink);
        }
        let v = self.order[depth];
        // A vertex reached through an already placed edge has a forced image.
        let forced = self.n.incident[v].iter().find_map(|&(e, end)| {
            self.emap[e].map(|img| self.h.end_vertex(img.h, img.host_end(end)))
        });
        let candidates: Vec<usize> = match forced {
            Some(w) => vec![w],
            None => self.host_order.clone(),
        };
        for w in candidates {
            if !self.host_vertex_ok(v, w) {
                continue;
            }
            let state = self.states.last().unwrap();
            let Some(next) = self.labels.match_label(self.n.labels[v], self.h.labels[w], state)
            else {
                continue;
            };
            // Edges placed earlier must land at w on this side.
            let consistent = self.n.incident[v].iter().all(|&(e, end)| match self.emap[e] {
                Some(img) => self.h.end_vertex(img.h, img.host_end(end)) == w,
                None => true,
            });
            if !consistent {
                continue;
            }
            self.states.push(next);
            self.vmap[v] = w;
            self.hused[w] = true;
            let pending: Vec<(usize, End)> = self.n.incident[v]
                .iter()
                .copied()
                .filter(|&(e, end)| {
                    self.emap[e].is_none()
                        // a self-loop is handled once, from its source end
                        && !(end == End::Target && self.n.ends[e][0] == self.n.ends[e][1])
                })
                .collect();
            let flow = self.assign_ends(v, w, &pending, 0, depth, sink);
            self.hused[w] = false;
            self.vmap[v] = NONE;
            self.states.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_ends(
        &mut self,
        v: usize,
        w: usize,
        pending: &[(usize, End)],
        k: usize,
        depth: usize,
        sink: &mut Sink<'_, M::State>,
    ) -> ControlFlow<()> {
        if k == pending.len() {
            return self.extend_vertex(depth + 1, sink);
        }
        let (e, end) = pending[k];
        let is_loop = self.n.ends[e][0] == self.n.ends[e][1];
        let host_ends = self.h.incident[w].clone();
        for (h, hend) in host_ends {
            if self.usage[h].owns(hend) {
                continue;
            }
            let rev = hend != end;
            if rev && self.directed {
                continue;
            }
            if is_loop {
                // Needle loop onto a free host loop at w, whole.
                if rev || self.h.ends[h][0] != self.h.ends[h][1] || !self.usage[h].is_empty() {
                    continue;
                }
                let img = Img {
                    h,
                    rev: false,
                    own: [true, true],
                };
                if self.place(e, img) {
                    let flow = self.assign_ends(v, w, pending, k + 1, depth, sink);
                    self.unplace(e);
                    flow?;
                }
                continue;
            }
            let other = end.flip();
            for &own_other in self.own_options(e, other, h, hend.flip()) {
                let mut own = [false; 2];
                own[end_ix(end)] = true;
                own[end_ix(other)] = own_other;
                let img = Img { h, rev, own };
                if self.place(e, img) {
                    let flow = self.assign_ends(v, w, pending, k + 1, depth, sink);
                    self.unplace(e);
                    flow?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// Needle edges with both ends exterior.
    fn extend_wires(&mut self, sink: &mut Sink<'_, M::State>) -> ControlFlow<()> {
        let Some(e) = (0..self.emap.len()).find(|&e| self.emap[e].is_none()) else {
            return self.emit(sink);
        };
        let orientations: &[bool] = if self.directed { &[false] } else { &[false, true] };
        for h in 0..self.h.edge_ids.len() {
            for &rev in orientations {
                let hs = if rev { End::Target } else { End::Source };
                for &own_s in self.own_options(e, End::Source, h, hs) {
                    for &own_t in self.own_options(e, End::Target, h, hs.flip()) {
                        let img = Img {
                            h,
                            rev,
                            own: [own_s, own_t],
                        };
                        if self.place(e, img) {
                            let flow = self.extend_wires(sink);
                            self.unplace(e);
                            flow?;
                        }
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn canonical(&self) -> bool {
        for (h, u) in self.usage.iter().enumerate() {
            if u.is_empty() || u.whole {
                continue;
            }
            let s_exterior = self.h.exterior[self.h.ends[h][0]];
            let t_exterior = self.h.exterior[self.h.ends[h][1]];
            // The piece nearest an exterior end must reach it.
            if s_exterior && !u.source_side {
                return false;
            }
            if t_exterior && !u.target_side {
                return false;
            }
        }
        true
    }

    fn emit(&mut self, sink: &mut Sink<'_, M::State>) -> ControlFlow<()> {
        if !self.canonical() {
            return ControlFlow::Continue(());
        }
        let mut a = Assignment {
            vertex_map: BTreeMap::new(),
            edge_map: BTreeMap::new(),
            heart: BTreeMap::new(),
            state: self.states.last().unwrap().clone(),
        };
        for (v, &w) in self.vmap.iter().enumerate() {
            if w != NONE {
                a.vertex_map
                    .insert(self.n.ids[v].to_string(), self.h.ids[w].to_string());
            }
        }
        for (e, img) in self.emap.iter().enumerate() {
            let img = img.expect("complete");
            a.edge_map.insert(
                self.n.edge_ids[e].to_string(),
                EdgeImage {
                    host_edge: self.h.edge_ids[img.h].to_string(),
                    reversed: img.rev,
                    owns_source: img.own[0],
                    owns_target: img.own[1],
                },
            );
        }
        for (v, &w) in self.heart.iter().enumerate() {
            if w != NONE {
                a.heart
                    .insert(self.n.ids[v].to_string(), self.h.ids[w].to_string());
            }
        }
        sink(a)
    }
}

/// Calls `sink` on each witness of `needle ≤_e host` in deterministic order
/// until it breaks.
pub fn for_each_match<L, M>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    labels: &M,
    opts: &MatchOptions,
    mut sink: impl FnMut(Assignment<M::State>) -> ControlFlow<()>,
) where
    M: LabelMatcher<L>,
{
    let mut search = Search::new(needle, host, labels, opts);
    let _ = search.run(&mut sink);
}

pub fn all_matches<L, M: LabelMatcher<L>>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    labels: &M,
    opts: &MatchOptions,
) -> Vec<Assignment<M::State>> {
    let mut out = Vec::new();
    for_each_match(needle, host, labels, opts, |a| {
        out.push(a);
        ControlFlow::Continue(())
    });
    out
}

pub fn first_match<L, M: LabelMatcher<L>>(
    needle: &EGraph<L>,
    host: &EGraph<L>,
    labels: &M,
    opts: &MatchOptions,
) -> Option<Assignment<M::State>> {
    let mut out = None;
    for_each_match(needle, host, labels, opts, |a| {
        out = Some(a);
        ControlFlow::Break(())
    });
    out
}
