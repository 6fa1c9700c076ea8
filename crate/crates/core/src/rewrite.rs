//! Pattern matching, rewriting and normalisation.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::bangbox::{copy_boxes, copy_bound, boxes_connected, BangWitness, GraphPattern};
use crate::egraph::{EGraph, EMatch};
use crate::error::{Error, Result};
use crate::graph::{End, Graph};
use crate::label::VertexLabel;
use crate::matcher::{for_each_match, MatchOptions, Piece};
use crate::rule::{pattern_size, LabelTheory, Rule, TheoryMatcher};

/// A witness of `g ≤_p h`: the !-box operations turning `g` into `g'` and an
/// e-match of `g'` into `h`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PatternMatch<S> {
    pub witness: BangWitness,
    pub ematch: EMatch<S>,
}

/// How host boxes constrain a match.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BoxMode {
    /// Every needle box is dropped and nothing lands inside a host box.
    Rewrite,
    /// Kept needle boxes must cover host boxes exactly.
    General,
}

/// Linear bookkeeping for how copying changes sizes and degrees, used to
/// prune copy vectors before building graphs.
struct CopyProfile {
    boxes: Vec<String>,
    /// Box index of each interior vertex, if boxed.
    interior: Vec<Option<usize>>,
    /// For each interior vertex, per incident edge end, the boxes whose copy
    /// counts multiply that end.
    degree_terms: Vec<Vec<Vec<usize>>>,
    /// Per edge, the distinct boxes of its endpoints.
    edge_terms: Vec<Vec<usize>>,
}

impl CopyProfile {
    fn new<L>(g: &GraphPattern<L>) -> Self {
        let boxes: Vec<String> = g.boxes().keys().cloned().collect();
        let index = |v: &str| -> Option<usize> {
            g.box_of(v).map(|b| boxes.iter().position(|x| x == b).unwrap())
        };
        let graph = g.graph();
        let mut interior = Vec::new();
        let mut degree_terms = Vec::new();
        for v in g.egraph().interior() {
            let own = index(v);
            interior.push(own);
            let mut terms = Vec::new();
            for (e, end) in graph.incident_ends(v) {
                let edge = graph.edge(&e).unwrap();
                let other = match end {
                    End::Source => &edge.target,
                    End::Target => &edge.source,
                };
                let ob = index(other);
                terms.push(if ob.is_some() && ob != own {
                    vec![ob.unwrap()]
                } else {
                    vec![]
                });
            }
            degree_terms.push(terms);
        }
        let edge_terms = graph
            .edges()
            .map(|(_, e)| {
                let mut t: Vec<usize> = [index(&e.source), index(&e.target)]
                    .into_iter()
                    .flatten()
                    .collect();
                t.dedup();
                t
            })
            .collect();
        CopyProfile {
            boxes,
            interior,
            degree_terms,
            edge_terms,
        }
    }

    fn product(c: &[usize], t: &[usize]) -> usize {
        t.iter().map(|&b| c[b]).product()
    }

    fn counts(&self, c: &[usize]) -> (usize, usize, Vec<usize>) {
        let mut interior = 0;
        let mut degrees = Vec::new();
        for (i, own) in self.interior.iter().enumerate() {
            let mult = own.map_or(1, |b| c[b]);
            if mult == 0 {
                continue;
            }
            interior += mult;
            let d: usize = self.degree_terms[i].iter().map(|t| Self::product(c, t)).sum();
            degrees.push(d);
        }
        let edges = self.edge_terms.iter().map(|t| Self::product(c, t)).sum();
        (interior, edges, degrees)
    }
}

struct HostProfile {
    interior: usize,
    edges: usize,
    degrees: BTreeSet<usize>,
}

impl HostProfile {
    fn new<L>(h: &EGraph<L>) -> Self {
        HostProfile {
            interior: h.interior_count(),
            edges: h.graph().edge_count(),
            degrees: h.interior().map(|v| h.graph().degree(v)).collect(),
        }
    }

    /// Can a needle with these counts (unassigned boxes at zero) still grow
    /// into something that matches?
    fn admits_partial(&self, (interior, edges, degrees): &(usize, usize, Vec<usize>)) -> bool {
        let max_deg = self.degrees.iter().next_back().copied().unwrap_or(0);
        *interior <= self.interior && *edges <= 3 * self.edges && degrees.iter().all(|d| *d <= max_deg)
    }

    fn admits(&self, counts: &(usize, usize, Vec<usize>)) -> bool {
        self.admits_partial(counts) && counts.2.iter().all(|d| self.degrees.contains(d))
    }
}

/// Copy vectors that pass the size and degree filters, in lexicographic
/// order of counts.
fn candidate_copies<L>(g: &GraphPattern<L>, host: &EGraph<L>, bound: usize) -> Vec<BTreeMap<String, usize>> {
    let profile = CopyProfile::new(g);
    let hp = HostProfile::new(host);
    let n = profile.boxes.len();
    let mut out = Vec::new();
    let mut c = vec![0usize; n];
    fn go(
        i: usize,
        c: &mut Vec<usize>,
        p: &CopyProfile,
        hp: &HostProfile,
        bound: usize,
        out: &mut Vec<BTreeMap<String, usize>>,
    ) {
        if i == c.len() {
            if hp.admits(&p.counts(c)) {
                out.push(
                    p.boxes
                        .iter()
                        .zip(c.iter())
                        .filter(|(_, &k)| k != 1)
                        .map(|(b, &k)| (b.clone(), k))
                        .collect(),
                );
            }
            return;
        }
        for k in 0..=bound {
            c[i] = k;
            if !hp.admits_partial(&p.counts(c)) {
                break;
            }
            go(i + 1, c, p, hp, bound, out);
        }
        c[i] = 0;
    }
    if !hp.admits_partial(&profile.counts(&c)) {
        return out;
    }
    go(0, &mut c, &profile, &hp, bound, &mut out);
    out
}

/// Copy bound for `≤_p`. Exterior legs land on edge pieces rather than
/// vertices, so every host edge can absorb up to three copies.
pub fn pattern_copy_bound<L>(h: &GraphPattern<L>) -> usize {
    copy_bound(h) + 3 * h.graph().edge_count()
}

fn for_each_pattern_match<T: LabelTheory>(
    model: &T,
    g: &GraphPattern<T::Label>,
    h: &GraphPattern<T::Label>,
    mode: BoxMode,
    sink: &mut dyn FnMut(PatternMatch<T::Subst>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let host = h.egraph();
    let boxed = h.boxed_vertices();
    let host_box: BTreeMap<&String, &String> = h
        .boxes()
        .iter()
        .flat_map(|(b, vs)| vs.iter().map(move |v| (v, b)))
        .collect();
    let mut opts = if model.directed() {
        MatchOptions::default()
    } else {
        MatchOptions::undirected()
    };
    if mode == BoxMode::Rewrite {
        opts.forbidden = boxed.clone();
    }
    let labels = TheoryMatcher(model);
    for copies in candidate_copies(g, host, pattern_copy_bound(h)) {
        let Ok(gc) = copy_boxes(&copies, g) else { continue };
        let mut flow = ControlFlow::Continue(());
        for_each_match(gc.egraph(), host, &labels, &opts, |m| {
            let witness = match mode {
                BoxMode::Rewrite => {
                    if m.heart.values().any(|w| boxed.contains(w)) {
                        return ControlFlow::Continue(());
                    }
                    BangWitness {
                        copies: copies.clone(),
                        dropped: gc.boxes().keys().cloned().collect(),
                        merges: Vec::new(),
                    }
                }
                BoxMode::General => match box_assignment(&gc, h, &host_box, &m) {
                    Some(w) => BangWitness {
                        copies: copies.clone(),
                        ..w
                    },
                    None => return ControlFlow::Continue(()),
                },
            };
            flow = sink(PatternMatch { witness, ematch: m });
            flow
        });
        flow?;
    }
    ControlFlow::Continue(())
}

/// Decides which boxes of the copied needle are dropped and which merge
/// onto host boxes. A vertex's image is its host vertex (interior) or its
/// heart (exterior).
fn box_assignment<L, S>(
    gc: &GraphPattern<L>,
    h: &GraphPattern<L>,
    host_box: &BTreeMap<&String, &String>,
    m: &EMatch<S>,
) -> Option<BangWitness> {
    let image = |v: &String| m.vertex_map.get(v).or_else(|| m.heart.get(v));
    let boxed_in_g = gc.boxed_vertices();
    // Unboxed needle vertices must stay clear of host boxes.
    for v in gc.graph().vertex_ids() {
        if boxed_in_g.contains(v) {
            continue;
        }
        if let Some(w) = image(v) {
            if host_box.contains_key(w) {
                return None;
            }
        }
    }
    let mut dropped = BTreeSet::new();
    let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (b, vs) in gc.boxes() {
        let imgs: BTreeSet<&String> = vs.iter().filter_map(image).collect();
        let targets: BTreeSet<Option<&&String>> = imgs.iter().map(|w| host_box.get(*w)).collect();
        match targets.into_iter().collect::<Vec<_>>().as_slice() {
            [] | [None] => {
                dropped.insert(b.clone());
            }
            [Some(t)] => {
                groups.entry((**t).clone()).or_default().insert(b.clone());
            }
            _ => return None,
        }
    }
    for (t, members) in &groups {
        let covered: BTreeSet<String> = members
            .iter()
            .flat_map(|b| gc.boxes()[b].iter().filter_map(image).cloned())
            .collect();
        if &covered != &h.boxes()[t] {
            return None;
        }
        let ms: Vec<&String> = members.iter().collect();
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                if boxes_connected(gc, a, b) {
                    return None;
                }
            }
        }
    }
    Some(BangWitness {
        copies: BTreeMap::new(),
        dropped,
        merges: groups.into_values().filter(|m| m.len() >= 2).collect(),
    })
}

/// All witnesses of `g ≤_p h`, copy counts bounded by [`pattern_copy_bound`].
pub fn pattern_match<T: LabelTheory>(
    model: &T,
    g: &GraphPattern<T::Label>,
    h: &GraphPattern<T::Label>,
) -> Vec<PatternMatch<T::Subst>> {
    let mut out = Vec::new();
    let _ = for_each_pattern_match(model, g, h, BoxMode::General, &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    });
    out
}

/// Matches of a rule's left side usable for rewriting `target`: every left
/// box is dropped and nothing touches a target box. The rule should already
/// be renamed apart from the target's variables.
pub fn rewrite_matches<T: LabelTheory>(
    model: &T,
    rule: &Rule<T::Label>,
    target: &GraphPattern<T::Label>,
) -> Vec<PatternMatch<T::Subst>> {
    let mut out = Vec::new();
    let _ = for_each_pattern_match(model, &rule.lhs, target, BoxMode::Rewrite, &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    });
    out
}

fn pattern_variables<L: VertexLabel>(p: &GraphPattern<L>) -> BTreeSet<String> {
    p.graph().vertices().flat_map(|(_, l)| l.variables()).collect()
}

/// Renames the rule's variables apart from the target's.
pub fn prepare_rule<T: LabelTheory>(
    rule: &Rule<T::Label>,
    target: &GraphPattern<T::Label>,
) -> Rule<T::Label> {
    rule.rename_variables_apart(&pattern_variables(target))
}

/// Rewrites `target` with `rule` at `m`, after checking that `m` is still a
/// valid rewrite match (otherwise [`Error::StaleWitness`]).
pub fn rewrite_once<T: LabelTheory>(
    model: &T,
    rule: &Rule<T::Label>,
    target: &GraphPattern<T::Label>,
    m: &PatternMatch<T::Subst>,
) -> Result<GraphPattern<T::Label>> {
    let fresh = rewrite_matches(model, rule, target);
    if !fresh.iter().any(|f| f == m) {
        return Err(Error::StaleWitness(format!(
            "match of {} no longer applies",
            rule.name
        )));
    }
    rewrite_unchecked(model, rule, target, m)
}

struct UnionFind {
    parent: BTreeMap<String, String>,
}

impl UnionFind {
    fn find(&mut self, x: &str) -> String {
        let p = self.parent.get(x).cloned().unwrap_or_else(|| x.to_string());
        if p == x {
            self.parent.insert(x.to_string(), p.clone());
            return p;
        }
        let r = self.find(&p);
        self.parent.insert(x.to_string(), r.clone());
        r
    }

    fn union(&mut self, a: &str, b: &str) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra, rb);
        }
    }
}

fn needle_key(x: &str) -> String {
    format!("n:{x}")
}

fn host_key(x: &str) -> String {
    format!("h:{x}")
}

/// The double-pushout step: cut out the match image, glue the instantiated
/// right side back along the exterior points, then smooth away the free
/// points that only joined two wire segments.
pub fn rewrite_unchecked<T: LabelTheory>(
    model: &T,
    rule: &Rule<T::Label>,
    target: &GraphPattern<T::Label>,
    m: &PatternMatch<T::Subst>,
) -> Result<GraphPattern<T::Label>> {
    let copies = &m.witness.copies;
    let lc = copy_boxes(copies, &rule.lhs)?;
    let rcopies: BTreeMap<String, usize> = copies
        .iter()
        .filter_map(|(b, &n)| rule.box_map.get(b).map(|b2| (b2.clone(), n)))
        .collect();
    let rc = copy_boxes(&rcopies, &rule.rhs)?;
    if lc.egraph().exterior() != rc.egraph().exterior() {
        return Err(Error::Rewrite(format!(
            "{}: instantiated sides disagree on exterior vertices",
            rule.name
        )));
    }
    let a = &m.ematch;
    let hg = target.graph();
    let ng = lc.graph();

    // Points where the right side reattaches.
    let mut uf = UnionFind {
        parent: BTreeMap::new(),
    };
    for x in lc.egraph().exterior() {
        uf.find(&needle_key(x));
    }
    let mut cuts: BTreeMap<(String, usize), Vec<String>> = BTreeMap::new();
    let pieces = a.host_pieces();
    for (n, img) in &a.edge_map {
        let ne = ng
            .edge(n)
            .ok_or_else(|| Error::StaleWitness(format!("needle edge {n}")))?;
        let he = hg
            .edge(&img.host_edge)
            .ok_or_else(|| Error::StaleWitness(format!("host edge {}", img.host_edge)))?;
        let has_mid = pieces[&img.host_edge]
            .iter()
            .any(|(p, _)| *p == Piece::Middle);
        for end in [End::Source, End::Target] {
            let x = match end {
                End::Source => &ne.source,
                End::Target => &ne.target,
            };
            if !lc.egraph().is_exterior(x) {
                continue;
            }
            let hend = img.host_end(end);
            if img.owns(end) {
                let w = match hend {
                    End::Source => &he.source,
                    End::Target => &he.target,
                };
                uf.union(&needle_key(x), &host_key(w));
                continue;
            }
            let cut = match (img.piece(), hend) {
                (Piece::SourceSide, _) => 0,
                (Piece::Middle, End::Source) => 0,
                (Piece::Middle, End::Target) => 1,
                (Piece::TargetSide, _) => usize::from(has_mid),
                (Piece::Whole, _) => unreachable!("whole pieces own both ends"),
            };
            cuts.entry((img.host_edge.clone(), cut))
                .or_default()
                .push(x.clone());
        }
    }
    for ((h, cut), members) in &cuts {
        let kinds: BTreeSet<Piece> = pieces[h].iter().map(|(p, _)| *p).collect();
        let has_mid = kinds.contains(&Piece::Middle);
        let last = usize::from(has_mid);
        let he = hg.edge(h).unwrap();
        for w in members.windows(2) {
            uf.union(&needle_key(&w[0]), &needle_key(&w[1]));
        }
        if *cut == 0 && !kinds.contains(&Piece::SourceSide) {
            uf.union(&needle_key(&members[0]), &host_key(&he.source));
        }
        if *cut == last && !kinds.contains(&Piece::TargetSide) {
            uf.union(&needle_key(&members[0]), &host_key(&he.target));
        }
    }

    // Cut out the image.
    let mut graph: Graph<T::Label> = hg.clone();
    for h in pieces.keys() {
        graph.remove_edge(h)?;
    }
    for w in a.vertex_map.values() {
        graph.remove_vertex(w)?;
    }

    // Resolve each class of points to a host vertex or a fresh free point.
    let mut point_of: BTreeMap<String, String> = BTreeMap::new();
    let mut free = BTreeSet::new();
    let keys: Vec<String> = uf.parent.keys().cloned().collect();
    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for k in keys {
        let r = uf.find(&k);
        classes.entry(r).or_default().push(k);
    }
    for members in classes.values() {
        let hosts: Vec<&str> = members.iter().filter_map(|k| k.strip_prefix("h:")).collect();
        let point = match hosts.as_slice() {
            [] => {
                let p = graph.add_fresh_vertex("p", T::Label::default());
                free.insert(p.clone());
                p
            }
            [w] => w.to_string(),
            _ => {
                return Err(Error::Rewrite(format!(
                    "{}: exterior point glued to several host vertices {hosts:?}",
                    rule.name
                )))
            }
        };
        for k in members {
            if let Some(x) = k.strip_prefix("n:") {
                point_of.insert(x.to_string(), point.clone());
            }
        }
    }

    // Glue in the right side.
    let mut rmap: BTreeMap<String, String> = BTreeMap::new();
    for (v, l) in rc.graph().vertices() {
        if rc.egraph().is_exterior(v) {
            let p = point_of
                .get(v)
                .ok_or_else(|| Error::Rewrite(format!("{}: unmatched exterior {v}", rule.name)))?;
            rmap.insert(v.clone(), p.clone());
        } else {
            let label = model.apply_subst(l, &a.state)?;
            let id = graph.add_fresh_vertex(v, label);
            rmap.insert(v.clone(), id);
        }
    }
    for (e, edge) in rc.graph().edges() {
        graph.add_fresh_edge(e, &rmap[&edge.source], &rmap[&edge.target])?;
    }
    for p in &free {
        smooth(&mut graph, p, &rule.name)?;
    }
    let egraph = EGraph::new(graph, target.egraph().exterior().clone())?;
    GraphPattern::new(egraph, target.boxes().clone())
}

/// Removes a free point: degree 0 vanishes, degree 2 joins its two edges
/// (a loop through it is a closed wire and disappears).
fn smooth<L: Clone>(graph: &mut Graph<L>, p: &str, rule: &str) -> Result<()> {
    let ends = graph.incident_ends(p);
    match ends.as_slice() {
        [] => {}
        [(e1, end1), (e2, _)] => {
            if e1 == e2 {
                graph.remove_edge(e1)?;
            } else {
                let a = graph.remove_edge(e1)?;
                let b = graph.remove_edge(e2)?;
                let far = |e: &crate::graph::Edge| {
                    if e.source == p {
                        e.target.clone()
                    } else {
                        e.source.clone()
                    }
                };
                let (u, v) = (far(&a), far(&b));
                // Keep the first edge's direction where it has one.
                if *end1 == End::Target {
                    graph.add_fresh_edge(e1, &u, &v)?;
                } else {
                    graph.add_fresh_edge(e1, &v, &u)?;
                }
            }
        }
        _ => {
            return Err(Error::Rewrite(format!(
                "{rule}: free point of degree {}",
                ends.len()
            )))
        }
    }
    graph.remove_vertex(p)?;
    Ok(())
}

/// Which way a rule is applied during normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Orient each rule towards the smaller side; skip rules with sides of
    /// equal size; accept only steps that shrink the graph.
    Size,
    /// Use rules left to right and accept every step.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub reversed: bool,
    pub before: (usize, usize),
    pub after: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct Normalized<L> {
    pub graph: GraphPattern<L>,
    pub trace: Vec<TraceStep>,
    /// False when the step budget ran out with a step still available.
    pub normal: bool,
}

/// Oriented copies of `rules` under `policy`, tagged with whether they were
/// reversed.
pub fn orient<L: VertexLabel>(rules: &[Rule<L>], policy: Policy) -> Vec<(Rule<L>, bool)> {
    rules
        .iter()
        .filter_map(|r| match policy {
            Policy::None => Some((r.clone(), false)),
            Policy::Size => {
                let (l, rr) = (pattern_size(&r.lhs), pattern_size(&r.rhs));
                match rr.cmp(&l) {
                    std::cmp::Ordering::Less => Some((r.clone(), false)),
                    std::cmp::Ordering::Greater => Some((r.sym(), true)),
                    std::cmp::Ordering::Equal => None,
                }
            }
        })
        .collect()
}

/// First applicable step in rule order, then match order.
pub fn step<T: LabelTheory>(
    model: &T,
    rules: &[(Rule<T::Label>, bool)],
    g: &GraphPattern<T::Label>,
    policy: Policy,
) -> Result<Option<(GraphPattern<T::Label>, TraceStep)>> {
    let before = pattern_size(g);
    for (rule, reversed) in rules {
        let rule = prepare_rule::<T>(rule, g);
        let mut found = None;
        let mut error = None;
        let _ = for_each_pattern_match(model, &rule.lhs, g, BoxMode::Rewrite, &mut |m| {
            match rewrite_unchecked(model, &rule, g, &m) {
                Ok(next) => {
                    let after = pattern_size(&next);
                    if policy == Policy::None || after < before {
                        found = Some((
                            next,
                            TraceStep {
                                rule: rule.name.clone(),
                                reversed: *reversed,
                                before,
                                after,
                            },
                        ));
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                }
                Err(e) => {
                    error = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        if let Some(e) = error {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Rewrites until no step applies or `max_steps` is reached.
pub fn normalize<T: LabelTheory>(
    model: &T,
    rules: &[Rule<T::Label>],
    g: &GraphPattern<T::Label>,
    max_steps: usize,
    policy: Policy,
) -> Result<Normalized<T::Label>> {
    let oriented = orient(rules, policy);
    let mut current = g.clone();
    let mut trace = Vec::new();
    for _ in 0..max_steps {
        match step(model, &oriented, &current, policy)? {
            Some((next, s)) => {
                current = next;
                trace.push(s);
            }
            None => {
                return Ok(Normalized {
                    graph: current,
                    trace,
                    normal: true,
                })
            }
        }
    }
    let normal = step(model, &oriented, &current, policy)?.is_none();
    Ok(Normalized {
        graph: current,
        trace,
        normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::Plain;

    fn pattern(
        vs: &[(&str, char)],
        ext: &[&str],
        es: &[(&str, &str, &str)],
        boxes: &[(&str, &[&str])],
    ) -> GraphPattern<char> {
        let mut g = Graph::new();
        for (v, l) in vs {
            g.add_vertex(*v, *l).unwrap();
        }
        for v in ext {
            g.add_vertex(*v, ' ').unwrap();
        }
        for (id, s, t) in es {
            g.add_edge(*id, *s, *t).unwrap();
        }
        let eg = EGraph::new(g, ext.iter().map(|s| s.to_string()).collect()).unwrap();
        GraphPattern::new(
            eg,
            boxes
                .iter()
                .map(|(b, vs)| (b.to_string(), vs.iter().map(|s| s.to_string()).collect()))
                .collect(),
        )
        .unwrap()
    }

    impl VertexLabel for char {}

    #[test]
    fn path_contraction_rewrites_each_step() {
        // a -> b  ==>  wire
        let lhs = pattern(&[("u", 'a'), ("v", 'b')], &["x", "y"], &[("e0", "x", "u"), ("e1", "u", "v"), ("e2", "v", "y")], &[]);
        let rhs = pattern(&[], &["x", "y"], &[("w", "x", "y")], &[]);
        let rule = Rule::new("ab", lhs, rhs, BTreeMap::new());
        let target = pattern(
            &[("1", 'a'), ("2", 'b'), ("3", 'a'), ("4", 'b'), ("5", 'c')],
            &[],
            &[("f1", "1", "2"), ("f2", "2", "3"), ("f3", "3", "4"), ("f4", "4", "5"), ("f5", "5", "1")],
            &[],
        );
        let model = Plain::<char>::new();
        let out = normalize(&model, &[rule], &target, 10, Policy::Size).unwrap();
        assert!(out.normal);
        assert_eq!(out.trace.len(), 2);
        assert_eq!(out.graph.graph().vertex_count(), 1);
        // the c vertex now has a self-loop
        assert_eq!(out.graph.graph().degree("5"), 2);
    }

    #[test]
    fn fan_rule_with_box() {
        // c with a boxed leaf x attached, plus wire to y  ==>  d likewise
        let lhs = pattern(&[("u", 'c')], &["x", "y"], &[("e", "u", "x"), ("f", "u", "y")], &[("b", &["x"])]);
        let rhs = pattern(&[("u", 'd')], &["x", "y"], &[("e", "u", "x"), ("f", "u", "y")], &[("b", &["x"])]);
        let rule = Rule::new("cd", lhs, rhs, [("b".to_string(), "b".to_string())].into());
        assert!(crate::rule::validate_rule(&rule).is_empty());
        let target = pattern(
            &[("k", 'c'), ("l1", 'a'), ("l2", 'a'), ("l3", 'a')],
            &[],
            &[("g1", "k", "l1"), ("g2", "k", "l2"), ("g3", "k", "l3")],
            &[],
        );
        let model = Plain::<char>::new();
        let ms = rewrite_matches(&model, &rule, &target);
        // choose which leaf is y (3), order of the two boxed copies (2)
        assert_eq!(ms.len(), 6);
        let out = rewrite_once(&model, &rule, &target, &ms[0]).unwrap();
        assert_eq!(out.graph().vertex_count(), 4);
        assert_eq!(out.graph().edge_count(), 3);
        let d: Vec<_> = out.graph().vertices().filter(|(_, l)| **l == 'd').collect();
        assert_eq!(d.len(), 1);
        assert!(out.graph().vertices().all(|(_, l)| *l != 'c'));
    }

    #[test]
    fn stale_match_is_rejected() {
        let lhs = pattern(&[("u", 'a')], &[], &[], &[]);
        let rhs = pattern(&[("u", 'b')], &[], &[], &[]);
        let rule = Rule::new("ab", lhs, rhs, BTreeMap::new());
        let t = pattern(&[("z", 'a')], &[], &[], &[]);
        let model = Plain::<char>::new();
        let m = rewrite_matches(&model, &rule, &t).remove(0);
        let t2 = rewrite_once(&model, &rule, &t, &m).unwrap();
        assert!(matches!(
            rewrite_once(&model, &rule, &t2, &m),
            Err(Error::StaleWitness(_))
        ));
    }

    #[test]
    fn boxes_in_target_are_not_rewritten() {
        let lhs = pattern(&[("u", 'a')], &[], &[], &[]);
        let rhs = pattern(&[("u", 'b')], &[], &[], &[]);
        let rule = Rule::new("ab", lhs.clone(), rhs, BTreeMap::new());
        let t = pattern(&[("z", 'a')], &[], &[], &[("B", &["z"])]);
        let model = Plain::<char>::new();
        assert!(rewrite_matches(&model, &rule, &t).is_empty());
        // but the general relation sees it only through a matching box
        assert!(pattern_match(&model, &lhs, &t).is_empty());
        let boxed = pattern(&[("u", 'a')], &[], &[], &[("A", &["u"])]);
        let ms = pattern_match(&model, &boxed, &t);
        // killed (the empty graph matches anywhere) or kept onto B
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().any(|m| m.witness.copies.is_empty() && m.witness.dropped.is_empty()));
    }

    #[test]
    fn boxed_legs_can_cover_more_loops_than_vertices() {
        // a loop beside a boxed fan of legs  ==>  the fan alone
        let legs = [("e", "u", "a"), ("f", "b", "u")];
        let lhs = pattern(&[("u", 'z')], &["a", "b"], &[("l", "u", "u"), legs[0], legs[1]], &[("i", &["a", "b"])]);
        let rhs = pattern(&[("u", 'z')], &["a", "b"], &legs, &[("i", &["a", "b"])]);
        let rule = Rule::new("loop", lhs, rhs, [("i".to_string(), "i".to_string())].into());
        let t = pattern(&[("w", 'z')], &[], &[("p", "w", "w"), ("q", "w", "w"), ("r", "w", "w")], &[]);
        let out = normalize(&Plain::<char>::new(), &[rule], &t, 10, Policy::Size).unwrap();
        assert!(out.normal);
        assert_eq!(out.trace.len(), 3);
        assert_eq!(out.graph.graph().edge_count(), 0);
    }
}
