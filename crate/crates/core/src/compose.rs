//! Plugging: gluing two e-graphs along a shared two-sided interface.

use std::collections::{BTreeMap, BTreeSet};

use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::graph::{fresh_id, Graph, GraphMorphism};

/// A graph whose vertices are split into a front and a back set.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedGraph<L> {
    graph: Graph<L>,
    front: BTreeSet<String>,
}

impl<L: Clone> TwoSidedGraph<L> {
    /// Every vertex not in `front` is in the back set.
    pub fn new(graph: Graph<L>, front: BTreeSet<String>) -> Result<Self> {
        if let Some(v) = front.iter().find(|v| !graph.has_vertex(v)) {
            return Err(Error::NoSuchVertex(v.clone()));
        }
        Ok(TwoSidedGraph { graph, front })
    }

    pub fn graph(&self) -> &Graph<L> {
        &self.graph
    }

    pub fn front(&self) -> &BTreeSet<String> {
        &self.front
    }

    pub fn back(&self) -> BTreeSet<String> {
        self.graph
            .vertex_ids()
            .filter(|v| !self.front.contains(*v))
            .cloned()
            .collect()
    }

    pub fn is_front(&self, v: &str) -> bool {
        self.front.contains(v)
    }
}

/// An interface `π` with embeddings into the left and right graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct PlugSpec<L> {
    pub interface: TwoSidedGraph<L>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

/// Where the vertices and edges of each side ended up.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlugMaps {
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

impl<L: Clone + Default> PlugSpec<L> {
    /// The empty interface.
    pub fn empty() -> Self {
        PlugSpec {
            interface: TwoSidedGraph {
                graph: Graph::new(),
                front: BTreeSet::new(),
            },
            left: GraphMorphism::default(),
            right: GraphMorphism::default(),
        }
    }

    /// A discrete interface identifying `l` in the left graph with `r` in the
    /// right graph for each pair. A pair goes to the front when `l` is
    /// exterior on the left, otherwise to the back.
    pub fn joining(g: &EGraph<L>, h: &EGraph<L>, pairs: &[(String, String)]) -> Result<Self> {
        let mut graph = Graph::new();
        let mut front = BTreeSet::new();
        let mut left = GraphMorphism::default();
        let mut right = GraphMorphism::default();
        for (k, (l, r)) in pairs.iter().enumerate() {
            let p = format!("p{k}");
            graph.add_vertex(p.clone(), L::default())?;
            if g.is_exterior(l) {
                front.insert(p.clone());
            } else if !h.is_exterior(r) {
                return Err(Error::PlugInterface(format!(
                    "neither {l} nor {r} is exterior"
                )));
            }
            left.vertex_map.insert(p.clone(), l.clone());
            right.vertex_map.insert(p, r.clone());
        }
        Ok(PlugSpec {
            interface: TwoSidedGraph { graph, front },
            left,
            right,
        })
    }
}

fn check_side<L, M>(
    name: &str,
    p: &GraphMorphism,
    pi: &TwoSidedGraph<L>,
    target: &EGraph<M>,
    exterior_side: &BTreeSet<String>,
) -> Result<()>
where
    L: Clone,
    M: Clone,
{
    if !p.is_graph_hom(pi.graph(), target.graph()) || !p.is_injective() {
        return Err(Error::PlugInterface(format!(
            "{name} embedding is not an injective graph morphism"
        )));
    }
    for v in exterior_side {
        let image = &p.vertex_map[v];
        if !target.is_exterior(image) {
            return Err(Error::PlugInterface(format!(
                "{name} image {image} of {v} is not exterior"
            )));
        }
    }
    Ok(())
}

/// Checks `p1(F) ⊆ ext G`, `p2(B) ⊆ ext H` and that both maps embed `π`.
pub fn validate_plug<L: Clone>(spec: &PlugSpec<L>, g: &EGraph<L>, h: &EGraph<L>) -> Result<()> {
    check_side("left", &spec.left, &spec.interface, g, spec.interface.front())?;
    check_side("right", &spec.right, &spec.interface, h, &spec.interface.back())
}

/// The pushout of `g ← π → h`: the disjoint union with `p1(x)` identified
/// with `p2(x)`. Identified vertices keep the left id and label; right-hand
/// ids are freshened where they clash. A vertex is exterior when it is
/// exterior on either side.
pub fn plug<L: Clone>(
    spec: &PlugSpec<L>,
    g: &EGraph<L>,
    h: &EGraph<L>,
) -> Result<(EGraph<L>, PlugMaps)> {
    validate_plug(spec, g, h)?;
    let mut graph = g.graph().clone();
    let mut exterior = g.exterior().clone();
    let mut maps = PlugMaps {
        left: GraphMorphism::identity(g.graph()),
        right: GraphMorphism::default(),
    };

    // right vertex -> result vertex
    for x in spec.interface.graph().vertex_ids() {
        maps.right.vertex_map.insert(
            spec.right.vertex_map[x].clone(),
            spec.left.vertex_map[x].clone(),
        );
    }
    for e in spec.interface.graph().edge_ids() {
        maps.right
            .edge_map
            .insert(spec.right.edge_map[e].clone(), spec.left.edge_map[e].clone());
    }
    let taken_v: BTreeSet<String> = g.graph().vertex_ids().cloned().collect();
    let taken_e: BTreeSet<String> = g.graph().edge_ids().cloned().collect();
    let mut used_v = taken_v.clone();
    let mut used_e = taken_e.clone();
    for (v, l) in h.graph().vertices() {
        if let Some(target) = maps.right.vertex_map.get(v) {
            if h.is_exterior(v) {
                exterior.insert(target.clone());
            }
            continue;
        }
        let id = fresh_id(v, |c| used_v.contains(c) || h.graph().has_vertex(c) && c != v);
        used_v.insert(id.clone());
        graph.add_vertex(id.clone(), l.clone())?;
        if h.is_exterior(v) {
            exterior.insert(id.clone());
        }
        maps.right.vertex_map.insert(v.clone(), id);
    }
    for (e, edge) in h.graph().edges() {
        if maps.right.edge_map.contains_key(e) {
            continue;
        }
        let id = fresh_id(e, |c| used_e.contains(c) || h.graph().has_edge(c) && c != e);
        used_e.insert(id.clone());
        graph.add_edge(
            id.clone(),
            maps.right.vertex_map[&edge.source].clone(),
            maps.right.vertex_map[&edge.target].clone(),
        )?;
        maps.right.edge_map.insert(e.clone(), id);
    }
    Ok((EGraph::new(graph, exterior)?, maps))
}

/// Disjoint union, freshening right-hand ids.
pub fn tensor<L: Clone + Default>(g: &EGraph<L>, h: &EGraph<L>) -> EGraph<L> {
    plug(&PlugSpec::empty(), g, h)
        .expect("the empty interface always plugs")
        .0
}

/// Reverses the roles of the two sides: the front of `π` becomes its back.
pub fn swap_spec<L: Clone>(spec: &PlugSpec<L>) -> PlugSpec<L> {
    PlugSpec {
        interface: TwoSidedGraph {
            graph: spec.interface.graph.clone(),
            front: spec.interface.back(),
        },
        left: spec.right.clone(),
        right: spec.left.clone(),
    }
}

/// Vertex renaming that makes every id in `g` distinct from those in
/// `avoid`; used when callers need predictable disjointness up front.
pub fn apart<L: Clone>(g: &EGraph<L>, avoid: &EGraph<L>, suffix: &str) -> Result<EGraph<L>> {
    let vmap: BTreeMap<String, String> = g
        .graph()
        .vertex_ids()
        .filter(|v| avoid.graph().has_vertex(v))
        .map(|v| {
            let id = fresh_id(&format!("{v}{suffix}"), |c| {
                avoid.graph().has_vertex(c) || g.graph().has_vertex(c)
            });
            (v.clone(), id)
        })
        .collect();
    let emap: BTreeMap<String, String> = g
        .graph()
        .edge_ids()
        .filter(|e| avoid.graph().has_edge(e))
        .map(|e| {
            let id = fresh_id(&format!("{e}{suffix}"), |c| {
                avoid.graph().has_edge(c) || g.graph().has_edge(c)
            });
            (e.clone(), id)
        })
        .collect();
    g.renamed(&vmap, &emap)
}
