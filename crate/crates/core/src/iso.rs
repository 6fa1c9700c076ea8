//! Backtracking isomorphism test for small labelled multigraphs.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::graph::{Graph, GraphMorphism};

struct Side<'a, L> {
    ids: Vec<&'a String>,
    labels: Vec<&'a L>,
    marked: Vec<bool>,
    // adj[u][v] = number of edges u -> v
    adj: Vec<Vec<usize>>,
    signature: Vec<(bool, usize, usize)>,
}

impl<'a, L> Side<'a, L> {
    fn new(g: &'a Graph<L>, marked: &BTreeSet<String>, directed: bool) -> Self {
        let ids: Vec<&String> = g.vertex_ids().collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let n = ids.len();
        let mut adj = vec![vec![0usize; n]; n];
        for (_, e) in g.edges() {
            adj[index[e.source.as_str()]][index[e.target.as_str()]] += 1;
        }
        if !directed {
            for u in 0..n {
                for v in (u + 1)..n {
                    let s = adj[u][v] + adj[v][u];
                    adj[u][v] = s;
                    adj[v][u] = s;
                }
            }
        }
        let signature = (0..n)
            .map(|u| {
                let out: usize = adj[u].iter().sum();
                let inn: usize = adj.iter().map(|row| row[u]).sum();
                if directed {
                    (marked.contains(ids[u]), inn, out)
                } else {
                    (marked.contains(ids[u]), adj[u][u], out)
                }
            })
            .collect();
        Side {
            labels: ids.iter().map(|v| g.label(v).unwrap()).collect(),
            marked: ids.iter().map(|v| marked.contains(*v)).collect(),
            ids,
            adj,
            signature,
        }
    }
}

/// Finds a bijection between `g` and `h` preserving edges, the marked vertex
/// sets and labels (compared with `same`). With `directed == false` edge
/// orientation is ignored.
pub(crate) fn find_isomorphism<L, M>(
    g: &Graph<L>,
    g_marked: &BTreeSet<String>,
    h: &Graph<M>,
    h_marked: &BTreeSet<String>,
    same: &dyn Fn(&L, &M) -> bool,
    directed: bool,
) -> Option<GraphMorphism> {
    find_isomorphism_fixed(g, g_marked, h, h_marked, same, directed, &BTreeMap::new())
}

/// As [`find_isomorphism`] with some vertex images fixed in advance.
pub(crate) fn find_isomorphism_fixed<L, M>(
    g: &Graph<L>,
    g_marked: &BTreeSet<String>,
    h: &Graph<M>,
    h_marked: &BTreeSet<String>,
    same: &dyn Fn(&L, &M) -> bool,
    directed: bool,
    fixed: &BTreeMap<String, String>,
) -> Option<GraphMorphism> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let a = Side::new(g, g_marked, directed);
    let b = Side::new(h, h_marked, directed);
    let mut sa = a.signature.clone();
    let mut sb = b.signature.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let n = a.ids.len();
    let b_index: BTreeMap<&str, usize> =
        b.ids.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut forced = vec![None; n];
    for (i, v) in a.ids.iter().enumerate() {
        if let Some(w) = fixed.get(*v) {
            forced[i] = Some(*b_index.get(w.as_str())?);
        }
    }

    // Fixed vertices first, then a BFS order so that adjacency prunes early.
    let order = bfs_order(&a, &forced);

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut result = None;
    let _ = search(&a, &b, same, &order, &forced, 0, &mut map, &mut used, &mut |map| {
        result = edge_pairing(g, h, &a, &b, map, directed);
        if result.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    result
}

/// Calls `visit` with the vertex map of every isomorphism until it breaks.
pub(crate) fn for_each_isomorphism<L, M>(
    g: &Graph<L>,
    g_marked: &BTreeSet<String>,
    h: &Graph<M>,
    h_marked: &BTreeSet<String>,
    same: &dyn Fn(&L, &M) -> bool,
    directed: bool,
    visit: &mut dyn FnMut(&BTreeMap<String, String>) -> ControlFlow<()>,
) {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return;
    }
    let a = Side::new(g, g_marked, directed);
    let b = Side::new(h, h_marked, directed);
    let mut sa = a.signature.clone();
    let mut sb = b.signature.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return;
    }
    let n = a.ids.len();
    let forced = vec![None; n];
    let order = bfs_order(&a, &forced);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let _ = search(&a, &b, same, &order, &forced, 0, &mut map, &mut used, &mut |map| {
        let named: BTreeMap<String, String> = (0..n)
            .map(|i| (a.ids[i].clone(), b.ids[map[i]].clone()))
            .collect();
        visit(&named)
    });
}

fn bfs_order<L>(a: &Side<L>, forced: &[Option<usize>]) -> Vec<usize> {
    let n = a.ids.len();
    let mut order: Vec<usize> = (0..n).filter(|&i| forced[i].is_some()).collect();
    let mut seen: Vec<bool> = (0..n).map(|i| forced[i].is_some()).collect();
    loop {
        let next = (0..n).filter(|&u| !seen[u]).max_by_key(|&u| {
            let links = order
                .iter()
                .filter(|&&w| a.adj[u][w] + a.adj[w][u] > 0)
                .count();
            (links, a.signature[u].1 + a.signature[u].2, std::cmp::Reverse(u))
        });
        match next {
            Some(u) => {
                seen[u] = true;
                order.push(u);
            }
            None => break,
        }
    }
    order
}

/// Completes a vertex bijection to a full morphism, pairing the edges
/// between corresponding endpoints in id order.
fn edge_pairing<L, M>(
    g: &Graph<L>,
    h: &Graph<M>,
    a: &Side<L>,
    b: &Side<M>,
    map: &[usize],
    directed: bool,
) -> Option<GraphMorphism> {
    let mut morph = GraphMorphism::default();
    for i in 0..a.ids.len() {
        morph
            .vertex_map
            .insert(a.ids[i].clone(), b.ids[map[i]].clone());
    }
    let key = |s: &str, t: &str| -> (String, String) {
        if directed || s <= t {
            (s.to_string(), t.to_string())
        } else {
            (t.to_string(), s.to_string())
        }
    };
    let mut h_groups: BTreeMap<(String, String), Vec<&String>> = BTreeMap::new();
    for (id, e) in h.edges() {
        h_groups.entry(key(&e.source, &e.target)).or_default().push(id);
    }
    let mut cursor: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (id, e) in g.edges() {
        let k = key(&morph.vertex_map[&e.source], &morph.vertex_map[&e.target]);
        let pos = cursor.entry(k.clone()).or_insert(0);
        let target = h_groups.get(&k)?.get(*pos)?;
        *pos += 1;
        morph.edge_map.insert(id.clone(), (*target).clone());
    }
    Some(morph)
}

#[allow(clippy::too_many_arguments)]
fn search<L, M>(
    a: &Side<L>,
    b: &Side<M>,
    same: &dyn Fn(&L, &M) -> bool,
    order: &[usize],
    forced: &[Option<usize>],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == order.len() {
        return found(map);
    }
    let u = order[depth];
    let candidates: Vec<usize> = match forced[u] {
        Some(w) => vec![w],
        None => (0..b.ids.len()).collect(),
    };
    for w in candidates {
        if used[w]
            || a.signature[u] != b.signature[w]
            || a.marked[u] != b.marked[w]
            || !same(a.labels[u], b.labels[w])
        {
            continue;
        }
        let consistent = order[..depth].iter().all(|&p| {
            a.adj[u][p] == b.adj[w][map[p]] && a.adj[p][u] == b.adj[map[p]][w]
        }) && a.adj[u][u] == b.adj[w][w];
        if !consistent {
            continue;
        }
        map[u] = w;
        used[w] = true;
        let flow = search(a, b, same, order, forced, depth + 1, map, used, found);
        used[w] = false;
        map[u] = usize::MAX;
        flow?;
    }
    ControlFlow::Continue(())
}
