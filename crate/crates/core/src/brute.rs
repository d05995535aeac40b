//! Naive reference oracles. They share nothing with the fast code beyond
//! `Graph` and the weight types.

use crate::graph::{EdgeId, Graph, VertexId};
use crate::weight::{Dist, Weight};
use serde::Serialize;
use std::collections::HashSet;

/// Array-scan Dijkstra avoiding `banned` edges; returns distances and parent edges.
pub fn sssp_avoiding(g: &Graph, src: VertexId, banned: &HashSet<EdgeId>) -> (Vec<Dist>, Vec<Option<EdgeId>>) {
    let n = g.n();
    let mut dist = vec![Dist::Inf; n];
    let mut par = vec![None; n];
    let mut done = vec![false; n];
    dist[src] = Dist::ZERO;
    loop {
        let mut best = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b: usize| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(x) = best else { break };
        done[x] = true;
        for (id, e) in g.edges().iter().enumerate() {
            if banned.contains(&id) || (e.u != x && e.v != x) {
                continue;
            }
            let y = e.other(x);
            let nd = dist[x].add_w(e.w);
            if nd < dist[y] {
                dist[y] = nd;
                par[y] = Some(id);
            }
        }
    }
    (dist, par)
}

/// `|π_{G-F}(u,v)|`.
pub fn dist_avoiding(g: &Graph, u: VertexId, v: VertexId, banned: &[EdgeId]) -> Dist {
    let set: HashSet<_> = banned.iter().copied().collect();
    sssp_avoiding(g, u, &set).0[v]
}

/// `π_{G-F}(u,v)` as edge ids, or `None` if disconnected.
pub fn path_avoiding(g: &Graph, u: VertexId, v: VertexId, banned: &[EdgeId]) -> Option<Vec<EdgeId>> {
    let set: HashSet<_> = banned.iter().copied().collect();
    let (dist, par) = sssp_avoiding(g, u, &set);
    if !dist[v].is_finite() {
        return None;
    }
    let mut out = Vec::new();
    let mut x = v;
    while x != u {
        let e = par[x].unwrap();
        out.push(e);
        x = g.edge(e).other(x);
    }
    out.reverse();
    Some(out)
}

/// Vertex sequence of an edge path starting at `u`.
pub fn edge_path_vertices(g: &Graph, u: VertexId, es: &[EdgeId]) -> Vec<VertexId> {
    let mut out = vec![u];
    let mut x = u;
    for &e in es {
        x = g.edge(e).other(x);
        out.push(x);
    }
    out
}

/// Bellman-Ford distances, used to cross-check Dijkstra.
pub fn bellman_ford(g: &Graph, src: VertexId, banned: &[EdgeId]) -> Vec<Dist> {
    let mut dist = vec![Dist::Inf; g.n()];
    dist[src] = Dist::ZERO;
    for _ in 0..g.n() {
        let mut changed = false;
        for (id, e) in g.edges().iter().enumerate() {
            if banned.contains(&id) {
                continue;
            }
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let nd = dist[a].add_w(e.w);
                if nd < dist[b] {
                    dist[b] = nd;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Weak points of positions `a..b` on `π(u,v)`: edges `f` whose single-failure
/// replacement path avoids the whole interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakInterval {
    pub u: VertexId,
    pub v: VertexId,
    pub a: usize,
    pub b: usize,
    pub weak_points: Vec<EdgeId>,
}

impl WeakInterval {
    pub fn is_weak(&self) -> bool {
        !self.weak_points.is_empty()
    }
}

pub fn weak_classify(g: &Graph, u: VertexId, v: VertexId, a: usize, b: usize) -> WeakInterval {
    let base = path_avoiding(g, u, v, &[]).expect("u, v connected");
    let interval: HashSet<EdgeId> = base[a..b].iter().copied().collect();
    let weak_points = base[a..b]
        .iter()
        .copied()
        .filter(|&f| path_avoiding(g, u, v, &[f]).is_none_or(|p| p.iter().all(|e| !interval.contains(e))))
        .collect();
    WeakInterval { u, v, a, b, weak_points }
}

/// One oracle comparison, serialized as a report line.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub query: String,
    pub oracle: String,
    pub subject: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

impl OracleReport {
    pub fn new(query: impl Into<String>, oracle: Dist, subject: Dist) -> Self {
        OracleReport { query: query.into(), oracle: fmt(oracle), subject: fmt(subject), matched: oracle == subject }
    }
}

fn fmt(d: Dist) -> String {
    match d {
        Dist::Fin(w) => format!("{}:{}", w.base, w.tie),
        Dist::Inf => "inf".into(),
    }
}

/// Shortest snake walk by exhaustive enumeration.
///
/// `segments` are the pieces of the path cut by the removed edges, as
/// inclusive vertex-position ranges; the first holds `s` and the last `t`.
/// The walk leaves the first piece, walks one or two segments inside middle
/// pieces (the same piece twice is allowed), and rejoins the last piece.
/// Off-path legs use `apsp`, the distance matrix of `G` without the path
/// edges. With `through = Some(x)` some segment must contain position `x`.
pub fn snake_oracle(
    path: &[VertexId],
    pos_w: &[Weight],
    apsp: &[Vec<Dist>],
    segments: &[(usize, usize)],
    through: Option<usize>,
) -> Dist {
    let walk = |a: usize, b: usize| pos_w[a.max(b)] - pos_w[a.min(b)];
    let d = |a: usize, b: usize| apsp[path[a]][path[b]];
    let last = path.len() - 1;
    let (first, fin) = (segments[0], segments[segments.len() - 1]);
    let head: Vec<Dist> = (0..=last)
        .map(|y| (first.0..=first.1).map(|x| d(x, y).add_w(pos_w[x])).min().unwrap_or(Dist::Inf))
        .collect();
    let tail: Vec<Dist> = (0..=last)
        .map(|z| (fin.0..=fin.1).map(|w| d(z, w).add_w(walk(w, last))).min().unwrap_or(Dist::Inf))
        .collect();
    let covers = |a: usize, b: usize| through.is_none_or(|x| a.min(b) <= x && x <= a.max(b));
    let mids = &segments[1..segments.len() - 1];
    let mut best = Dist::Inf;
    for &(al, ar) in mids {
        for y1 in al..=ar {
            for y2 in al..=ar {
                let one = head[y1].add_w(walk(y1, y2));
                if !one.is_finite() {
                    continue;
                }
                if covers(y1, y2) {
                    best = best.min(one + tail[y2]);
                }
                for &(bl, br) in mids {
                    for z1 in bl..=br {
                        let two = one + d(y2, z1);
                        if !two.is_finite() {
                            continue;
                        }
                        for z2 in bl..=br {
                            if covers(y1, y2) || covers(z1, z2) {
                                best = best.min(two.add_w(walk(z1, z2)) + tail[z2]);
                            }
                        }
                    }
                }
            }
        }
    }
    best
}

/// Interval indices visited by `route` along `path`, cut at the edge
/// positions `cut` (sorted). A visit ends whenever the route leaves the path
/// or takes a non-path edge between two path vertices.
pub fn contact_sequence(path: &[VertexId], cut: &[usize], route: &[VertexId]) -> Vec<usize> {
    let pos = |x: VertexId| path.iter().position(|&p| p == x);
    let piece = |p: usize| cut.iter().filter(|&&k| k < p).count();
    let mut seq = Vec::new();
    let mut prev: Option<usize> = None;
    for &x in route {
        let cur = pos(x);
        if let Some(p) = cur {
            let along = prev.is_some_and(|q| q.abs_diff(p) == 1);
            if !along {
                seq.push(piece(p));
            }
        }
        prev = cur;
    }
    seq
}

/// Which of the five three-failure route shapes `seq` has, for pieces
/// numbered `0..=3`.
pub fn observation_type(seq: &[usize]) -> Option<u8> {
    match seq {
        [0, 3] => Some(1),
        [0, 1, 3] => Some(2),
        [0, 2, 3] => Some(3),
        [0, 1, 2, 3] => Some(4),
        [0, 2, 1, 3] => Some(5),
        _ => None,
    }
}

/// Edges in the union of all single-failure `u`-`v` replacement paths.
pub fn replacement_union(g: &Graph, u: VertexId, v: VertexId) -> HashSet<EdgeId> {
    let mut all = HashSet::new();
    for f in path_avoiding(g, u, v, &[]).unwrap_or_default() {
        all.extend(path_avoiding(g, u, v, &[f]).unwrap_or_default());
    }
    all
}

/// First `(R1, R2)` pair of disjoint subpaths of `π(u,v)`, as edge position
/// ranges, that `route` avoids while touching the subpath between them.
pub fn between_violation(base: &[EdgeId], route: &[EdgeId]) -> Option<((usize, usize), (usize, usize))> {
    let on: HashSet<EdgeId> = route.iter().copied().collect();
    let mut used = vec![0usize; base.len() + 1];
    for (i, e) in base.iter().enumerate() {
        used[i + 1] = used[i] + on.contains(e) as usize;
    }
    let free = |a: usize, b: usize| used[b] == used[a];
    let h = base.len();
    for a in 0..h {
        for b in a + 1..=h {
            if !free(a, b) {
                break;
            }
            for c in b + 1..h {
                for d in c + 1..=h {
                    if !free(c, d) {
                        break;
                    }
                    if !free(b, c) {
                        return Some(((a, b), (c, d)));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_perturbed;
    use crate::graph::dijkstra;

    #[test]
    fn dijkstra_agrees_with_bellman_ford() {
        for seed in 0..5 {
            let g = random_perturbed(20, 20, 9, seed);
            let banned = [0, 3, 7];
            let bf = bellman_ford(&g, 2, &banned);
            let set: HashSet<_> = banned.into_iter().collect();
            assert_eq!(sssp_avoiding(&g, 2, &set).0, bf);
            let mask = crate::graph::EdgeMask::from_edges(g.m(), banned);
            assert_eq!(dijkstra(&g, 2, Some(&mask)).dist, bf);
        }
    }

    #[test]
    fn removing_all_incident_edges_disconnects() {
        let g = random_perturbed(10, 5, 9, 1);
        let inc: Vec<_> = g.neighbors(0).iter().map(|&(_, e)| e).collect();
        assert_eq!(dist_avoiding(&g, 0, 5, &inc), Dist::Inf);
        assert_eq!(dist_avoiding(&g, 0, 5, &[]), dijkstra(&g, 0, None).dist[5]);
    }

    #[test]
    fn single_edge_interval_is_weak() {
        let g = random_perturbed(12, 10, 9, 3);
        let p = path_avoiding(&g, 0, 7, &[]).unwrap();
        for a in 0..p.len() {
            let w = weak_classify(&g, 0, 7, a, a + 1);
            assert_eq!(w.weak_points, vec![p[a]]);
        }
    }

    #[test]
    fn contact_runs_split_on_chords() {
        let path = [0, 1, 2, 3, 4, 5, 6];
        let cut = [0, 2, 4];
        assert_eq!(contact_sequence(&path, &cut, &[0, 9, 3, 8, 6]), vec![0, 2, 3]);
        assert_eq!(contact_sequence(&path, &cut, &[0, 9, 2, 8, 3, 4, 7, 5, 6]), vec![0, 1, 2, 3]);
        assert_eq!(observation_type(&[0, 2, 1, 3]), Some(5));
        assert_eq!(observation_type(&[0, 1, 1, 3]), None);
    }

    #[test]
    fn between_violation_needs_a_gap() {
        let base = [10, 11, 12, 13, 14];
        assert_eq!(between_violation(&base, &[10, 20, 14]), None);
        assert_eq!(between_violation(&base, &[20, 12, 21]), Some(((0, 1), (3, 4))));
    }

    #[test]
    fn union_bound_on_random_pairs() {
        let g = random_perturbed(16, 20, 9, 4);
        for v in 1..g.n() {
            assert!(replacement_union(&g, 0, v).len() <= 3 * g.n());
        }
    }
}
