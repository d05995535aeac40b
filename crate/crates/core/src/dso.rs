//! Static single-failure distance sensitivity oracle over anchored intervals.
//!
//! For every pair `u < v` with `h = hops(u,v)` and anchors `i, j` in
//! `{0, 1, 2, 4, ...}` with `i + j < h`, the table holds a proper-form path
//! avoiding positions `i..h-j` of `π(u,v)`, exact whenever that interval is weak,
//! or the null path.

use crate::error::{Error, Result};
use crate::graph::{dijkstra, EdgeId, EdgeMask, Graph, VertexId};
use crate::proper::{better, detour_pieces, dist_of, intersects_interval, to_proper_form, transform, Detour, Piece, Pieces};
use crate::spt::SptSet;
use crate::weight::Dist;
use serde::{Deserialize, Serialize};

const NONE: u32 = u32::MAX;

/// Anchor values `0, 1, 2, 4, ...` strictly below `h`.
pub fn anchors(h: usize) -> Vec<usize> {
    let mut out = vec![0];
    let mut p = 1;
    while p < h {
        out.push(p);
        p <<= 1;
    }
    out
}

/// Index of an anchor value in [`anchors`].
#[inline]
pub fn anchor_index(a: usize) -> usize {
    if a == 0 {
        0
    } else {
        a.trailing_zeros() as usize + 1
    }
}

/// Largest power of two not above `x` (`x > 0`).
#[inline]
pub fn pow2_floor(x: usize) -> usize {
    1 << (usize::BITS - 1 - x.leading_zeros())
}

/// Entries for pairs `u < v`, laid out as a `c × c` anchor grid per pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table {
    n: usize,
    start: Vec<u32>,
    width: Vec<u8>,
    entries: Vec<Option<Detour>>,
}

impl Table {
    /// Empty (all-null) table shaped for the hop counts in `spts`.
    pub fn shaped(spts: &SptSet) -> Table {
        let n = spts.n();
        let mut start = vec![NONE; n * n];
        let mut width = vec![0u8; n * n];
        let mut total = 0usize;
        for u in 0..n {
            for v in u + 1..n {
                if let Some(h) = spts.hops(u, v) {
                    let c = anchors(h).len();
                    start[u * n + v] = total as u32;
                    width[u * n + v] = c as u8;
                    total += c * c;
                }
            }
        }
        Table { n, start, width, entries: vec![None; total] }
    }

    #[inline]
    fn slot(&self, u: VertexId, v: VertexId, i: usize, j: usize) -> usize {
        debug_assert!(u < v);
        let k = u * self.n + v;
        let c = self.width[k] as usize;
        self.start[k] as usize + anchor_index(i) * c + anchor_index(j)
    }

    /// Entry for `π(u,v)` with anchors `i` (from `u`) and `j` (from `v`), in `u -> v` orientation.
    pub fn get(&self, u: VertexId, v: VertexId, i: usize, j: usize) -> Option<Detour> {
        if u < v {
            self.entries[self.slot(u, v, i, j)]
        } else {
            self.entries[self.slot(v, u, j, i)].map(|d| d.reversed(u))
        }
    }

    /// Stores an entry given in `u -> v` orientation with `u < v`.
    pub fn set(&mut self, u: VertexId, v: VertexId, i: usize, j: usize, d: Option<Detour>) {
        let s = self.slot(u, v, i, j);
        self.entries[s] = d;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn non_null(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}

/// Graph, its shortest path trees and the interval table.
#[derive(Clone, Debug)]
pub struct Dso {
    pub(crate) graph: Graph,
    pub(crate) spts: SptSet,
    pub(crate) table: Table,
}

/// Exact single-edge replacement path for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    pub edge: EdgeId,
    pub position: usize,
    pub dist: Dist,
    pub path: Option<Vec<VertexId>>,
}

/// For every edge on `π(u,v)`: the exact distance avoiding it and the path (one Dijkstra per edge).
pub fn replacement_paths_for_pair(g: &Graph, spts: &SptSet, u: VertexId, v: VertexId) -> Vec<Replacement> {
    let Some(h) = spts.hops(u, v) else { return Vec::new() };
    (0..h)
        .map(|p| {
            let f = spts.kth_edge(u, v, p);
            let sp = dijkstra(g, u, Some(&EdgeMask::from_edges(g.m(), [f])));
            Replacement { edge: f, position: p, dist: sp.dist[v], path: sp.path_to(g, v) }
        })
        .collect()
}

fn walk_pieces<'a>(g: &Graph, path: &[VertexId]) -> Vec<Piece<'a>> {
    path.windows(2)
        .map(|w| {
            let id = g.edge_between(w[0], w[1]).expect("walk edge");
            Piece::Edge { id, from: w[0], to: w[1], w: g.edge(id).w }
        })
        .collect()
}

impl Dso {
    /// Builds the oracle from scratch: one Dijkstra per (source, tree edge).
    pub fn build(graph: Graph) -> Result<Dso> {
        let spts = SptSet::build(&graph)?;
        let mut table = Table::shaped(&spts);
        let n = graph.n();
        let m = graph.m();
        for u in 0..n {
            let tu = spts.tree(u);
            // replacement trees keyed by the child endpoint of the removed tree edge
            let mut trees = vec![None; n];
            for c in 0..n {
                if let Some(f) = tu.parent_edge(c) {
                    if (u + 1..n).any(|v| tu.is_ancestor(c, v)) {
                        trees[c] = Some(dijkstra(&graph, u, Some(&EdgeMask::from_edges(m, [f]))));
                    }
                }
            }
            for v in u + 1..n {
                let Some(h) = spts.hops(u, v) else { continue };
                let on: Vec<VertexId> = (1..=h).map(|k| spts.kth(u, v, k)).collect();
                let rd: Vec<Dist> = on.iter().map(|&c| trees[c].as_ref().unwrap().dist[v]).collect();
                let an = anchors(h);
                for &i in &an {
                    for &j in &an {
                        if i + j >= h {
                            continue;
                        }
                        let p = (i..h - j).max_by_key(|&p| rd[p]).unwrap();
                        if !rd[p].is_finite() {
                            continue;
                        }
                        let sp = trees[on[p]].as_ref().unwrap();
                        let path = sp.path_to(&graph, v).unwrap();
                        let d = to_proper_form(&walk_pieces(&graph, &path), &spts)
                            .expect("single-failure replacement paths are proper");
                        if !intersects_interval(&d, u, v, i, h - j, &spts, &graph) {
                            table.set(u, v, i, j, Some(d));
                        }
                    }
                }
            }
        }
        Ok(Dso { graph, spts, table })
    }

    pub fn from_parts(graph: Graph, table: Table) -> Result<Dso> {
        let spts = SptSet::build(&graph)?;
        Ok(Dso { graph, spts, table })
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn spts(&self) -> &SptSet {
        &self.spts
    }

    #[inline]
    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn dist(&self, u: VertexId, v: VertexId) -> Dist {
        self.spts.dist(u, v)
    }

    /// Raw stored entry in `u -> v` orientation.
    pub fn entry(&self, u: VertexId, v: VertexId, i: usize, j: usize) -> Option<Detour> {
        self.table.get(u, v, i, j)
    }

    /// Shortest `u -> v` path avoiding positions `a..b` of `π(u,v)` when that interval is weak;
    /// otherwise some avoiding proper-form path or null.
    pub fn query_interval(&self, u: VertexId, v: VertexId, a: usize, b: usize) -> Result<Option<Detour>> {
        let h = self.spts.hops(u, v).ok_or(Error::IntervalNotOnPath { a, b, hops: 0 })?;
        if a > b || b > h {
            return Err(Error::IntervalNotOnPath { a, b, hops: h });
        }
        Ok(self.query_interval_unchecked(u, v, h, a, b))
    }

    pub(crate) fn query_interval_unchecked(&self, u: VertexId, v: VertexId, h: usize, a: usize, b: usize) -> Option<Detour> {
        let s = &self.spts;
        if a == b {
            return Some(Detour::straight(v, s.dist(u, v).finite().unwrap()));
        }
        let i = if a == 0 { 0 } else { pow2_floor(a) };
        let j = if b == h { 0 } else { pow2_floor(h - b) };
        let (pa, pb) = (a - i, b + j);
        let ap = s.kth(u, v, pa);
        let bp = s.kth(u, v, pb);
        let g = &self.graph;
        let mut best = self.table.get(u, v, i, j);
        let mut try_cand = |pre: Option<VertexId>, mid: (VertexId, VertexId), post: Option<VertexId>| {
            let Some(d) = self.table.get(mid.0, mid.1, i, j) else { return };
            if best.is_some_and(|b| b.len <= d.len) {
                return;
            }
            let mut ps = Pieces::new();
            if let Some(x) = pre {
                ps.push(Piece::Sp { spts: s, a: u, b: x });
            }
            ps.extend(detour_pieces(s, g, mid.0, mid.1, &d));
            if let Some(y) = post {
                ps.push(Piece::Sp { spts: s, a: y, b: v });
            }
            best = better(best, transform(&ps, a, b, s, g));
        };
        if pa > 0 || pb < h {
            try_cand(Some(ap), (ap, bp), Some(bp));
        }
        if pa > 0 {
            try_cand(Some(ap), (ap, v), None);
        }
        if pb < h {
            try_cand(None, (u, bp), Some(bp));
        }
        best
    }

    /// Distance from `u` to `v` avoiding edge `f`.
    pub fn query_edge_failure(&self, u: VertexId, v: VertexId, f: EdgeId) -> Dist {
        dist_of(&self.query_detour(u, v, f))
    }

    /// Proper form of `π_{G-f}(u,v)`, or `None` when `f` disconnects them.
    pub fn query_detour(&self, u: VertexId, v: VertexId, f: EdgeId) -> Option<Detour> {
        let h = self.spts.hops(u, v)?;
        if u == v {
            return Some(Detour::straight(v, crate::weight::Weight::ZERO));
        }
        let e = self.graph.edge(f);
        match self.spts.edge_position(u, v, f, e.u, e.v) {
            None => Some(Detour::straight(v, self.spts.dist(u, v).finite().unwrap())),
            Some(p) => self.query_interval_unchecked(u, v, h, p, p + 1),
        }
    }

    /// Vertex list of `π_{G-f}(u,v)`.
    pub fn query_path(&self, u: VertexId, v: VertexId, f: EdgeId) -> Option<Vec<VertexId>> {
        self.query_detour(u, v, f).map(|d| d.vertices(&self.spts, u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::perturb_and_verify;
    use crate::weight::Weight;

    fn raw(n: usize, es: &[(usize, usize, u64)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v, w) in es {
            g.add_edge(u, v, Weight::new(w, 0)).unwrap();
        }
        g
    }

    #[test]
    fn anchor_helpers() {
        assert_eq!(anchors(1), vec![0]);
        assert_eq!(anchors(5), vec![0, 1, 2, 4]);
        assert_eq!(anchor_index(8), 4);
        assert_eq!(pow2_floor(7), 4);
    }

    #[test]
    fn path_graph_middle_is_null() {
        let (g, _) = perturb_and_verify(&raw(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]), 3).unwrap();
        let d = Dso::build(g).unwrap();
        assert_eq!(d.entry(0, 3, 1, 1), None);
        assert_eq!(d.query_edge_failure(0, 3, 1), Dist::Inf);
    }

    #[test]
    fn c5_complementary_arc() {
        let (g, _) = perturb_and_verify(&raw(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)]), 1).unwrap();
        let d = Dso::build(g.clone()).unwrap();
        let f = g.edge_between(0, 1).unwrap();
        assert_eq!(d.query_edge_failure(0, 2, f).base(), Some(3));
        assert_eq!(d.query_path(0, 2, f).unwrap(), vec![0, 4, 3, 2]);
        let q = d.query_interval(0, 2, 0, 2).unwrap().unwrap();
        assert_eq!(q.len.base, 3);
    }

    #[test]
    fn off_path_failure_keeps_distance() {
        let (g, _) = perturb_and_verify(&raw(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 9), (3, 0, 9)]), 1).unwrap();
        let d = Dso::build(g.clone()).unwrap();
        let f = g.edge_between(2, 3).unwrap();
        assert_eq!(d.query_edge_failure(0, 2, f), d.dist(0, 2));
    }
}
