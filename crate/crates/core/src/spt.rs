//! Shortest path trees with constant-time LCA and logarithmic level ancestors.

use crate::error::{Error, Result};
use crate::graph::{dijkstra, EdgeId, Graph, Sssp, VertexId};
use crate::weight::Dist;

const NONE: u32 = u32::MAX;

/// Shortest path tree rooted at `source`.
#[derive(Clone, Debug)]
pub struct Spt {
    pub source: VertexId,
    dist: Vec<Dist>,
    parent: Vec<u32>,
    parent_edge: Vec<u32>,
    depth: Vec<u32>,
    // Preorder number and the largest preorder number inside the subtree.
    pre: Vec<u32>,
    last: Vec<u32>,
    // Euler tour, first occurrence, and a sparse table of min-depth positions.
    euler: Vec<u32>,
    first: Vec<u32>,
    sparse: Vec<Vec<u32>>,
    // up[k][v] is the 2^k-th ancestor of v, saturating at the root.
    up: Vec<Vec<u32>>,
}

impl Spt {
    pub fn from_sssp(g: &Graph, s: &Sssp) -> Spt {
        let n = g.n();
        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(e) = s.parent[v] {
                let p = g.edge(e).other(v);
                parent[v] = p as u32;
                parent_edge[v] = e as u32;
                children[p].push(v as u32);
            }
        }
        let root = s.source;
        let mut depth = vec![NONE; n];
        let mut pre = vec![NONE; n];
        let mut last = vec![NONE; n];
        let mut first = vec![NONE; n];
        let mut euler = Vec::with_capacity(2 * n);
        let mut clock = 0u32;
        depth[root] = 0;
        pre[root] = 0;
        first[root] = 0;
        euler.push(root as u32);
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let x = top.0;
            if top.1 < children[x].len() {
                let c = children[x][top.1] as usize;
                top.1 += 1;
                clock += 1;
                depth[c] = depth[x] + 1;
                pre[c] = clock;
                first[c] = euler.len() as u32;
                euler.push(c as u32);
                stack.push((c, 0));
            } else {
                last[x] = clock;
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    euler.push(p as u32);
                }
            }
        }
        let len = euler.len();
        let mut sparse = vec![(0..len as u32).collect::<Vec<_>>()];
        let mut k = 1;
        while (1usize << k) <= len {
            let prev = &sparse[k - 1];
            let half = 1 << (k - 1);
            let row: Vec<u32> = (0..=len - (1 << k))
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + half]);
                    if depth[euler[a as usize] as usize] <= depth[euler[b as usize] as usize] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            sparse.push(row);
            k += 1;
        }
        let maxd = depth.iter().filter(|&&d| d != NONE).max().copied().unwrap_or(0);
        let levels = (32 - maxd.leading_zeros()).max(1) as usize;
        let base: Vec<u32> = (0..n).map(|v| if parent[v] == NONE { v as u32 } else { parent[v] }).collect();
        let mut up = vec![base];
        for k in 1..levels {
            let prev = &up[k - 1];
            let row = (0..n).map(|v| prev[prev[v] as usize]).collect();
            up.push(row);
        }
        Spt { source: root, dist: s.dist.clone(), parent, parent_edge, depth, pre, last, euler, first, sparse, up }
    }

    pub fn build(g: &Graph, source: VertexId) -> Spt {
        Spt::from_sssp(g, &dijkstra(g, source, None))
    }

    #[inline]
    pub fn dist(&self, v: VertexId) -> Dist {
        self.dist[v]
    }

    #[inline]
    pub fn reaches(&self, v: VertexId) -> bool {
        self.depth[v] != NONE
    }

    /// Hop count from the root, or `None` if unreachable.
    #[inline]
    pub fn depth(&self, v: VertexId) -> Option<usize> {
        let d = self.depth[v];
        (d != NONE).then_some(d as usize)
    }

    #[inline]
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v];
        (p != NONE).then_some(p as usize)
    }

    #[inline]
    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        let e = self.parent_edge[v];
        (e != NONE).then_some(e as usize)
    }

    /// True if `a` lies on the tree path from the root to `v` (inclusive).
    #[inline]
    pub fn is_ancestor(&self, a: VertexId, v: VertexId) -> bool {
        self.reaches(a) && self.reaches(v) && self.pre[a] <= self.pre[v] && self.pre[v] <= self.last[a]
    }

    /// Lowest common ancestor; both vertices must be reachable.
    pub fn lca(&self, a: VertexId, b: VertexId) -> VertexId {
        debug_assert!(self.reaches(a) && self.reaches(b));
        let (mut l, mut r) = (self.first[a] as usize, self.first[b] as usize);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
        let (i, j) = (self.sparse[k][l], self.sparse[k][r + 1 - (1 << k)]);
        let (x, y) = (self.euler[i as usize] as usize, self.euler[j as usize] as usize);
        if self.depth[x] <= self.depth[y] {
            x
        } else {
            y
        }
    }

    /// Ancestor of `v` at depth `d` (must be ≤ depth of `v`).
    pub fn ancestor_at_depth(&self, v: VertexId, d: usize) -> VertexId {
        let dv = self.depth[v] as usize;
        debug_assert!(d <= dv);
        let mut k = dv - d;
        let mut x = v;
        let mut lvl = 0;
        while k > 0 {
            if k & 1 == 1 {
                x = self.up[lvl][x] as usize;
            }
            k >>= 1;
            lvl += 1;
        }
        x
    }

    /// Root-to-`v` vertex sequence.
    pub fn path(&self, v: VertexId) -> Option<Vec<VertexId>> {
        if !self.reaches(v) {
            return None;
        }
        let mut out = vec![v];
        let mut x = v;
        while let Some(p) = self.parent(x) {
            out.push(p);
            x = p;
        }
        out.reverse();
        Some(out)
    }

    /// Root-to-`v` edge sequence.
    pub fn path_edges(&self, v: VertexId) -> Option<Vec<EdgeId>> {
        if !self.reaches(v) {
            return None;
        }
        let mut out = Vec::with_capacity(self.depth[v] as usize);
        let mut x = v;
        while let Some(e) = self.parent_edge(x) {
            out.push(e);
            x = self.parent[x] as usize;
        }
        out.reverse();
        Some(out)
    }
}

/// One shortest path tree per vertex.
#[derive(Clone, Debug)]
pub struct SptSet {
    spts: Vec<Spt>,
}

impl SptSet {
    /// Dijkstra from every vertex; fails on a shortest-path tie.
    pub fn build(g: &Graph) -> Result<SptSet> {
        let mut spts = Vec::with_capacity(g.n());
        for s in 0..g.n() {
            let sp = dijkstra(g, s, None);
            if sp.tie {
                return Err(Error::TieDetected);
            }
            spts.push(Spt::from_sssp(g, &sp));
        }
        Ok(SptSet { spts })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.spts.len()
    }

    #[inline]
    pub fn tree(&self, s: VertexId) -> &Spt {
        &self.spts[s]
    }

    #[inline]
    pub fn dist(&self, a: VertexId, b: VertexId) -> Dist {
        self.spts[a].dist[b]
    }

    #[inline]
    pub fn hops(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.spts[a].depth(b)
    }

    /// The vertex `k` hops from `a` on the shortest path towards `b`.
    #[inline]
    pub fn kth(&self, a: VertexId, b: VertexId, k: usize) -> VertexId {
        self.spts[a].ancestor_at_depth(b, k)
    }

    /// The edge between positions `k` and `k + 1` of the path from `a` to `b`.
    #[inline]
    pub fn kth_edge(&self, a: VertexId, b: VertexId, k: usize) -> EdgeId {
        let c = self.kth(a, b, k + 1);
        self.spts[a].parent_edge(c).expect("non-root vertex has a parent edge")
    }

    /// Position of edge `e` (endpoints `x`, `y`) on the path from `u` to `v`.
    pub fn edge_position(&self, u: VertexId, v: VertexId, e: EdgeId, x: VertexId, y: VertexId) -> Option<usize> {
        let t = &self.spts[u];
        for c in [x, y] {
            if t.parent_edge(c) == Some(e) && t.is_ancestor(c, v) {
                return Some(t.depth[c] as usize - 1);
            }
        }
        None
    }

    pub fn path(&self, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
        self.spts[a].path(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Weight;

    fn line(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n - 1 {
            g.add_edge(i, i + 1, Weight::new(1, i as u64 + 1)).unwrap();
        }
        g
    }

    #[test]
    fn lca_and_levels_on_a_line() {
        let g = line(9);
        let t = Spt::build(&g, 4);
        assert_eq!(t.lca(0, 8), 4);
        assert_eq!(t.lca(0, 2), 2);
        assert_eq!(t.ancestor_at_depth(8, 2), 6);
        assert_eq!(t.depth(0), Some(4));
        assert!(t.is_ancestor(5, 7));
        assert!(!t.is_ancestor(5, 3));
        assert_eq!(t.path(1).unwrap(), vec![4, 3, 2, 1]);
    }

    #[test]
    fn unreachable_is_marked() {
        let mut g = line(3);
        g.add_vertex();
        let t = Spt::build(&g, 0);
        assert!(!t.reaches(3));
        assert_eq!(t.dist(3), Dist::Inf);
        assert_eq!(t.depth(3), None);
    }

    #[test]
    fn kth_and_positions() {
        let g = line(6);
        let s = SptSet::build(&g).unwrap();
        assert_eq!(s.kth(5, 0, 2), 3);
        let e = g.edge_between(2, 3).unwrap();
        assert_eq!(s.edge_position(0, 5, e, 2, 3), Some(2));
        assert_eq!(s.edge_position(5, 0, e, 2, 3), Some(2));
        assert_eq!(s.edge_position(0, 2, e, 2, 3), None);
        assert_eq!(s.kth_edge(0, 5, 2), e);
    }
}
