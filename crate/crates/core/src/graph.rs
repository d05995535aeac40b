//! Undirected simple graphs with composite weights, Dijkstra and removal masks.

use crate::error::{Error, Result};
use crate::weight::{Dist, Weight};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints with the smaller id first.
    pub fn key(&self) -> (VertexId, VertexId) {
        if self.u < self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// Undirected graph without self-loops or parallel edges.
///
/// Edge ids are assigned in insertion order and never reused.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<EdgeId> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::DuplicateEdge(u, v));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, w });
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, x: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[x]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].iter().find(|&&(y, _)| y == b).map(|&(_, e)| e)
    }

    pub fn total_base(&self) -> u128 {
        self.edges.iter().map(|e| e.w.base as u128).sum()
    }

    /// Copy of this graph without the masked edges. Edge ids are renumbered.
    pub fn without(&self, mask: &EdgeMask) -> Graph {
        let mut g = Graph::new(self.n);
        for (id, e) in self.edges.iter().enumerate() {
            if !mask.contains(id) {
                g.add_edge(e.u, e.v, e.w).expect("subgraph of a simple graph is simple");
            }
        }
        g
    }

    /// Sum of edge weights along a vertex sequence, or an error if it is not a walk.
    pub fn walk_length(&self, vs: &[VertexId]) -> Result<Weight> {
        let mut w = Weight::ZERO;
        for p in vs.windows(2) {
            let e = self.edge_between(p[0], p[1]).ok_or(Error::NotAPath(p[0], p[1]))?;
            w = w + self.edges[e].w;
        }
        Ok(w)
    }
}

/// Bitset over edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeMask {
    bits: Vec<u64>,
}

impl EdgeMask {
    pub fn new(m: usize) -> Self {
        EdgeMask { bits: vec![0; m.div_ceil(64)] }
    }

    pub fn from_edges(m: usize, es: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = EdgeMask::new(m);
        for e in es {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: EdgeId) {
        let w = e / 64;
        if w >= self.bits.len() {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: EdgeId) {
        if let Some(b) = self.bits.get_mut(e / 64) {
            *b &= !(1 << (e % 64));
        }
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.bits.get(e / 64).is_some_and(|b| b >> (e % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

/// Single-source shortest paths: distances and parent edges.
#[derive(Clone, Debug)]
pub struct Sssp {
    pub source: VertexId,
    pub dist: Vec<Dist>,
    pub parent: Vec<Option<EdgeId>>,
    /// Set when two distinct relaxations produced the same composite length at a vertex.
    pub tie: bool,
}

impl Sssp {
    /// Vertices of the tree path from the source to `v`, or `None` if unreachable.
    pub fn path_to(&self, g: &Graph, v: VertexId) -> Option<Vec<VertexId>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut out = vec![v];
        let mut x = v;
        while let Some(e) = self.parent[x] {
            x = g.edge(e).other(x);
            out.push(x);
        }
        out.reverse();
        Some(out)
    }

    /// Edge ids of the tree path from the source to `v`.
    pub fn path_edges(&self, g: &Graph, v: VertexId) -> Option<Vec<EdgeId>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut out = Vec::new();
        let mut x = v;
        while let Some(e) = self.parent[x] {
            out.push(e);
            x = g.edge(e).other(x);
        }
        out.reverse();
        Some(out)
    }
}

/// Dijkstra from `src`, skipping masked edges.
pub fn dijkstra(g: &Graph, src: VertexId, removed: Option<&EdgeMask>) -> Sssp {
    let n = g.n();
    let mut dist = vec![Dist::Inf; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut tie = false;
    let mut heap = BinaryHeap::new();
    dist[src] = Dist::ZERO;
    heap.push(Reverse((Weight::ZERO, src)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &(y, e) in g.neighbors(x) {
            if removed.is_some_and(|m| m.contains(e)) || done[y] {
                continue;
            }
            let nd = d + g.edge(e).w;
            match Dist::Fin(nd).cmp(&dist[y]) {
                std::cmp::Ordering::Less => {
                    dist[y] = Dist::Fin(nd);
                    parent[y] = Some(e);
                    heap.push(Reverse((nd, y)));
                }
                std::cmp::Ordering::Equal => tie = true,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Sssp { source: src, dist, parent, tie }
}
