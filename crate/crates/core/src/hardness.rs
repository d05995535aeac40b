//! APSP to 2FRP reduction: instance generator and answer extractor.

use crate::error::{Error, Result};
use crate::frp2::{big_n, Frp2};
use crate::graph::{dijkstra, EdgeId, Graph, VertexId};
use crate::weight::{tiebreak, Dist, Weight};
use std::fmt::Write as _;

const PATH_SEED: u64 = 0x4841;

/// `H = S ∪ E₁ ∪ G ∪ E₂ ∪ T`. Vertex `v_i` of the construction is `G`'s vertex `i − 1`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub h: Graph,
    pub s: VertexId,
    pub t: VertexId,
    pub big_n: Weight,
    /// `s_0 ..= s_{n+1}`.
    pub s_nodes: Vec<VertexId>,
    pub t_nodes: Vec<VertexId>,
    /// `s_edges[i]` is `(s_{i−1}, s_i)` for `1 ≤ i ≤ n`; index 0 unused.
    pub s_edges: Vec<EdgeId>,
    pub t_edges: Vec<EdgeId>,
    /// `match_s[i]` is `(s_i, v_i)`; index 0 unused.
    pub match_s: Vec<EdgeId>,
    pub match_t: Vec<EdgeId>,
}

impl ReductionInstance {
    /// Size of the reduced graph.
    pub fn n_g(&self) -> usize {
        self.s_nodes.len() - 2
    }

    /// The designated failure set for `(i, j)`, `1 ≤ i, j ≤ n`.
    pub fn failures(&self, i: usize, j: usize) -> (EdgeId, EdgeId) {
        (self.s_edges[i], self.t_edges[j])
    }

    /// Composite length of the route outside `G` forced by `(i, j)`.
    fn offset(&self, i: usize, j: usize) -> Weight {
        let h = &self.h;
        let mut w = h.edge(self.match_s[i]).w + h.edge(self.match_t[j]).w;
        for k in i..=self.n_g() {
            w = w + h.edge(self.s_edges_between(k)).w;
        }
        for k in j..=self.n_g() {
            w = w + h.edge(self.t_edges_between(k)).w;
        }
        w
    }

    fn s_edges_between(&self, k: usize) -> EdgeId {
        self.h.edge_between(self.s_nodes[k], self.s_nodes[k + 1]).unwrap()
    }

    fn t_edges_between(&self, k: usize) -> EdgeId {
        self.h.edge_between(self.t_nodes[k], self.t_nodes[k + 1]).unwrap()
    }

    /// `kind index vertex` lines for the `s_i`, `t_i` and `v_i`.
    pub fn map_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "c kind index vertex").unwrap();
        for (i, &v) in self.s_nodes.iter().enumerate() {
            writeln!(out, "s {i} {v}").unwrap();
        }
        for (i, &v) in self.t_nodes.iter().enumerate() {
            writeln!(out, "t {i} {v}").unwrap();
        }
        for i in 1..=self.n_g() {
            writeln!(out, "v {i} {}", i - 1).unwrap();
        }
        out
    }
}

/// Builds the reduction; `g` should carry tiebreaks already.
pub fn reduce(g: &Graph) -> Result<ReductionInstance> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Invalid("reduction needs at least two vertices".into()));
    }
    let big = big_n(g)?;
    let mut h = g.clone();
    let s_nodes: Vec<VertexId> = (0..n + 2).map(|_| h.add_vertex()).collect();
    let t_nodes: Vec<VertexId> = (0..n + 2).map(|_| h.add_vertex()).collect();
    let mut s_edges = vec![usize::MAX];
    let mut t_edges = vec![usize::MAX];
    for i in 0..=n {
        let (a, b) = (s_nodes[i], s_nodes[i + 1]);
        let e = h.add_edge(a, b, Weight::new(0, tiebreak(PATH_SEED, a, b)))?;
        if i < n {
            s_edges.push(e);
        }
        let (a, b) = (t_nodes[i], t_nodes[i + 1]);
        let e = h.add_edge(a, b, Weight::new(0, tiebreak(PATH_SEED, a, b)))?;
        if i < n {
            t_edges.push(e);
        }
    }
    let mut match_s = vec![usize::MAX];
    let mut match_t = vec![usize::MAX];
    for i in 1..=n {
        let w = big.checked_mul(i as u64).ok_or(Error::Overflow)?;
        let v = i - 1;
        match_s.push(h.add_edge(s_nodes[i], v, w + Weight::new(0, tiebreak(PATH_SEED, s_nodes[i], v)))?);
        match_t.push(h.add_edge(v, t_nodes[i], w + Weight::new(0, tiebreak(PATH_SEED, t_nodes[i], v)))?);
    }
    let inst = ReductionInstance { h, s: s_nodes[n + 1], t: t_nodes[n + 1], big_n: big, s_nodes, t_nodes, s_edges, t_edges, match_s, match_t };
    let route = dijkstra(&inst.h, inst.s, None).path_to(&inst.h, inst.t).ok_or(Error::Disconnected(inst.s, inst.t))?;
    let mut want: Vec<VertexId> = inst.s_nodes[1..].iter().rev().copied().collect();
    want.push(0);
    want.extend_from_slice(&inst.t_nodes[1..]);
    if route != want {
        return Err(Error::InconsistentAnswer("reduced s-t path is not s..s1 v1 t1..t".into()));
    }
    Ok(inst)
}

/// Recovers `d_G(v_i, v_j)` from the answers on the designated failure sets.
pub fn extract_apsp<F>(inst: &ReductionInstance, mut answer: F) -> Result<Vec<Vec<Dist>>>
where
    F: FnMut(EdgeId, EdgeId) -> Result<Dist>,
{
    let n = inst.n_g();
    let mut m = vec![vec![Dist::Inf; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = inst.failures(i, j);
            let d = answer(a, b)?;
            let off = inst.offset(i, j);
            let floor = inst.big_n.checked_mul((i + j) as u64).ok_or(Error::Overflow)?;
            m[i - 1][j - 1] = match d {
                Dist::Fin(w) if w >= off && w.base >= floor.base => Dist::Fin(w - off),
                _ => return Err(Error::InconsistentAnswer(format!("answer for (i={i}, j={j}) is {d:?}, below (i+j)N or infinite"))),
            };
        }
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::InconsistentAnswer(format!("extracted matrix asymmetric at ({i}, {j})")));
            }
        }
    }
    Ok(m)
}

/// Runs the 2FRP solver on the designated failure sets.
pub fn solve_designated(inst: &ReductionInstance) -> Result<Vec<Vec<Dist>>> {
    let f = Frp2::new(&inst.h, inst.s, inst.t)?;
    let base = f.frp1.path.total();
    extract_apsp(inst, |a, b| match (f.path().edge_pos(a), f.path().edge_pos(b)) {
        (Some(_), _) => f.dist(a, b),
        (None, Some(_)) => f.dist(b, a),
        (None, None) => Ok(Dist::Fin(base)),
    })
}
