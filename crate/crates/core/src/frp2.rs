//! One and two failures between a fixed pair `s`, `t`.

use crate::dso::Dso;
use crate::error::{Error, Result};
use crate::graph::{dijkstra, EdgeId, EdgeMask, Graph, Sssp, VertexId};
use crate::weight::{tiebreak, Dist, Weight};

const STAR_SEED: u64 = 0x5747;

/// The shortest `s`-`t` path with prefix sums, positions `0..=len`.
#[derive(Clone, Debug)]
pub struct StPath {
    pub verts: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// `pre[i] = |s p_i|`.
    pub pre: Vec<Weight>,
    pos_of_vertex: Vec<Option<usize>>,
    pos_of_edge: Vec<Option<usize>>,
}

impl StPath {
    pub fn new(g: &Graph, s: VertexId, t: VertexId) -> Result<StPath> {
        for x in [s, t] {
            if x >= g.n() {
                return Err(Error::VertexOutOfRange { v: x, n: g.n() });
            }
        }
        if s == t {
            return Err(Error::Invalid("s and t coincide".into()));
        }
        let sp = dijkstra(g, s, None);
        let verts = sp.path_to(g, t).ok_or(Error::Disconnected(s, t))?;
        let edges = sp.path_edges(g, t).unwrap();
        Ok(Self::from_parts(g, verts, edges))
    }

    pub fn from_parts(g: &Graph, verts: Vec<VertexId>, edges: Vec<EdgeId>) -> StPath {
        let mut pre = vec![Weight::ZERO];
        for &e in &edges {
            pre.push(*pre.last().unwrap() + g.edge(e).w);
        }
        let mut pos_of_vertex = vec![None; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            pos_of_vertex[v] = Some(i);
        }
        let mut pos_of_edge = vec![None; g.m()];
        for (i, &e) in edges.iter().enumerate() {
            pos_of_edge[e] = Some(i);
        }
        StPath { verts, edges, pre, pos_of_vertex, pos_of_edge }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn s(&self) -> VertexId {
        self.verts[0]
    }

    pub fn t(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    pub fn total(&self) -> Weight {
        *self.pre.last().unwrap()
    }

    /// `|p_i p_j|` for `i ≤ j`.
    pub fn span(&self, i: usize, j: usize) -> Weight {
        self.pre[j] - self.pre[i]
    }

    pub fn suffix(&self, i: usize) -> Weight {
        self.total() - self.pre[i]
    }

    pub fn vertex_pos(&self, v: VertexId) -> Option<usize> {
        self.pos_of_vertex.get(v).copied().flatten()
    }

    pub fn edge_pos(&self, e: EdgeId) -> Option<usize> {
        self.pos_of_edge.get(e).copied().flatten()
    }

    pub fn mask(&self, m: usize) -> EdgeMask {
        EdgeMask::from_edges(m, self.edges.iter().copied())
    }
}

/// Exact single-failure replacement paths for every edge of `π(s,t)`.
#[derive(Clone, Debug)]
pub struct Frp1 {
    pub path: StPath,
    pub dist: Vec<Dist>,
    pub paths: Vec<Option<Vec<EdgeId>>>,
    /// Union of the edges of all replacement paths, sorted.
    pub union: Vec<EdgeId>,
}

impl Frp1 {
    pub fn uses(&self, k: usize, e: EdgeId) -> bool {
        self.paths[k].as_ref().is_some_and(|p| p.contains(&e))
    }
}

/// One Dijkstra per path edge.
pub fn frp1_all(g: &Graph, s: VertexId, t: VertexId) -> Result<Frp1> {
    let path = StPath::new(g, s, t)?;
    let mut dist = Vec::with_capacity(path.len());
    let mut paths = Vec::with_capacity(path.len());
    let mut seen = vec![false; g.m()];
    for &d in &path.edges {
        let sp = dijkstra(g, s, Some(&EdgeMask::from_edges(g.m(), [d])));
        dist.push(sp.dist[t]);
        let p = sp.path_edges(g, t);
        if let Some(p) = &p {
            for &e in p {
                seen[e] = true;
            }
        }
        paths.push(p);
    }
    let union = (0..g.m()).filter(|&e| seen[e]).collect();
    Ok(Frp1 { path, dist, paths, union })
}

/// Distance matrix of `G` with the given edges removed, plus the trees.
#[derive(Clone, Debug)]
pub struct Apsp {
    pub trees: Vec<Sssp>,
}

impl Apsp {
    pub fn new(g: &Graph, removed: &EdgeMask) -> Apsp {
        Apsp { trees: (0..g.n()).map(|v| dijkstra(g, v, Some(removed))).collect() }
    }

    #[inline]
    pub fn d(&self, a: VertexId, b: VertexId) -> Dist {
        self.trees[a].dist[b]
    }

    pub fn path(&self, g: &Graph, a: VertexId, b: VertexId) -> Option<Vec<VertexId>> {
        self.trees[a].path_to(g, b)
    }
}

/// `G − π(s,t)` plus terminals `d⁻`, `d⁺` per path edge.
///
/// Every weight is lifted; star edges carry the lifted prefix or suffix they
/// stand for plus a fresh low-order tiebreak. Routes through different
/// terminals or different attachment points never tie, and lowering an
/// answer minus `2N` gives the exact composite length in `G`.
#[derive(Clone, Debug)]
pub struct AuxGraphH {
    pub graph: Graph,
    pub path: StPath,
    pub big_n: Weight,
    n_base: usize,
    /// `G` edge id → `H` edge id for edges kept in `H`.
    to_h: Vec<Option<EdgeId>>,
    /// `H` edge id → `G` edge id, `None` for star edges.
    to_g: Vec<Option<EdgeId>>,
}

impl AuxGraphH {
    pub fn minus(&self, k: usize) -> VertexId {
        self.n_base + 2 * k
    }

    pub fn plus(&self, k: usize) -> VertexId {
        self.n_base + 2 * k + 1
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn h_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.to_h.get(e).copied().flatten()
    }

    pub fn g_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.to_g.get(e).copied().flatten()
    }

    /// Whether `v` is a terminal, and for which path edge.
    pub fn terminal(&self, v: VertexId) -> Option<(usize, bool)> {
        (v >= self.n_base).then(|| ((v - self.n_base) / 2, (v - self.n_base) % 2 == 1))
    }

    /// Maps a terminal-to-terminal distance back to `G`; routes through a
    /// third terminal cost at least `3N` and stand for no path of `G`.
    pub fn unshift(&self, d: Dist) -> Dist {
        match d.sub_w(self.big_n + self.big_n).lowered() {
            Dist::Fin(w) if w.base < self.big_n.base => Dist::Fin(w),
            _ => Dist::Inf,
        }
    }

    /// Replaces star edges of an `H` walk by the prefix or suffix paths they stand for.
    pub fn expand(&self, walk: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = Vec::new();
        for (i, &v) in walk.iter().enumerate() {
            if self.terminal(v).is_none() {
                out.push(v);
                continue;
            }
            let j = if i == 0 { 1 } else { i - 1 };
            let Some(&x) = walk.get(j) else { continue };
            let Some(p) = self.path.vertex_pos(x) else { continue };
            if i == 0 {
                out.extend_from_slice(&self.path.verts[..p]);
            } else {
                out.extend_from_slice(&self.path.verts[p + 1..]);
            }
        }
        out
    }
}

/// `N` as (sum of base weights + 1, tie 0).
pub fn big_n(g: &Graph) -> Result<Weight> {
    let b = g.total_base() + 1;
    u64::try_from(b).map(|b| Weight::new(b, 0)).map_err(|_| Error::Overflow)
}

/// Builds `H` over a given path, so padded paths can reuse it.
pub fn build_h_on(g: &Graph, path: &StPath, big: Weight) -> Result<AuxGraphH> {
    let n = g.n();
    let l = path.len();
    let mut h = Graph::new(n + 2 * l);
    let mut to_h = vec![None; g.m()];
    let mut to_g = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if path.edge_pos(id).is_none() {
            to_h[id] = Some(h.add_edge(e.u, e.v, e.w.lifted())?);
            to_g.push(Some(id));
        }
    }
    let total = path.total();
    let star = |c: Weight, a: VertexId, b: VertexId| {
        c.lifted().checked_add(big).map(|w| w + Weight::new(0, tiebreak(STAR_SEED, a, b))).ok_or(Error::Overflow)
    };
    for k in 0..l {
        for j in 0..=k {
            h.add_edge(n + 2 * k, path.verts[j], star(path.pre[j], n + 2 * k, path.verts[j])?)?;
            to_g.push(None);
        }
        for j in k + 1..=l {
            h.add_edge(n + 2 * k + 1, path.verts[j], star(total - path.pre[j], n + 2 * k + 1, path.verts[j])?)?;
            to_g.push(None);
        }
    }
    Ok(AuxGraphH { graph: h, path: path.clone(), big_n: big, n_base: n, to_h, to_g })
}

pub fn build_h(g: &Graph, s: VertexId, t: VertexId) -> Result<AuxGraphH> {
    let path = StPath::new(g, s, t)?;
    build_h_on(g, &path, big_n(g)?)
}

/// `|π_{G−{d₁,d₂}}(s,t)|` for `d₁` at path position `k1` and `d₂` off the path.
pub fn frp2_one_on_path(h: &AuxGraphH, dso: &Dso, k1: usize, d2: EdgeId) -> Dist {
    let (a, b) = (h.minus(k1), h.plus(k1));
    match h.h_edge(d2) {
        Some(f) => h.unshift(dso.query_edge_failure(a, b, f)),
        None => h.unshift(dso.dist(a, b)),
    }
}

/// Witness of a both-on-path answer: diverge at `w`, converge at `a`,
/// walk the middle to `b`, leave again and converge at `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub w: usize,
    pub a: usize,
    pub b: usize,
    pub z: usize,
}

/// `U`, `U′` tables and the `W` sweep over the `G − st` distance matrix.
pub struct BothOnPath<'a> {
    path: &'a StPath,
    apsp: &'a Apsp,
    /// `u[k][a] = min_{w ≤ k} |s p_w| + d(p_w, p_a)` with its argmin.
    u: Vec<Vec<(Dist, usize)>>,
    /// `up[k][b] = min_{z ≥ k+1} d(p_b, p_z) + |p_z t|` with its argmin.
    up: Vec<Vec<(Dist, usize)>>,
}

impl<'a> BothOnPath<'a> {
    pub fn new(path: &'a StPath, apsp: &'a Apsp) -> Self {
        let l = path.len();
        let v = &path.verts;
        let mut u = Vec::with_capacity(l);
        let mut row: Vec<(Dist, usize)> = vec![(Dist::Inf, 0); l + 1];
        for k in 0..l {
            for a in 0..=l {
                let c = apsp.d(v[k], v[a]).add_w(path.pre[k]);
                if c < row[a].0 {
                    row[a] = (c, k);
                }
            }
            u.push(row.clone());
        }
        let mut up = vec![Vec::new(); l];
        let mut row: Vec<(Dist, usize)> = vec![(Dist::Inf, l); l + 1];
        for k in (0..l).rev() {
            let z = k + 1;
            for b in 0..=l {
                let c = apsp.d(v[b], v[z]).add_w(path.suffix(z));
                if c < row[b].0 {
                    row[b] = (c, z);
                }
            }
            up[k] = row.clone();
        }
        BothOnPath { path, apsp, u, up }
    }

    pub fn u(&self, k1: usize, a: usize) -> Dist {
        self.u[k1][a].0
    }

    pub fn u_prime(&self, k2: usize, b: usize) -> Dist {
        self.up[k2][b].0
    }

    /// `W(d₁,d₂,b)` for `b` in `k1+1..=k2`, indexed from `k1+1`.
    pub fn w(&self, k1: usize, k2: usize) -> Vec<(Dist, usize)> {
        let lo = k1 + 1;
        let mut out = vec![(Dist::Inf, 0); k2 + 1 - lo];
        out[k2 - lo] = (self.u(k1, k2), k2);
        for b in (lo..k2).rev() {
            let (prev, pa) = out[b + 1 - lo];
            let via = prev.add_w(self.path.span(b, b + 1));
            out[b - lo] = if self.u(k1, b) < via { (self.u(k1, b), b) } else { (via, pa) };
        }
        out
    }

    /// Detour that skips the middle entirely.
    pub fn h_type(&self, k1: usize, k2: usize) -> (Dist, Witness) {
        let mut best = (Dist::Inf, Witness { w: 0, a: 0, b: 0, z: 0 });
        for z in k2 + 1..=self.path.len() {
            let (d, w) = self.u[k1][z];
            let c = d.add_w(self.path.suffix(z));
            if c < best.0 {
                best = (c, Witness { w, a: z, b: z, z });
            }
        }
        best
    }

    /// Middle walked forward: `a ≤ b`.
    pub fn p(&self, k1: usize, k2: usize) -> (Dist, Witness) {
        let mut best = (Dist::Inf, Witness { w: 0, a: 0, b: 0, z: 0 });
        let mut run: (Dist, usize) = (Dist::Inf, 0);
        for b in k1 + 1..=k2 {
            let step = run.0.add_w(if b > k1 + 1 { self.path.span(b - 1, b) } else { Weight::ZERO });
            run = if self.u(k1, b) < step || b == k1 + 1 { (self.u(k1, b), b) } else { (step, run.1) };
            let (t, z) = self.up[k2][b];
            let c = run.0 + t;
            if c < best.0 {
                best = (c, Witness { w: self.u[k1][run.1].1, a: run.1, b, z });
            }
        }
        best
    }

    /// Middle walked backward: `b ≤ a`.
    pub fn p_prime(&self, k1: usize, k2: usize) -> (Dist, Witness) {
        let mut best = (Dist::Inf, Witness { w: 0, a: 0, b: 0, z: 0 });
        for (i, (wd, a)) in self.w(k1, k2).into_iter().enumerate() {
            let b = k1 + 1 + i;
            let (t, z) = self.up[k2][b];
            let c = wd + t;
            if c < best.0 {
                best = (c, Witness { w: self.u[k1][a].1, a, b, z });
            }
        }
        best
    }

    /// `|π_{G−{d₁,d₂}}(s,t)|` for path positions `k1 < k2`.
    pub fn solve(&self, k1: usize, k2: usize) -> (Dist, Witness) {
        debug_assert!(k1 < k2);
        let mut best = self.h_type(k1, k2);
        for c in [self.p(k1, k2), self.p_prime(k1, k2)] {
            if c.0 < best.0 {
                best = c;
            }
        }
        best
    }

    /// Vertex sequence of a witness.
    pub fn route(&self, g: &Graph, wt: Witness) -> Option<Vec<VertexId>> {
        let v = &self.path.verts;
        let mut out: Vec<VertexId> = v[..=wt.w].to_vec();
        let leg = |out: &mut Vec<VertexId>, x: usize, y: usize| -> Option<()> {
            let p = self.apsp.path(g, v[x], v[y])?;
            out.extend_from_slice(&p[1..]);
            Some(())
        };
        leg(&mut out, wt.w, wt.a)?;
        if wt.a <= wt.b {
            out.extend_from_slice(&v[wt.a + 1..=wt.b]);
        } else {
            out.extend(v[wt.b..wt.a].iter().rev());
        }
        leg(&mut out, wt.b, wt.z)?;
        out.extend_from_slice(&v[wt.z + 1..]);
        Some(out)
    }
}

/// Everything needed to answer any `(d₁ ∈ π(s,t), d₂)` query.
pub struct Frp2 {
    pub frp1: Frp1,
    pub h: AuxGraphH,
    pub h_dso: Dso,
    pub apsp: Apsp,
    both: Vec<Vec<(Dist, Witness)>>,
}

impl Frp2 {
    pub fn new(g: &Graph, s: VertexId, t: VertexId) -> Result<Frp2> {
        let frp1 = frp1_all(g, s, t)?;
        let h = build_h_on(g, &frp1.path, big_n(g)?)?;
        let h_dso = Dso::build(h.graph.clone())?;
        let apsp = Apsp::new(g, &frp1.path.mask(g.m()));
        let l = frp1.path.len();
        let bp = BothOnPath::new(&frp1.path, &apsp);
        let both = (0..l).map(|k1| (0..l).map(|k2| if k1 < k2 { bp.solve(k1, k2) } else { (Dist::Inf, Witness { w: 0, a: 0, b: 0, z: 0 }) }).collect()).collect();
        Ok(Frp2 { frp1, h, h_dso, apsp, both })
    }

    pub fn path(&self) -> &StPath {
        &self.frp1.path
    }

    fn k1(&self, d1: EdgeId) -> Result<usize> {
        self.path().edge_pos(d1).ok_or_else(|| Error::Invalid(format!("edge {d1} is not on the s-t path")))
    }

    /// `|π_{G−{d₁,d₂}}(s,t)|`, `d₁` on the path, `d₂` anywhere.
    pub fn dist(&self, d1: EdgeId, d2: EdgeId) -> Result<Dist> {
        let k1 = self.k1(d1)?;
        if d2 == d1 || !self.frp1.uses(k1, d2) {
            return Ok(self.frp1.dist[k1]);
        }
        Ok(match self.path().edge_pos(d2) {
            Some(k2) => self.both[k1.min(k2)][k1.max(k2)].0,
            None => frp2_one_on_path(&self.h, &self.h_dso, k1, d2),
        })
    }

    /// Vertex sequence realizing [`Frp2::dist`], when finite.
    pub fn route(&self, g: &Graph, d1: EdgeId, d2: EdgeId) -> Result<Option<Vec<VertexId>>> {
        let k1 = self.k1(d1)?;
        if d2 == d1 || !self.frp1.uses(k1, d2) {
            return Ok(self.frp1.paths[k1].as_ref().map(|es| crate::brute::edge_path_vertices(g, self.path().s(), es)));
        }
        Ok(match self.path().edge_pos(d2) {
            Some(k2) => {
                let (d, wt) = self.both[k1.min(k2)][k1.max(k2)];
                if !d.is_finite() {
                    return Ok(None);
                }
                BothOnPath::new(self.path(), &self.apsp).route(g, wt)
            }
            None => {
                let (a, b) = (self.h.minus(k1), self.h.plus(k1));
                let f = self.h.h_edge(d2).unwrap();
                if !self.h.unshift(self.h_dso.query_edge_failure(a, b, f)).is_finite() {
                    return Ok(None);
                }
                self.h_dso.query_path(a, b, f).map(|w| self.h.expand(&w))
            }
        })
    }

    /// Streams every required pair: `d₁` on `π(s,t)`, `d₂` on `π_{G−d₁}(s,t)`.
    pub fn for_each_required<F: FnMut(EdgeId, EdgeId, Dist)>(&self, mut sink: F) -> Result<()> {
        for (k1, &d1) in self.path().edges.iter().enumerate() {
            let Some(p) = &self.frp1.paths[k1] else { continue };
            for &d2 in p {
                sink(d1, d2, self.dist(d1, d2)?);
            }
        }
        Ok(())
    }
}
