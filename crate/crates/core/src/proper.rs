//! Proper-form paths: shortest prefix, optional bridge edge, shortest suffix.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::spt::SptSet;
use crate::weight::{Dist, Weight};
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

pub const NO_BRIDGE: u32 = u32::MAX;

/// A `u -> v` path `π(u,x) ∘ (x,y) ∘ π(y,v)`. Endpoints are implied by context.
///
/// Without a bridge the path is `π(u,v)` itself and `x = y = v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Detour {
    pub x: u32,
    pub y: u32,
    pub bridge: u32,
    pub len: Weight,
}

impl Detour {
    pub fn straight(v: VertexId, len: Weight) -> Detour {
        Detour { x: v as u32, y: v as u32, bridge: NO_BRIDGE, len }
    }

    #[inline]
    pub fn bridge(&self) -> Option<EdgeId> {
        (self.bridge != NO_BRIDGE).then_some(self.bridge as usize)
    }

    /// The same path read from `v` back to `u`.
    pub fn reversed(&self, u: VertexId) -> Detour {
        match self.bridge() {
            None => Detour::straight(u, self.len),
            Some(_) => Detour { x: self.y, y: self.x, ..*self },
        }
    }

    /// Full vertex sequence from `u` to `v`.
    pub fn vertices(&self, spts: &SptSet, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut out = spts.path(u, self.x as usize).expect("prefix reachable");
        if self.bridge().is_some() {
            let mut suf = spts.path(v, self.y as usize).expect("suffix reachable");
            suf.reverse();
            out.extend(suf);
        }
        out
    }

    /// Full edge sequence from `u` to `v`.
    pub fn edges(&self, spts: &SptSet, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let mut out = spts.tree(u).path_edges(self.x as usize).expect("prefix reachable");
        if let Some(b) = self.bridge() {
            out.push(b);
            let mut suf = spts.tree(v).path_edges(self.y as usize).expect("suffix reachable");
            suf.reverse();
            out.extend(suf);
        }
        out
    }
}

/// Length of an optional detour, `Inf` for the null path.
#[inline]
pub fn dist_of(d: &Option<Detour>) -> Dist {
    d.map_or(Dist::Inf, |d| Dist::Fin(d.len))
}

/// Keeps the shorter of two optional detours.
#[inline]
pub fn better(a: Option<Detour>, b: Option<Detour>) -> Option<Detour> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.len < x.len { y } else { x }),
        (None, y) => y,
        (x, None) => x,
    }
}

/// One segment of a concatenated candidate path.
#[derive(Clone, Copy, Debug)]
pub enum Piece<'a> {
    /// The shortest path from `a` to `b` in the given tree set.
    Sp { spts: &'a SptSet, a: VertexId, b: VertexId },
    /// A single edge traversed `from -> to`.
    Edge { id: EdgeId, from: VertexId, to: VertexId, w: Weight },
}

impl Piece<'_> {
    fn hops(&self) -> Option<usize> {
        match *self {
            Piece::Sp { spts, a, b } => spts.hops(a, b),
            Piece::Edge { .. } => Some(1),
        }
    }

    fn len(&self) -> Option<Weight> {
        match *self {
            Piece::Sp { spts, a, b } => spts.dist(a, b).finite(),
            Piece::Edge { w, .. } => Some(w),
        }
    }

    fn vertex(&self, k: usize) -> VertexId {
        match *self {
            Piece::Sp { spts, a, b } => spts.kth(a, b, k),
            Piece::Edge { from, to, .. } => {
                if k == 0 {
                    from
                } else {
                    to
                }
            }
        }
    }

    fn prefix_len(&self, k: usize) -> Weight {
        match *self {
            Piece::Sp { spts, a, b } => {
                let c = spts.kth(a, b, k);
                spts.dist(a, c).finite().unwrap()
            }
            Piece::Edge { w, .. } => {
                if k == 0 {
                    Weight::ZERO
                } else {
                    w
                }
            }
        }
    }

    fn edge(&self, k: usize) -> EdgeId {
        match *self {
            Piece::Sp { spts, a, b } => spts.kth_edge(a, b, k),
            Piece::Edge { id, .. } => id,
        }
    }
}

/// Pieces spelling out a stored detour between `u` and `v`.
pub fn detour_pieces<'a>(spts: &'a SptSet, g: &Graph, u: VertexId, v: VertexId, d: &Detour) -> Pieces<'a> {
    match d.bridge() {
        None => smallvec![Piece::Sp { spts, a: u, b: v }],
        Some(id) => smallvec![
            Piece::Sp { spts, a: u, b: d.x as usize },
            Piece::Edge { id, from: d.x as usize, to: d.y as usize, w: g.edge(id).w },
            Piece::Sp { spts, a: d.y as usize, b: v },
        ],
    }
}

/// Pieces kept inline before spilling to the heap.
pub const INLINE_PIECES: usize = 8;

pub type Pieces<'a> = SmallVec<[Piece<'a>; INLINE_PIECES]>;

/// Random access over a concatenation of pieces.
struct Concat<'p, 'a> {
    pieces: &'p [Piece<'a>],
    // offsets[i] = hops before piece i; lens[i] = length before piece i
    offsets: SmallVec<[usize; INLINE_PIECES + 1]>,
    lens: SmallVec<[Weight; INLINE_PIECES + 1]>,
}

impl<'p, 'a> Concat<'p, 'a> {
    fn new(pieces: &'p [Piece<'a>]) -> Option<Self> {
        let mut offsets = SmallVec::with_capacity(pieces.len() + 1);
        let mut lens = SmallVec::with_capacity(pieces.len() + 1);
        let (mut h, mut l) = (0, Weight::ZERO);
        for p in pieces {
            offsets.push(h);
            lens.push(l);
            h += p.hops()?;
            l = l + p.len()?;
        }
        offsets.push(h);
        lens.push(l);
        Some(Concat { pieces, offsets, lens })
    }

    fn hops(&self) -> usize {
        self.offsets[self.pieces.len()]
    }

    fn total(&self) -> Weight {
        self.lens[self.pieces.len()]
    }

    fn locate(&self, k: usize) -> (usize, usize) {
        let mut i = 0;
        while self.offsets[i + 1] < k {
            i += 1;
        }
        (i, k - self.offsets[i])
    }

    fn vertex(&self, k: usize) -> VertexId {
        let (i, r) = self.locate(k);
        self.pieces[i].vertex(r)
    }

    fn prefix_len(&self, k: usize) -> Weight {
        let (i, r) = self.locate(k);
        self.lens[i] + self.pieces[i].prefix_len(r)
    }

    fn edge(&self, k: usize) -> EdgeId {
        // edge between positions k and k+1 lives in the piece containing k+1
        let mut i = 0;
        while self.offsets[i + 1] < k + 1 {
            i += 1;
        }
        self.pieces[i].edge(k - self.offsets[i])
    }
}

/// Proper form of a concatenated walk in the reference trees, or `None`.
pub fn to_proper_form(pieces: &[Piece<'_>], target: &SptSet) -> Option<Detour> {
    if pieces.is_empty() {
        return None;
    }
    let c = Concat::new(pieces)?;
    let h = c.hops();
    let u = c.vertex(0);
    let shortest_to = |k: usize| -> bool { target.dist(u, c.vertex(k)) == Dist::Fin(c.prefix_len(k)) };
    // Largest k with a shortest prefix; prefixes of shortest paths are shortest.
    let (mut lo, mut hi) = (0usize, h);
    if shortest_to(h) {
        lo = h;
    } else {
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if shortest_to(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let v = c.vertex(h);
    let total = c.total();
    if lo == h {
        return Some(Detour::straight(v, total));
    }
    let (x, y) = (c.vertex(lo), c.vertex(lo + 1));
    let rest = total - c.prefix_len(lo + 1);
    if target.dist(y, v) != Dist::Fin(rest) {
        return None;
    }
    Some(Detour { x: x as u32, y: y as u32, bridge: c.edge(lo) as u32, len: total })
}

/// Whether the detour from `u` to `v` shares an edge with positions `a..b` of `π(u,v)`.
pub fn intersects_interval(d: &Detour, u: VertexId, v: VertexId, a: usize, b: usize, spts: &SptSet, g: &Graph) -> bool {
    if a >= b {
        return false;
    }
    let tu = spts.tree(u);
    let (x, y) = (d.x as usize, d.y as usize);
    if tu.depth(tu.lca(x, v)).unwrap() > a {
        return true;
    }
    let Some(bridge) = d.bridge() else { return false };
    let h = spts.hops(u, v).unwrap();
    let tv = spts.tree(v);
    if tv.depth(tv.lca(y, u)).unwrap() > h - b {
        return true;
    }
    let e = g.edge(bridge);
    spts.edge_position(u, v, bridge, e.u, e.v).is_some_and(|p| a <= p && p < b)
}

/// The transform: proper form of the candidate if it avoids positions `a..b` of `π(u,v)`.
pub fn transform(pieces: &[Piece<'_>], a: usize, b: usize, target: &SptSet, g: &Graph) -> Option<Detour> {
    let d = to_proper_form(pieces, target)?;
    let u = first_vertex(pieces);
    let v = last_vertex(pieces);
    (!intersects_interval(&d, u, v, a, b, target, g)).then_some(d)
}

fn first_vertex(p: &[Piece<'_>]) -> VertexId {
    match p[0] {
        Piece::Sp { a, .. } => a,
        Piece::Edge { from, .. } => from,
    }
}

fn last_vertex(p: &[Piece<'_>]) -> VertexId {
    match *p.last().unwrap() {
        Piece::Sp { b, .. } => b,
        Piece::Edge { to, .. } => to,
    }
}

/// Divergence and convergence points of the `u -> v` walk `p` against `π(u,v)`.
///
/// When `p` is `π(u,v)` itself the pair `(v, u)` is returned.
pub fn diverge_converge(g: &Graph, spts: &SptSet, p: &[VertexId]) -> Result<(VertexId, VertexId)> {
    if p.is_empty() {
        return Err(Error::Invalid("empty path".into()));
    }
    for w in p.windows(2) {
        if g.edge_between(w[0], w[1]).is_none() {
            return Err(Error::NotAPath(w[0], w[1]));
        }
    }
    let (u, v) = (p[0], *p.last().unwrap());
    let h = spts.hops(u, v).ok_or(Error::Disconnected(u, v))?;
    let mut i = 0;
    while i < h && i + 1 < p.len() && p[i + 1] == spts.kth(u, v, i + 1) {
        i += 1;
    }
    if i == h && p.len() == h + 1 {
        return Ok((v, u));
    }
    let mut j = 0;
    while j < h && j + 1 < p.len() && p[p.len() - 2 - j] == spts.kth(v, u, j + 1) {
        j += 1;
    }
    Ok((p[i], p[p.len() - 1 - j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0-1-2-3 path of weight 1 plus a detour 1-4-2 of weight 3 and 0-5-3 of weight 10.
    fn sample() -> (Graph, SptSet) {
        let mut g = Graph::new(6);
        let es = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (1, 4, 1), (4, 2, 2), (0, 5, 5), (5, 3, 5)];
        for (i, &(a, b, w)) in es.iter().enumerate() {
            g.add_edge(a, b, Weight::new(w, i as u64 + 1)).unwrap();
        }
        let s = SptSet::build(&g).unwrap();
        (g, s)
    }

    #[test]
    fn shortest_path_is_straight() {
        let (_, s) = sample();
        let p = [Piece::Sp { spts: &s, a: 0, b: 3 }];
        let d = to_proper_form(&p, &s).unwrap();
        assert_eq!(d.bridge(), None);
        assert_eq!(d.x, 3);
    }

    #[test]
    fn detour_recovered() {
        let (g, s) = sample();
        let e = g.edge_between(4, 2).unwrap();
        let p = [
            Piece::Sp { spts: &s, a: 0, b: 4 },
            Piece::Edge { id: e, from: 4, to: 2, w: g.edge(e).w },
            Piece::Sp { spts: &s, a: 2, b: 3 },
        ];
        let d = to_proper_form(&p, &s).unwrap();
        assert_eq!((d.x, d.y, d.bridge()), (4, 2, Some(e)));
        assert_eq!(d.vertices(&s, 0, 3), vec![0, 1, 4, 2, 3]);
        // avoids the middle edge (position 1), not the first
        assert!(!intersects_interval(&d, 0, 3, 1, 2, &s, &g));
        assert!(intersects_interval(&d, 0, 3, 0, 1, &s, &g));
        assert!(intersects_interval(&d, 0, 3, 2, 3, &s, &g));
        assert_eq!(diverge_converge(&g, &s, &[0, 1, 4, 2, 3]).unwrap(), (1, 2));
        assert_eq!(diverge_converge(&g, &s, &[0, 1, 2, 3]).unwrap(), (3, 0));
        let r = d.reversed(0);
        assert_eq!(r.vertices(&s, 3, 0), vec![3, 2, 4, 1, 0]);
    }

    #[test]
    fn two_bridges_not_proper() {
        let (g, s) = sample();
        let e1 = g.edge_between(1, 4).unwrap();
        let e2 = g.edge_between(0, 5).unwrap();
        // 1 -> 4 -> 2 -> 1 -> 0 -> 5 -> 3 is a walk but two detours
        let p = [
            Piece::Edge { id: e1, from: 1, to: 4, w: g.edge(e1).w },
            Piece::Sp { spts: &s, a: 4, b: 0 },
            Piece::Edge { id: e2, from: 0, to: 5, w: g.edge(e2).w },
            Piece::Sp { spts: &s, a: 5, b: 3 },
        ];
        assert_eq!(to_proper_form(&p, &s), None);
    }
}
