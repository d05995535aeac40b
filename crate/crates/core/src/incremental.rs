//! Edge insertion for [`Dso`]: refresh the trees, then recompute every table
//! entry from the previous oracle's answers.

use crate::dso::{anchors, Dso, Table};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::proper::{better, detour_pieces, transform, Detour, Piece, Pieces};
use crate::spt::SptSet;
use crate::weight::{Dist, Weight};

struct Update<'a> {
    old: &'a Dso,
    g: &'a Graph,
    s: &'a SptSet,
    e: EdgeId,
    w: Weight,
}

impl<'a> Update<'a> {
    fn sp_old(&self, a: VertexId, b: VertexId) -> Piece<'a> {
        Piece::Sp { spts: &self.old.spts, a, b }
    }

    fn edge(&self, from: VertexId, to: VertexId) -> Piece<'a> {
        Piece::Edge { id: self.e, from, to, w: self.w }
    }

    /// Old-graph detour for `π_G(a,b)` avoiding positions `lo..hi`.
    fn varpi(&self, a: VertexId, b: VertexId, lo: usize, hi: usize) -> Option<Detour> {
        let h = self.old.spts.hops(a, b)?;
        debug_assert!(lo <= hi && hi <= h);
        self.old.query_interval_unchecked(a, b, h, lo, hi)
    }

    /// `π(a,b)` is the same path in both graphs.
    #[inline]
    fn kept(&self, a: VertexId, b: VertexId) -> bool {
        self.s.dist(a, b) == self.old.spts.dist(a, b)
    }

    fn t(&self, ps: &[Piece<'a>], lo: usize, hi: usize) -> Option<Detour> {
        transform(ps, lo, hi, self.s, self.g)
    }

    fn t_detour(&self, a: VertexId, b: VertexId, d: Option<Detour>, pre: &[Piece<'a>], post: &[Piece<'a>], lo: usize, hi: usize) -> Option<Detour> {
        let d = d?;
        let mut ps: Pieces<'a> = pre.iter().copied().collect();
        ps.extend(detour_pieces(&self.old.spts, &self.old.graph, a, b, &d));
        ps.extend_from_slice(post);
        self.t(&ps, lo, hi)
    }

    /// Pair whose shortest path now runs through the new edge.
    fn changed(&self, u: VertexId, v: VertexId, hn: usize, table: &mut Table) {
        let os = &self.old.spts;
        let ed = self.g.edge(self.e);
        let xp = self.s.edge_position(u, v, self.e, ed.u, ed.v).unwrap();
        let x = self.s.kth(u, v, xp);
        let y = self.s.kth(u, v, xp + 1);
        let ho = os.hops(u, v);
        let (pp, qp) = match ho {
            Some(_) => {
                let tu = os.tree(u);
                let tv = os.tree(v);
                (tu.depth(tu.lca(x, v)).unwrap(), hn - tv.depth(tv.lca(y, u)).unwrap())
            }
            None => (xp, xp + 1),
        };
        // new-path position (≥ qp) to old-path position
        let shift = |k: usize| k + ho.unwrap_or(hn) - hn;
        let hy = os.hops(y, v).unwrap();
        let on_yv = |k: usize| k + hy - hn;
        let uxe = [self.sp_old(u, x), self.edge(x, y)];
        let eyv = [self.edge(x, y), self.sp_old(y, v)];
        let yp = xp + 1;
        let an = anchors(hn);
        for &i in &an {
            for &j in &an {
                if i + j >= hn {
                    continue;
                }
                let (a, b) = (i, hn - j);
                let mut best = None;
                let t_uv = || if ho.is_some() { self.t(&[self.sp_old(u, v)], a, b) } else { None };
                let old_uv = |lo: usize, hi: usize| {
                    if ho.is_none() {
                        return None;
                    }
                    self.t_detour(u, v, self.varpi(u, v, lo, hi), &[], &[], a, b)
                };
                let via_prefix = |lo: usize, hi: usize| self.t_detour(u, x, self.varpi(u, x, lo, hi), &[], &eyv, a, b);
                let via_suffix = |lo: usize, hi: usize| self.t_detour(y, v, self.varpi(y, v, lo, hi), &uxe, &[], a, b);
                if b <= pp {
                    best = better(best, old_uv(a, b));
                    best = better(best, via_prefix(a, b));
                }
                if a >= qp {
                    best = better(best, old_uv(shift(a), shift(b)));
                    best = better(best, via_suffix(on_yv(a), on_yv(b)));
                }
                if pp <= a && a <= xp && yp <= b && b <= qp {
                    best = better(best, t_uv());
                }
                if yp <= a && b <= qp {
                    best = better(best, t_uv());
                    best = better(best, via_suffix(on_yv(a), on_yv(b)));
                }
                if pp <= a && b <= xp {
                    best = better(best, t_uv());
                    best = better(best, via_prefix(a, b));
                }
                if pp <= a && a <= xp && qp <= b {
                    best = better(best, old_uv(shift(qp), shift(b)));
                }
                if a <= pp && yp <= b && b <= qp {
                    best = better(best, old_uv(a, pp));
                }
                if yp <= a && a <= qp && qp <= b {
                    best = better(best, old_uv(shift(qp), shift(b)));
                    best = better(best, via_suffix(on_yv(a), on_yv(b)));
                }
                if a <= pp && pp <= b && b <= xp {
                    best = better(best, old_uv(a, pp));
                    best = better(best, via_prefix(a, b));
                }
                if a <= pp && qp <= b {
                    best = better(best, old_uv(a, shift(b)));
                }
                store(table, u, v, i, j, best);
            }
        }
    }

    /// Pair whose shortest path is the same in both graphs.
    fn unchanged(&self, u: VertexId, v: VertexId, h: usize, table: &mut Table) {
        let os = &self.old.spts;
        let ed = self.g.edge(self.e);
        struct Side {
            x: VertexId,
            y: VertexId,
            p: usize,
            q: usize,
            hy: usize,
            lb: Dist,
        }
        let mut sides = Vec::with_capacity(2);
        for (x, y) in [(ed.u, ed.v), (ed.v, ed.u)] {
            if !os.tree(u).reaches(x) || !os.tree(v).reaches(y) {
                continue;
            }
            let tu = os.tree(u);
            let tv = os.tree(v);
            let p = tu.depth(tu.lca(x, v)).unwrap();
            let q = h - tv.depth(tv.lca(y, u)).unwrap();
            let lb = (os.dist(u, x) + os.dist(y, v)).add_w(self.w);
            sides.push(Side { x, y, p, q, hy: os.hops(y, v).unwrap(), lb });
        }
        let an = anchors(h);
        for &i in &an {
            for &j in &an {
                if i + j >= h {
                    continue;
                }
                let (a, b) = (i, h - j);
                let old = self.old.table.get(u, v, i, j);
                let mut best = match old {
                    Some(d) if d.bridge().is_some() && self.kept(u, d.x as usize) && self.kept(d.y as usize, v) => old,
                    _ => self.t_detour(u, v, old, &[], &[], a, b),
                };
                for sd in &sides {
                    if best.is_some_and(|d| Dist::Fin(d.len) <= sd.lb) {
                        continue;
                    }
                    let (x, y, p, q) = (sd.x, sd.y, sd.p, sd.q);
                    let on_yv = |k: usize| k + sd.hy - h;
                    let uxe = [self.sp_old(u, x), self.edge(x, y)];
                    let eyv = [self.edge(x, y), self.sp_old(y, v)];
                    if p <= a && b <= q {
                        let ps = [self.sp_old(u, x), self.edge(x, y), self.sp_old(y, v)];
                        best = better(best, self.t(&ps, a, b));
                    }
                    if a < p && p <= b && b <= q {
                        best = better(best, self.t_detour(u, x, self.varpi(u, x, a, p), &[], &eyv, a, b));
                    }
                    if p <= a && a <= q && q < b {
                        best = better(best, self.t_detour(y, v, self.varpi(y, v, on_yv(q), on_yv(b)), &uxe, &[], a, b));
                    }
                    if b <= p {
                        best = better(best, self.t_detour(u, x, self.varpi(u, x, a, b), &[], &eyv, a, b));
                    }
                    if q <= a {
                        best = better(best, self.t_detour(y, v, self.varpi(y, v, on_yv(a), on_yv(b)), &uxe, &[], a, b));
                    }
                }
                store(table, u, v, i, j, best);
            }
        }
    }
}

fn store(table: &mut Table, u: VertexId, v: VertexId, i: usize, j: usize, d: Option<Detour>) {
    if d.is_some() {
        table.set(u, v, i, j, d);
    }
}

impl Dso {
    /// Inserts edge `(x, y)` of weight `w` and updates every table entry.
    ///
    /// On error the oracle is left unchanged.
    pub fn insert_edge(&mut self, x: VertexId, y: VertexId, w: Weight) -> Result<EdgeId> {
        let mut g = self.graph.clone();
        let e = g.add_edge(x, y, w)?;
        let s = SptSet::build(&g)?;
        let mut table = Table::shaped(&s);
        let up = Update { old: self, g: &g, s: &s, e, w };
        let n = g.n();
        for u in 0..n {
            for v in u + 1..n {
                let Some(h) = s.hops(u, v) else { continue };
                if s.edge_position(u, v, e, x, y).is_some() {
                    up.changed(u, v, h, &mut table);
                } else {
                    up.unchanged(u, v, h, &mut table);
                }
            }
        }
        *self = Dso { graph: g, spts: s, table };
        Ok(e)
    }

    /// Inserts by endpoints, failing on a duplicate edge.
    pub fn insert(&mut self, x: VertexId, y: VertexId, w: Weight) -> Result<EdgeId> {
        if self.graph.edge_between(x, y).is_some() {
            return Err(Error::DuplicateEdge(x, y));
        }
        self.insert_edge(x, y, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{dist_avoiding, path_avoiding};
    use crate::gen::random_perturbed;
    use crate::weight::tiebreak;

    fn check_all(d: &Dso) {
        let g = d.graph();
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let Some(p) = path_avoiding(g, u, v, &[]) else { continue };
                for f in p {
                    assert_eq!(d.query_edge_failure(u, v, f), dist_avoiding(g, u, v, &[f]), "{u}->{v} f={f}");
                }
            }
        }
    }

    #[test]
    fn heavy_edge_changes_nothing() {
        let g = random_perturbed(10, 6, 5, 1);
        let mut d = Dso::build(g).unwrap();
        let before: Vec<_> = (0..10).map(|v| d.dist(0, v)).collect();
        let (a, b) = (0..10).flat_map(|a| (0..10).map(move |b| (a, b))).find(|&(a, b)| a != b && d.graph().edge_between(a, b).is_none()).unwrap();
        d.insert(a, b, Weight::new(1000, tiebreak(9, a, b))).unwrap();
        let after: Vec<_> = (0..10).map(|v| d.dist(0, v)).collect();
        assert_eq!(before, after);
        check_all(&d);
    }

    #[test]
    fn zero_shortcut_becomes_the_path() {
        let g = random_perturbed(10, 4, 5, 2);
        let mut d = Dso::build(g).unwrap();
        let (a, b) = (0..10).flat_map(|a| (0..10).map(move |b| (a, b))).find(|&(a, b)| a != b && d.graph().edge_between(a, b).is_none()).unwrap();
        d.insert(a, b, Weight::new(0, tiebreak(9, a, b))).unwrap();
        assert_eq!(d.spts().hops(a, b), Some(1));
        check_all(&d);
    }

    #[test]
    fn duplicate_rejected() {
        let g = random_perturbed(6, 2, 5, 3);
        let mut d = Dso::build(g).unwrap();
        let e = *d.graph().edge(0);
        assert_eq!(d.insert(e.u, e.v, e.w), Err(Error::DuplicateEdge(e.u, e.v)));
    }

    #[test]
    fn sequential_insertions_stay_exact() {
        use rand::SeedableRng;
        for seed in 0..3 {
            let g = random_perturbed(12, 2, 9, seed);
            let mut d = Dso::build(g).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..8 {
                let (a, b, w) = crate::gen::random_absent_edge(d.graph(), 9, &mut rng).unwrap();
                d.insert(a, b, Weight::new(w, tiebreak(seed, a, b))).unwrap();
                check_all(&d);
            }
        }
    }
}
