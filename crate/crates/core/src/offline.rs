//! Offline fully dynamic oracle: a binary range tree over the update
//! timeline, each child derived from its parent by insertions only.

use crate::dso::Dso;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::io::Update;
use crate::weight::{tiebreak, Dist, Weight};
use std::collections::BTreeMap;

/// A timeline update with its composite weight already assigned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Insert(VertexId, VertexId, Weight),
    Delete(VertexId, VertexId),
}

/// Graph `G₀` and updates; step `t` is the graph after `t` updates.
#[derive(Clone, Debug)]
pub struct Timeline {
    pub initial: Graph,
    pub ops: Vec<Op>,
}

#[derive(Clone, Copy, Debug)]
struct Instance {
    u: VertexId,
    v: VertexId,
    w: Weight,
    birth: usize,
    death: usize,
}

impl Instance {
    fn covers(&self, lo: usize, hi: usize) -> bool {
        self.birth <= lo && hi <= self.death
    }
}

/// Instrumentation from one traversal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OfflineStats {
    pub nodes: usize,
    pub insertions: usize,
    pub peak_live: usize,
    /// Nodes whose insertion count exceeds the width of the parent interval.
    pub width_violations: usize,
    pub depth: usize,
}

impl Timeline {
    pub fn new(initial: Graph, ops: Vec<Op>) -> Self {
        Timeline { initial, ops }
    }

    /// Timeline from parsed updates; inserted edges get the tiebreak of `seed`.
    pub fn from_updates(initial: Graph, ups: &[Update], seed: u64) -> Self {
        let ops = ups
            .iter()
            .map(|&u| match u {
                Update::Insert(a, b, w) => Op::Insert(a, b, Weight::new(w, tiebreak(seed, a, b))),
                Update::Delete(a, b) => Op::Delete(a, b),
            })
            .collect();
        Timeline { initial, ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        (u.min(v), u.max(v))
    }

    fn instances(&self) -> Result<Vec<Instance>> {
        let n = self.initial.n();
        let t_end = self.ops.len();
        let mut alive: BTreeMap<(VertexId, VertexId), (Weight, usize, usize)> = BTreeMap::new();
        let mut order = 0;
        for e in self.initial.edges() {
            alive.insert(e.key(), (e.w, 0, order));
            order += 1;
        }
        let mut done = Vec::new();
        for (k, op) in self.ops.iter().enumerate() {
            match *op {
                Op::Insert(u, v, w) => {
                    for x in [u, v] {
                        if x >= n {
                            return Err(Error::VertexOutOfRange { v: x, n });
                        }
                    }
                    if u == v {
                        return Err(Error::SelfLoop(u));
                    }
                    let key = Self::key(u, v);
                    if alive.contains_key(&key) {
                        return Err(Error::DuplicateEdge(u, v));
                    }
                    alive.insert(key, (w, k + 1, order));
                    order += 1;
                }
                Op::Delete(u, v) => {
                    let key = Self::key(u, v);
                    let Some((w, birth, ord)) = alive.remove(&key) else {
                        return Err(Error::InvalidDelete(u, v, k));
                    };
                    done.push((ord, Instance { u: key.0, v: key.1, w, birth, death: k }));
                }
            }
        }
        for ((u, v), (w, birth, ord)) in alive {
            done.push((ord, Instance { u, v, w, birth, death: t_end }));
        }
        done.sort_by_key(|&(o, _)| o);
        Ok(done.into_iter().map(|(_, i)| i).collect())
    }

    /// Graph at step `t`, built directly.
    pub fn graph_at(&self, t: usize) -> Result<Graph> {
        if t > self.ops.len() {
            return Err(Error::TimeOutOfRange { t, len: self.ops.len() });
        }
        let mut g = Graph::new(self.initial.n());
        for i in self.instances()? {
            if i.covers(t, t) {
                g.add_edge(i.u, i.v, i.w)?;
            }
        }
        Ok(g)
    }

    /// Depth-first traversal calling `visit(t, dso)` once per step in order.
    ///
    /// Only one root-to-leaf chain of oracles is alive at any moment.
    pub fn for_each_step<F>(&self, mut visit: F) -> Result<OfflineStats>
    where
        F: FnMut(usize, &Dso) -> Result<()>,
    {
        let inst = self.instances()?;
        let t_end = self.ops.len();
        let mut root_g = Graph::new(self.initial.n());
        for i in &inst {
            if i.covers(0, t_end) {
                root_g.add_edge(i.u, i.v, i.w)?;
            }
        }
        let root = Dso::build(root_g)?;
        let mut st = Walk { inst: &inst, stats: OfflineStats { nodes: 1, peak_live: 1, ..Default::default() }, live: 1 };
        st.descend(&root, 0, t_end, 0, &mut visit)?;
        Ok(st.stats)
    }
}

struct Walk<'a> {
    inst: &'a [Instance],
    stats: OfflineStats,
    live: usize,
}

impl Walk<'_> {
    fn descend<F>(&mut self, dso: &Dso, lo: usize, hi: usize, depth: usize, visit: &mut F) -> Result<()>
    where
        F: FnMut(usize, &Dso) -> Result<()>,
    {
        self.stats.depth = self.stats.depth.max(depth);
        if lo == hi {
            return visit(lo, dso);
        }
        let mid = lo + (hi - lo) / 2;
        for (clo, chi) in [(lo, mid), (mid + 1, hi)] {
            let mut child = dso.clone();
            self.live += 1;
            self.stats.peak_live = self.stats.peak_live.max(self.live);
            self.stats.nodes += 1;
            let mut added = 0;
            for i in self.inst {
                if i.covers(clo, chi) && !i.covers(lo, hi) {
                    child.insert_edge(i.u, i.v, i.w)?;
                    added += 1;
                }
            }
            self.stats.insertions += added;
            if added > hi - lo {
                self.stats.width_violations += 1;
            }
            self.descend(&child, clo, chi, depth + 1, visit)?;
            drop(child);
            self.live -= 1;
        }
        Ok(())
    }
}

/// Materialized offline oracle keeping one leaf per step.
pub struct OfflineDso {
    leaves: Vec<Dso>,
    stats: OfflineStats,
}

/// Builds every leaf of the range tree over `tl`.
pub fn build_timeline(tl: &Timeline) -> Result<OfflineDso> {
    let mut leaves = Vec::with_capacity(tl.len() + 1);
    let stats = tl.for_each_step(|_, d| {
        leaves.push(d.clone());
        Ok(())
    })?;
    Ok(OfflineDso { leaves, stats })
}

impl OfflineDso {
    pub fn steps(&self) -> usize {
        self.leaves.len()
    }

    pub fn stats(&self) -> OfflineStats {
        self.stats
    }

    pub fn at(&self, t: usize) -> Result<&Dso> {
        self.leaves.get(t).ok_or(Error::TimeOutOfRange { t, len: self.leaves.len() - 1 })
    }

    /// Distance `u → v` at step `t` with edge `f` (by endpoints) failed.
    pub fn query_at(&self, t: usize, u: VertexId, v: VertexId, f: (VertexId, VertexId)) -> Result<Dist> {
        let d = self.at(t)?;
        for x in [u, v] {
            if x >= d.n() {
                return Err(Error::VertexOutOfRange { v: x, n: d.n() });
            }
        }
        match d.graph().edge_between(f.0, f.1) {
            Some(e) => Ok(d.query_edge_failure(u, v, e)),
            None => Ok(d.dist(u, v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::dist_avoiding;
    use crate::gen::random_perturbed;

    #[test]
    fn empty_timeline_is_static() {
        let g = random_perturbed(8, 4, 5, 1);
        let off = build_timeline(&Timeline::new(g.clone(), vec![])).unwrap();
        assert_eq!(off.steps(), 1);
        assert_eq!(off.stats().peak_live, 1);
        let s = Dso::build(g).unwrap();
        for u in 0..8 {
            for v in 0..8 {
                assert_eq!(off.at(0).unwrap().dist(u, v), s.dist(u, v));
            }
        }
    }

    #[test]
    fn alternating_edge() {
        let g = random_perturbed(8, 4, 5, 2);
        let e = *g.edge(3);
        let ops = vec![Op::Delete(e.u, e.v), Op::Insert(e.u, e.v, e.w), Op::Delete(e.u, e.v), Op::Insert(e.u, e.v, e.w)];
        let off = build_timeline(&Timeline::new(g, ops)).unwrap();
        for t in 0..5 {
            let present = off.at(t).unwrap().graph().edge_between(e.u, e.v).is_some();
            assert_eq!(present, t % 2 == 0);
            let gt = off.at(t).unwrap().graph().clone();
            for f in 0..gt.m() {
                let fe = *gt.edge(f);
                assert_eq!(off.query_at(t, 0, 7, (fe.u, fe.v)).unwrap(), dist_avoiding(&gt, 0, 7, &[f]));
            }
        }
    }

    #[test]
    fn bad_delete_and_time() {
        let g = random_perturbed(6, 2, 5, 3);
        let (a, b) = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).find(|&(a, b)| a < b && g.edge_between(a, b).is_none()).unwrap();
        let tl = Timeline::new(g.clone(), vec![Op::Delete(a, b)]);
        assert_eq!(build_timeline(&tl).err(), Some(Error::InvalidDelete(a, b, 0)));
        let tl = Timeline::new(g, vec![Op::Insert(a, b, Weight::new(3, tiebreak(0, a, b)))]);
        let off = build_timeline(&tl).unwrap();
        assert!(matches!(off.query_at(2, 0, 1, (0, 1)), Err(Error::TimeOutOfRange { .. })));
    }
}
