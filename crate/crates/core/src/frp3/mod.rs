//! Three failures between a fixed pair `s`, `t`.
//!
//! Required triples are dispatched on how many failures lie on `π(s,t)`:
//! one (offline oracle over `H`), two (half graphs of the binary partition)
//! or three (interval oracles and the snake probe loop).

pub mod oracle;
pub mod partition;
pub mod snake;

use crate::error::Result;
use crate::frp2::{AuxGraphH, Frp2};
use crate::graph::{dijkstra, EdgeId, EdgeMask, Graph, VertexId};
use crate::offline::{Op, Timeline};
use crate::weight::{dmin, Dist, Weight};
use oracle::{Line, OracleA, OracleB};
use partition::{half_graph, BinaryPartition};
use serde::Serialize;
use snake::{simple_types, Oriented, ProbeTrace, Snakes};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    #[serde(rename = "1on")]
    OneOn,
    #[serde(rename = "2on")]
    TwoOn,
    #[serde(rename = "3on")]
    ThreeOn,
    #[serde(rename = "off-path")]
    OffPath,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::OneOn => "1on",
            Case::TwoOn => "2on",
            Case::ThreeOn => "3on",
            Case::OffPath => "off-path",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Answer {
    pub d1: EdgeId,
    pub d2: EdgeId,
    pub d3: EdgeId,
    pub dist: Dist,
    pub case: Case,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Frp3Stats {
    pub triples: usize,
    pub one_on: usize,
    pub two_on: usize,
    pub three_on: usize,
    pub off_path: usize,
    pub probe_loops: usize,
    pub max_stages: usize,
    pub potential_violations: usize,
    pub stage_bound_violations: usize,
    pub split_violations: usize,
    pub offline_runs: usize,
    pub offline_peak_live: usize,
}

/// A distance query against one offline step.
#[derive(Clone, Copy, Debug)]
struct Probe {
    u: VertexId,
    v: VertexId,
    f: (VertexId, VertexId),
}

/// Runs "delete `d`, reinsert `d`" for every listed edge and answers each
/// batch on the graph with that edge deleted.
fn offline_batches(
    graph: &Graph,
    dels: &[(VertexId, VertexId, Weight)],
    batches: &[Vec<Probe>],
    stats: &mut Frp3Stats,
) -> Result<Vec<Vec<Dist>>> {
    let ops = dels.iter().flat_map(|&(u, v, w)| [Op::Delete(u, v), Op::Insert(u, v, w)]).collect();
    let tl = Timeline::new(graph.clone(), ops);
    let mut out = vec![Vec::new(); dels.len()];
    let st = tl.for_each_step(|t, dso| {
        if t % 2 == 1 {
            let i = t / 2;
            out[i] = batches[i]
                .iter()
                .map(|p| match dso.graph().edge_between(p.f.0, p.f.1) {
                    Some(e) => dso.query_edge_failure(p.u, p.v, e),
                    None => dso.dist(p.u, p.v),
                })
                .collect();
        }
        Ok(())
    })?;
    stats.offline_runs += 1;
    stats.offline_peak_live = stats.offline_peak_live.max(st.peak_live);
    Ok(out)
}

/// Preprocessed instance answering any triple of failed edges.
pub struct Frp3 {
    pub graph: Graph,
    pub frp2: Frp2,
    pub part: BinaryPartition,
    line: Line,
    rline: Line,
    a: OracleA,
    ra: OracleA,
}

/// A required triple after dispatch.
enum Job {
    One { k1: usize, d2: EdgeId, d3: EdgeId },
    Two { ka: usize, kb: usize, f: EdgeId },
    Three { k1: usize, k2: usize, k3: usize },
}

impl Frp3 {
    pub fn new(g: &Graph, s: VertexId, t: VertexId) -> Result<Frp3> {
        let frp2 = Frp2::new(g, s, t)?;
        let line = Line::forward(frp2.path(), &frp2.apsp);
        let rline = line.reversed();
        let a = OracleA::build(&line);
        let ra = OracleA::build(&rline);
        let part = BinaryPartition::new(frp2.path().len());
        Ok(Frp3 { graph: g.clone(), frp2, part, line, rline, a, ra })
    }

    fn h(&self) -> &AuxGraphH {
        &self.frp2.h
    }

    /// Every `(d₁, d₂, d₃)` with `d₁ ∈ π(s,t)`, `d₂ ∈ π_{G−d₁}(s,t)`,
    /// `d₃ ∈ π_{G−{d₁,d₂}}(s,t)`.
    pub fn required(&self) -> Vec<(EdgeId, EdgeId, EdgeId)> {
        let g = &self.graph;
        let p = self.frp2.path();
        let mut out = Vec::new();
        for (k1, &d1) in p.edges.iter().enumerate() {
            let Some(p1) = &self.frp2.frp1.paths[k1] else { continue };
            for &d2 in p1 {
                let sp = dijkstra(g, p.s(), Some(&EdgeMask::from_edges(g.m(), [d1, d2])));
                if let Some(p2) = sp.path_edges(g, p.t()) {
                    out.extend(p2.into_iter().map(|d3| (d1, d2, d3)));
                }
            }
        }
        out
    }

    /// Reorders a failure set so each failure lies on the replacement path
    /// of the ones before it; stops early with the known distance otherwise.
    fn canonical(&self, fs: [EdgeId; 3]) -> Result<std::result::Result<[EdgeId; 3], Dist>> {
        let p = self.frp2.path();
        let pick = |on: &[EdgeId], taken: &[EdgeId]| fs.iter().copied().find(|f| !taken.contains(f) && on.contains(f));
        let Some(f1) = pick(&p.edges, &[]) else { return Ok(Err(Dist::Fin(p.total()))) };
        let k1 = p.edge_pos(f1).unwrap();
        let Some(p1) = &self.frp2.frp1.paths[k1] else { return Ok(Err(Dist::Inf)) };
        let Some(f2) = pick(p1, &[f1]) else { return Ok(Err(self.frp2.frp1.dist[k1])) };
        let Some(r) = self.frp2.route(&self.graph, f1, f2)? else { return Ok(Err(Dist::Inf)) };
        let p2: Vec<EdgeId> = r.windows(2).map(|w| self.graph.edge_between(w[0], w[1]).unwrap()).collect();
        match pick(&p2, &[f1, f2]) {
            Some(f3) => Ok(Ok([f1, f2, f3])),
            None => Ok(Err(self.frp2.dist(f1, f2)?)),
        }
    }

    fn job(&self, d: [EdgeId; 3]) -> Job {
        let p = self.frp2.path();
        let mut on: Vec<usize> = d.iter().filter_map(|&e| p.edge_pos(e)).collect();
        on.sort_unstable();
        let off: Vec<EdgeId> = d.iter().copied().filter(|&e| p.edge_pos(e).is_none()).collect();
        match on.len() {
            1 => Job::One { k1: on[0], d2: off[0], d3: off[1] },
            2 => Job::Two { ka: on[0], kb: on[1], f: off[0] },
            _ => Job::Three { k1: on[0], k2: on[1], k3: on[2] },
        }
    }

    /// Answers arbitrary triples; those not required are reported with the
    /// one- or two-failure distance they reduce to.
    pub fn answer(&self, triples: &[(EdgeId, EdgeId, EdgeId)]) -> Result<(Vec<Answer>, Frp3Stats)> {
        let mut canon = Vec::with_capacity(triples.len());
        for &(a, b, c) in triples {
            canon.push(self.canonical([a, b, c])?);
        }
        self.run(triples, canon)
    }

    /// Answers triples already known to be required.
    pub fn answer_required(&self, triples: &[(EdgeId, EdgeId, EdgeId)]) -> Result<(Vec<Answer>, Frp3Stats)> {
        let canon = triples.iter().map(|&(a, b, c)| Ok([a, b, c])).collect();
        self.run(triples, canon)
    }

    fn run(
        &self,
        triples: &[(EdgeId, EdgeId, EdgeId)],
        canon: Vec<std::result::Result<[EdgeId; 3], Dist>>,
    ) -> Result<(Vec<Answer>, Frp3Stats)> {
        let mut st = Frp3Stats { triples: triples.len(), ..Default::default() };
        let mut out: Vec<Answer> = triples
            .iter()
            .map(|&(d1, d2, d3)| Answer { d1, d2, d3, dist: Dist::Inf, case: Case::OffPath })
            .collect();
        let mut one = Vec::new();
        let mut two = Vec::new();
        let mut three = Vec::new();
        for (i, c) in canon.into_iter().enumerate() {
            match c {
                Err(d) => {
                    out[i].dist = d;
                    st.off_path += 1;
                }
                Ok(d) => match self.job(d) {
                    Job::One { k1, d2, d3 } => one.push((i, k1, d2, d3)),
                    Job::Two { ka, kb, f } => two.push((i, ka, kb, f)),
                    Job::Three { k1, k2, k3 } => three.push((i, k1, k2, k3)),
                },
            }
        }
        st.one_on = one.len();
        st.two_on = two.len();
        st.three_on = three.len();
        for (i, d) in self.case_one_on_path(&one, &mut st)? {
            out[i].dist = d;
            out[i].case = Case::OneOn;
        }
        for (i, d) in self.case_two_on_path(&two, &mut st)? {
            out[i].dist = d;
            out[i].case = Case::TwoOn;
        }
        for (i, d) in self.case_three_on_path(&three, &mut st) {
            out[i].dist = d;
            out[i].case = Case::ThreeOn;
        }
        Ok((out, st))
    }

    /// `|π_{(H−d₂)−d₃}(d₁⁻,d₁⁺)| − 2N` from the offline oracle over `H`.
    fn case_one_on_path(&self, jobs: &[(usize, usize, EdgeId, EdgeId)], st: &mut Frp3Stats) -> Result<Vec<(usize, Dist)>> {
        if jobs.is_empty() {
            return Ok(Vec::new());
        }
        let h = self.h();
        let g = &self.graph;
        let mut slot: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for &(_, _, d2, _) in jobs {
            let n = slot.len();
            slot.entry(d2).or_insert(n);
        }
        let mut dels = vec![(0, 0, Weight::ZERO); slot.len()];
        for (&d2, &k) in &slot {
            let e = h.graph.edge(h.h_edge(d2).expect("off-path edges live in H"));
            dels[k] = (e.u, e.v, e.w);
        }
        let mut batches = vec![Vec::new(); slot.len()];
        let mut at = Vec::with_capacity(jobs.len());
        for &(_, k1, d2, d3) in jobs {
            let b = slot[&d2];
            at.push((b, batches[b].len()));
            let f = g.edge(d3);
            batches[b].push(Probe { u: h.minus(k1), v: h.plus(k1), f: (f.u, f.v) });
        }
        let res = offline_batches(&h.graph, &dels, &batches, st)?;
        Ok(jobs.iter().zip(at).map(|(j, (b, q))| (j.0, h.unshift(res[b][q]))).collect())
    }

    /// Minimum of the four values over `H`, `H_{i,0} − d₁` and `H_{i,1} − d₂`.
    fn case_two_on_path(&self, jobs: &[(usize, usize, usize, EdgeId)], st: &mut Frp3Stats) -> Result<Vec<(usize, Dist)>> {
        let h = self.h();
        let g = &self.graph;
        let p = &h.path;
        // (level, parity) -> deleted path position -> probes
        let mut groups: BTreeMap<(u32, usize), BTreeMap<usize, Vec<Probe>>> = BTreeMap::new();
        let mut at = Vec::with_capacity(jobs.len());
        for &(_, ka, kb, f) in jobs {
            let (i, j) = self.part.split(ka, kb);
            let m = p.verts[self.part.marker(i, j).expect("marker lies between two real edges")];
            let fe = g.edge(f);
            let fq = (fe.u, fe.v);
            let (a, b) = (h.minus(ka), h.plus(kb));
            let mut pos = [(0, 0); 2];
            for (parity, k) in [(0, ka), (1, kb)] {
                let batch = groups.entry((i, parity)).or_default().entry(k).or_default();
                pos[parity] = (k, batch.len());
                batch.extend([Probe { u: a, v: b, f: fq }, Probe { u: a, v: m, f: fq }, Probe { u: m, v: b, f: fq }]);
            }
            at.push((i, pos));
        }
        let mut res: HashMap<(u32, usize, usize), Vec<Dist>> = HashMap::new();
        for (&(i, parity), per) in &groups {
            let hg = half_graph(h, &self.part, i, parity)?;
            let mut dels = Vec::with_capacity(per.len());
            let mut batches = Vec::with_capacity(per.len());
            for (&k, probes) in per {
                let e = hg.graph.edge(hg.path_edge[k].expect("failed edge lies in its own half"));
                dels.push((e.u, e.v, e.w));
                batches.push(probes.clone());
            }
            let ans = offline_batches(&hg.graph, &dels, &batches, st)?;
            for ((&k, _), a) in per.iter().zip(ans) {
                res.insert((i, parity, k), a);
            }
        }
        let mut out = Vec::with_capacity(jobs.len());
        for (&(idx, ka, kb, f), (i, pos)) in jobs.iter().zip(at) {
            let v1 = self.h_pair(ka, kb, f);
            let q = |parity: usize, o: usize| res[&(i, parity, pos[parity].0)][pos[parity].1 + o];
            let v2 = h.unshift(q(0, 0));
            let v3 = h.unshift(q(1, 0));
            let v4 = h.unshift(dmin(q(0, 1), q(1, 1)) + dmin(q(0, 2), q(1, 2)));
            out.push((idx, dmin(dmin(v1, v2), dmin(v3, v4))));
        }
        Ok(out)
    }

    /// `|π_{H−f}(d_a⁻, d_b⁺)| − 2N` from the static oracle over `H`.
    fn h_pair(&self, ka: usize, kb: usize, f: EdgeId) -> Dist {
        let h = self.h();
        let hf = h.h_edge(f).expect("off-path edges live in H");
        h.unshift(self.frp2.h_dso.query_edge_failure(h.minus(ka), h.plus(kb), hf))
    }

    /// Types 1–3 directly, snakes through one probe loop per `(k1, k3)`.
    fn case_three_on_path(&self, jobs: &[(usize, usize, usize, usize)], st: &mut Frp3Stats) -> Vec<(usize, Dist)> {
        let l = self.line.last();
        let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &(i, k1, k2, k3) in jobs {
            by_pair.entry((k1, k3)).or_default().push((i, k2));
        }
        let mut rev_b: HashMap<usize, OracleB> = HashMap::new();
        let mut fwd_b: Option<OracleB> = None;
        let mut out = Vec::with_capacity(jobs.len());
        for (&(k1, k3), items) in &by_pair {
            if fwd_b.as_ref().is_none_or(|b| b.pot.k != k1) {
                fwd_b = Some(OracleB::build(&self.line, &self.a, k1));
            }
            let rk = l - 1 - k3;
            let rb = rev_b.entry(rk).or_insert_with(|| OracleB::build(&self.rline, &self.ra, rk));
            let s = Snakes {
                fwd: Oriented { line: &self.line, a: &self.a, b: fwd_b.as_ref().unwrap() },
                rev: Oriented { line: &self.rline, a: &self.ra, b: rb },
            };
            let tr = ProbeTrace::run(&s, k1, k3);
            st.probe_loops += 1;
            st.max_stages = st.max_stages.max(tr.probes.len());
            st.potential_violations += tr.potential_violations();
            st.split_violations += tr.split_violations;
            if !tr.stages_within_bound() {
                st.stage_bound_violations += 1;
            }
            for &(i, k2) in items {
                out.push((i, dmin(simple_types(&s.fwd, k1, k2, k3), tr.answer(&s, k2).d)));
            }
        }
        out
    }
}

/// Streams every required triple with its exact distance.
pub fn solve_3frp<F: FnMut(Answer)>(g: &Graph, s: VertexId, t: VertexId, mut sink: F) -> Result<Frp3Stats> {
    let f = Frp3::new(g, s, t)?;
    let req = f.required();
    let (ans, st) = f.answer_required(&req)?;
    ans.into_iter().for_each(&mut sink);
    Ok(st)
}
