//! Snake walks and the probe loop for three failures on the path.
//!
//! A cut is a sorted list of removed edge positions; it splits the path into
//! pieces `D₁ … D_{w+1}`. A snake walk leaves `D₁`, visits one or two middle
//! pieces (walking a segment inside each), and finally rejoins `D_{w+1}`.

use super::oracle::{BHit, Hit, Line, OracleA, OracleB, Side, Span};
use crate::weight::{dmin, Dist};

/// Vertex pieces cut out by `cut`.
pub fn pieces(last: usize, cut: &[usize]) -> Vec<Span> {
    let mut out = Vec::with_capacity(cut.len() + 1);
    let mut lo = 0;
    for &c in cut {
        out.push((lo, c));
        lo = c + 1;
    }
    out.push((lo, last));
    out
}

/// Mirror of a cut on the reversed line.
pub fn mirror_cut(last: usize, cut: &[usize]) -> Vec<usize> {
    cut.iter().rev().map(|&c| last - 1 - c).collect()
}

/// Witness of a snake walk: diverge at `x0`, walk each segment `(from, to)`
/// in order, converge at `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeWalk {
    pub d: Dist,
    pub x0: usize,
    pub segs: Vec<Span>,
    pub w: usize,
}

impl SnakeWalk {
    pub fn none() -> SnakeWalk {
        SnakeWalk { d: Dist::Inf, x0: 0, segs: Vec::new(), w: 0 }
    }

    fn min(self, o: SnakeWalk) -> SnakeWalk {
        if o.d < self.d {
            o
        } else {
            self
        }
    }

    fn mirrored(self, last: usize) -> SnakeWalk {
        SnakeWalk {
            d: self.d,
            x0: last - self.w,
            segs: self.segs.iter().rev().map(|&(a, b)| (last - a, last - b)).collect(),
            w: last - self.x0,
        }
    }

    /// On-path edge positions walked by the segments, as merged inclusive ranges.
    pub fn edges(&self) -> Vec<Span> {
        let mut r: Vec<Span> = self.segs.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b) - 1)).collect();
        r.sort();
        let mut out: Vec<Span> = Vec::new();
        for (lo, hi) in r {
            match out.last_mut() {
                Some(l) if lo <= l.1 + 1 => l.1 = l.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        out
    }

    pub fn uses(&self, e: usize) -> bool {
        self.d.is_finite() && self.edges().iter().any(|&(lo, hi)| lo <= e && e <= hi)
    }

    /// Length re-derived from the line.
    pub fn length(&self, line: &Line) -> Dist {
        if self.segs.is_empty() {
            return Dist::Inf;
        }
        let mut d = Dist::Fin(line.pre[self.x0]);
        let mut at = self.x0;
        for &(a, b) in &self.segs {
            d = (d + line.d(at, a)).add_w(line.walk(a, b));
            at = b;
        }
        (d + line.d(at, self.w)).add_w(line.walk(self.w, line.last()))
    }
}

/// Oracles of one orientation; `b` is built for the first cut edge.
#[derive(Clone, Copy)]
pub struct Oriented<'a> {
    pub line: &'a Line,
    pub a: &'a OracleA,
    pub b: &'a OracleB,
}

impl Oriented<'_> {
    fn seg2(&self, b: BHit, g: Hit, link: crate::weight::Weight) -> SnakeWalk {
        SnakeWalk {
            d: (b.d + g.d).add_w(link),
            x0: self.b.x0(b.y1 as usize),
            segs: vec![(b.y1 as usize, b.y2 as usize), (b.z as usize, g.x as usize)],
            w: g.y as usize,
        }
    }

    fn seg1(&self, c: Hit, g: Hit, link: crate::weight::Weight) -> SnakeWalk {
        SnakeWalk {
            d: (c.d + g.d).add_w(link),
            x0: self.b.x0(c.x as usize),
            segs: vec![(c.x as usize, g.x as usize)],
            w: g.y as usize,
        }
    }

    /// Shortest snake walk avoiding `cut` whose last segment crosses the
    /// pivot `p..q` (a vertex when `p == q`, else the edge `p, p+1`).
    pub fn through_last(&self, cut: &[usize], p: usize, q: usize) -> SnakeWalk {
        debug_assert!(self.b.pot.k == cut[0]);
        let (line, a, b) = (self.line, self.a, self.b);
        let ps = pieces(line.last(), cut);
        let last = *ps.last().unwrap();
        let mids = &ps[1..ps.len() - 1];
        let Some(&piece) = mids.iter().find(|r| r.0 <= p && q <= r.1) else {
            return SnakeWalk::none();
        };
        let (r2, r3) = ((piece.0, p), (q, piece.1));
        let link = line.walk(p, q);
        let leave_left = a.query(line, r2, Side::R, last, Side::R);
        let leave_right = a.query(line, r3, Side::L, last, Side::R);
        let tree = &a.tree;
        let mut best = self
            .seg1(b.pot.reach(line, tree, r2, Side::R), leave_right, link)
            .min(self.seg1(b.pot.reach(line, tree, r3, Side::L), leave_left, link));
        for &j in mids {
            best = best.min(self.seg2(b.query(line, a, j, r3, Side::L), leave_left, link));
            best = best.min(self.seg2(b.query(line, a, j, r2, Side::R), leave_right, link));
        }
        best
    }
}

/// Both orientations; `rev.b` is built for the mirrored last cut edge.
#[derive(Clone, Copy)]
pub struct Snakes<'a> {
    pub fwd: Oriented<'a>,
    pub rev: Oriented<'a>,
}

impl Snakes<'_> {
    fn last(&self) -> usize {
        self.fwd.line.last()
    }

    /// Shortest snake walk avoiding `cut` through the pivot `p..q`, in any segment.
    pub fn through(&self, cut: &[usize], p: usize, q: usize) -> SnakeWalk {
        let l = self.last();
        let m = mirror_cut(l, cut);
        let back = self.rev.through_last(&m, l - q, l - p).mirrored(l);
        self.fwd.through_last(cut, p, q).min(back)
    }

    /// Shortest snake walk avoiding `cut`.
    pub fn shortest(&self, cut: &[usize]) -> SnakeWalk {
        let (lo, hi) = (cut[0] + 1, *cut.last().unwrap());
        (lo..=hi).map(|x| self.fwd.through_last(cut, x, x)).fold(SnakeWalk::none(), SnakeWalk::min)
    }
}

/// Record of one probe loop between failures at `k1` and `k3`.
#[derive(Clone, Debug, Default)]
pub struct ProbeTrace {
    pub k1: usize,
    pub k3: usize,
    pub probes: Vec<usize>,
    pub walks: Vec<SnakeWalk>,
    /// `S⁽ⁱ⁾ = ‖E₁‖² + ‖E₂‖²` after each stage.
    pub potential: Vec<u64>,
    /// Stages whose surviving set had more than two runs.
    pub split_violations: usize,
}

fn count(r: Span) -> u64 {
    (r.1 + 1 - r.0) as u64
}

fn intersect(a: &[Span], b: &[Span]) -> Vec<Span> {
    let mut out = Vec::new();
    for &(l1, h1) in a {
        for &(l2, h2) in b {
            let (lo, hi) = (l1.max(l2), h1.min(h2));
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out.sort();
    out
}

impl ProbeTrace {
    /// Runs the probe loop: each stage removes the middle edge of the larger
    /// surviving run and recomputes the shortest snake walk.
    pub fn run(s: &Snakes, k1: usize, k3: usize) -> ProbeTrace {
        let mut tr = ProbeTrace { k1, k3, ..Default::default() };
        if k3 <= k1 + 1 {
            return tr;
        }
        let mut alive: Vec<Span> = vec![(k1 + 1, k3 - 1)];
        while !alive.is_empty() {
            let big = *alive.iter().max_by_key(|&&r| (count(r), std::cmp::Reverse(r.0))).unwrap();
            let e = big.0 + (big.1 - big.0) / 2;
            tr.probes.push(e);
            let mut cut = tr.probes.clone();
            cut.push(k1);
            cut.push(k3);
            cut.sort_unstable();
            let walk = s.shortest(&cut);
            alive = if walk.d.is_finite() { intersect(&alive, &walk.edges()) } else { Vec::new() };
            if alive.len() > 2 {
                tr.split_violations += 1;
            }
            let mut sizes: Vec<u64> = alive.iter().map(|&r| count(r)).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            tr.potential.push(sizes.iter().take(2).map(|c| c * c).sum());
            tr.walks.push(walk);
        }
        tr
    }

    /// Stages whose potential failed `8·S⁽ⁱ⁺¹⁾ ≤ 5·S⁽ⁱ⁾`.
    pub fn potential_violations(&self) -> usize {
        self.potential.windows(2).filter(|w| 8 * w[1] > 5 * w[0]).count()
    }

    /// Whether the stages after the first number at most `⌈log_{8/5} S⁽¹⁾⌉ + 1`.
    pub fn stages_within_bound(&self) -> bool {
        let Some(&s1) = self.potential.first() else { return true };
        let (mut num, mut den, mut c) = (1u128, 1u128, 0usize);
        while num < den * s1 as u128 {
            num *= 8;
            den *= 5;
            c += 1;
        }
        self.probes.len() - 1 <= c + 1
    }

    /// Shortest snake walk avoiding `{k1, k2, k3}` for `k2` strictly between.
    pub fn answer(&self, s: &Snakes, k2: usize) -> SnakeWalk {
        let Some(k) = self.walks.iter().position(|w| !w.uses(k2)) else {
            return SnakeWalk::none();
        };
        let cut = [self.k1, k2, self.k3];
        self.probes[..=k]
            .iter()
            .filter(|&&e| e != k2)
            .map(|&e| s.through(&cut, e, e + 1))
            .fold(self.walks[k].clone(), SnakeWalk::min)
    }
}

/// `min` over the first three observation types: a single detour, or one
/// middle segment on either side of `k2`.
pub fn simple_types(o: &Oriented, k1: usize, k2: usize, k3: usize) -> Dist {
    let (line, a, b) = (o.line, o.a, o.b);
    let l = line.last();
    let d4 = (k3 + 1, l);
    let t1 = a.query(line, (0, k1), Side::L, d4, Side::R).d;
    let t2 = b.query(line, a, (k1 + 1, k2), d4, Side::R).d;
    let t3 = b.query(line, a, (k2 + 1, k3), d4, Side::R).d;
    dmin(t1, dmin(t2, t3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::snake_oracle;
    use crate::frp2::{Apsp, StPath};
    use crate::gen::detour_rich;
    use crate::perturb::perturb_and_verify;

    struct Fixture {
        line: Line,
        rline: Line,
        a: OracleA,
        ra: OracleA,
    }

    fn fixture(seed: u64) -> Fixture {
        let g = perturb_and_verify(&detour_rich(18, 10, 16, seed), seed).unwrap().0;
        let path = StPath::new(&g, 0, 10).unwrap();
        let apsp = Apsp::new(&g, &path.mask(g.m()));
        let line = Line::forward(&path, &apsp);
        let rline = line.reversed();
        let a = OracleA::build(&line);
        let ra = OracleA::build(&rline);
        Fixture { line, rline, a, ra }
    }

    fn dm(line: &Line) -> Vec<Vec<Dist>> {
        line.dm.clone()
    }

    #[test]
    fn pieces_and_mirror() {
        assert_eq!(pieces(6, &[1, 4]), vec![(0, 1), (2, 4), (5, 6)]);
        assert_eq!(mirror_cut(6, &[1, 4]), vec![1, 4]);
        assert_eq!(mirror_cut(6, &[0, 2]), vec![3, 5]);
    }

    #[test]
    fn edges_merge_touching_segments() {
        let w = SnakeWalk { d: Dist::ZERO, x0: 0, segs: vec![(5, 3), (6, 8), (2, 2)], w: 9 };
        assert_eq!(w.edges(), vec![(3, 4), (6, 7)]);
        assert!(w.uses(3) && w.uses(7) && !w.uses(5) && !w.uses(2));
        let v = SnakeWalk { segs: vec![(3, 5), (5, 6)], ..w };
        assert_eq!(v.edges(), vec![(3, 5)]);
    }

    #[test]
    fn through_matches_exhaustive_walks() {
        for seed in 0..3 {
            let f = fixture(seed);
            let l = f.line.last();
            let pos: Vec<usize> = (0..=l).collect();
            for k1 in 0..l {
                for k3 in k1 + 2..l {
                    let b = OracleB::build(&f.line, &f.a, k1);
                    let rb = OracleB::build(&f.rline, &f.ra, l - 1 - k3);
                    let s = Snakes {
                        fwd: Oriented { line: &f.line, a: &f.a, b: &b },
                        rev: Oriented { line: &f.rline, a: &f.ra, b: &rb },
                    };
                    let cut = [k1, k3];
                    let segs = pieces(l, &cut);
                    for x in k1 + 1..=k3 {
                        let want = snake_oracle(&pos, &f.line.pre, &dm(&f.line), &segs, Some(x));
                        let got = s.through(&cut, x, x);
                        assert_eq!(got.d, want, "seed {seed} k1 {k1} k3 {k3} x {x}");
                        if got.d.is_finite() {
                            assert_eq!(got.length(&f.line), got.d);
                        }
                    }
                    let want = snake_oracle(&pos, &f.line.pre, &dm(&f.line), &segs, None);
                    assert_eq!(s.shortest(&cut).d, want);
                }
            }
        }
    }

    #[test]
    fn probe_loop_potential_shrinks() {
        for seed in 0..4 {
            let f = fixture(seed);
            let l = f.line.last();
            let b = OracleB::build(&f.line, &f.a, 0);
            let rb = OracleB::build(&f.rline, &f.ra, 0);
            let s = Snakes {
                fwd: Oriented { line: &f.line, a: &f.a, b: &b },
                rev: Oriented { line: &f.rline, a: &f.ra, b: &rb },
            };
            let tr = ProbeTrace::run(&s, 0, l - 1);
            assert_eq!(tr.split_violations, 0, "{tr:?}");
            assert_eq!(tr.potential_violations(), 0);
            assert!(tr.stages_within_bound(), "{:?} {:?}", tr.probes, tr.potential);
        }
    }
}
