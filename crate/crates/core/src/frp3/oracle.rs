//! Range-tree interval oracles over the `s`-`t` path.
//!
//! Positions are vertex indices `0..=L` along the path. A [`Line`] can be
//! reversed, which turns every suffix-side question into a prefix-side one.

use crate::frp2::{Apsp, StPath};
use crate::weight::{Dist, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

impl Side {
    fn idx(self) -> usize {
        self as usize
    }
}

/// Inclusive range of vertex positions.
pub type Span = (usize, usize);

pub fn end(r: Span, s: Side) -> usize {
    match s {
        Side::L => r.0,
        Side::R => r.1,
    }
}

/// Path geometry plus the `G − st` distance matrix between path vertices.
#[derive(Clone, Debug)]
pub struct Line {
    pub pre: Vec<Weight>,
    pub dm: Vec<Vec<Dist>>,
}

impl Line {
    pub fn forward(path: &StPath, apsp: &Apsp) -> Line {
        let dm = path.verts.iter().map(|&a| path.verts.iter().map(|&b| apsp.d(a, b)).collect()).collect();
        Line { pre: path.pre.clone(), dm }
    }

    pub fn reversed(&self) -> Line {
        let l = self.last();
        let total = self.pre[l];
        let pre = (0..=l).map(|p| total - self.pre[l - p]).collect();
        let dm = (0..=l).map(|a| (0..=l).map(|b| self.dm[l - a][l - b]).collect()).collect();
        Line { pre, dm }
    }

    /// Largest position.
    pub fn last(&self) -> usize {
        self.pre.len() - 1
    }

    #[inline]
    pub fn walk(&self, a: usize, b: usize) -> Weight {
        if a <= b {
            self.pre[b] - self.pre[a]
        } else {
            self.pre[a] - self.pre[b]
        }
    }

    #[inline]
    pub fn d(&self, a: usize, b: usize) -> Dist {
        self.dm[a][b]
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    lo: usize,
    hi: usize,
    kids: Option<(usize, usize)>,
}

/// Balanced binary range tree; children always have smaller ids than parents.
#[derive(Clone, Debug)]
pub struct RangeTree {
    nodes: Vec<Node>,
    root: usize,
}

impl RangeTree {
    pub fn new(last: usize) -> RangeTree {
        let mut t = RangeTree { nodes: Vec::with_capacity(2 * last + 2), root: 0 };
        t.root = t.build(0, last);
        t
    }

    fn build(&mut self, lo: usize, hi: usize) -> usize {
        let kids = (lo < hi).then(|| {
            let mid = lo + (hi - lo) / 2;
            (self.build(lo, mid), self.build(mid + 1, hi))
        });
        self.nodes.push(Node { lo, hi, kids });
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn span(&self, i: usize) -> Span {
        (self.nodes[i].lo, self.nodes[i].hi)
    }

    pub fn kids(&self, i: usize) -> Option<(usize, usize)> {
        self.nodes[i].kids
    }

    /// Canonical nodes covering `[lo, hi]`, left to right.
    pub fn cover(&self, lo: usize, hi: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(self.root, lo, hi, &mut out);
        out
    }

    fn collect(&self, i: usize, lo: usize, hi: usize, out: &mut Vec<usize>) {
        let n = self.nodes[i];
        if hi < n.lo || n.hi < lo {
            return;
        }
        if lo <= n.lo && n.hi <= hi {
            out.push(i);
            return;
        }
        let (a, b) = n.kids.expect("partial overlap implies an inner node");
        self.collect(a, lo, hi, out);
        self.collect(b, lo, hi, out);
    }
}

/// A value with the positions realizing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hit {
    pub d: Dist,
    pub x: u32,
    pub y: u32,
}

impl Hit {
    pub const NONE: Hit = Hit { d: Dist::Inf, x: 0, y: 0 };

    fn plus(self, w: Weight) -> Hit {
        Hit { d: self.d.add_w(w), ..self }
    }

    fn min(self, o: Hit) -> Hit {
        if o.d < self.d {
            o
        } else {
            self
        }
    }
}

/// `A^{σ,τ}(R₁,R₂)`: walk from the `σ` end of `R₁` to `x`, leave the path,
/// rejoin at `y ∈ R₂` and walk to the `τ` end of `R₂`.
#[derive(Clone, Debug)]
pub struct OracleA {
    pub tree: RangeTree,
    cells: Vec<[Hit; 4]>,
}

impl OracleA {
    pub fn build(line: &Line) -> OracleA {
        let tree = RangeTree::new(line.last());
        let nn = tree.len();
        let mut cells = vec![[Hit::NONE; 4]; nn * nn];
        const SIDES: [Side; 2] = [Side::L, Side::R];
        for i in 0..nn {
            let ri = tree.span(i);
            for j in 0..nn {
                let rj = tree.span(j);
                let mut c = [Hit::NONE; 4];
                match (tree.kids(i), tree.kids(j)) {
                    (None, None) => {
                        let h = Hit { d: line.d(ri.0, rj.0), x: ri.0 as u32, y: rj.0 as u32 };
                        c = [h; 4];
                    }
                    (Some((a, b)), _) => {
                        for s in SIDES {
                            for t in SIDES {
                                let k = s.idx() * 2 + t.idx();
                                c[k] = [a, b]
                                    .iter()
                                    .map(|&h| cells[h * nn + j][k].plus(line.walk(end(ri, s), end(tree.span(h), s))))
                                    .fold(Hit::NONE, Hit::min);
                            }
                        }
                    }
                    (None, Some((a, b))) => {
                        for s in SIDES {
                            for t in SIDES {
                                let k = s.idx() * 2 + t.idx();
                                c[k] = [a, b]
                                    .iter()
                                    .map(|&h| cells[i * nn + h][k].plus(line.walk(end(tree.span(h), t), end(rj, t))))
                                    .fold(Hit::NONE, Hit::min);
                            }
                        }
                    }
                }
                cells[i * nn + j] = c;
            }
        }
        OracleA { tree, cells }
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize, s: Side, t: Side) -> Hit {
        self.cells[i * self.tree.len() + j][s.idx() * 2 + t.idx()]
    }

    /// `A^{σ,τ}(r1, r2)` for arbitrary spans.
    pub fn query(&self, line: &Line, r1: Span, s: Side, r2: Span, t: Side) -> Hit {
        let n1 = self.tree.cover(r1.0, r1.1);
        let n2 = self.tree.cover(r2.0, r2.1);
        let mut best = Hit::NONE;
        for &i in &n1 {
            let wi = line.walk(end(r1, s), end(self.tree.span(i), s));
            for &j in &n2 {
                let wj = line.walk(end(self.tree.span(j), t), end(r2, t));
                best = best.min(self.node(i, j, s, t).plus(wi + wj));
            }
        }
        best
    }
}

/// Prefix potential `P(y) = min_{w ≤ k} |s p_w| + d(p_w, p_y)` for a left
/// failure at edge position `k`, with per-node `C^σ(R) = min_{y∈R} P(y) + |y, σ(R)|`.
#[derive(Clone, Debug)]
pub struct Potential {
    pub k: usize,
    pub val: Vec<Dist>,
    pub from: Vec<usize>,
    node: Vec<[Hit; 2]>,
}

impl Potential {
    pub fn new(line: &Line, tree: &RangeTree, k: usize) -> Potential {
        let l = line.last();
        let mut val = vec![Dist::Inf; l + 1];
        let mut from = vec![0; l + 1];
        for w in 0..=k {
            for y in 0..=l {
                let c = line.d(w, y).add_w(line.pre[w]);
                if c < val[y] {
                    val[y] = c;
                    from[y] = w;
                }
            }
        }
        let mut node = vec![[Hit::NONE; 2]; tree.len()];
        for i in 0..tree.len() {
            let r = tree.span(i);
            node[i] = match tree.kids(i) {
                None => [Hit { d: val[r.0], x: r.0 as u32, y: r.0 as u32 }; 2],
                Some((a, b)) => [Side::L, Side::R].map(|s| {
                    [a, b]
                        .iter()
                        .map(|&h| node[h][s.idx()].plus(line.walk(end(tree.span(h), s), end(r, s))))
                        .fold(Hit::NONE, Hit::min)
                }),
            };
        }
        Potential { k, val, from, node }
    }

    /// `C^σ(r)`; the hit's `x` is the convergence point.
    pub fn reach(&self, line: &Line, tree: &RangeTree, r: Span, s: Side) -> Hit {
        tree.cover(r.0, r.1)
            .into_iter()
            .map(|i| self.node[i][s.idx()].plus(line.walk(end(tree.span(i), s), end(r, s))))
            .fold(Hit::NONE, Hit::min)
    }
}

/// Realizing positions of a `B` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BHit {
    pub d: Dist,
    pub y1: u32,
    pub y2: u32,
    pub z: u32,
}

impl BHit {
    pub const NONE: BHit = BHit { d: Dist::Inf, y1: 0, y2: 0, z: 0 };

    fn plus(self, w: Weight) -> BHit {
        BHit { d: self.d.add_w(w), ..self }
    }

    fn min(self, o: BHit) -> BHit {
        if o.d < self.d {
            o
        } else {
            self
        }
    }

    fn join(c: Hit, w: Weight, a: Hit) -> BHit {
        BHit { d: (c.d + a.d).add_w(w), y1: c.x, y2: a.x, z: a.y }
    }
}

/// `B^τ(d₁,R₁,R₂)`: from `s` diverge before `d₁`, converge at `y₁ ∈ R₁`, walk
/// to `y₂ ∈ R₁`, leave, converge at `z ∈ R₂` and walk to the `τ` end of `R₂`.
#[derive(Clone, Debug)]
pub struct OracleB {
    pub pot: Potential,
    cells: Vec<[BHit; 2]>,
}

impl OracleB {
    pub fn build(line: &Line, a: &OracleA, k: usize) -> OracleB {
        let tree = &a.tree;
        let pot = Potential::new(line, tree, k);
        let nn = tree.len();
        let mut cells = vec![[BHit::NONE; 2]; nn * nn];
        for i in 0..nn {
            for j in 0..nn {
                let mut c = [BHit::NONE; 2];
                for t in [Side::L, Side::R] {
                    c[t.idx()] = match tree.kids(i) {
                        None => {
                            let x = tree.span(i).0;
                            let h = a.node(i, j, Side::L, t);
                            BHit { d: h.d + pot.val[x], y1: x as u32, y2: h.x, z: h.y }
                        }
                        Some((p, q)) => {
                            let (rp, rq) = (tree.span(p), tree.span(q));
                            let gap = line.walk(rp.1, rq.0);
                            let split = [
                                BHit::join(pot.node[p][Side::R.idx()], gap, a.node(q, j, Side::L, t)),
                                BHit::join(pot.node[q][Side::L.idx()], gap, a.node(p, j, Side::R, t)),
                            ];
                            split.into_iter().fold(cells[p * nn + j][t.idx()].min(cells[q * nn + j][t.idx()]), BHit::min)
                        }
                    };
                }
                cells[i * nn + j] = c;
            }
        }
        OracleB { pot, cells }
    }

    #[inline]
    pub fn node(&self, nn: usize, i: usize, j: usize, t: Side) -> BHit {
        self.cells[i * nn + j][t.idx()]
    }

    /// Divergence point before the left failure for a convergence at `y1`.
    pub fn x0(&self, y1: usize) -> usize {
        self.pot.from[y1]
    }

    /// `B^τ(r1, r2)` for arbitrary spans.
    pub fn query(&self, line: &Line, a: &OracleA, r1: Span, r2: Span, t: Side) -> BHit {
        let tree = &a.tree;
        let nn = tree.len();
        let n1 = tree.cover(r1.0, r1.1);
        let n2 = tree.cover(r2.0, r2.1);
        let mut best = BHit::NONE;
        for &i in &n1 {
            for &j in &n2 {
                let wj = line.walk(end(tree.span(j), t), end(r2, t));
                best = best.min(self.node(nn, i, j, t).plus(wj));
            }
        }
        for (bi, &b) in n1.iter().enumerate() {
            let rb = tree.span(b);
            let from_left = n1[..bi]
                .iter()
                .map(|&p| self.pot.node[p][Side::R.idx()].plus(line.walk(tree.span(p).1, rb.0)))
                .fold(Hit::NONE, Hit::min);
            let from_right = n1[bi + 1..]
                .iter()
                .map(|&p| self.pot.node[p][Side::L.idx()].plus(line.walk(tree.span(p).0, rb.1)))
                .fold(Hit::NONE, Hit::min);
            if from_left.d.is_finite() {
                best = best.min(BHit::join(from_left, Weight::ZERO, a.query(line, rb, Side::L, r2, t)));
            }
            if from_right.d.is_finite() {
                best = best.min(BHit::join(from_right, Weight::ZERO, a.query(line, rb, Side::R, r2, t)));
            }
        }
        best
    }
}
