//! Dyadic partition of the `s`-`t` path and the half graphs `H_{i,0}`, `H_{i,1}`.
//!
//! The path is padded on the `s` side to `2^k` edges. Padding is virtual:
//! padded edges are never failed and never reachable from a terminal, so
//! only the index shift is kept.

use crate::error::Result;
use crate::frp2::AuxGraphH;
use crate::graph::{EdgeId, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryPartition {
    pub k: u32,
    pub pad: usize,
    pub len: usize,
}

impl BinaryPartition {
    pub fn new(len: usize) -> BinaryPartition {
        let k = len.max(1).next_power_of_two().trailing_zeros();
        BinaryPartition { k, pad: (1usize << k) - len, len }
    }

    /// Index `j` of the range `Q_{i,j}` holding path edge `e`.
    pub fn range_of(&self, i: u32, e: usize) -> usize {
        (e + self.pad) >> (self.k - i)
    }

    /// Path position of `m_{i,j}`, or `None` inside the padding.
    pub fn marker(&self, i: u32, j: usize) -> Option<usize> {
        (j << (self.k - i)).checked_sub(self.pad)
    }

    /// Minimal level `i` and odd `j` with `a ∈ Q_{i,j−1}`, `b ∈ Q_{i,j}`, for `a < b`.
    pub fn split(&self, a: usize, b: usize) -> (u32, usize) {
        debug_assert!(a < b && b < self.len);
        let x = (a + self.pad) ^ (b + self.pad);
        let hb = usize::BITS - 1 - x.leading_zeros();
        (self.k - hb, (b + self.pad) >> hb)
    }

    /// Real edge positions of `Q_{i,j}` as an inclusive range, if not all padding.
    pub fn range(&self, i: u32, j: usize) -> Option<(usize, usize)> {
        let w = 1usize << (self.k - i);
        let hi = ((j + 1) * w).checked_sub(self.pad + 1)?;
        Some(((j * w).saturating_sub(self.pad), hi))
    }
}

/// `H` plus the path edges of one parity class at one level, lifted.
#[derive(Clone, Debug)]
pub struct HalfGraph {
    pub graph: Graph,
    pub level: u32,
    pub parity: usize,
    /// Path position → edge id in `graph`, for the edges present.
    pub path_edge: Vec<Option<EdgeId>>,
}

pub fn half_graph(h: &AuxGraphH, part: &BinaryPartition, level: u32, parity: usize) -> Result<HalfGraph> {
    let mut graph = h.graph.clone();
    let p = &h.path;
    let mut path_edge = vec![None; p.len()];
    for (e, slot) in path_edge.iter_mut().enumerate() {
        if part.range_of(level, e) % 2 == parity {
            *slot = Some(graph.add_edge(p.verts[e], p.verts[e + 1], p.span(e, e + 1).lifted())?);
        }
    }
    Ok(HalfGraph { graph, level, parity, path_edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frp2::build_h;
    use crate::gen::random_perturbed;

    #[test]
    fn markers_follow_parent_level() {
        let p = BinaryPartition::new(11);
        assert_eq!((p.k, p.pad), (4, 5));
        for i in 1..=p.k {
            for j in 0..=(1usize << (i - 1)) {
                let up = (j << (p.k - i + 1)).checked_sub(p.pad);
                assert_eq!(p.marker(i, 2 * j), up);
            }
        }
    }

    #[test]
    fn each_level_partitions_the_path() {
        for len in 1..20 {
            let p = BinaryPartition::new(len);
            for i in 0..=p.k {
                let mut seen = vec![0; len];
                for j in 0..(1usize << i) {
                    if let Some((lo, hi)) = p.range(i, j) {
                        for e in lo..=hi {
                            seen[e] += 1;
                            assert_eq!(p.range_of(i, e), j);
                        }
                    }
                }
                assert!(seen.iter().all(|&c| c == 1), "len {len} level {i}");
            }
        }
    }

    #[test]
    fn split_separates_adjacent_ranges() {
        let p = BinaryPartition::new(13);
        for a in 0..13 {
            for b in a + 1..13 {
                let (i, j) = p.split(a, b);
                assert_eq!(j % 2, 1);
                assert_eq!(p.range_of(i, a), j - 1);
                assert_eq!(p.range_of(i, b), j);
                if i > 0 {
                    assert_eq!(p.range_of(i - 1, a), p.range_of(i - 1, b));
                }
                let m = p.marker(i, j).unwrap();
                assert!(a < m && m <= b);
            }
        }
    }

    #[test]
    fn half_graphs_are_complementary_on_path() {
        let g = random_perturbed(14, 10, 9, 3);
        let h = build_h(&g, 0, 13).unwrap();
        let part = BinaryPartition::new(h.path.len());
        for i in 1..=part.k {
            let even = half_graph(&h, &part, i, 0).unwrap();
            let odd = half_graph(&h, &part, i, 1).unwrap();
            for e in 0..h.path.len() {
                assert!(even.path_edge[e].is_some() != odd.path_edge[e].is_some());
            }
            assert_eq!(even.graph.m() + odd.graph.m(), 2 * h.graph.m() + h.path.len());
        }
    }
}
