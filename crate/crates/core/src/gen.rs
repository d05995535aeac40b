//! Seeded random graph families.

use crate::graph::Graph;
use crate::io::Update;
use crate::offline::Timeline;
use crate::perturb::perturb_and_verify;
use crate::weight::Weight;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random spanning tree plus `extra` random non-tree edges, base weights in `1..=wmax`.
pub fn random_connected(n: usize, extra: usize, wmax: u64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for i in 1..n {
        let p = order[rng.gen_range(0..i)];
        g.add_edge(order[i], p, Weight::new(rng.gen_range(1..=wmax), 0)).unwrap();
    }
    let cap = n * (n - 1) / 2;
    let mut added = 0;
    let mut tries = 0;
    while added < extra && g.m() < cap && tries < 50 * (extra + 1) {
        tries += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && g.edge_between(a, b).is_none() {
            g.add_edge(a, b, Weight::new(rng.gen_range(1..=wmax), 0)).unwrap();
            added += 1;
        }
    }
    g
}

/// [`random_connected`] with verified tiebreaks installed.
pub fn random_perturbed(n: usize, extra: usize, wmax: u64, seed: u64) -> Graph {
    perturb_and_verify(&random_connected(n, extra, wmax, seed), seed).expect("random weights admit tiebreaks").0
}

/// A heavy `s`-`t` spine of `len` edges with light random chords hanging off it,
/// so failures on the spine have many distinct detours.
pub fn detour_rich(n: usize, len: usize, extra: usize, seed: u64) -> Graph {
    assert!(len < n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..len {
        g.add_edge(i, i + 1, Weight::new(rng.gen_range(1..=4), 0)).unwrap();
    }
    for v in len + 1..n {
        let p = rng.gen_range(0..v);
        g.add_edge(v, p, Weight::new(rng.gen_range(3..=12), 0)).unwrap();
    }
    let mut added = 0;
    let mut tries = 0;
    while added < extra && tries < 50 * (extra + 1) {
        tries += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && g.edge_between(a, b).is_none() && (a.max(b) > len) {
            g.add_edge(a, b, Weight::new(rng.gen_range(3..=12), 0)).unwrap();
            added += 1;
        }
    }
    g
}

/// A spine `0 … len` where every other vertex bridges two nearby spine
/// vertices, so replacement paths keep rejoining the spine.
pub fn chorded_path(n: usize, len: usize, extra: usize, seed: u64) -> Graph {
    assert!(len < n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..len {
        g.add_edge(i, i + 1, Weight::new(rng.gen_range(1..=4), 0)).unwrap();
    }
    for v in len + 1..n {
        let a = rng.gen_range(0..len);
        let b = (a + rng.gen_range(1..=3)).min(len);
        g.add_edge(v, a, Weight::new(rng.gen_range(2..=6), 0)).unwrap();
        g.add_edge(v, b, Weight::new(rng.gen_range(2..=6), 0)).unwrap();
    }
    let mut added = 0;
    let mut tries = 0;
    while added < extra && tries < 50 * (extra + 1) {
        tries += 1;
        let (a, b) = (rng.gen_range(len + 1..n), rng.gen_range(0..n));
        if a != b && g.edge_between(a, b).is_none() {
            g.add_edge(a, b, Weight::new(rng.gen_range(3..=9), 0)).unwrap();
            added += 1;
        }
    }
    g
}

/// Two parallel paths of `n/2` vertices joined by heavy rungs at both ends
/// and at random interior positions. With `s = 0` and `t = n/2 - 1` every
/// replacement path keeps most of the spine, so the number of required
/// failure triples grows like `n³`.
pub fn random_ladder(n: usize, seed: u64) -> Graph {
    assert!(n >= 4);
    let l = n / 2 - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..l {
        g.add_edge(i, i + 1, Weight::new(rng.gen_range(1..=4), 0)).unwrap();
        g.add_edge(l + 1 + i, l + 2 + i, Weight::new(rng.gen_range(1..=4), 0)).unwrap();
    }
    for i in 0..=l {
        if i == 0 || i == l || rng.gen_bool(0.5) {
            g.add_edge(i, l + 1 + i, Weight::new(rng.gen_range(3..=8), 0)).unwrap();
        }
    }
    g
}

/// [`random_perturbed`] followed by `steps` random deletions and insertions.
///
/// Deleted edges are drawn from the current graph; inserted ones are absent
/// pairs with fresh base weights in `1..=wmax`.
pub fn random_timeline(n: usize, extra: usize, steps: usize, wmax: u64, seed: u64) -> Timeline {
    let g = random_perturbed(n, extra, wmax, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7157);
    let mut cur: Vec<(usize, usize)> = g.edges().iter().map(|e| e.key()).collect();
    let mut ups = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut probe = Graph::new(n);
        for &(a, b) in &cur {
            probe.add_edge(a, b, Weight::new(1, 0)).unwrap();
        }
        let absent = random_absent_edge(&probe, wmax, &mut rng);
        if cur.is_empty() || (absent.is_some() && rng.gen_bool(0.5)) {
            let (a, b, w) = absent.expect("graph is not complete");
            cur.push((a.min(b), a.max(b)));
            ups.push(Update::Insert(a, b, w));
        } else {
            let (a, b) = cur.swap_remove(rng.gen_range(0..cur.len()));
            ups.push(Update::Delete(a, b));
        }
    }
    Timeline::from_updates(g, &ups, seed)
}

/// Every graph on a spine `0-1-2-3-4` plus hubs `5, 6, 7`, each hub joined
/// to an unordered pair of spine vertices: 1000 graphs. Spine edges weigh 1,
/// hub edges 2; tiebreaks are verified per graph.
pub fn hub_family() -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut out = Vec::with_capacity(1000);
    for (i, &p) in pairs.iter().enumerate() {
        for (j, &q) in pairs.iter().enumerate() {
            for (k, &r) in pairs.iter().enumerate() {
                let mut g = Graph::new(8);
                for v in 0..4 {
                    g.add_edge(v, v + 1, Weight::new(1, 0)).unwrap();
                }
                for (hub, (a, b)) in [(5, p), (6, q), (7, r)] {
                    g.add_edge(hub, a, Weight::new(2, 0)).unwrap();
                    g.add_edge(hub, b, Weight::new(2, 0)).unwrap();
                }
                let seed = (i * 100 + j * 10 + k) as u64;
                out.push(perturb_and_verify(&g, seed).expect("hub graphs admit tiebreaks").0);
            }
        }
    }
    out
}

/// Spine `0..=6`; after failing `(0,1)`, `(2,3)` and `(4,5)` the only
/// route visits the third piece before the second.
pub fn backtracking_instance() -> Graph {
    let mut g = Graph::new(10);
    for v in 0..6 {
        g.add_edge(v, v + 1, Weight::new(1, 0)).unwrap();
    }
    for (hub, a, b, w) in [(7, 0, 3, 2), (8, 3, 2, 1), (9, 2, 5, 2)] {
        g.add_edge(hub, a, Weight::new(w, 0)).unwrap();
        g.add_edge(hub, b, Weight::new(w, 0)).unwrap();
    }
    perturb_and_verify(&g, 5).expect("small weights admit tiebreaks").0
}

/// A random edge `(u, v, w)` not present in `g`, if any.
pub fn random_absent_edge(g: &Graph, wmax: u64, rng: &mut impl Rng) -> Option<(usize, usize, u64)> {
    let n = g.n();
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && g.edge_between(a, b).is_none() {
            return Some((a, b, rng.gen_range(1..=wmax)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dijkstra;

    #[test]
    fn connected_and_deterministic() {
        let a = random_connected(20, 15, 9, 4);
        let b = random_connected(20, 15, 9, 4);
        assert_eq!(a.m(), 19 + 15);
        assert_eq!(a.edges(), b.edges());
        assert!(dijkstra(&a, 0, None).dist.iter().all(|d| d.is_finite()));
    }

    #[test]
    fn spine_is_shortest() {
        let g = random_perturbed(12, 0, 5, 2);
        assert!(g.m() == 11);
        let g = detour_rich(30, 10, 20, 1);
        assert!(dijkstra(&g, 0, None).dist.iter().all(|d| d.is_finite()));
    }
}
