use faultpath::brute::{dist_avoiding, path_avoiding};
use faultpath::dso::Dso;
use faultpath::gen::{random_absent_edge, random_perturbed, random_timeline};
use faultpath::offline::build_timeline;
use faultpath::snapshot;
use faultpath::weight::tiebreak;
use faultpath::{Dist, Weight};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_exact(d: &Dso, ctx: &str) {
    let g = d.graph();
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u == v {
                continue;
            }
            for f in path_avoiding(g, u, v, &[]).unwrap_or_default() {
                assert_eq!(d.query_edge_failure(u, v, f), dist_avoiding(g, u, v, &[f]), "{ctx} {u}->{v} f {f}");
            }
        }
    }
}

#[test]
fn insertions_keep_every_query_exact() {
    for seed in 0..2 {
        let mut d = Dso::build(random_perturbed(14, 6, 9, seed)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for step in 0..8 {
            let (x, y, w) = random_absent_edge(d.graph(), 12, &mut rng).unwrap();
            let before: Vec<Dist> = (0..14).flat_map(|u| (0..14).map(move |v| (u, v))).map(|(u, v)| d.dist(u, v)).collect();
            d.insert(x, y, Weight::new(w, tiebreak(seed, x, y))).unwrap();
            let after: Vec<Dist> = (0..14).flat_map(|u| (0..14).map(move |v| (u, v))).map(|(u, v)| d.dist(u, v)).collect();
            assert!(before.iter().zip(&after).all(|(b, a)| a <= b));
            assert_exact(&d, &format!("seed {seed} step {step}"));
        }
    }
}

#[test]
fn offline_leaves_match_removal_and_stay_shallow() {
    for seed in 0..2 {
        let tl = random_timeline(12, 8, 20, 9, seed);
        let off = build_timeline(&tl).unwrap();
        let st = off.stats();
        assert!(st.peak_live <= 20usize.next_power_of_two().trailing_zeros() as usize + 1, "{st:?}");
        assert_eq!(st.width_violations, 0);
        for t in 0..=tl.len() {
            let gt = tl.graph_at(t).unwrap();
            for u in 0..gt.n() {
                for v in 0..gt.n() {
                    for f in 0..gt.m() {
                        let e = *gt.edge(f);
                        assert_eq!(off.query_at(t, u, v, (e.u, e.v)).unwrap(), dist_avoiding(&gt, u, v, &[f]), "t {t}");
                    }
                }
            }
        }
    }
}

#[test]
fn builds_are_byte_identical() {
    let g = random_perturbed(14, 12, 9, 21);
    let a = snapshot::to_bytes(&Dso::build(g.clone()).unwrap()).unwrap();
    let b = snapshot::to_bytes(&Dso::build(g).unwrap()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn single_insertion_matches_fresh_build(seed in 0u64..10_000, n in 4usize..11) {
        let g = random_perturbed(n, n / 2, 9, seed);
        let mut d = Dso::build(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some((x, y, w)) = random_absent_edge(d.graph(), 9, &mut rng) {
            d.insert(x, y, Weight::new(w, tiebreak(seed, x, y))).unwrap();
            let fresh = Dso::build(d.graph().clone()).unwrap();
            for u in 0..n {
                for v in 0..n {
                    for f in 0..d.graph().m() {
                        prop_assert_eq!(d.query_edge_failure(u, v, f), fresh.query_edge_failure(u, v, f));
                    }
                }
            }
        }
    }
}
