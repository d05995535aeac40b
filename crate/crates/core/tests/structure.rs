use faultpath::brute::{bellman_ford, between_violation, dist_avoiding, path_avoiding, replacement_union};
use faultpath::gen::{chorded_path, random_perturbed};
use faultpath::perturb::perturb_and_verify;
use faultpath::Graph;
use proptest::prelude::*;

fn families() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in (6..=20).step_by(2) {
        out.push(random_perturbed(n, n, 9, n as u64));
        out.push(perturb_and_verify(&chorded_path(n, n / 2, 2, n as u64), n as u64).unwrap().0);
    }
    out
}

#[test]
fn replacement_union_has_at_most_three_n_edges() {
    for g in families() {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let k = replacement_union(&g, u, v).len();
                assert!(k <= 3 * g.n(), "n {} pair {u},{v}: {k}", g.n());
            }
        }
    }
}

#[test]
fn replacement_paths_never_reenter_between_avoided_pieces() {
    for g in families() {
        for u in 0..g.n() {
            for v in 0..g.n() {
                let Some(base) = path_avoiding(&g, u, v, &[]) else { continue };
                for &f in &base {
                    if let Some(r) = path_avoiding(&g, u, v, &[f]) {
                        assert_eq!(between_violation(&base, &r), None, "n {} {u}->{v} f {f}", g.n());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn removal_is_monotone(seed in 0u64..10_000, n in 4usize..14, picks in prop::collection::vec(0usize..64, 0..5)) {
        let g = random_perturbed(n, n, 9, seed);
        let fs: Vec<usize> = picks.iter().map(|p| p % g.m()).collect();
        for k in 0..fs.len() {
            for v in 1..n {
                prop_assert!(dist_avoiding(&g, 0, v, &fs[..k]) <= dist_avoiding(&g, 0, v, &fs[..k + 1]));
            }
        }
    }

    #[test]
    fn dijkstra_oracle_matches_bellman_ford(seed in 0u64..10_000, n in 3usize..16, picks in prop::collection::vec(0usize..64, 0..4)) {
        let g = random_perturbed(n, n / 2, 9, seed);
        let fs: Vec<usize> = picks.iter().map(|p| p % g.m()).collect();
        let bf = bellman_ford(&g, 0, &fs);
        for v in 0..n {
            prop_assert_eq!(dist_avoiding(&g, 0, v, &fs), bf[v]);
        }
    }
}
