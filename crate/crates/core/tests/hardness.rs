use faultpath::brute::dist_avoiding;
use faultpath::graph::dijkstra;
use faultpath::hardness::{reduce, solve_designated};
use faultpath::gen::random_perturbed;
use proptest::prelude::*;

fn apsp(g: &faultpath::Graph) -> Vec<Vec<faultpath::Dist>> {
    (0..g.n()).map(|u| dijkstra(g, u, None).dist).collect()
}

#[test]
fn round_trip_at_twenty() {
    for seed in 0..3 {
        let g = random_perturbed(20, 25, 9, seed);
        let inst = reduce(&g).unwrap();
        assert_eq!(inst.h.n(), 3 * 20 + 4);
        assert_eq!(solve_designated(&inst).unwrap(), apsp(&g));
    }
}

#[test]
fn designated_answers_are_finite_and_above_offset() {
    let g = random_perturbed(8, 6, 9, 3);
    let inst = reduce(&g).unwrap();
    for i in 1..=8 {
        for j in 1..=8 {
            let (a, b) = inst.failures(i, j);
            let d = dist_avoiding(&inst.h, inst.s, inst.t, &[a, b]).finite().unwrap();
            assert!(d.base >= (i + j) as u64 * inst.big_n.base);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn round_trip_small(seed in 0u64..10_000, n in 2usize..9) {
        let g = random_perturbed(n, n, 20, seed);
        prop_assert_eq!(solve_designated(&reduce(&g).unwrap()).unwrap(), apsp(&g));
    }
}
