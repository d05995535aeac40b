use faultpath::gen::{random_connected, random_timeline};
use faultpath::io::{parse_graph, parse_timeline, write_graph, write_timeline, Update};
use faultpath::offline::Op;
use proptest::prelude::*;

proptest! {
    #[test]
    fn graph_text_round_trips(seed in 0u64..10_000, n in 1usize..20, extra in 0usize..20) {
        let g = random_connected(n, extra, 50, seed);
        let back = parse_graph(&write_graph(&g), None).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn timeline_text_round_trips(seed in 0u64..10_000) {
        let tl = random_timeline(8, 4, 10, 9, seed);
        let ups: Vec<Update> = tl.ops.iter().map(|op| match *op {
            Op::Insert(a, b, w) => Update::Insert(a, b, w.base),
            Op::Delete(a, b) => Update::Delete(a, b),
        }).collect();
        let raw = random_connected(8, 4, 9, seed);
        let (g, back) = parse_timeline(&write_timeline(&raw, &ups), None).unwrap();
        prop_assert_eq!(g.edges(), raw.edges());
        prop_assert_eq!(back, ups);
    }
}
