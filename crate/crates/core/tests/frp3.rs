use faultpath::brute::{contact_sequence, dist_avoiding, edge_path_vertices, observation_type, path_avoiding, snake_oracle};
use faultpath::frp2::{Apsp, StPath};
use faultpath::frp3::oracle::{Line, OracleA, OracleB};
use faultpath::frp3::snake::{pieces, Oriented, Snakes};
use faultpath::frp3::{solve_3frp, Case, Frp3, Frp3Stats};
use faultpath::gen::{backtracking_instance, chorded_path, detour_rich, hub_family, random_perturbed};
use faultpath::perturb::perturb_and_verify;
use faultpath::{Dist, Graph, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_all(g: &Graph, s: usize, t: usize) -> Frp3Stats {
    let mut bad = Vec::new();
    let st = solve_3frp(g, s, t, |a| {
        let want = dist_avoiding(g, s, t, &[a.d1, a.d2, a.d3]);
        if a.dist != want {
            bad.push((a.d1, a.d2, a.d3, a.case, a.dist, want));
        }
    })
    .unwrap();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(st.potential_violations, 0);
    assert_eq!(st.stage_bound_violations, 0);
    assert_eq!(st.split_violations, 0);
    st
}

#[test]
fn chorded_graphs_at_sixteen_match_triple_removal() {
    let mut three = 0;
    for seed in 0..50 {
        let g = perturb_and_verify(&chorded_path(16, 8, 3, seed), seed).unwrap().0;
        let st = check_all(&g, 0, 8);
        three += st.three_on;
    }
    assert!(three > 500);
}

#[test]
fn random_and_detour_rich_graphs_at_sixteen() {
    for seed in 0..6 {
        check_all(&random_perturbed(16, 14, 9, seed), 0, 15);
        check_all(&perturb_and_verify(&detour_rich(16, 9, 10, seed), seed).unwrap().0, 0, 9);
    }
}

#[test]
fn exhaustive_eight_vertex_family() {
    let fam = hub_family();
    assert_eq!(fam.len(), 1000);
    let mut seen = [0usize; 4];
    for g in &fam {
        let st = check_all(g, 0, 4);
        seen[0] += st.one_on;
        seen[1] += st.two_on;
        seen[2] += st.three_on;
        seen[3] += st.triples;
    }
    assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
}

#[test]
fn backtracking_route_is_recovered() {
    let g = backtracking_instance();
    let cut = [g.edge_between(0, 1).unwrap(), g.edge_between(2, 3).unwrap(), g.edge_between(4, 5).unwrap()];
    let r = path_avoiding(&g, 0, 6, &cut).unwrap();
    let seq = contact_sequence(&[0, 1, 2, 3, 4, 5, 6], &[0, 2, 4], &edge_path_vertices(&g, 0, &r));
    assert_eq!(observation_type(&seq), Some(5));
    let f = Frp3::new(&g, 0, 6).unwrap();
    let (ans, _) = f.answer(&[(cut[0], cut[1], cut[2])]).unwrap();
    assert_eq!(ans[0].case, Case::ThreeOn);
    assert_eq!(ans[0].dist.base(), Some(11));
    assert_eq!(ans[0].dist, dist_avoiding(&g, 0, 6, &cut));
    check_all(&g, 0, 6);
}

#[test]
fn every_three_on_path_optimum_has_one_of_five_shapes() {
    let mut hist = [0usize; 6];
    let mut graphs = vec![(backtracking_instance(), 6)];
    for n in 6..=12 {
        for seed in 0..24 {
            let len = n / 2 + 1;
            let g = match seed % 3 {
                0 => chorded_path(n, len, 2, seed),
                1 => chorded_path(n, len, n / 2, seed),
                _ => detour_rich(n, len, n, seed),
            };
            graphs.push((perturb_and_verify(&g, seed).unwrap().0, len));
        }
    }
    for (g, len) in &graphs {
        let path = path_avoiding(g, 0, *len, &[]).unwrap();
        let verts = edge_path_vertices(g, 0, &path);
        let h = path.len();
        for k1 in 0..h {
            for k2 in k1 + 1..h {
                for k3 in k2 + 1..h {
                    let Some(r) = path_avoiding(g, 0, *len, &[path[k1], path[k2], path[k3]]) else { continue };
                    let seq = contact_sequence(&verts, &[k1, k2, k3], &edge_path_vertices(g, 0, &r));
                    let ty = observation_type(&seq).unwrap_or_else(|| panic!("n {} {seq:?}", g.n()));
                    hist[ty as usize] += 1;
                }
            }
        }
    }
    assert!(hist[1..].iter().all(|&c| c > 0), "{hist:?}");
}

#[test]
fn snake_through_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for seed in 0.. {
        if checked == 500 {
            break;
        }
        let g = perturb_and_verify(&detour_rich(16, 10, 14, seed), seed).unwrap().0;
        let path = StPath::new(&g, 0, 10).unwrap();
        let l = path.len();
        if l < 5 {
            continue;
        }
        let line = Line::forward(&path, &Apsp::new(&g, &path.mask(g.m())));
        let rline = line.reversed();
        let (a, ra) = (OracleA::build(&line), OracleA::build(&rline));
        let mut pos_w = vec![Weight::ZERO];
        for &e in &path.edges {
            pos_w.push(*pos_w.last().unwrap() + g.edge(e).w);
        }
        let dm: Vec<Vec<Dist>> = path
            .verts
            .iter()
            .map(|&x| path.verts.iter().map(|&y| dist_avoiding(&g, x, y, &path.edges)).collect())
            .collect();
        let pos: Vec<usize> = (0..=l).collect();
        for _ in 0..100 {
            let k1 = rng.gen_range(0..l - 3);
            let k2 = rng.gen_range(k1 + 1..l - 1);
            let k3 = rng.gen_range(k2 + 1..l);
            let x = rng.gen_range(k1 + 1..=k3);
            let b = OracleB::build(&line, &a, k1);
            let rb = OracleB::build(&rline, &ra, l - 1 - k3);
            let s = Snakes { fwd: Oriented { line: &line, a: &a, b: &b }, rev: Oriented { line: &rline, a: &ra, b: &rb } };
            let cut = [k1, k2, k3];
            let want = snake_oracle(&pos, &pos_w, &dm, &pieces(l, &cut), Some(x));
            assert_eq!(s.through(&cut, x, x).d, want, "seed {seed} cut {cut:?} x {x}");
            checked += 1;
        }
    }
}

#[test]
fn cycle_has_a_single_detour_level() {
    let mut g = Graph::new(8);
    for v in 0..8 {
        g.add_edge(v, (v + 1) % 8, Weight::new(1, 0)).unwrap();
    }
    let g = perturb_and_verify(&g, 1).unwrap().0;
    assert_eq!(check_all(&g, 0, 3).triples, 0);
    let f = Frp3::new(&g, 0, 3).unwrap();
    let st = f.frp2.path().edges.clone();
    let arc = g.edge_between(5, 6).unwrap();
    let (ans, _) = f.answer(&[(st[0], st[1], st[2]), (st[1], arc, st[0])]).unwrap();
    assert_eq!(ans[0].case, Case::OffPath);
    assert_eq!(ans[0].dist.base(), Some(5));
    assert_eq!(ans[1].dist, Dist::Inf);
}

#[test]
fn tree_is_unreachable_after_first_failure() {
    let g = random_perturbed(12, 0, 9, 3);
    let st = check_all(&g, 0, 11);
    assert_eq!(st.triples, 0);
}
