use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use faultpath::dso::Dso;
use faultpath::frp2::Frp2;
use faultpath::frp3::solve_3frp;
use faultpath::gen::{chorded_path, random_absent_edge, random_perturbed, random_timeline};
use faultpath::offline::build_timeline;
use faultpath::perturb::perturb_and_verify;
use faultpath::ssrp::ssrp2;
use faultpath::weight::tiebreak;
use faultpath::Weight;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn dso_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("dso_build");
    group.sample_size(10);
    for n in [16, 32, 64] {
        let g = random_perturbed(n, n, 9, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| Dso::build(g.clone()).unwrap()));
    }
    group.finish();
}

fn dso_insert(c: &mut Criterion) {
    let mut group = c.benchmark_group("dso_insert");
    group.sample_size(10);
    for n in [32, 64] {
        let d = Dso::build(random_perturbed(n, n, 9, 2)).unwrap();
        let (x, y, w) = random_absent_edge(d.graph(), 9, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| {
                let mut d = d.clone();
                d.insert(x, y, Weight::new(w, tiebreak(2, x, y))).unwrap();
                d
            })
        });
    }
    group.finish();
}

fn dso_query(c: &mut Criterion) {
    let g = random_perturbed(64, 64, 9, 3);
    let d = Dso::build(g.clone()).unwrap();
    let m = g.m();
    c.bench_function("dso_query_64", |b| {
        let mut k = 0usize;
        b.iter(|| {
            k = k.wrapping_add(7919);
            black_box(d.query_edge_failure(k % 64, (k / 64) % 64, k % m))
        })
    });
}

fn offline(c: &mut Criterion) {
    let tl = random_timeline(24, 12, 32, 9, 4);
    let mut group = c.benchmark_group("offline");
    group.sample_size(10);
    group.bench_function("n24_t32", |b| b.iter(|| build_timeline(&tl).unwrap()));
    group.finish();
}

fn frp(c: &mut Criterion) {
    let mut group = c.benchmark_group("frp");
    group.sample_size(10);
    for n in [16, 32] {
        let g = perturb_and_verify(&chorded_path(n, n / 2, n / 4, 5), 5).unwrap().0;
        group.bench_with_input(BenchmarkId::new("frp2", n), &g, |b, g| {
            b.iter(|| {
                let f = Frp2::new(g, 0, n / 2).unwrap();
                let mut k = 0;
                f.for_each_required(|_, _, _| k += 1).unwrap();
                k
            })
        });
        group.bench_with_input(BenchmarkId::new("frp3", n), &g, |b, g| b.iter(|| solve_3frp(g, 0, n / 2, |_| {}).unwrap()));
    }
    group.finish();
}

fn ssrp(c: &mut Criterion) {
    let g = random_perturbed(24, 24, 9, 6);
    let mut group = c.benchmark_group("ssrp2");
    group.sample_size(10);
    group.bench_function("n24", |b| b.iter(|| ssrp2(&g, 0, |_, _, _, _| {}).unwrap()));
    group.finish();
}

criterion_group!(benches, dso_build, dso_insert, dso_query, offline, frp, ssrp);
criterion_main!(benches);
