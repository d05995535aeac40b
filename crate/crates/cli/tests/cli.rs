use faultpath::brute::dist_avoiding;
use faultpath::io::parse_graph;
use faultpath::perturb::perturb_and_verify;
use faultpath::Dist;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_faultpath"));
    c.env_remove("FAULTPATH_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn lines(o: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn random_graph(dir: &Path, n: usize, seed: u64) -> std::path::PathBuf {
    let p = dir.join(format!("g{n}_{seed}.graph"));
    let o = run(&["gen", "random", "--n", &n.to_string(), "--extra", &n.to_string(), "--seed", &seed.to_string(), "--out", s(&p)]);
    assert!(o.status.success());
    p
}

#[test]
fn single_failures_on_a_path_are_all_unreachable() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("path.graph");
    fs::write(&g, "p 5 4\ne 0 1 2\ne 1 2 3\ne 2 3 1\ne 3 4 7\n").unwrap();
    let o = run(&["frp", "--faults", "1", "--graph", s(&g), "--s", "0", "--t", "4"]);
    assert!(o.status.success());
    let recs = lines(&o);
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r["dist"] == "inf"));
}

#[test]
fn verify_frp3_at_twelve_passes() {
    let o = run(&["verify", "--suite", "frp3", "--n", "12", "--seeds", "20", "--mismatches-only"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let sum: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(sum["mismatches"], 0);
    assert!(sum["checked"].as_u64().unwrap() > 0);
}

#[test]
fn output_bytes_ignore_the_thread_budget() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_graph(dir.path(), 14, 4);
    let args = ["frp", "--faults", "3", "--graph", s(&g), "--s", "0", "--t", "13", "--emit-paths"];
    let a = run(&args);
    let b = bin().args(args).env("FAULTPATH_THREADS", "4").output().unwrap();
    let c = bin().args(["--threads", "2"]).args(args).output().unwrap();
    assert!(a.status.success() && !a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn two_failure_records_match_removal() {
    let dir = tempfile::tempdir().unwrap();
    let gp = random_graph(dir.path(), 12, 9);
    let o = run(&["frp", "--faults", "2", "--graph", s(&gp), "--s", "1", "--t", "10"]);
    assert!(o.status.success());
    let g = perturb_and_verify(&parse_graph(&fs::read_to_string(&gp).unwrap(), None).unwrap(), 0).unwrap().0;
    let recs = lines(&o);
    assert!(!recs.is_empty());
    for r in recs {
        let e = |k: &str| g.edge_between(r[k][0].as_u64().unwrap() as usize, r[k][1].as_u64().unwrap() as usize).unwrap();
        let want = match dist_avoiding(&g, 1, 10, &[e("d1"), e("d2")]) {
            Dist::Fin(w) => serde_json::json!(w.base),
            Dist::Inf => serde_json::json!("inf"),
        };
        assert_eq!(r["dist"], want);
    }
}

#[test]
fn snapshot_queries_and_offline_timeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.graph");
    fs::write(&g, "p 4 4\ne 0 1 1\ne 1 2 1\ne 2 3 1\ne 0 3 5\n").unwrap();
    let snap = dir.path().join("g.snap");
    assert!(run(&["dso", "build", "--graph", s(&g), "--out", s(&snap)]).status.success());
    let q = dir.path().join("q.txt");
    fs::write(&q, "c u v a b\n0 3 1 2\n0 2 0 3\n").unwrap();
    let o = run(&["dso", "query", "--snapshot", s(&snap), "--queries", s(&q), "--emit-paths"]);
    let recs = lines(&o);
    assert_eq!(recs[0]["dist"], 5);
    assert_eq!(recs[0]["path"], serde_json::json!([0, 3]));
    assert_eq!(recs[1]["dist"], 2);

    let tl = dir.path().join("t.timeline");
    fs::write(&tl, "p 4 3\ne 0 1 1\ne 1 2 1\ne 2 3 1\n- 1 2\n+ 0 3 4\n").unwrap();
    let tq = dir.path().join("tq.txt");
    fs::write(&tq, "0 0 3 2 3\n1 0 3 0 1\n2 0 3 0 1\n2 0 3 2 3\n").unwrap();
    let o = run(&["dso", "offline", "--timeline", s(&tl), "--queries", s(&tq)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let d: Vec<_> = lines(&o).iter().map(|r| r["dist"].clone()).collect();
    assert_eq!(d, vec![serde_json::json!("inf"), "inf".into(), 4.into(), 4.into()]);
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "p 2 1\ne 0 x 1\n").unwrap();
    assert_eq!(run(&["frp", "--faults", "9", "--graph", "g", "--s", "0", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frp", "--faults", "1", "--graph", s(&dir.path().join("missing")), "--s", "0", "--t", "1"]).status.code(), Some(3));
    assert_eq!(run(&["frp", "--faults", "1", "--graph", s(&bad), "--s", "0", "--t", "1"]).status.code(), Some(4));
    assert_eq!(run(&["gen", "random", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn hardness_instance_is_written_with_its_map() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_graph(dir.path(), 6, 2);
    let (h, m) = (dir.path().join("h.graph"), dir.path().join("h.map"));
    assert!(run(&["gen", "hardness", "--graph", s(&g), "--out", s(&h), "--map", s(&m)]).status.success());
    let hg = parse_graph(&fs::read_to_string(&h).unwrap(), None).unwrap();
    assert_eq!(hg.n(), 6 + 2 * 8);
    assert_eq!(fs::read_to_string(&m).unwrap().lines().filter(|l| l.starts_with("v ")).count(), 6);
}

#[test]
fn single_size_bench_omits_the_slope() {
    let o = run(&["bench", "--suite", "frp3", "--sizes", "12", "--reps", "1"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["slope"].is_null());
    assert_eq!(r["sizes"].as_array().unwrap().len(), 1);
}
