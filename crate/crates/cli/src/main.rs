use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use faultpath::brute::edge_path_vertices;
use faultpath::dso::Dso;
use faultpath::frp2::{frp1_all, Frp2};
use faultpath::frp3::solve_3frp;
use faultpath::gen::random_connected;
use faultpath::graph::{dijkstra, EdgeId, EdgeMask, Graph, VertexId};
use faultpath::hardness::reduce;
use faultpath::io::{parse_graph, parse_timeline, write_graph};
use faultpath::offline::{build_timeline, Timeline};
use faultpath::perturb::perturb_and_verify;
use faultpath::scaling::{self, Suite};
use faultpath::ssrp::ssrp2;
use faultpath::verify::{self, VerifySuite};
use faultpath::{snapshot, Dist};
use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_FORMAT: u8 = 4;
const EXIT_MISMATCH: u8 = 5;
const EXIT_OTHER: u8 = 6;

/// Exact replacement paths under edge failures.
#[derive(Parser)]
#[command(name = "faultpath", version)]
struct Cli {
    /// Thread budget. Every solver is sequential, so output does not depend on it.
    #[arg(long, global = true, env = "FAULTPATH_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replacement distances between s and t under 1, 2 or 3 failures.
    Frp(FrpArgs),
    /// Distance sensitivity oracle: build a snapshot, query it, or run a timeline.
    #[command(subcommand)]
    Dso(DsoCmd),
    /// Two-failure single-source replacement paths.
    Ssrp2(Ssrp2Args),
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Compare a solver against the brute-force oracle on seeded instances.
    Verify(VerifyArgs),
    /// Time a solver over growing sizes and fit a log-log slope.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GraphIn {
    /// Graph file (`p n m`, `e u v w`, `c` comments).
    #[arg(long)]
    graph: PathBuf,
    /// Multiply weights by this factor; required for fractional weights.
    #[arg(long)]
    scale: Option<u64>,
    /// Tiebreak seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutArg {
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FrpArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    faults: u8,
    #[command(flatten)]
    input: GraphIn,
    #[arg(long)]
    s: VertexId,
    #[arg(long)]
    t: VertexId,
    /// Attach the replacement route as a vertex list.
    #[arg(long)]
    emit_paths: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Subcommand)]
enum DsoCmd {
    /// Build the oracle and write a binary snapshot.
    Build {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer `u v a b` lines (edge `a-b` failed) from a snapshot.
    Query {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        emit_paths: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Answer `t u v a b` lines against an update timeline.
    Offline {
        #[arg(long)]
        timeline: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        scale: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct Ssrp2Args {
    #[command(flatten)]
    input: GraphIn,
    #[arg(long)]
    s: VertexId,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Reduce an all-pairs instance to a two-failure instance.
    Hardness {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Random connected graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 9)]
        wmax: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: VerifySuite,
    #[arg(long)]
    n: usize,
    /// Seeds `0..m`.
    #[arg(long)]
    seeds: u64,
    /// Only write mismatching reports.
    #[arg(long)]
    mismatches_only: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

#[derive(Debug)]
struct Format(String);

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Format {}

fn exit_code(e: &anyhow::Error) -> u8 {
    use faultpath::Error as E;
    if e.is::<Mismatch>() {
        return EXIT_MISMATCH;
    }
    if e.is::<Format>() {
        return EXIT_FORMAT;
    }
    if e.chain().any(|c| c.is::<io::Error>()) {
        return EXIT_IO;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::Parse { .. }
            | E::Snapshot(_)
            | E::SelfLoop(_)
            | E::VertexOutOfRange { .. }
            | E::DuplicateEdge(..)
            | E::MissingEdge(..)
            | E::InvalidDelete(..)
            | E::TimeOutOfRange { .. }
            | E::Disconnected(..)
            | E::Invalid(_),
        ) => EXIT_FORMAT,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Frp(a) => frp(a),
        Cmd::Dso(c) => dso(c),
        Cmd::Ssrp2(a) => ssrp(a),
        Cmd::Gen(c) => gen(c),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Bench(a) => bench(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(input: &GraphIn) -> Result<Graph> {
    let raw = parse_graph(&read(&input.graph)?, input.scale)?;
    Ok(perturb_and_verify(&raw, input.seed)?.0)
}

fn sink(out: &OutArg) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_record(w: &mut dyn Write, rec: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *w, rec)?;
    w.write_all(b"\n")?;
    Ok(())
}

fn dist_value(d: Dist) -> Value {
    match d {
        Dist::Fin(w) => Value::from(w.base),
        Dist::Inf => Value::from("inf"),
    }
}

fn ends(g: &Graph, e: EdgeId) -> [VertexId; 2] {
    let (a, b) = g.edge(e).key();
    [a, b]
}

fn check_vertex(g: &Graph, v: VertexId) -> Result<()> {
    if v >= g.n() {
        return Err(faultpath::Error::VertexOutOfRange { v, n: g.n() }.into());
    }
    Ok(())
}

#[derive(Serialize)]
struct FrpRecord {
    d1: [VertexId; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    d2: Option<[VertexId; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d3: Option<[VertexId; 2]>,
    dist: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<Vec<VertexId>>,
}

fn frp(a: FrpArgs) -> Result<()> {
    let g = load_graph(&a.input)?;
    check_vertex(&g, a.s)?;
    check_vertex(&g, a.t)?;
    let mut w = sink(&a.out)?;
    let path = |d: Dist, p: Option<Vec<VertexId>>| if a.emit_paths && d.is_finite() { p } else { None };
    match a.faults {
        1 => {
            let f = frp1_all(&g, a.s, a.t)?;
            for (k, &d1) in f.path.edges.iter().enumerate() {
                let p = f.paths[k].as_ref().map(|es| edge_path_vertices(&g, a.s, es));
                let rec = FrpRecord { d1: ends(&g, d1), d2: None, d3: None, dist: dist_value(f.dist[k]), case: None, path: path(f.dist[k], p) };
                write_record(&mut w, &rec)?;
            }
        }
        2 => {
            let f = Frp2::new(&g, a.s, a.t)?;
            let mut res = Ok(());
            f.for_each_required(|d1, d2, d| {
                if res.is_err() {
                    return;
                }
                res = (|| {
                    let p = if a.emit_paths { f.route(&g, d1, d2)? } else { None };
                    let rec = FrpRecord { d1: ends(&g, d1), d2: Some(ends(&g, d2)), d3: None, dist: dist_value(d), case: None, path: path(d, p) };
                    write_record(&mut w, &rec)
                })();
            })?;
            res?;
        }
        _ => {
            let mut res = Ok(());
            solve_3frp(&g, a.s, a.t, |ans| {
                if res.is_err() {
                    return;
                }
                res = (|| {
                    let p = if a.emit_paths && ans.dist.is_finite() {
                        let mask = EdgeMask::from_edges(g.m(), [ans.d1, ans.d2, ans.d3]);
                        let sp = dijkstra(&g, a.s, Some(&mask));
                        if sp.dist[a.t] != ans.dist {
                            bail!(Mismatch(format!("route for {:?} disagrees with the reported distance", (ans.d1, ans.d2, ans.d3))));
                        }
                        sp.path_to(&g, a.t)
                    } else {
                        None
                    };
                    let rec = FrpRecord {
                        d1: ends(&g, ans.d1),
                        d2: Some(ends(&g, ans.d2)),
                        d3: Some(ends(&g, ans.d3)),
                        dist: dist_value(ans.dist),
                        case: Some(ans.case.as_str()),
                        path: p,
                    };
                    write_record(&mut w, &rec)
                })();
            })?;
            res?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Whitespace-separated integer rows, skipping blanks and `c` comments.
fn read_rows(path: &Path, width: usize) -> Result<Vec<Vec<usize>>> {
    let text = read(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Format(format!("{}:{}: expected integers", path.display(), i + 1)))?;
        if row.len() != width {
            bail!(Format(format!("{}:{}: expected {width} fields, found {}", path.display(), i + 1, row.len())));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn failed_edge(g: &Graph, a: VertexId, b: VertexId) -> Result<EdgeId> {
    check_vertex(g, a)?;
    check_vertex(g, b)?;
    g.edge_between(a, b).ok_or_else(|| faultpath::Error::MissingEdge(a.min(b), a.max(b)).into())
}

#[derive(Serialize)]
struct DsoRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    u: VertexId,
    v: VertexId,
    f: [VertexId; 2],
    dist: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<Vec<VertexId>>,
}

fn dso(c: DsoCmd) -> Result<()> {
    match c {
        DsoCmd::Build { input, out } => {
            let d = Dso::build(load_graph(&input)?)?;
            let bytes = snapshot::to_bytes(&d)?;
            fs::write(&out, bytes).with_context(|| format!("writing {}", out.display()))?;
        }
        DsoCmd::Query { snapshot: snap, queries, emit_paths, out } => {
            let bytes = fs::read(&snap).with_context(|| format!("reading {}", snap.display()))?;
            let d = snapshot::from_bytes(&bytes)?;
            let rows = read_rows(&queries, 4)?;
            let mut w = sink(&out)?;
            for r in rows {
                let (u, v) = (r[0], r[1]);
                check_vertex(d.graph(), u)?;
                check_vertex(d.graph(), v)?;
                let f = failed_edge(d.graph(), r[2], r[3])?;
                let dist = d.query_edge_failure(u, v, f);
                let path = if emit_paths { d.query_path(u, v, f) } else { None };
                write_record(&mut w, &DsoRecord { t: None, u, v, f: ends(d.graph(), f), dist: dist_value(dist), path })?;
            }
            w.flush()?;
        }
        DsoCmd::Offline { timeline, queries, scale, seed, out } => {
            let (raw, ups) = parse_timeline(&read(&timeline)?, scale)?;
            let initial = perturb_and_verify(&raw, seed)?.0;
            let tl = Timeline::from_updates(initial, &ups, seed);
            let off = build_timeline(&tl)?;
            let rows = read_rows(&queries, 5)?;
            let mut w = sink(&out)?;
            for r in rows {
                let (t, u, v) = (r[0], r[1], r[2]);
                let (a, b) = (r[3].min(r[4]), r[3].max(r[4]));
                let dist = off.query_at(t, u, v, (a, b))?;
                write_record(&mut w, &DsoRecord { t: Some(t), u, v, f: [a, b], dist: dist_value(dist), path: None })?;
            }
            w.flush()?;
            let st = off.stats();
            eprintln!("{}", serde_json::json!({"steps": tl.len(), "nodes": st.nodes, "insertions": st.insertions, "peak_live": st.peak_live, "depth": st.depth}));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SsrpRecord {
    d1: [VertexId; 2],
    d2: [VertexId; 2],
    t: VertexId,
    dist: Value,
}

fn ssrp(a: Ssrp2Args) -> Result<()> {
    let g = load_graph(&a.input)?;
    check_vertex(&g, a.s)?;
    let mut w = sink(&a.out)?;
    let mut res = Ok(());
    ssrp2(&g, a.s, |d1, d2, t, d| {
        if res.is_ok() {
            res = write_record(&mut w, &SsrpRecord { d1: ends(&g, d1), d2: ends(&g, d2), t, dist: dist_value(d) });
        }
    })?;
    res?;
    w.flush()?;
    Ok(())
}

fn gen(c: GenCmd) -> Result<()> {
    match c {
        GenCmd::Hardness { input, out, map } => {
            let inst = reduce(&load_graph(&input)?)?;
            fs::write(&out, write_graph(&inst.h)).with_context(|| format!("writing {}", out.display()))?;
            let mut text = format!("c s {} t {} N {}\n", inst.s, inst.t, inst.big_n.base);
            text.push_str(&inst.map_text());
            fs::write(&map, text).with_context(|| format!("writing {}", map.display()))?;
        }
        GenCmd::Random { n, extra, wmax, seed, out } => {
            if n < 1 || wmax < 1 {
                bail!(Format("need n >= 1 and wmax >= 1".into()));
            }
            let mut w = sink(&out)?;
            w.write_all(write_graph(&random_connected(n, extra, wmax, seed)).as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> Result<()> {
    if a.seeds == 0 {
        bail!(Format("--seeds must be at least 1".into()));
    }
    let mut w = sink(&a.out)?;
    let mut res = Ok(());
    let sum = verify::run(a.suite, a.n, a.seeds, |r| {
        if res.is_ok() && (!a.mismatches_only || !r.matched) {
            res = write_record(&mut w, r);
        }
    })?;
    res?;
    w.flush()?;
    eprintln!("{}", serde_json::to_string(&sum)?);
    if !sum.passed() {
        bail!(Mismatch(format!("{} mismatches, {} invariant violations", sum.mismatches, sum.invariant_violations)));
    }
    Ok(())
}

fn bench(a: BenchArgs) -> Result<()> {
    let report = scaling::measure(a.suite, &a.sizes, a.reps, a.seed, |r| {
        eprintln!("n {} median {:.4}s outputs {}", r.n, r.median_seconds, r.outputs);
    })
    .map_err(|e| anyhow!(Format(e.to_string())))?;
    let mut w = sink(&a.out)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}
