//! Text formats: graphs (`p n m` / `e u v w` / `c ...`) and update timelines.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::weight::Weight;
use std::fmt::Write as _;

/// One timeline update, addressed by endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Update {
    Insert(VertexId, VertexId, u64),
    Delete(VertexId, VertexId),
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_weight(tok: &str, line: usize, scale: Option<u64>) -> Result<u64> {
    if let Ok(w) = tok.parse::<u64>() {
        return match scale {
            Some(s) => w.checked_mul(s).ok_or(Error::Overflow),
            None => Ok(w),
        };
    }
    let f: f64 = tok.parse().map_err(|_| perr(line, format!("bad weight `{tok}`")))?;
    let Some(s) = scale else {
        return Err(perr(line, format!("non-integer weight `{tok}` needs a scale factor")));
    };
    let x = f * s as f64;
    if !(x >= 0.0) || (x - x.round()).abs() > 1e-6 || x > u64::MAX as f64 {
        return Err(perr(line, format!("weight `{tok}` is not an integer after scaling by {s}")));
    }
    Ok(x.round() as u64)
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

fn parse_lines<'a, I>(lines: I, scale: Option<u64>, timeline: bool) -> Result<(Graph, Vec<Update>)>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut g: Option<Graph> = None;
    let mut declared_m = 0;
    let mut ups = Vec::new();
    for (ln, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap_or_default();
        match tag {
            "p" => {
                if g.is_some() {
                    return Err(perr(ln, "duplicate header"));
                }
                let n = num(it.next(), ln, "vertex count")?;
                declared_m = num(it.next(), ln, "edge count")?;
                g = Some(Graph::new(n));
            }
            "e" => {
                let g = g.as_mut().ok_or_else(|| perr(ln, "edge before header"))?;
                let u = num(it.next(), ln, "endpoint")?;
                let v = num(it.next(), ln, "endpoint")?;
                let w = parse_weight(it.next().ok_or_else(|| perr(ln, "missing weight"))?, ln, scale)?;
                g.add_edge(u, v, Weight::new(w, 0)).map_err(|e| perr(ln, e.to_string()))?;
            }
            "+" | "-" if timeline => {
                let gr = g.as_ref().ok_or_else(|| perr(ln, "update before header"))?;
                let u = num(it.next(), ln, "endpoint")?;
                let v = num(it.next(), ln, "endpoint")?;
                for x in [u, v] {
                    if x >= gr.n() {
                        return Err(perr(ln, format!("vertex {x} out of range")));
                    }
                }
                if u == v {
                    return Err(perr(ln, "self-loop"));
                }
                if tag == "+" {
                    let w = parse_weight(it.next().ok_or_else(|| perr(ln, "missing weight"))?, ln, scale)?;
                    ups.push(Update::Insert(u, v, w));
                } else {
                    ups.push(Update::Delete(u, v));
                }
            }
            _ => return Err(perr(ln, format!("unknown line tag `{tag}`"))),
        }
    }
    let g = g.ok_or_else(|| perr(0, "missing `p` header"))?;
    if g.m() != declared_m {
        return Err(perr(0, format!("header declares {declared_m} edges, found {}", g.m())));
    }
    Ok((g, ups))
}

/// Parses a graph; weights get tiebreak 0 until perturbed.
pub fn parse_graph(text: &str, scale: Option<u64>) -> Result<Graph> {
    parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)), scale, false).map(|(g, _)| g)
}

/// Parses a graph block followed by `+ u v w` / `- u v` lines.
pub fn parse_timeline(text: &str, scale: Option<u64>) -> Result<(Graph, Vec<Update>)> {
    parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)), scale, true)
}

/// Writes base weights only.
pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(s, "e {} {} {}", e.u, e.v, e.w.base).unwrap();
    }
    s
}

pub fn write_timeline(g: &Graph, ups: &[Update]) -> String {
    let mut s = write_graph(g);
    for u in ups {
        match *u {
            Update::Insert(a, b, w) => writeln!(s, "+ {a} {b} {w}").unwrap(),
            Update::Delete(a, b) => writeln!(s, "- {a} {b}").unwrap(),
        }
    }
    s
}
