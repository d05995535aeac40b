//! Binary snapshots of a built [`Dso`].
//!
//! Layout: the 8-byte magic `FPDSO\0\0\0`, a little-endian `u32` format
//! version, then the bincode encoding of the vertex count, the edge list in
//! id order and the entry table. Shortest path trees are rebuilt on load.
//! The format is not stable across versions.

use crate::dso::{Dso, Table};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight::Weight;
use serde::{Deserialize, Serialize};

pub const MAGIC: [u8; 8] = *b"FPDSO\0\0\0";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Body {
    n: usize,
    edges: Vec<(u32, u32, Weight)>,
    table: Table,
}

pub fn to_bytes(d: &Dso) -> Result<Vec<u8>> {
    let g = d.graph();
    let body = Body {
        n: g.n(),
        edges: g.edges().iter().map(|e| (e.u as u32, e.v as u32, e.w)).collect(),
        table: d.table().clone(),
    };
    let mut out = MAGIC.to_vec();
    out.extend_from_slice(&VERSION.to_le_bytes());
    bincode::serialize_into(&mut out, &body).map_err(|e| Error::Snapshot(e.to_string()))?;
    Ok(out)
}

pub fn from_bytes(bytes: &[u8]) -> Result<Dso> {
    if bytes.len() < 12 || bytes[..8] != MAGIC {
        return Err(Error::Snapshot("not a DSO snapshot".into()));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let body: Body = bincode::deserialize(&bytes[12..]).map_err(|e| Error::Snapshot(e.to_string()))?;
    let mut g = Graph::new(body.n);
    for (u, v, w) in body.edges {
        g.add_edge(u as usize, v as usize, w)?;
    }
    Dso::from_parts(g, body.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_perturbed;

    #[test]
    fn round_trip_answers_identically() {
        let g = random_perturbed(12, 10, 9, 4);
        let d = Dso::build(g.clone()).unwrap();
        let back = from_bytes(&to_bytes(&d).unwrap()).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                for f in 0..g.m() {
                    assert_eq!(back.query_edge_failure(u, v, f), d.query_edge_failure(u, v, f));
                }
            }
        }
        assert_eq!(to_bytes(&back).unwrap(), to_bytes(&d).unwrap());
    }

    #[test]
    fn rejects_foreign_and_future_bytes() {
        assert!(matches!(from_bytes(b"hello"), Err(Error::Snapshot(_))));
        let d = Dso::build(random_perturbed(4, 1, 3, 1)).unwrap();
        let mut b = to_bytes(&d).unwrap();
        b[8] = 9;
        assert!(matches!(from_bytes(&b), Err(Error::Snapshot(_))));
    }
}
