//! Tiebreak installation and uniqueness verification.

use crate::error::{Error, Result};
use crate::graph::{dijkstra, EdgeMask, Graph};
use crate::weight::{tiebreak, Weight, TIE_RANGE};

/// Resampling attempts before giving up.
pub const MAX_ATTEMPTS: u32 = 8;
/// Single-edge removals checked per attempt.
pub const REMOVAL_SAMPLE: usize = 32;

/// Copy of `g` whose every edge carries the tiebreak derived from `seed`.
pub fn with_tiebreaks(g: &Graph, seed: u64) -> Graph {
    let mut out = Graph::new(g.n());
    for e in g.edges() {
        out.add_edge(e.u, e.v, Weight::new(e.w.base, tiebreak(seed, e.u, e.v))).unwrap();
    }
    out
}

/// Rejects graphs whose composite path sums could overflow.
pub fn check_overflow(g: &Graph) -> Result<()> {
    let n = g.n() as u128 + 1;
    if g.total_base() > u64::MAX as u128 / (4 * n) || (g.n() as u128) * (TIE_RANGE as u128) * 4 > u64::MAX as u128 {
        return Err(Error::Overflow);
    }
    Ok(())
}

/// True if some source sees two equal-length shortest paths, in `g` or in `g`
/// minus one of the sampled edges.
pub fn has_ties(g: &Graph, seed: u64) -> bool {
    let m = g.m();
    let mut masks = vec![None];
    if m > 0 {
        let step = (m / REMOVAL_SAMPLE).max(1);
        let off = (seed as usize) % step;
        for e in (off..m).step_by(step).take(REMOVAL_SAMPLE) {
            masks.push(Some(EdgeMask::from_edges(m, [e])));
        }
    }
    masks.iter().any(|mk| (0..g.n()).any(|s| dijkstra(g, s, mk.as_ref()).tie))
}

/// Installs tiebreaks from `seed`, resampling with `seed + 1, ...` on a tie.
///
/// Returns the graph and the seed that succeeded.
pub fn perturb_and_verify(raw: &Graph, seed: u64) -> Result<(Graph, u64)> {
    check_overflow(raw)?;
    for k in 0..MAX_ATTEMPTS as u64 {
        let s = seed.wrapping_add(k);
        let g = with_tiebreaks(raw, s);
        if !has_ties(&g, s) {
            return Ok((g, s));
        }
    }
    Err(Error::TieUnbreakable(MAX_ATTEMPTS))
}
