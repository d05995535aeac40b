//! Composite edge weights and saturating path lengths.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

/// Exclusive upper bound of a random tiebreak.
pub const TIE_RANGE: u64 = 1 << 40;

/// Shift used by [`Weight::lifted`].
pub const LIFT: u32 = 64;

/// A weight with a tiebreak channel, added componentwise and compared
/// lexicographically (base first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub base: u64,
    pub tie: u128,
}

impl Weight {
    pub const ZERO: Weight = Weight { base: 0, tie: 0 };

    pub const fn new(base: u64, tie: u64) -> Self {
        Weight { base, tie: tie as u128 }
    }

    pub const fn raw(base: u64, tie: u128) -> Self {
        Weight { base, tie }
    }

    /// Moves the tiebreak into the high half, leaving room for a
    /// secondary tiebreak below it.
    pub const fn lifted(self) -> Self {
        Weight { base: self.base, tie: self.tie << LIFT }
    }

    /// Inverse of [`Weight::lifted`], dropping any secondary tiebreak.
    pub const fn lowered(self) -> Self {
        Weight { base: self.base, tie: self.tie >> LIFT }
    }

    pub fn checked_add(self, o: Weight) -> Option<Weight> {
        Some(Weight { base: self.base.checked_add(o.base)?, tie: self.tie.checked_add(o.tie)? })
    }

    pub fn checked_mul(self, k: u64) -> Option<Weight> {
        Some(Weight { base: self.base.checked_mul(k)?, tie: self.tie.checked_mul(k as u128)? })
    }
}

impl Add for Weight {
    type Output = Weight;
    #[inline]
    fn add(self, o: Weight) -> Weight {
        Weight { base: self.base + o.base, tie: self.tie + o.tie }
    }
}

impl Sub for Weight {
    type Output = Weight;
    #[inline]
    fn sub(self, o: Weight) -> Weight {
        Weight { base: self.base - o.base, tie: self.tie - o.tie }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}e", self.base, self.tie)
    }
}

/// A path length: finite composite weight or unreachable.
///
/// `Fin` orders before `Inf`, and addition saturates at `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dist {
    Fin(Weight),
    Inf,
}

impl Dist {
    pub const ZERO: Dist = Dist::Fin(Weight::ZERO);

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Fin(_))
    }

    #[inline]
    pub fn finite(self) -> Option<Weight> {
        match self {
            Dist::Fin(w) => Some(w),
            Dist::Inf => None,
        }
    }

    /// Base component, or `None` when unreachable.
    pub fn base(self) -> Option<u64> {
        self.finite().map(|w| w.base)
    }

    #[inline]
    pub fn add_w(self, w: Weight) -> Dist {
        match self {
            Dist::Fin(a) => Dist::Fin(a + w),
            Dist::Inf => Dist::Inf,
        }
    }

    pub fn lowered(self) -> Dist {
        match self {
            Dist::Fin(a) => Dist::Fin(a.lowered()),
            Dist::Inf => Dist::Inf,
        }
    }

    /// Subtracts a constant offset; panics if it would underflow a finite value.
    pub fn sub_w(self, w: Weight) -> Dist {
        match self {
            Dist::Fin(a) => Dist::Fin(a - w),
            Dist::Inf => Dist::Inf,
        }
    }
}

impl Add for Dist {
    type Output = Dist;
    #[inline]
    fn add(self, o: Dist) -> Dist {
        match (self, o) {
            (Dist::Fin(a), Dist::Fin(b)) => Dist::Fin(a + b),
            _ => Dist::Inf,
        }
    }
}

impl From<Weight> for Dist {
    fn from(w: Weight) -> Self {
        Dist::Fin(w)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(w) => write!(f, "{w}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}

/// Minimum of two lengths.
#[inline]
pub fn dmin(a: Dist, b: Dist) -> Dist {
    match a.cmp(&b) {
        Ordering::Greater => b,
        _ => a,
    }
}

/// Deterministic tiebreak for the undirected edge `{u, v}` under `seed`.
///
/// Every edge key owns its own ChaCha stream, so the same edge receives the
/// same tiebreak in every graph derived from one seed.
pub fn tiebreak(seed: u64, u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((a as u64) << 32) | b as u64);
    rng.gen_range(1..TIE_RANGE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        assert!(Weight::new(1, 100) < Weight::new(2, 0));
        assert!(Weight::new(2, 1) < Weight::new(2, 3));
        assert_eq!(Weight::new(1, 2) + Weight::new(3, 4), Weight::new(4, 6));
    }

    #[test]
    fn inf_absorbs() {
        let a = Dist::Fin(Weight::new(3, 1));
        assert_eq!(a + Dist::Inf, Dist::Inf);
        assert!(a < Dist::Inf);
        assert_eq!(dmin(Dist::Inf, a), a);
    }

    #[test]
    fn tiebreak_is_symmetric_and_positive() {
        for s in 0..4 {
            let t = tiebreak(s, 3, 9);
            assert_eq!(t, tiebreak(s, 9, 3));
            assert!(t > 0 && t < TIE_RANGE);
        }
        assert_ne!(tiebreak(1, 0, 1), tiebreak(1, 0, 2));
    }
}
