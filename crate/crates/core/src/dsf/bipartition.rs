//! Enumeration of unordered electorate bipartitions {C, complement} with both
//! sides nonempty. Agent 0 (by entry index) is pinned to the C side, so each
//! pair appears exactly once; the walk follows a Gray code over the remaining
//! agents, flipping one agent per step for incremental tallies.

use crate::error::{Error, Result};

pub const DEFAULT_EXACT_CAP: usize = 20;

/// Hard limit imposed by the u64 coalition masks.
pub const MASK_WIDTH_CAP: usize = 63;

/// One step of the Gray walk. `mask` has bit i set iff entry i is in C
/// (bit 0 always set). The full-electorate mask is included in the walk so
/// incremental state stays consistent; it is not a valid bipartition.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GrayStep {
    pub mask: u64,
    /// Entry index toggled since the previous step, and whether it joined C.
    pub flipped: Option<(usize, bool)>,
}

pub(crate) struct GrayWalk {
    n: usize,
    i: u64,
    steps: u64,
    mask: u64,
}

impl GrayWalk {
    pub fn new(n: usize) -> Self {
        debug_assert!((2..=MASK_WIDTH_CAP).contains(&n));
        GrayWalk { n, i: 0, steps: 1u64 << (n - 1), mask: 1 }
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

impl Iterator for GrayWalk {
    type Item = GrayStep;

    fn next(&mut self) -> Option<GrayStep> {
        if self.i >= self.steps {
            return None;
        }
        let flipped = if self.i == 0 {
            None
        } else {
            // Between gray(i-1) and gray(i) exactly bit trailing_zeros(i)
            // flips; shifted by one because agent 0 is pinned.
            let bit = self.i.trailing_zeros() as usize + 1;
            self.mask ^= 1u64 << bit;
            Some((bit, self.mask >> bit & 1 == 1))
        };
        self.i += 1;
        Some(GrayStep { mask: self.mask, flipped })
    }
}

/// All 2^(n-1) - 1 unordered bipartitions of `0..n` as (C, complement) mask
/// pairs, in deterministic Gray-code order.
pub fn enumerate_bipartitions(n: usize, cap: usize) -> Result<impl Iterator<Item = (u64, u64)>> {
    if n > MASK_WIDTH_CAP {
        return Err(Error::ElectorateTooLarge(n));
    }
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    let full = (1u64 << n) - 1;
    let walk = if n >= 2 { Some(GrayWalk::new(n)) } else { None };
    Ok(walk
        .into_iter()
        .flatten()
        .filter(move |step| step.mask != full)
        .map(move |step| (step.mask, full & !step.mask)))
}
