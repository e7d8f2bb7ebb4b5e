//! Profile index functions: whole-profile diversity/polarisation scores
//! feeding the index-based DSF.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::profile::{Ranking, SubProfile};
use crate::rat::{format_rat, parse_rat, rat, Rat};

/// An index function mapping profiles to exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileIndex {
    /// Mean Kendall tau distance over all unordered agent pairs.
    AvgKendallTau,
    /// The constant index; induces the trivial always-everything DSF.
    Constant(Rat),
}

impl ProfileIndex {
    /// Declared neutrality flag (invariance under proposal permutations).
    /// Spot-verified by randomized permutation tests, not proved.
    pub fn is_neutral(&self) -> bool {
        match self {
            ProfileIndex::AvgKendallTau => true,
            ProfileIndex::Constant(_) => true,
        }
    }

    /// CLI grammar: `kendall`, `const:<p/q>`.
    pub fn parse(spec: &str) -> Result<ProfileIndex> {
        match spec {
            "kendall" => Ok(ProfileIndex::AvgKendallTau),
            _ => {
                if let Some(body) = spec.strip_prefix("const:") {
                    Ok(ProfileIndex::Constant(parse_rat(body)?))
                } else {
                    Err(Error::InvalidScheme(spec.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for ProfileIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileIndex::AvgKendallTau => write!(f, "kendall"),
            ProfileIndex::Constant(c) => write!(f, "const:{}", format_rat(c)),
        }
    }
}

/// Number of unordered proposal pairs on which the two rankings disagree.
pub fn kendall_tau(r1: &Ranking, r2: &Ranking) -> Result<u64> {
    if r1.m() != r2.m() {
        return Err(Error::ProposalSetMismatch);
    }
    let m = r1.m();
    let mut discordant = 0;
    for x in 0..m {
        for y in x + 1..m {
            if r1.prefers(x, y) != r2.prefers(x, y) {
                discordant += 1;
            }
        }
    }
    Ok(discordant)
}

/// delta(R). Single-agent profiles have no agent pairs; their average
/// Kendall tau distance is defined as 0.
pub fn evaluate(index: &ProfileIndex, profile: &SubProfile) -> Rat {
    match index {
        ProfileIndex::Constant(c) => c.clone(),
        ProfileIndex::AvgKendallTau => {
            let n = profile.n();
            if n < 2 {
                return Rat::zero();
            }
            let entries = profile.entries();
            let mut total = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    total += kendall_tau(&entries[i].1, &entries[j].1)
                        .expect("rankings in one profile share m");
                }
            }
            rat(total as i64) / rat((n * (n - 1) / 2) as i64)
        }
    }
}
