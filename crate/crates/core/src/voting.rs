//! Social choice functions returning nonempty winner sets. Only
//! positional-score rules ship; anything honouring the nonempty-winners
//! contract can be plugged in through [`Scf::PositionalRule`] vectors.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::profile::SubProfile;
use crate::rat::{rat, Rat};
use crate::scoring::{score, ScoringScheme};

/// A voting rule F. Winner sets are computed from exact rational totals,
/// so ties are deterministic and kept as sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scf {
    BordaRule,
    PluralityRule,
    PositionalRule(ScoringScheme),
}

impl Scf {
    fn scheme(&self) -> ScoringScheme {
        match self {
            Scf::BordaRule => ScoringScheme::Borda,
            Scf::PluralityRule => ScoringScheme::Plurality,
            Scf::PositionalRule(s) => s.clone(),
        }
    }

    /// CLI grammar: `borda`, `plurality`, `vec:...`, `nvec:...`.
    pub fn parse(spec: &str) -> Result<Scf> {
        match spec {
            "borda" => Ok(Scf::BordaRule),
            "plurality" => Ok(Scf::PluralityRule),
            _ => {
                let scheme = ScoringScheme::parse(spec)?;
                if scheme.positional_vector(scheme_len_hint(&scheme))?.is_none() {
                    return Err(Error::InvalidScheme(format!(
                        "SCF must be a positional rule, got `{spec}`"
                    )));
                }
                Ok(Scf::PositionalRule(scheme))
            }
        }
    }
}

// positional_vector wants an m; for explicit vectors their own length is the
// only length they accept.
fn scheme_len_hint(scheme: &ScoringScheme) -> usize {
    match scheme {
        ScoringScheme::Positional(v) | ScoringScheme::NormalizedPositional(v) => v.len(),
        _ => 1,
    }
}

impl fmt::Display for Scf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scf::BordaRule => write!(f, "borda"),
            Scf::PluralityRule => write!(f, "plurality"),
            Scf::PositionalRule(s) => write!(f, "{s}"),
        }
    }
}

/// F(sub): the set of proposals with maximal total score.
pub fn winners(scf: &Scf, sub: &SubProfile) -> Result<BTreeSet<usize>> {
    if sub.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    let scheme = scf.scheme();
    let mut best: Option<Rat> = None;
    let mut winning = BTreeSet::new();
    for x in 0..sub.m() {
        let s = score(&scheme, sub, x)?;
        match &best {
            Some(b) if s < *b => {}
            Some(b) if s == *b => {
                winning.insert(x);
            }
            _ => {
                best = Some(s);
                winning = BTreeSet::from([x]);
            }
        }
    }
    Ok(winning)
}

/// [x in F(sub)] / |F(sub)|, with the empty-subprofile convention of 0.
pub fn win_share(scf: &Scf, sub: &SubProfile, x: usize) -> Result<Rat> {
    if sub.is_empty() {
        return Ok(Rat::zero());
    }
    let w = winners(scf, sub)?;
    if w.contains(&x) {
        Ok(rat(1) / rat(w.len() as i64))
    } else {
        Ok(Rat::zero())
    }
}
