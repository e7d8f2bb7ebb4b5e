//! The five divisiveness selection function families: rank variance, the
//! pairwise scheme of Navarrete et al., score-based and SCF-based expected
//! disagreement over bipartitions, and profile-index-based selection.

mod bipartition;
mod exact;
mod sampling;

pub use bipartition::{enumerate_bipartitions, DEFAULT_EXACT_CAP};
pub use sampling::{estimate_monte_carlo, Estimate};

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::indices::{evaluate, ProfileIndex};
use crate::profile::Profile;
use crate::rat::{rat, Rat};
use crate::scoring::{score, ScoringScheme};
use crate::voting::Scf;

/// How bipartition pairs {C, complement} are weighted or sampled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionScheme {
    /// Weight 1/(2^(n-1) - 1) on each unordered pair with both sides nonempty.
    ExactUniform,
    MonteCarlo { samples: u64, seed: u64 },
}

impl DecompositionScheme {
    /// CLI grammar: `exact` or `mc:20000` (seed supplied separately).
    pub fn parse(spec: &str, seed: u64) -> Result<DecompositionScheme> {
        match spec {
            "exact" => Ok(DecompositionScheme::ExactUniform),
            _ => {
                let samples = spec
                    .strip_prefix("mc:")
                    .and_then(|s| s.parse::<u64>().ok())
                    .filter(|&s| s >= 1)
                    .ok_or_else(|| Error::InvalidScheme(spec.to_string()))?;
                Ok(DecompositionScheme::MonteCarlo { samples, seed })
            }
        }
    }
}

impl fmt::Display for DecompositionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionScheme::ExactUniform => write!(f, "exact"),
            DecompositionScheme::MonteCarlo { samples, seed } => {
                write!(f, "mc:{samples}(seed={seed})")
            }
        }
    }
}

/// Whether the selection takes the largest or the smallest values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Max,
    Min,
}

/// Per-proposal divisiveness values plus the selected (argmax/argmin) set.
#[derive(Debug, Clone)]
pub struct DivisivenessReport {
    pub method: String,
    /// Exact value per proposal; in Monte Carlo mode, the exact sample mean.
    pub values: Vec<Rat>,
    /// Standard errors, present only in Monte Carlo mode.
    pub std_errors: Option<Vec<f64>>,
    pub direction: Direction,
    pub selection: BTreeSet<usize>,
    pub sampling: Option<(u64, u64)>, // (samples, seed)
}

impl DivisivenessReport {
    fn exact(method: String, values: Vec<Rat>, direction: Direction) -> Self {
        let selection = select(&values, direction);
        DivisivenessReport {
            method,
            values,
            std_errors: None,
            direction,
            selection,
            sampling: None,
        }
    }

    fn sampled(method: String, estimates: Vec<Estimate>, samples: u64, seed: u64) -> Self {
        let (values, std_errors): (Vec<Rat>, Vec<f64>) = estimates
            .into_iter()
            .map(|e| (e.mean, e.std_error))
            .unzip();
        let selection = select(&values, Direction::Max);
        DivisivenessReport {
            method,
            values,
            std_errors: Some(std_errors),
            direction: Direction::Max,
            selection,
            sampling: Some((samples, seed)),
        }
    }
}

/// Argmax/argmin over exact values; ties are kept as a set, never broken.
fn select(values: &[Rat], direction: Direction) -> BTreeSet<usize> {
    let best = match direction {
        Direction::Max => values.iter().max(),
        Direction::Min => values.iter().min(),
    };
    match best {
        Some(best) => (0..values.len()).filter(|&x| &values[x] == best).collect(),
        None => BTreeSet::new(),
    }
}

/// Definition: most divisive proposals are those with the highest variance
/// across the positions at which they occur.
pub fn rank_variance_dsf(profile: &Profile) -> DivisivenessReport {
    let n = rat(profile.n() as i64);
    let values = (0..profile.m())
        .map(|x| {
            let positions: Vec<Rat> = profile
                .entries()
                .iter()
                .map(|(_, r)| rat(r.position_of(x) as i64))
                .collect();
            let mean = positions.iter().sum::<Rat>() / n.clone();
            positions
                .iter()
                .map(|p| {
                    let d = p - &mean;
                    &d * &d
                })
                .sum::<Rat>()
                / n.clone()
        })
        .collect();
    DivisivenessReport::exact("rankvar".into(), values, Direction::Max)
}

/// The pairwise DSF of Navarrete et al.: for each rival y, split the
/// electorate into the supporters of x over y and their complement, and
/// average the absolute score differences for x.
pub fn navarrete_dsf(profile: &Profile, scheme: &ScoringScheme) -> Result<DivisivenessReport> {
    let m = profile.m();
    let all_agents = profile.agent_set();
    let values = (0..m)
        .map(|x| {
            if m == 1 {
                return Ok(Rat::zero());
            }
            let mut total = Rat::zero();
            for y in 0..m {
                if y == x {
                    continue;
                }
                let for_x = profile.supporters(x, y)?;
                if for_x.is_empty() || for_x.len() == all_agents.len() {
                    continue; // div(R, x, y) = 0 when a side is empty
                }
                let against: BTreeSet<_> = all_agents.difference(&for_x).copied().collect();
                let sub_for = profile.restrict(&for_x)?;
                let sub_against = profile.restrict(&against)?;
                total += (score(scheme, &sub_for, x)? - score(scheme, &sub_against, x)?).abs();
            }
            Ok(total / rat((m - 1) as i64))
        })
        .collect::<Result<Vec<Rat>>>()?;
    Ok(DivisivenessReport::exact(
        format!("navarrete({scheme})"),
        values,
        Direction::Max,
    ))
}

/// Score-based DSF: expected |score difference| for x across bipartitions.
pub fn score_based_dsf(
    profile: &Profile,
    scheme: &ScoringScheme,
    decomposition: &DecompositionScheme,
    exact_cap: usize,
) -> Result<DivisivenessReport> {
    let method = format!("score({scheme},{decomposition})");
    match decomposition {
        DecompositionScheme::ExactUniform => {
            let values = exact::exact_score_values(profile, scheme, exact_cap)?;
            Ok(DivisivenessReport::exact(method, values, Direction::Max))
        }
        DecompositionScheme::MonteCarlo { samples, seed } => {
            let estimates = estimate_monte_carlo(
                profile,
                |c_mask, comp_mask| {
                    exact::div_score_pair(
                        scheme,
                        &profile.restrict_by_mask(c_mask),
                        &profile.restrict_by_mask(comp_mask),
                    )
                },
                *samples,
                *seed,
            )?;
            Ok(DivisivenessReport::sampled(method, estimates, *samples, *seed))
        }
    }
}

/// SCF-based DSF: expected |win-share difference| for x across bipartitions.
pub fn scf_based_dsf(
    profile: &Profile,
    scf: &Scf,
    decomposition: &DecompositionScheme,
    exact_cap: usize,
) -> Result<DivisivenessReport> {
    let method = format!("scf({scf},{decomposition})");
    match decomposition {
        DecompositionScheme::ExactUniform => {
            let values = exact::exact_scf_values(profile, scf, exact_cap)?;
            Ok(DivisivenessReport::exact(method, values, Direction::Max))
        }
        DecompositionScheme::MonteCarlo { samples, seed } => {
            let estimates = estimate_monte_carlo(
                profile,
                |c_mask, comp_mask| {
                    exact::div_scf_pair(
                        scf,
                        &profile.restrict_by_mask(c_mask),
                        &profile.restrict_by_mask(comp_mask),
                    )
                },
                *samples,
                *seed,
            )?;
            Ok(DivisivenessReport::sampled(method, estimates, *samples, *seed))
        }
    }
}

/// Index-based DSF: argmin over x of delta(R with x moved to the top).
pub fn index_based_dsf(profile: &Profile, index: &ProfileIndex) -> Result<DivisivenessReport> {
    let values = (0..profile.m())
        .map(|x| Ok(evaluate(index, profile.move_to_top(x)?.as_sub())))
        .collect::<Result<Vec<Rat>>>()?;
    Ok(DivisivenessReport::exact(
        format!("index({index})"),
        values,
        Direction::Min,
    ))
}

/// A fully parameterized DSF instance, the unit the axiom lab operates on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dsf {
    RankVariance,
    Navarrete(ScoringScheme),
    ScoreBased {
        scheme: ScoringScheme,
        decomposition: DecompositionScheme,
        exact_cap: usize,
    },
    ScfBased {
        scf: Scf,
        decomposition: DecompositionScheme,
        exact_cap: usize,
    },
    IndexBased(ProfileIndex),
}

impl Dsf {
    pub fn score_based(scheme: ScoringScheme, decomposition: DecompositionScheme) -> Dsf {
        Dsf::ScoreBased { scheme, decomposition, exact_cap: DEFAULT_EXACT_CAP }
    }

    pub fn scf_based(scf: Scf, decomposition: DecompositionScheme) -> Dsf {
        Dsf::ScfBased { scf, decomposition, exact_cap: DEFAULT_EXACT_CAP }
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<DivisivenessReport> {
        match self {
            Dsf::RankVariance => Ok(rank_variance_dsf(profile)),
            Dsf::Navarrete(scheme) => navarrete_dsf(profile, scheme),
            Dsf::ScoreBased { scheme, decomposition, exact_cap } => {
                score_based_dsf(profile, scheme, decomposition, *exact_cap)
            }
            Dsf::ScfBased { scf, decomposition, exact_cap } => {
                scf_based_dsf(profile, scf, decomposition, *exact_cap)
            }
            Dsf::IndexBased(index) => index_based_dsf(profile, index),
        }
    }

    /// The selected set only.
    pub fn select(&self, profile: &Profile) -> Result<BTreeSet<usize>> {
        Ok(self.evaluate(profile)?.selection)
    }
}

impl fmt::Display for Dsf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dsf::RankVariance => write!(f, "rankvar"),
            Dsf::Navarrete(s) => write!(f, "navarrete({s})"),
            Dsf::ScoreBased { scheme, decomposition, .. } => {
                write!(f, "score({scheme},{decomposition})")
            }
            Dsf::ScfBased { scf, decomposition, .. } => write!(f, "scf({scf},{decomposition})"),
            Dsf::IndexBased(i) => write!(f, "index({i})"),
        }
    }
}
