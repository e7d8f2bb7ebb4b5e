//! Executable axiom checkers for DSF instances. Every check is
//! instance-level: it tests the axiom's condition on one concrete profile,
//! with universal quantifiers over symmetries bounded by a budget.

mod search;
mod theorems;

pub use search::{
    exhaustive_profiles, random_profiles, search_counterexample, GeneratorSpec, SearchResult,
};
pub use theorems::{
    verify_mutual_exclusion, verify_theorem_1, verify_theorem_2, verify_theorem_3,
    CandidateRejection, TheoremCertificate,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsf::Dsf;
use crate::error::{Error, Result};
use crate::profile::{AgentId, Profile};

/// The ten normative properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomId {
    Anonymity,
    Neutrality,
    Uniformity,
    ProfileUnanimity,
    PositionUnanimity,
    WeakPositionUnanimity,
    UniformReinforcement,
    CloneConsistency,
    InversionInvariance,
    ParetoEfficiency,
}

impl AxiomId {
    pub const ALL: [AxiomId; 10] = [
        AxiomId::Anonymity,
        AxiomId::Neutrality,
        AxiomId::Uniformity,
        AxiomId::ProfileUnanimity,
        AxiomId::PositionUnanimity,
        AxiomId::WeakPositionUnanimity,
        AxiomId::UniformReinforcement,
        AxiomId::CloneConsistency,
        AxiomId::InversionInvariance,
        AxiomId::ParetoEfficiency,
    ];

    pub fn parse(name: &str) -> Result<AxiomId> {
        AxiomId::ALL
            .iter()
            .copied()
            .find(|a| a.name() == name)
            .ok_or_else(|| Error::InvalidScheme(format!("unknown axiom `{name}`")))
    }

    pub fn name(&self) -> &'static str {
        match self {
            AxiomId::Anonymity => "anonymity",
            AxiomId::Neutrality => "neutrality",
            AxiomId::Uniformity => "uniformity",
            AxiomId::ProfileUnanimity => "profile-unanimity",
            AxiomId::PositionUnanimity => "position-unanimity",
            AxiomId::WeakPositionUnanimity => "weak-position-unanimity",
            AxiomId::UniformReinforcement => "uniform-reinforcement",
            AxiomId::CloneConsistency => "clone-consistency",
            AxiomId::InversionInvariance => "inversion-invariance",
            AxiomId::ParetoEfficiency => "pareto-efficiency",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Violation,
    /// The axiom's hypothesis is vacuous on this profile.
    Inapplicable,
}

/// A replayable violation record: re-running the same check on `profile`
/// reproduces the outcome.
#[derive(Debug, Clone)]
pub struct Witness {
    pub profile: Profile,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    /// False when a quantifier budget forced sampling instead of a full
    /// sweep; a Pass is then only pass-within-budget.
    pub exhaustive: bool,
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    fn pass(exhaustive: bool) -> Self {
        CheckOutcome { status: CheckStatus::Pass, exhaustive, witness: None }
    }

    fn inapplicable() -> Self {
        CheckOutcome { status: CheckStatus::Inapplicable, exhaustive: true, witness: None }
    }

    fn violation(profile: &Profile, detail: String) -> Self {
        CheckOutcome {
            status: CheckStatus::Violation,
            exhaustive: true,
            witness: Some(Witness { profile: profile.clone(), detail }),
        }
    }

    pub fn is_violation(&self) -> bool {
        self.status == CheckStatus::Violation
    }
}

/// Quantifier budgets for the symmetry axioms.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Full agent-permutation sweep while n! stays at or below this.
    pub max_agent_sweep: usize,
    /// Full proposal-permutation sweep while m! stays at or below this.
    pub max_proposal_sweep: usize,
    /// Permutations sampled once a sweep exceeds its budget.
    pub sample_count: usize,
    pub seed: u64,
    /// Copies of each ranking in the uniform profile added by the
    /// uniform-reinforcement check.
    pub reinforcement_k: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_agent_sweep: 720,     // n <= 6
            max_proposal_sweep: 120,  // m <= 5
            sample_count: 200,
            seed: 0,
            reinforcement_k: 1,
        }
    }
}

fn factorial_capped(k: usize, cap: usize) -> usize {
    let mut f: usize = 1;
    for i in 2..=k {
        f = f.saturating_mul(i);
        if f > cap {
            return f;
        }
    }
    f
}

fn set_to_string(profile: &Profile, set: &BTreeSet<usize>) -> String {
    set.iter()
        .map(|&x| profile.proposals().name(x).to_string())
        .join(",")
}

/// Checks one axiom for one DSF instance on one profile.
pub fn check_axiom(
    dsf: &Dsf,
    axiom: AxiomId,
    profile: &Profile,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    match axiom {
        AxiomId::Anonymity => check_anonymity(dsf, profile, opts),
        AxiomId::Neutrality => check_neutrality(dsf, profile, opts),
        AxiomId::Uniformity => check_uniformity(dsf, profile),
        AxiomId::ProfileUnanimity => check_profile_unanimity(dsf, profile),
        AxiomId::PositionUnanimity => check_position_unanimity(dsf, profile, false),
        AxiomId::WeakPositionUnanimity => check_position_unanimity(dsf, profile, true),
        AxiomId::UniformReinforcement => check_uniform_reinforcement(dsf, profile, opts),
        AxiomId::CloneConsistency => check_clone_consistency(dsf, profile),
        AxiomId::InversionInvariance => check_inversion_invariance(dsf, profile),
        AxiomId::ParetoEfficiency => check_pareto_efficiency(dsf, profile),
    }
}

fn agent_permutations(
    agents: &[AgentId],
    opts: &CheckOptions,
) -> (Vec<BTreeMap<AgentId, AgentId>>, bool) {
    let n = agents.len();
    if factorial_capped(n, opts.max_agent_sweep) <= opts.max_agent_sweep {
        let perms = agents
            .iter()
            .copied()
            .permutations(n)
            .map(|image| agents.iter().copied().zip(image).collect())
            .collect();
        (perms, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let perms = (0..opts.sample_count)
            .map(|_| {
                let mut image = agents.to_vec();
                image.shuffle(&mut rng);
                agents.iter().copied().zip(image).collect()
            })
            .collect();
        (perms, false)
    }
}

fn proposal_permutations(m: usize, opts: &CheckOptions) -> (Vec<Vec<usize>>, bool) {
    if factorial_capped(m, opts.max_proposal_sweep) <= opts.max_proposal_sweep {
        ((0..m).permutations(m).collect(), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let perms = (0..opts.sample_count)
            .map(|_| {
                let mut sigma: Vec<usize> = (0..m).collect();
                sigma.shuffle(&mut rng);
                sigma
            })
            .collect();
        (perms, false)
    }
}

fn check_anonymity(dsf: &Dsf, profile: &Profile, opts: &CheckOptions) -> Result<CheckOutcome> {
    let baseline = dsf.select(profile)?;
    let agents: Vec<AgentId> = profile.agents().collect();
    let (perms, exhaustive) = agent_permutations(&agents, opts);
    for sigma in perms {
        let permuted = profile.apply_agent_bijection(&sigma)?;
        let selection = dsf.select(&permuted)?;
        if selection != baseline {
            return Ok(CheckOutcome::violation(
                profile,
                format!(
                    "agent permutation changed the selection: {} vs {}",
                    set_to_string(profile, &baseline),
                    set_to_string(profile, &selection)
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(exhaustive))
}

fn check_neutrality(dsf: &Dsf, profile: &Profile, opts: &CheckOptions) -> Result<CheckOutcome> {
    let baseline = dsf.select(profile)?;
    let (perms, exhaustive) = proposal_permutations(profile.m(), opts);
    for sigma in perms {
        let permuted = profile.apply_proposal_permutation(&sigma)?;
        let selection = dsf.select(&permuted)?;
        let expected: BTreeSet<usize> = baseline.iter().map(|&x| sigma[x]).collect();
        if selection != expected {
            return Ok(CheckOutcome::violation(
                profile,
                format!(
                    "proposal permutation {sigma:?}: got {}, expected {}",
                    set_to_string(profile, &selection),
                    set_to_string(profile, &expected)
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(exhaustive))
}

fn check_uniformity(dsf: &Dsf, profile: &Profile) -> Result<CheckOutcome> {
    if !profile.is_perfectly_uniform() {
        return Ok(CheckOutcome::inapplicable());
    }
    let selection = dsf.select(profile)?;
    if selection.len() == profile.m() {
        Ok(CheckOutcome::pass(true))
    } else {
        Ok(CheckOutcome::violation(
            profile,
            format!(
                "perfectly uniform profile selected {} instead of all proposals",
                set_to_string(profile, &selection)
            ),
        ))
    }
}

fn check_profile_unanimity(dsf: &Dsf, profile: &Profile) -> Result<CheckOutcome> {
    if !profile.is_unanimous() {
        return Ok(CheckOutcome::inapplicable());
    }
    let selection = dsf.select(profile)?;
    if selection.len() == profile.m() {
        Ok(CheckOutcome::pass(true))
    } else {
        Ok(CheckOutcome::violation(
            profile,
            format!(
                "unanimous profile selected {} instead of all proposals",
                set_to_string(profile, &selection)
            ),
        ))
    }
}

fn check_position_unanimity(dsf: &Dsf, profile: &Profile, weak: bool) -> Result<CheckOutcome> {
    if !weak && profile.is_unanimous() {
        // The axiom exempts unanimous profiles.
        return Ok(CheckOutcome::inapplicable());
    }
    let fixed = profile.fixed_position_proposals();
    if fixed.is_empty() {
        return Ok(CheckOutcome::inapplicable());
    }
    let selection = dsf.select(profile)?;
    if weak && selection.len() == profile.m() {
        return Ok(CheckOutcome::pass(true));
    }
    for (x, pos) in fixed {
        if selection.contains(&x) {
            return Ok(CheckOutcome::violation(
                profile,
                format!(
                    "proposal {} sits at position {} throughout yet was selected ({})",
                    profile.proposals().name(x),
                    pos,
                    set_to_string(profile, &selection)
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(true))
}

fn check_uniform_reinforcement(
    dsf: &Dsf,
    profile: &Profile,
    opts: &CheckOptions,
) -> Result<CheckOutcome> {
    let baseline = dsf.select(profile)?;
    let fresh_id = profile.agents().max().map_or(0, |id| id + 1);
    let uniform =
        Profile::perfectly_uniform(profile.proposals().clone(), opts.reinforcement_k, fresh_id);
    let reinforced = profile.union(&uniform)?;
    let selection = dsf.select(&reinforced)?;
    if selection == baseline {
        Ok(CheckOutcome::pass(true))
    } else {
        Ok(CheckOutcome::violation(
            profile,
            format!(
                "selection changed after adding a uniform profile (k={}): {} vs {}",
                opts.reinforcement_k,
                set_to_string(profile, &baseline),
                set_to_string(profile, &selection)
            ),
        ))
    }
}

fn check_clone_consistency(dsf: &Dsf, profile: &Profile) -> Result<CheckOutcome> {
    let m = profile.m();
    let mut clones = vec![vec![false; m]; m];
    let mut any_clone_pair = false;
    for x in 0..m {
        for y in x + 1..m {
            if profile.are_clones(x, y)? {
                clones[x][y] = true;
                clones[y][x] = true;
                any_clone_pair = true;
            }
        }
    }
    if !any_clone_pair {
        return Ok(CheckOutcome::inapplicable());
    }
    let selection = dsf.select(profile)?;
    for x in 0..m {
        for clone in 0..m {
            if clone == x || !clones[x][clone] {
                continue;
            }
            for y in 0..m {
                if y == x || y == clone || clones[x][y] {
                    continue;
                }
                if selection.contains(&x) && selection.contains(&y) && !selection.contains(&clone) {
                    let names = profile.proposals();
                    return Ok(CheckOutcome::violation(
                        profile,
                        format!(
                            "{} and {} selected, but {}'s clone {} is not",
                            names.name(x),
                            names.name(y),
                            names.name(x),
                            names.name(clone)
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::pass(true))
}

fn check_inversion_invariance(dsf: &Dsf, profile: &Profile) -> Result<CheckOutcome> {
    let baseline = dsf.select(profile)?;
    let inverted = dsf.select(&profile.invert())?;
    if baseline == inverted {
        Ok(CheckOutcome::pass(true))
    } else {
        Ok(CheckOutcome::violation(
            profile,
            format!(
                "inversion changed the selection: {} vs {}",
                set_to_string(profile, &baseline),
                set_to_string(profile, &inverted)
            ),
        ))
    }
}

fn check_pareto_efficiency(dsf: &Dsf, profile: &Profile) -> Result<CheckOutcome> {
    let m = profile.m();
    let mut dominated = Vec::new();
    for y in 0..m {
        for x in 0..m {
            if x != y && profile.pareto_dominates(x, y)? {
                dominated.push(y);
                break;
            }
        }
    }
    if dominated.is_empty() {
        return Ok(CheckOutcome::inapplicable());
    }
    let selection = dsf.select(profile)?;
    for y in dominated {
        if selection.contains(&y) {
            return Ok(CheckOutcome::violation(
                profile,
                format!(
                    "Pareto-dominated proposal {} was selected ({})",
                    profile.proposals().name(y),
                    set_to_string(profile, &selection)
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(true))
}
