//! Finite certificate verifiers for the three impossibility theorems. Each
//! verifier builds the witness profile, enumerates every candidate selection
//! set, and records which constraint rejects it. Constraints are derived
//! from the profile with the library's own predicates, not hardcoded.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::Result;
use crate::indices::{evaluate, ProfileIndex};
use crate::profile::{all_rankings, Profile, ProposalSet, Ranking};
use crate::rat::{format_rat, Rat};

#[derive(Debug, Clone)]
pub struct CandidateRejection {
    /// Candidate selection set, by proposal label.
    pub candidate: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct TheoremCertificate {
    pub theorem: String,
    pub witnesses: Vec<Profile>,
    pub rejections: Vec<CandidateRejection>,
    pub notes: Vec<String>,
    /// True when every candidate was rejected (the impossibility stands).
    pub holds: bool,
}

fn nonempty_subsets(m: usize) -> Vec<BTreeSet<usize>> {
    (1..(1u32 << m))
        .map(|mask| (0..m).filter(|&x| mask >> x & 1 == 1).collect())
        .collect()
}

fn labels(profile: &Profile, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter()
        .map(|&x| profile.proposals().name(x).to_string())
        .collect()
}

/// Pareto Efficiency is incompatible with Weak Position Unanimity: on a
/// profile with one unanimous-top proposal over two opposed tails, every
/// candidate selection breaks one of the two constraints.
pub fn verify_theorem_1() -> Result<TheoremCertificate> {
    let m = 3;
    // a > b > c and a > c > b: a unanimously on top, tails reversed.
    let witness = Profile::from_letter_rows(m, &["abc", "acb"])?;

    let dominated: Vec<usize> = (0..m)
        .filter(|&y| (0..m).any(|x| x != y && witness.pareto_dominates(x, y).unwrap_or(false)))
        .collect();
    let fixed: Vec<usize> = witness
        .fixed_position_proposals()
        .into_iter()
        .map(|(x, _)| x)
        .collect();

    let mut rejections = Vec::new();
    let mut holds = true;
    for candidate in nonempty_subsets(m) {
        let reason = if let Some(&y) = dominated.iter().find(|y| candidate.contains(y)) {
            format!(
                "Pareto Efficiency: dominated proposal {} selected",
                witness.proposals().name(y)
            )
        } else if let Some(&x) = fixed
            .iter()
            .find(|x| candidate.contains(x) && candidate.len() != m)
        {
            format!(
                "Weak Position Unanimity: fixed-position proposal {} selected without the full set",
                witness.proposals().name(x)
            )
        } else {
            holds = false;
            "NOT REJECTED".to_string()
        };
        rejections.push(CandidateRejection { candidate: labels(&witness, &candidate), reason });
    }

    Ok(TheoremCertificate {
        theorem: "thm1: no DSF satisfies Pareto Efficiency and Weak Position Unanimity (m >= 3)"
            .into(),
        witnesses: vec![witness],
        notes: vec![format!("all {} nonempty candidate selections rejected", (1 << m) - 1)],
        rejections,
        holds,
    })
}

fn polarised_pair(m: usize) -> Profile {
    let forward: Vec<usize> = (0..m).collect();
    let backward: Vec<usize> = (0..m).rev().collect();
    let proposals = ProposalSet::lettered(m);
    Profile::new(
        proposals,
        vec![
            (0, Ranking::new(forward).expect("identity order")),
            (1, Ranking::new(backward).expect("reversed order")),
        ],
    )
    .expect("two agents")
}

/// Any profile whose move-to-top images are all proposal-relabelings of one
/// another forces a neutral index to value them identically; the middle
/// proposal then cannot be excluded, contradicting Position Unanimity.
pub fn verify_theorem_2() -> Result<TheoremCertificate> {
    let mut witnesses = Vec::new();
    let mut notes = Vec::new();
    let mut holds = true;

    for m in [3usize, 5] {
        let witness = polarised_pair(m);
        let delta = ProfileIndex::AvgKendallTau;

        let values: Vec<Rat> = (0..m)
            .map(|x| Ok(evaluate(&delta, witness.move_to_top(x)?.as_sub())))
            .collect::<Result<_>>()?;
        let all_equal = values.windows(2).all(|w| w[0] == w[1]);

        // The neutrality mechanism itself: each topped profile is a
        // proposal-relabeling of the first one, up to an agent bijection.
        let base = witness.move_to_top(0)?;
        let relabelings_exist = (1..m).all(|x| {
            let target = witness
                .move_to_top(x)
                .expect("x < m")
                .canonical_form();
            all_rankings(m).iter().any(|perm| {
                base.apply_proposal_permutation(perm.order())
                    .expect("permutation")
                    .canonical_form()
                    == target
            })
        });

        let middle = m.div_ceil(2) - 1; // 0-based index of the ceil(m/2)-th proposal
        let is_fixed = witness
            .fixed_position_proposals()
            .iter()
            .any(|&(x, _)| x == middle);

        // Equal values mean selection = X, so the middle proposal is
        // selected even though its position is unanimous.
        let violated = all_equal && is_fixed && !witness.is_unanimous();
        holds &= all_equal && relabelings_exist && violated;

        notes.push(format!(
            "m={m}: delta(R^x) = [{}], all equal: {all_equal}; topped profiles mutually \
             relabelable: {relabelings_exist}; middle proposal {} fixed in position and \
             necessarily selected: {violated}",
            values.iter().map(format_rat).join(", "),
            witness.proposals().name(middle),
        ));
        witnesses.push(witness);
    }

    Ok(TheoremCertificate {
        theorem:
            "thm2: no profile-index-based DSF with a neutral index satisfies Position Unanimity \
             (m >= 3)"
                .into(),
        witnesses,
        rejections: Vec::new(),
        notes,
        holds,
    })
}

/// Anonymity + Neutrality + Clone Consistency + Position Unanimity admit no
/// selection on (abc, cba): every one of the 7 candidates fails a constraint.
pub fn verify_theorem_3() -> Result<TheoremCertificate> {
    let witness = Profile::from_letter_rows(3, &["abc", "cba"])?;
    let (a, b, c) = (0usize, 1usize, 2usize);

    // The a<->c swap maps R to an agent permutation of itself, so by
    // Anonymity + Neutrality a and c must be treated alike. Verified, not
    // assumed:
    let swap = [c, b, a];
    let swap_is_symmetry =
        witness.apply_proposal_permutation(&swap)?.canonical_form() == witness.canonical_form();

    let fixed: Vec<usize> = witness
        .fixed_position_proposals()
        .into_iter()
        .map(|(x, _)| x)
        .collect();
    let clone_pair = |x: usize, y: usize| witness.are_clones(x, y).unwrap_or(false);

    let mut rejections = Vec::new();
    let mut holds = swap_is_symmetry;
    for candidate in nonempty_subsets(3) {
        let reason = if candidate.contains(&a) != candidate.contains(&c) {
            "Anonymity+Neutrality: the a<->c symmetry requires both or neither of a and c"
                .to_string()
        } else if let Some(&x) = fixed.iter().find(|x| candidate.contains(x)) {
            format!(
                "Position Unanimity: fixed-position proposal {} selected",
                witness.proposals().name(x)
            )
        } else if let Some((x, clone, y)) = (0..3)
            .cartesian_product(0..3)
            .cartesian_product(0..3)
            .map(|((x, clone), y)| (x, clone, y))
            .find(|&(x, clone, y)| {
                x != clone
                    && x != y
                    && clone != y
                    && clone_pair(x, clone)
                    && !clone_pair(x, y)
                    && candidate.contains(&x)
                    && candidate.contains(&y)
                    && !candidate.contains(&clone)
            })
        {
            let names = witness.proposals();
            format!(
                "Clone Consistency: {} and {} selected but {}'s clone {} is not",
                names.name(x),
                names.name(y),
                names.name(x),
                names.name(clone)
            )
        } else {
            holds = false;
            "NOT REJECTED".to_string()
        };
        rejections.push(CandidateRejection { candidate: labels(&witness, &candidate), reason });
    }

    Ok(TheoremCertificate {
        theorem: "thm3: no DSF satisfies Anonymity, Neutrality, Clone Consistency, and Position \
                  Unanimity (m >= 3)"
            .into(),
        witnesses: vec![witness],
        notes: vec![format!(
            "a<->c swap verified as an agent permutation of the witness: {swap_is_symmetry}"
        )],
        rejections,
        holds,
    })
}

/// Inversion Invariance and Pareto Efficiency exclude each other: on the
/// 1-agent profile a > b, Inversion Invariance makes the selection common to
/// the profile and its inversion, and no common selection survives Pareto
/// Efficiency on both sides.
pub fn verify_mutual_exclusion() -> Result<TheoremCertificate> {
    let witness = Profile::from_letter_rows(2, &["ab"])?;
    let inverted = witness.invert();

    let dominated = |profile: &Profile| -> Vec<usize> {
        (0..2)
            .filter(|&y| (0..2).any(|x| x != y && profile.pareto_dominates(x, y).unwrap_or(false)))
            .collect()
    };
    let (dom_fwd, dom_inv) = (dominated(&witness), dominated(&inverted));

    let mut rejections = Vec::new();
    let mut holds = true;
    // Inversion Invariance pins the two selections to a single common set.
    for candidate in nonempty_subsets(2) {
        let reason = if let Some(&y) = dom_fwd.iter().find(|y| candidate.contains(y)) {
            format!(
                "Pareto Efficiency on the profile: dominated proposal {} selected",
                witness.proposals().name(y)
            )
        } else if let Some(&y) = dom_inv.iter().find(|y| candidate.contains(y)) {
            format!(
                "Pareto Efficiency on the inversion: dominated proposal {} selected",
                witness.proposals().name(y)
            )
        } else {
            holds = false;
            "NOT REJECTED".to_string()
        };
        rejections.push(CandidateRejection { candidate: labels(&witness, &candidate), reason });
    }

    Ok(TheoremCertificate {
        theorem: "mutual exclusion: no DSF satisfies Inversion Invariance and Pareto Efficiency"
            .into(),
        witnesses: vec![witness, inverted],
        notes: vec![
            "Inversion Invariance forces one common selection for the profile and its inversion"
                .into(),
        ],
        rejections,
        holds,
    })
}
