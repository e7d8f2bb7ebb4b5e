//! Cross-checks the library's DSF implementations against deliberately naive
//! reimplementations: direct loops over agents, subsets enumerated as plain
//! bitmasks, scores summed from scratch. The two sides share no code beyond
//! the profile accessors.

use std::collections::BTreeSet;

use divisive_core::axioms::exhaustive_profiles;
use divisive_core::dsf::{
    navarrete_dsf, scf_based_dsf, score_based_dsf, DecompositionScheme, DEFAULT_EXACT_CAP,
};
use divisive_core::profile::Profile;
use divisive_core::rat::{rat, Rat};
use divisive_core::scoring::ScoringScheme;
use divisive_core::voting::Scf;
use num_traits::{Signed, Zero};

/// Borda weight for a 1-based position: m - pos.
fn borda_weight(m: usize, pos: usize) -> Rat {
    rat((m - pos) as i64)
}

/// Naive positional score of x over the agents listed in `coalition`,
/// optionally divided by the coalition size.
fn naive_score(profile: &Profile, coalition: &[u32], x: usize, normalized: bool) -> Rat {
    let m = profile.m();
    let total: Rat = coalition
        .iter()
        .map(|&i| borda_weight(m, profile.position(i, x).unwrap()))
        .sum();
    if normalized {
        total / rat(coalition.len() as i64)
    } else {
        total
    }
}

/// Definition-level pairwise divisiveness: average over y != x of the
/// absolute score gap between the supporters of x over y and of y over x.
fn naive_navarrete(profile: &Profile, x: usize, normalized: bool) -> Rat {
    let m = profile.m();
    if m == 1 {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for y in (0..m).filter(|&y| y != x) {
        let for_x: Vec<u32> = profile
            .agents()
            .filter(|&i| {
                profile.position(i, x).unwrap() < profile.position(i, y).unwrap()
            })
            .collect();
        let for_y: Vec<u32> = profile
            .agents()
            .filter(|&i| !for_x.contains(&i))
            .collect();
        if for_x.is_empty() || for_y.is_empty() {
            continue;
        }
        total += (naive_score(profile, &for_x, x, normalized)
            - naive_score(profile, &for_y, x, normalized))
        .abs();
    }
    total / rat((m - 1) as i64)
}

/// Expected |score(C, x) - score(complement, x)| over all bipartitions with
/// both sides nonempty, every subset enumerated as a plain bitmask. Each
/// unordered pair appears twice in the loop, which cancels in the average.
fn naive_score_based(profile: &Profile, x: usize, normalized: bool) -> Rat {
    let agents: Vec<u32> = profile.agents().collect();
    let n = agents.len();
    if n < 2 {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for mask in 1u64..((1 << n) - 1) {
        let (mut inside, mut outside) = (Vec::new(), Vec::new());
        for (bit, &agent) in agents.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                inside.push(agent);
            } else {
                outside.push(agent);
            }
        }
        total += (naive_score(profile, &inside, x, normalized)
            - naive_score(profile, &outside, x, normalized))
        .abs();
    }
    total / rat(((1u64 << n) - 2) as i64)
}

/// Borda winners of a coalition, tallied from scratch.
fn naive_borda_winners(profile: &Profile, coalition: &[u32]) -> BTreeSet<usize> {
    let m = profile.m();
    let tallies: Vec<Rat> = (0..m)
        .map(|x| naive_score(profile, coalition, x, false))
        .collect();
    let best = tallies.iter().max().unwrap().clone();
    (0..m).filter(|&x| tallies[x] == best).collect()
}

/// Expected |win_share(C, x) - win_share(complement, x)| with shares of
/// 1/|winners| for winners and 0 otherwise.
fn naive_scf_based(profile: &Profile, x: usize) -> Rat {
    let agents: Vec<u32> = profile.agents().collect();
    let n = agents.len();
    if n < 2 {
        return Rat::zero();
    }
    let share = |coalition: &[u32]| -> Rat {
        let winners = naive_borda_winners(profile, coalition);
        if winners.contains(&x) {
            rat(1) / rat(winners.len() as i64)
        } else {
            Rat::zero()
        }
    };
    let mut total = Rat::zero();
    for mask in 1u64..((1 << n) - 1) {
        let (mut inside, mut outside) = (Vec::new(), Vec::new());
        for (bit, &agent) in agents.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                inside.push(agent);
            } else {
                outside.push(agent);
            }
        }
        total += (share(&inside) - share(&outside)).abs();
    }
    total / rat(((1u64 << n) - 2) as i64)
}

fn small_profiles() -> Vec<Profile> {
    let mut profiles = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            profiles.extend(exhaustive_profiles(m, n));
        }
    }
    profiles
}

#[test]
fn navarrete_matches_naive_reimplementation() {
    for profile in small_profiles() {
        for (scheme, normalized) in [
            (ScoringScheme::Borda, false),
            (ScoringScheme::NormalizedBorda, true),
        ] {
            let report = navarrete_dsf(&profile, &scheme).unwrap();
            for x in 0..profile.m() {
                assert_eq!(
                    report.values[x],
                    naive_navarrete(&profile, x, normalized),
                    "scheme {scheme}, proposal {x}, profile {profile:?}"
                );
            }
        }
    }
}

#[test]
fn score_based_exact_matches_naive_bitmask_enumeration() {
    for profile in small_profiles() {
        for (scheme, normalized) in [
            (ScoringScheme::Borda, false),
            (ScoringScheme::NormalizedBorda, true),
        ] {
            let report = score_based_dsf(
                &profile,
                &scheme,
                &DecompositionScheme::ExactUniform,
                DEFAULT_EXACT_CAP,
            )
            .unwrap();
            for x in 0..profile.m() {
                assert_eq!(
                    report.values[x],
                    naive_score_based(&profile, x, normalized),
                    "scheme {scheme}, proposal {x}, profile {profile:?}"
                );
            }
        }
    }
}

#[test]
fn scf_based_exact_matches_naive_bitmask_enumeration() {
    for profile in small_profiles() {
        let report = scf_based_dsf(
            &profile,
            &Scf::BordaRule,
            &DecompositionScheme::ExactUniform,
            DEFAULT_EXACT_CAP,
        )
        .unwrap();
        for x in 0..profile.m() {
            assert_eq!(
                report.values[x],
                naive_scf_based(&profile, x),
                "proposal {x}, profile {profile:?}"
            );
        }
    }
}

#[test]
fn monte_carlo_tracks_exact_values_on_a_fixed_profile() {
    let profile =
        Profile::from_letter_rows(4, &["abcd", "dcba", "badc", "cadb", "abdc"]).unwrap();
    let exact = score_based_dsf(
        &profile,
        &ScoringScheme::NormalizedBorda,
        &DecompositionScheme::ExactUniform,
        DEFAULT_EXACT_CAP,
    )
    .unwrap();
    let sampled = score_based_dsf(
        &profile,
        &ScoringScheme::NormalizedBorda,
        &DecompositionScheme::MonteCarlo { samples: 4000, seed: 11 },
        DEFAULT_EXACT_CAP,
    )
    .unwrap();
    for x in 0..profile.m() {
        let gap = divisive_core::rat::abs_diff(&exact.values[x], &sampled.values[x]);
        assert!(
            gap < divisive_core::rat::ratio(5, 100),
            "proposal {x}: exact {} vs sampled {}",
            exact.values[x],
            sampled.values[x]
        );
    }
}
