//! Property tests for the structural invariants the rest of the crate leans
//! on: profiles behave like multisets of strict orders, scores are linear in
//! the electorate, selections are never empty, and symmetry operations
//! commute the way the definitions promise.

use std::collections::BTreeSet;

use divisive_core::dsf::{navarrete_dsf, rank_variance_dsf, Dsf};
use divisive_core::indices::{evaluate, kendall_tau, ProfileIndex};
use divisive_core::profile::{all_rankings, Profile, ProposalSet, Ranking};
use divisive_core::rat::{rat, Rat};
use divisive_core::scoring::{score, ScoringScheme};
use divisive_core::voting::{win_share, Scf};
use num_traits::Zero;
use proptest::prelude::*;

/// A random profile with `m` proposals and `n` agents with ids 0..n.
fn profile_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = Profile> {
    (2..=max_m, 1..=max_n)
        .prop_flat_map(|(m, n)| {
            let rankings = all_rankings(m);
            (
                Just(m),
                proptest::collection::vec(0..rankings.len(), n),
            )
        })
        .prop_map(|(m, picks)| {
            let rankings = all_rankings(m);
            let entries = picks
                .into_iter()
                .enumerate()
                .map(|(agent, i)| (agent as u32, rankings[i].clone()))
                .collect();
            Profile::new(ProposalSet::lettered(m), entries).unwrap()
        })
}

fn permutation_strategy(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn positions_form_the_full_range(profile in profile_strategy(5, 6)) {
        let m = profile.m();
        for agent in profile.agents() {
            let positions: BTreeSet<usize> =
                (0..m).map(|x| profile.position(agent, x).unwrap()).collect();
            prop_assert_eq!(positions, (1..=m).collect::<BTreeSet<usize>>());
        }
    }

    #[test]
    fn restriction_partitions_the_electorate(profile in profile_strategy(4, 6), split in any::<u64>()) {
        let agents: Vec<u32> = profile.agents().collect();
        let inside: BTreeSet<u32> = agents
            .iter()
            .enumerate()
            .filter(|&(bit, _)| split >> (bit % 64) & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let outside: BTreeSet<u32> = agents.iter().copied().filter(|a| !inside.contains(a)).collect();
        let sub_in = profile.restrict(&inside).unwrap();
        let sub_out = profile.restrict(&outside).unwrap();
        prop_assert_eq!(sub_in.n() + sub_out.n(), profile.n());
        let mut together: Vec<_> = sub_in.entries().iter().chain(sub_out.entries()).cloned().collect();
        together.sort_by_key(|(id, _)| *id);
        prop_assert_eq!(together.as_slice(), profile.entries());
    }

    #[test]
    fn inversion_is_an_involution(profile in profile_strategy(5, 5)) {
        prop_assert_eq!(profile.invert().invert(), profile);
    }

    #[test]
    fn supporters_partition_on_distinct_proposals(profile in profile_strategy(4, 6)) {
        let m = profile.m();
        for x in 0..m {
            for y in 0..m {
                if x == y {
                    continue;
                }
                let for_x = profile.supporters(x, y).unwrap();
                let for_y = profile.supporters(y, x).unwrap();
                prop_assert!(for_x.is_disjoint(&for_y));
                prop_assert_eq!(for_x.len() + for_y.len(), profile.n());
            }
        }
    }

    #[test]
    fn canonical_form_ignores_agent_identities(
        profile in profile_strategy(4, 5),
        target_ids in proptest::collection::btree_set(0u32..1000, 5),
    ) {
        let sigma: std::collections::BTreeMap<u32, u32> = profile
            .agents()
            .zip(target_ids)
            .collect();
        let relabeled = profile.apply_agent_bijection(&sigma).unwrap();
        prop_assert_eq!(relabeled.canonical_form(), profile.canonical_form());
    }

    #[test]
    fn kendall_tau_is_a_bounded_metric(
        a in permutation_strategy(5),
        b in permutation_strategy(5),
    ) {
        let ra = Ranking::new(a).unwrap();
        let rb = Ranking::new(b).unwrap();
        let d = kendall_tau(&ra, &rb).unwrap();
        prop_assert!(d <= 10); // C(5, 2)
        prop_assert_eq!(d, kendall_tau(&rb, &ra).unwrap());
        prop_assert_eq!(d == 0, ra == rb);
        // Reversal flips every pair: d(a, rev(b)) = C(m,2) - d(a, b).
        prop_assert_eq!(kendall_tau(&ra, &rb.reversed()).unwrap(), 10 - d);
    }

    #[test]
    fn avg_kendall_index_is_proposal_neutral(
        profile in profile_strategy(4, 5),
        sigma in permutation_strategy(4),
    ) {
        prop_assume!(profile.m() == 4);
        let permuted = profile.apply_proposal_permutation(&sigma).unwrap();
        prop_assert_eq!(
            evaluate(&ProfileIndex::AvgKendallTau, &permuted),
            evaluate(&ProfileIndex::AvgKendallTau, &profile)
        );
    }

    #[test]
    fn win_shares_sum_to_one(profile in profile_strategy(4, 6)) {
        for scf in [Scf::BordaRule, Scf::PluralityRule] {
            let total: Rat = (0..profile.m())
                .map(|x| win_share(&scf, &profile, x).unwrap())
                .sum();
            prop_assert_eq!(total, rat(1));
        }
    }

    #[test]
    fn unnormalized_score_is_additive_over_disjoint_coalitions(
        profile in profile_strategy(4, 6),
        split in any::<u64>(),
    ) {
        let agents: Vec<u32> = profile.agents().collect();
        let inside: BTreeSet<u32> = agents
            .iter()
            .enumerate()
            .filter(|&(bit, _)| split >> (bit % 64) & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let outside: BTreeSet<u32> =
            agents.iter().copied().filter(|a| !inside.contains(a)).collect();
        prop_assume!(!inside.is_empty() && !outside.is_empty());
        let sub_in = profile.restrict(&inside).unwrap();
        let sub_out = profile.restrict(&outside).unwrap();
        for x in 0..profile.m() {
            let whole = score(&ScoringScheme::Borda, &profile, x).unwrap();
            let parts = score(&ScoringScheme::Borda, &sub_in, x).unwrap()
                + score(&ScoringScheme::Borda, &sub_out, x).unwrap();
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn selections_are_nonempty_and_values_cover_proposals(profile in profile_strategy(4, 5)) {
        for dsf in [
            Dsf::RankVariance,
            Dsf::Navarrete(ScoringScheme::NormalizedBorda),
            Dsf::IndexBased(ProfileIndex::AvgKendallTau),
        ] {
            let report = dsf.evaluate(&profile).unwrap();
            prop_assert_eq!(report.values.len(), profile.m());
            prop_assert!(!report.selection.is_empty());
            prop_assert!(report.selection.iter().all(|&x| x < profile.m()));
        }
    }

    #[test]
    fn rank_variance_is_zero_exactly_on_fixed_positions(profile in profile_strategy(4, 5)) {
        let report = rank_variance_dsf(&profile);
        let fixed: BTreeSet<usize> = profile
            .fixed_position_proposals()
            .into_iter()
            .map(|(x, _)| x)
            .collect();
        for x in 0..profile.m() {
            prop_assert_eq!(report.values[x].is_zero(), fixed.contains(&x));
        }
    }

    #[test]
    fn navarrete_values_are_nonnegative_and_anonymous(
        profile in profile_strategy(4, 5),
        target_ids in proptest::collection::btree_set(0u32..1000, 5),
    ) {
        let report = navarrete_dsf(&profile, &ScoringScheme::NormalizedBorda).unwrap();
        for v in &report.values {
            prop_assert!(*v >= Rat::zero());
        }
        let sigma: std::collections::BTreeMap<u32, u32> =
            profile.agents().zip(target_ids).collect();
        let relabeled = profile.apply_agent_bijection(&sigma).unwrap();
        let report2 = navarrete_dsf(&relabeled, &ScoringScheme::NormalizedBorda).unwrap();
        prop_assert_eq!(report.values, report2.values);
    }
}
