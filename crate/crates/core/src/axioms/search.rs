//! Bounded counterexample search: exhaustive enumeration of small profiles
//! up to agent-bijection equivalence, plus seeded random generation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms::{check_axiom, AxiomId, CheckOptions, CheckOutcome};
use crate::dsf::Dsf;
use crate::error::Result;
use crate::profile::{all_rankings, Profile, ProposalSet, Ranking};

#[derive(Debug, Clone)]
pub enum GeneratorSpec {
    /// All profiles with m <= max_m, n <= max_n, one per agent-bijection
    /// equivalence class (multisets of rankings, enumerated in lex order).
    Exhaustive { max_m: usize, max_n: usize },
    Random { count: usize, seed: u64, m: usize, n: usize },
}

#[derive(Debug)]
pub enum SearchResult {
    /// The violation minimal in the fixed scan order, not the first found
    /// temporally.
    Violation { index: usize, outcome: CheckOutcome },
    /// The bounded space contains no violation.
    Exhausted { checked: usize },
}

/// All size-n multisets over all_rankings(m), as profiles with agents 0..n.
/// Enumerating multisets dedups by anonymity (canonical form) exactly once.
pub fn exhaustive_profiles(m: usize, n: usize) -> Vec<Profile> {
    let rankings = all_rankings(m);
    let proposals = ProposalSet::lettered(m);
    let mut profiles = Vec::new();
    // Non-decreasing index sequences of length n over 0..m!.
    let mut indices = vec![0usize; n];
    loop {
        let entries: Vec<(u32, Ranking)> = indices
            .iter()
            .enumerate()
            .map(|(agent, &i)| (agent as u32, rankings[i].clone()))
            .collect();
        profiles.push(Profile::new(proposals.clone(), entries).expect("n >= 1"));
        // Advance to the next non-decreasing sequence.
        let mut pos = n;
        loop {
            if pos == 0 {
                return profiles;
            }
            pos -= 1;
            if indices[pos] + 1 < rankings.len() {
                let v = indices[pos] + 1;
                for slot in indices.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// `count` seeded random profiles with agents 0..n.
pub fn random_profiles(m: usize, n: usize, count: usize, seed: u64) -> Vec<Profile> {
    let proposals = ProposalSet::lettered(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let entries = (0..n)
                .map(|agent| {
                    let mut order: Vec<usize> = (0..m).collect();
                    order.shuffle(&mut rng);
                    (agent as u32, Ranking::new(order).expect("shuffled permutation"))
                })
                .collect();
            Profile::new(proposals.clone(), entries).expect("n >= 1")
        })
        .collect()
}

fn generate(gen: &GeneratorSpec) -> Vec<Profile> {
    match gen {
        GeneratorSpec::Exhaustive { max_m, max_n } => {
            let mut profiles = Vec::new();
            for m in 1..=*max_m {
                for n in 1..=*max_n {
                    profiles.extend(exhaustive_profiles(m, n));
                }
            }
            profiles
        }
        GeneratorSpec::Random { count, seed, m, n } => random_profiles(*m, *n, *count, *seed),
    }
}

/// Scans the generated space in deterministic order and returns the first
/// violation, or a certificate that the bounded space contains none.
pub fn search_counterexample(
    dsf: &Dsf,
    axiom: AxiomId,
    gen: &GeneratorSpec,
    opts: &CheckOptions,
) -> Result<SearchResult> {
    let profiles = generate(gen);
    let checked = profiles.len();
    let found = profiles
        .par_iter()
        .enumerate()
        .map(|(index, profile)| {
            let outcome = check_axiom(dsf, axiom, profile, opts)?;
            Ok(outcome.is_violation().then_some((index, outcome)))
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                    (x, None) | (None, x) => x,
                })
            },
        )?;
    Ok(match found {
        Some((index, outcome)) => SearchResult::Violation { index, outcome },
        None => SearchResult::Exhausted { checked },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsf::DecompositionScheme;
    use crate::scoring::ScoringScheme;
    use crate::voting::Scf;
    use std::collections::BTreeSet;

    #[test]
    fn exhaustive_counts_are_multiset_coefficients() {
        // C(m! + n - 1, n)
        assert_eq!(exhaustive_profiles(2, 2).len(), 3);
        assert_eq!(exhaustive_profiles(3, 2).len(), 21);
        assert_eq!(exhaustive_profiles(3, 3).len(), 56);
    }

    #[test]
    fn exhaustive_profiles_have_distinct_canonical_forms() {
        let profiles = exhaustive_profiles(3, 3);
        let keys: BTreeSet<_> = profiles.iter().map(|p| p.canonical_form()).collect();
        assert_eq!(keys.len(), profiles.len());
    }

    #[test]
    fn random_profiles_are_seed_deterministic() {
        assert_eq!(random_profiles(4, 5, 10, 3), random_profiles(4, 5, 10, 3));
        assert_ne!(random_profiles(4, 5, 10, 3), random_profiles(4, 5, 10, 4));
    }

    #[test]
    fn finds_uniform_reinforcement_violation_for_rank_variance() {
        let gen = GeneratorSpec::Exhaustive { max_m: 3, max_n: 2 };
        let result = search_counterexample(
            &Dsf::RankVariance,
            AxiomId::UniformReinforcement,
            &gen,
            &CheckOptions::default(),
        )
        .unwrap();
        match result {
            SearchResult::Violation { outcome, .. } => assert!(outcome.is_violation()),
            SearchResult::Exhausted { .. } => panic!("expected a violation for m = 3"),
        }
    }

    #[test]
    fn navarrete_profile_unanimity_exhausts() {
        let gen = GeneratorSpec::Exhaustive { max_m: 3, max_n: 3 };
        let result = search_counterexample(
            &Dsf::Navarrete(ScoringScheme::NormalizedBorda),
            AxiomId::ProfileUnanimity,
            &gen,
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(matches!(result, SearchResult::Exhausted { .. }));
    }

    #[test]
    fn scf_position_unanimity_violation_found() {
        // Example 3's shape needs m = 5; a smaller violation exists within
        // m <= 3, n <= 3 for the Borda-rule SCF DSF.
        let gen = GeneratorSpec::Exhaustive { max_m: 3, max_n: 3 };
        let result = search_counterexample(
            &Dsf::scf_based(Scf::BordaRule, DecompositionScheme::ExactUniform),
            AxiomId::PositionUnanimity,
            &gen,
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(matches!(result, SearchResult::Violation { .. }));
    }

    #[test]
    fn scan_order_is_deterministic() {
        let gen = GeneratorSpec::Exhaustive { max_m: 3, max_n: 2 };
        let run = || {
            match search_counterexample(
                &Dsf::RankVariance,
                AxiomId::UniformReinforcement,
                &gen,
                &CheckOptions::default(),
            )
            .unwrap()
            {
                SearchResult::Violation { index, .. } => index,
                SearchResult::Exhausted { .. } => panic!("expected a violation"),
            }
        };
        assert_eq!(run(), run());
    }
}
