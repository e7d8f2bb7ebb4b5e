//! Ranked preference profiles and the profile algebra every DSF and axiom
//! check is built on: positions, coalitions, restriction, union, inversion,
//! move-to-top, clones, Pareto dominance, uniform profiles, and the symmetry
//! actions on agents and proposals.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Agents are arbitrary distinct non-negative integers.
pub type AgentId = u32;

/// The shared, ordered set of proposal labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProposalSet {
    names: Vec<String>,
}

impl ProposalSet {
    pub fn new(names: Vec<String>) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::EmptyProposalSet);
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::DuplicateLabel);
        }
        Ok(Arc::new(ProposalSet { names }))
    }

    /// Proposals labelled `a`, `b`, ..., convenient for fixtures and tests.
    pub fn lettered(m: usize) -> Arc<Self> {
        let names = (0..m)
            .map(|i| {
                if m <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("p{i}")
                }
            })
            .collect();
        ProposalSet::new(names).expect("lettered labels are distinct")
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Arc<Self>> {
        ProposalSet::new(labels.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }
}

/// A strict linear order over the proposals, best first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking {
    order: Vec<usize>,
    positions: Vec<usize>, // positions[x] = 0-based index of x in order
}

impl Ranking {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut positions = vec![usize::MAX; m];
        for (idx, &x) in order.iter().enumerate() {
            if x >= m || positions[x] != usize::MAX {
                return Err(Error::InvalidRanking { m });
            }
            positions[x] = idx;
        }
        Ok(Ranking { order, positions })
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    /// Proposal indices, best first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 1-based position of `x` (top = 1).
    pub fn position_of(&self, x: usize) -> usize {
        self.positions[x] + 1
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.positions[x] < self.positions[y]
    }

    pub fn reversed(&self) -> Ranking {
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        Ranking::new(order).expect("reverse of a permutation is a permutation")
    }

    /// Pointwise relabeling by a proposal permutation.
    pub fn relabeled(&self, sigma: &[usize]) -> Ranking {
        let order: Vec<usize> = self.order.iter().map(|&x| sigma[x]).collect();
        Ranking::new(order).expect("image of a permutation is a permutation")
    }

    /// `x` moved to the front, relative order of the rest unchanged.
    pub fn with_top(&self, x: usize) -> Ranking {
        let mut order = Vec::with_capacity(self.order.len());
        order.push(x);
        order.extend(self.order.iter().copied().filter(|&y| y != x));
        Ranking::new(order).expect("moving one element preserves the permutation")
    }
}

/// All m! rankings over `0..m` in lexicographic order of their order vectors.
pub fn all_rankings(m: usize) -> Vec<Ranking> {
    (0..m)
        .permutations(m)
        .map(|order| Ranking::new(order).expect("permutation"))
        .collect()
}

/// A profile restriction: like [`Profile`] but possibly empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubProfile {
    proposals: Arc<ProposalSet>,
    entries: Vec<(AgentId, Ranking)>, // kept sorted by agent id
}

impl SubProfile {
    pub fn new(proposals: Arc<ProposalSet>, mut entries: Vec<(AgentId, Ranking)>) -> Result<Self> {
        let m = proposals.m();
        for (_, r) in &entries {
            if r.m() != m {
                return Err(Error::ProposalSetMismatch);
            }
        }
        entries.sort_by_key(|(id, _)| *id);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateAgent(pair[0].0));
            }
        }
        Ok(SubProfile { proposals, entries })
    }

    pub fn empty(proposals: Arc<ProposalSet>) -> Self {
        SubProfile { proposals, entries: Vec::new() }
    }

    pub fn proposals(&self) -> &Arc<ProposalSet> {
        &self.proposals
    }

    pub fn m(&self) -> usize {
        self.proposals.m()
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(AgentId, Ranking)] {
        &self.entries
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.entries.iter().map(|(id, _)| *id)
    }

    pub fn agent_set(&self) -> BTreeSet<AgentId> {
        self.agents().collect()
    }

    pub fn ranking_of(&self, agent: AgentId) -> Result<&Ranking> {
        self.entries
            .binary_search_by_key(&agent, |(id, _)| *id)
            .map(|i| &self.entries[i].1)
            .map_err(|_| Error::UnknownAgent(agent))
    }

    fn check_proposal(&self, x: usize) -> Result<()> {
        if x >= self.m() {
            return Err(Error::UnknownProposal { index: x, m: self.m() });
        }
        Ok(())
    }

    /// 1-based rank of proposal `x` in `agent`'s preference (top = 1).
    pub fn position(&self, agent: AgentId, x: usize) -> Result<usize> {
        self.check_proposal(x)?;
        Ok(self.ranking_of(agent)?.position_of(x))
    }

    /// The coalition of agents ranking `x` above `y`.
    pub fn supporters(&self, x: usize, y: usize) -> Result<BTreeSet<AgentId>> {
        self.check_proposal(x)?;
        self.check_proposal(y)?;
        if x == y {
            return Err(Error::IdenticalProposals(x));
        }
        Ok(self
            .entries
            .iter()
            .filter(|(_, r)| r.prefers(x, y))
            .map(|(id, _)| *id)
            .collect())
    }

    /// Restriction to a coalition; entry order is preserved.
    pub fn restrict(&self, coalition: &BTreeSet<AgentId>) -> Result<SubProfile> {
        for &id in coalition {
            self.ranking_of(id)?;
        }
        let entries = self
            .entries
            .iter()
            .filter(|(id, _)| coalition.contains(id))
            .cloned()
            .collect();
        Ok(SubProfile { proposals: self.proposals.clone(), entries })
    }

    /// Restriction by entry index mask (bit i = entry i). Internal to the
    /// bipartition machinery.
    pub(crate) fn restrict_by_mask(&self, mask: u64) -> SubProfile {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        SubProfile { proposals: self.proposals.clone(), entries }
    }

    /// True iff x and y are adjacent in every individual ranking.
    pub fn are_clones(&self, x: usize, y: usize) -> Result<bool> {
        self.check_proposal(x)?;
        self.check_proposal(y)?;
        if x == y {
            return Err(Error::IdenticalProposals(x));
        }
        Ok(self
            .entries
            .iter()
            .all(|(_, r)| r.position_of(x).abs_diff(r.position_of(y)) == 1))
    }

    /// True iff every agent ranks x strictly above y.
    pub fn pareto_dominates(&self, x: usize, y: usize) -> Result<bool> {
        self.check_proposal(x)?;
        self.check_proposal(y)?;
        if x == y {
            return Err(Error::IdenticalProposals(x));
        }
        Ok(self.entries.iter().all(|(_, r)| r.prefers(x, y)))
    }

    /// Anonymity-invariant key: two profiles have equal canonical forms iff
    /// one is an agent-bijection image of the other.
    pub fn canonical_form(&self) -> Vec<Ranking> {
        let mut rankings: Vec<Ranking> = self.entries.iter().map(|(_, r)| r.clone()).collect();
        rankings.sort();
        rankings
    }

    pub fn is_unanimous(&self) -> bool {
        self.entries
            .windows(2)
            .all(|pair| pair[0].1 == pair[1].1)
    }

    /// Proposals occurring at the same position throughout, with that
    /// 1-based position. Empty electorate has no fixed-position proposals.
    pub fn fixed_position_proposals(&self) -> Vec<(usize, usize)> {
        if self.entries.is_empty() {
            return Vec::new();
        }
        let first = &self.entries[0].1;
        (0..self.m())
            .filter_map(|x| {
                let pos = first.position_of(x);
                self.entries
                    .iter()
                    .all(|(_, r)| r.position_of(x) == pos)
                    .then_some((x, pos))
            })
            .collect()
    }

    /// True iff each of the m! rankings occurs equally often (and at least once).
    pub fn is_perfectly_uniform(&self) -> bool {
        let m = self.m();
        let fact: usize = (1..=m).product();
        if self.n() == 0 || self.n() % fact != 0 {
            return false;
        }
        let k = self.n() / fact;
        let mut counts: BTreeMap<&Ranking, usize> = BTreeMap::new();
        for (_, r) in &self.entries {
            *counts.entry(r).or_insert(0) += 1;
        }
        counts.len() == fact && counts.values().all(|&c| c == k)
    }
}

/// A nonempty preference profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    inner: SubProfile,
}

impl Deref for Profile {
    type Target = SubProfile;

    fn deref(&self) -> &SubProfile {
        &self.inner
    }
}

impl Profile {
    pub fn new(proposals: Arc<ProposalSet>, entries: Vec<(AgentId, Ranking)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Profile { inner: SubProfile::new(proposals, entries)? })
    }

    /// Profile from raw order vectors, agents numbered from 0.
    pub fn from_orders(proposals: Arc<ProposalSet>, orders: &[Vec<usize>]) -> Result<Self> {
        let entries = orders
            .iter()
            .enumerate()
            .map(|(i, order)| Ok((i as AgentId, Ranking::new(order.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(proposals, entries)
    }

    /// Profile over lettered proposals from ranking strings like "acb",
    /// one agent per string. Test and fixture convenience.
    pub fn from_letter_rows(m: usize, rows: &[&str]) -> Result<Self> {
        let proposals = ProposalSet::lettered(m);
        let orders = rows
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| {
                        proposals
                            .index_of(&c.to_string())
                            .ok_or(Error::InvalidRanking { m })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::from_orders(proposals, &orders)
    }

    pub fn as_sub(&self) -> &SubProfile {
        &self.inner
    }

    /// The union R ⊕ R' of two profiles with disjoint electorates.
    pub fn union(&self, other: &Profile) -> Result<Profile> {
        if self.proposals() != other.proposals() {
            return Err(Error::ProposalSetMismatch);
        }
        let mine = self.agent_set();
        if let Some(&shared) = other.agents().collect::<BTreeSet<_>>().intersection(&mine).next() {
            return Err(Error::OverlappingAgents(shared));
        }
        let mut entries = self.entries().to_vec();
        entries.extend(other.entries().iter().cloned());
        Profile::new(self.proposals().clone(), entries)
    }

    /// Every ranking reversed. An involution.
    pub fn invert(&self) -> Profile {
        let entries = self
            .entries()
            .iter()
            .map(|(id, r)| (*id, r.reversed()))
            .collect();
        Profile::new(self.proposals().clone(), entries).expect("same agents, valid rankings")
    }

    /// R^x̂: proposal `x` moved to the top of every ranking.
    pub fn move_to_top(&self, x: usize) -> Result<Profile> {
        if x >= self.m() {
            return Err(Error::UnknownProposal { index: x, m: self.m() });
        }
        let entries = self
            .entries()
            .iter()
            .map(|(id, r)| (*id, r.with_top(x)))
            .collect();
        Profile::new(self.proposals().clone(), entries)
    }

    /// R^U: each of the m! rankings occurring exactly k times, agent ids
    /// `first_agent_id..`.
    pub fn perfectly_uniform(proposals: Arc<ProposalSet>, k: usize, first_agent_id: AgentId) -> Profile {
        assert!(k >= 1, "k must be at least 1");
        let rankings = all_rankings(proposals.m());
        let mut entries = Vec::with_capacity(k * rankings.len());
        let mut next = first_agent_id;
        for _ in 0..k {
            for r in &rankings {
                entries.push((next, r.clone()));
                next += 1;
            }
        }
        Profile::new(proposals, entries).expect("m >= 1 gives a nonempty profile")
    }

    /// Relabels agents by an injective map covering every agent: the ranking
    /// held by agent i is reassigned to sigma[i]. The multiset of rankings is
    /// unchanged, so `canonical_form` is invariant.
    pub fn apply_agent_bijection(&self, sigma: &BTreeMap<AgentId, AgentId>) -> Result<Profile> {
        let mut images = BTreeSet::new();
        let entries = self
            .entries()
            .iter()
            .map(|(id, r)| {
                let new_id = *sigma.get(id).ok_or(Error::UnknownAgent(*id))?;
                if !images.insert(new_id) {
                    return Err(Error::NotInjective);
                }
                Ok((new_id, r.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(self.proposals().clone(), entries)
    }

    /// σ(R): every ranking relabeled pointwise by a proposal permutation.
    pub fn apply_proposal_permutation(&self, sigma: &[usize]) -> Result<Profile> {
        let m = self.m();
        if sigma.len() != m {
            return Err(Error::NotAPermutation);
        }
        let mut seen = vec![false; m];
        for &x in sigma {
            if x >= m || seen[x] {
                return Err(Error::NotAPermutation);
            }
            seen[x] = true;
        }
        let entries = self
            .entries()
            .iter()
            .map(|(id, r)| (*id, r.relabeled(sigma)))
            .collect();
        Profile::new(self.proposals().clone(), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc_cba() -> Profile {
        Profile::from_letter_rows(3, &["abc", "cba"]).unwrap()
    }

    #[test]
    fn position_top_and_bottom() {
        let r = Profile::from_letter_rows(3, &["abc"]).unwrap();
        assert_eq!(r.position(0, 0).unwrap(), 1);
        assert_eq!(r.position(0, 2).unwrap(), 3);
    }

    #[test]
    fn position_example3_agent2() {
        // Agent 2's row of the 5-proposal fixture: b > x > y > c > a.
        let proposals = ProposalSet::from_labels(&["a", "b", "c", "x", "y"]).unwrap();
        let orders = vec![
            vec![0, 3, 4, 1, 2],
            vec![1, 3, 4, 2, 0],
            vec![2, 3, 4, 0, 1],
        ];
        let r = Profile::from_orders(proposals.clone(), &orders).unwrap();
        let x = proposals.index_of("x").unwrap();
        assert_eq!(r.position(1, x).unwrap(), 2);
    }

    #[test]
    fn position_errors() {
        let r = abc_cba();
        assert!(r.position(5, 0).is_err());
        assert!(r.position(0, 3).is_err());
    }

    #[test]
    fn supporters_unanimous() {
        let r = Profile::from_letter_rows(2, &["ab", "ab", "ab"]).unwrap();
        assert_eq!(r.supporters(0, 1).unwrap(), [0, 1, 2].into());
    }

    #[test]
    fn supporters_partition() {
        let r = abc_cba();
        assert_eq!(r.supporters(0, 1).unwrap(), [0].into());
        let fwd = r.supporters(0, 2).unwrap();
        let bwd = r.supporters(2, 0).unwrap();
        assert_eq!(fwd.union(&bwd).copied().collect::<BTreeSet<_>>(), r.agent_set());
        assert!(fwd.is_disjoint(&bwd));
        assert!(r.supporters(1, 1).is_err());
    }

    #[test]
    fn restrict_identity_and_empty() {
        let r = abc_cba();
        assert_eq!(r.restrict(&r.agent_set()).unwrap(), *r.as_sub());
        assert!(r.restrict(&BTreeSet::new()).unwrap().is_empty());
        assert!(r.restrict(&[7].into()).is_err());
    }

    #[test]
    fn restrict_example3_coalition() {
        let proposals = ProposalSet::from_labels(&["a", "b", "c", "x", "y"]).unwrap();
        let orders = vec![
            vec![0, 3, 4, 1, 2],
            vec![1, 3, 4, 2, 0],
            vec![2, 3, 4, 0, 1],
        ];
        let r = Profile::from_orders(proposals, &orders).unwrap();
        let sub = r.restrict(&[1, 2].into()).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.entries()[0].1.order(), &[1, 3, 4, 2, 0]);
        assert_eq!(sub.entries()[1].1.order(), &[2, 3, 4, 0, 1]);
    }

    #[test]
    fn union_concatenates_and_rejects_overlap() {
        let a = Profile::from_letter_rows(3, &["abc"]).unwrap();
        let b = Profile::new(
            a.proposals().clone(),
            vec![(1, Ranking::new(vec![2, 1, 0]).unwrap())],
        )
        .unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u, abc_cba());
        assert!(a.union(&a).is_err());
    }

    #[test]
    fn union_with_uniform_has_122_agents() {
        let r = Profile::from_letter_rows(5, &["abcde", "badce"]).unwrap();
        let uniform = Profile::perfectly_uniform(r.proposals().clone(), 1, 2);
        assert_eq!(r.union(&uniform).unwrap().n(), 122);
    }

    #[test]
    fn invert_is_involution() {
        let r = abc_cba();
        assert_eq!(r.invert().invert(), r);
        let one = Profile::from_letter_rows(2, &["ab"]).unwrap();
        assert_eq!(one.invert(), Profile::from_letter_rows(2, &["ba"]).unwrap());
        assert_eq!(
            Profile::from_letter_rows(3, &["abc"]).unwrap().invert(),
            Profile::from_letter_rows(3, &["cba"]).unwrap()
        );
    }

    #[test]
    fn move_to_top_basics() {
        let r = Profile::from_letter_rows(3, &["bac"]).unwrap();
        assert_eq!(r.move_to_top(0).unwrap(), Profile::from_letter_rows(3, &["abc"]).unwrap());
        let topped = Profile::from_letter_rows(3, &["abc", "acb"]).unwrap();
        assert_eq!(topped.move_to_top(0).unwrap(), topped);
        assert!(r.move_to_top(9).is_err());
    }

    #[test]
    fn perfectly_uniform_counts() {
        let r = Profile::perfectly_uniform(ProposalSet::lettered(2), 1, 0);
        assert_eq!(r.n(), 2);
        assert!(r.is_perfectly_uniform());

        let r = Profile::perfectly_uniform(ProposalSet::lettered(5), 1, 0);
        assert_eq!(r.n(), 120);

        let r = Profile::perfectly_uniform(ProposalSet::lettered(3), 2, 0);
        assert_eq!(r.n(), 12);
        assert!(r.is_perfectly_uniform());
        // Every proposal occurs at every position exactly k*(m-1)! times.
        for x in 0..3 {
            for pos in 1..=3 {
                let count = r
                    .entries()
                    .iter()
                    .filter(|(_, rk)| rk.position_of(x) == pos)
                    .count();
                assert_eq!(count, 4);
            }
        }
    }

    #[test]
    fn agent_bijection_swap() {
        let r = abc_cba();
        let sigma: BTreeMap<AgentId, AgentId> = [(0, 1), (1, 0)].into();
        let swapped = r.apply_agent_bijection(&sigma).unwrap();
        assert_eq!(swapped.ranking_of(0).unwrap().order(), &[2, 1, 0]);
        assert_eq!(swapped.ranking_of(1).unwrap().order(), &[0, 1, 2]);
        assert_eq!(swapped.canonical_form(), r.canonical_form());

        let identity: BTreeMap<AgentId, AgentId> = [(0, 0), (1, 1)].into();
        assert_eq!(r.apply_agent_bijection(&identity).unwrap(), r);

        let collapse: BTreeMap<AgentId, AgentId> = [(0, 5), (1, 5)].into();
        assert!(r.apply_agent_bijection(&collapse).is_err());
    }

    #[test]
    fn proposal_permutation_swap() {
        let r = abc_cba();
        // a <-> c
        let swapped = r.apply_proposal_permutation(&[2, 1, 0]).unwrap();
        assert_eq!(swapped, Profile::from_letter_rows(3, &["cba", "abc"]).unwrap());
        let identity = r.apply_proposal_permutation(&[0, 1, 2]).unwrap();
        assert_eq!(identity, r);
        assert!(r.apply_proposal_permutation(&[0, 0, 1]).is_err());
        assert!(r.apply_proposal_permutation(&[0, 1]).is_err());
    }

    #[test]
    fn clones_in_abc_cba() {
        let r = abc_cba();
        assert!(r.are_clones(0, 1).unwrap());
        assert!(r.are_clones(1, 2).unwrap());
        assert!(!r.are_clones(0, 2).unwrap());
        let single = Profile::from_letter_rows(3, &["abc"]).unwrap();
        assert!(!single.are_clones(0, 2).unwrap());
        assert!(r.are_clones(1, 1).is_err());
    }

    #[test]
    fn pareto_dominance() {
        let witness = Profile::from_letter_rows(3, &["abc", "acb"]).unwrap();
        assert!(witness.pareto_dominates(0, 1).unwrap());
        assert!(witness.pareto_dominates(0, 2).unwrap());

        let r = abc_cba();
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    assert!(!r.pareto_dominates(x, y).unwrap());
                }
            }
        }

        let unanimous = Profile::from_letter_rows(3, &["abc", "abc"]).unwrap();
        assert!(unanimous.pareto_dominates(0, 1).unwrap());
        assert!(unanimous.pareto_dominates(0, 2).unwrap());
    }

    #[test]
    fn canonical_form_keys() {
        let r = abc_cba();
        let swapped = Profile::from_letter_rows(3, &["cba", "abc"]).unwrap();
        assert_eq!(r.canonical_form(), swapped.canonical_form());
        let other = Profile::from_letter_rows(3, &["abc", "abc"]).unwrap();
        assert_ne!(r.canonical_form(), other.canonical_form());
        assert_eq!(r.canonical_form(), r.canonical_form());
    }

    #[test]
    fn fixed_position_detection() {
        let r = Profile::from_letter_rows(3, &["abc", "acb"]).unwrap();
        assert_eq!(r.fixed_position_proposals(), vec![(0, 1)]);
        let u = Profile::from_letter_rows(3, &["abc", "abc"]).unwrap();
        assert_eq!(u.fixed_position_proposals().len(), 3);
        assert!(u.is_unanimous());
        assert!(!r.is_unanimous());
    }

    #[test]
    fn restriction_partitions_entries() {
        let r = abc_cba();
        let c: BTreeSet<AgentId> = [0].into();
        let comp: BTreeSet<AgentId> = [1].into();
        let left = r.restrict(&c).unwrap();
        let right = r.restrict(&comp).unwrap();
        let mut all: Vec<_> = left.entries().to_vec();
        all.extend(right.entries().iter().cloned());
        all.sort_by_key(|(id, _)| *id);
        assert_eq!(all, r.entries());
    }
}
