//! Scoring functions s mapping (subprofile, proposal) to exact rational
//! scores: positional vectors, their normalized variants, Borda, Plurality,
//! and the two Copeland conventions.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::profile::SubProfile;
use crate::rat::{format_rat, parse_rat, rat, Rat};

/// Positional weights (s_1, ..., s_m), position 1 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringVector {
    weights: Vec<Rat>,
}

impl ScoringVector {
    pub fn new(weights: Vec<Rat>) -> Self {
        ScoringVector { weights }
    }

    /// (m-1, m-2, ..., 0).
    pub fn borda(m: usize) -> Self {
        ScoringVector::new((0..m).rev().map(|k| rat(k as i64)).collect())
    }

    /// (1, 0, ..., 0).
    pub fn plurality(m: usize) -> Self {
        let mut weights = vec![rat(0); m];
        weights[0] = rat(1);
        ScoringVector::new(weights)
    }

    /// The Borda vector with the bottom weight replaced by eps:
    /// (m-1, ..., 1, eps). Both vectors induce the Borda rule whenever
    /// |N| * eps < 1, yet they induce different DSFs.
    pub fn epsilon_borda(m: usize, eps: Rat) -> Self {
        let mut weights: Vec<Rat> = (1..m).rev().map(|k| rat(k as i64)).collect();
        weights.push(eps);
        ScoringVector::new(weights)
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Checks the side condition |N| * eps < 1 for an epsilon-Borda vector.
pub fn validate_epsilon(n: usize, eps: &Rat) -> Result<()> {
    if rat(n as i64) * eps >= rat(1) {
        return Err(Error::EpsilonTooLarge { n, eps: format_rat(eps) });
    }
    Ok(())
}

/// A concrete scoring procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoringScheme {
    Positional(ScoringVector),
    NormalizedPositional(ScoringVector),
    Borda,
    NormalizedBorda,
    Plurality,
    NormalizedPlurality,
    CopelandSymmetric,
    CopelandAsymmetric,
}

impl ScoringScheme {
    /// The positional weight vector for proposal-set size `m`, plus whether
    /// scores are divided by the subelectorate size. `None` for the Copeland
    /// schemes, which are not positional.
    pub fn positional_vector(&self, m: usize) -> Result<Option<(Vec<Rat>, bool)>> {
        let checked = |v: &ScoringVector, normalized| {
            if v.len() != m {
                return Err(Error::InvalidScheme(format!(
                    "scoring vector has {} weights but the profile has {} proposals",
                    v.len(),
                    m
                )));
            }
            Ok(Some((v.weights().to_vec(), normalized)))
        };
        match self {
            ScoringScheme::Positional(v) => checked(v, false),
            ScoringScheme::NormalizedPositional(v) => checked(v, true),
            ScoringScheme::Borda => Ok(Some((ScoringVector::borda(m).weights.clone(), false))),
            ScoringScheme::NormalizedBorda => {
                Ok(Some((ScoringVector::borda(m).weights.clone(), true)))
            }
            ScoringScheme::Plurality => {
                Ok(Some((ScoringVector::plurality(m).weights.clone(), false)))
            }
            ScoringScheme::NormalizedPlurality => {
                Ok(Some((ScoringVector::plurality(m).weights.clone(), true)))
            }
            ScoringScheme::CopelandSymmetric | ScoringScheme::CopelandAsymmetric => Ok(None),
        }
    }

    /// True when the scheme is positional and normalized, the hypothesis of
    /// the weak-position-unanimity guarantee for score-based DSFs.
    pub fn is_normalized_positional(&self) -> bool {
        matches!(
            self,
            ScoringScheme::NormalizedPositional(_)
                | ScoringScheme::NormalizedBorda
                | ScoringScheme::NormalizedPlurality
        )
    }

    /// CLI grammar: `borda`, `nborda`, `plurality`, `copeland`,
    /// `copeland-asym`, `vec:3,2,1,0`, `nvec:3,2,1,1/100`.
    pub fn parse(spec: &str) -> Result<ScoringScheme> {
        let parse_vec = |body: &str| -> Result<ScoringVector> {
            let weights = body
                .split(',')
                .map(parse_rat)
                .collect::<Result<Vec<Rat>>>()?;
            if weights.is_empty() {
                return Err(Error::InvalidScheme(spec.to_string()));
            }
            Ok(ScoringVector::new(weights))
        };
        match spec {
            "borda" => Ok(ScoringScheme::Borda),
            "nborda" => Ok(ScoringScheme::NormalizedBorda),
            "plurality" => Ok(ScoringScheme::Plurality),
            "nplurality" => Ok(ScoringScheme::NormalizedPlurality),
            "copeland" => Ok(ScoringScheme::CopelandSymmetric),
            "copeland-asym" => Ok(ScoringScheme::CopelandAsymmetric),
            _ => {
                if let Some(body) = spec.strip_prefix("vec:") {
                    Ok(ScoringScheme::Positional(parse_vec(body)?))
                } else if let Some(body) = spec.strip_prefix("nvec:") {
                    Ok(ScoringScheme::NormalizedPositional(parse_vec(body)?))
                } else {
                    Err(Error::InvalidScheme(spec.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for ScoringScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringScheme::Positional(v) => {
                write!(f, "vec:{}", v.weights().iter().map(format_rat).collect::<Vec<_>>().join(","))
            }
            ScoringScheme::NormalizedPositional(v) => {
                write!(f, "nvec:{}", v.weights().iter().map(format_rat).collect::<Vec<_>>().join(","))
            }
            ScoringScheme::Borda => write!(f, "borda"),
            ScoringScheme::NormalizedBorda => write!(f, "nborda"),
            ScoringScheme::Plurality => write!(f, "plurality"),
            ScoringScheme::NormalizedPlurality => write!(f, "nplurality"),
            ScoringScheme::CopelandSymmetric => write!(f, "copeland"),
            ScoringScheme::CopelandAsymmetric => write!(f, "copeland-asym"),
        }
    }
}

/// s(sub, x). Errors on an empty subprofile; the 0-conventions of the
/// div functions live in their callers, never here.
pub fn score(scheme: &ScoringScheme, sub: &SubProfile, x: usize) -> Result<Rat> {
    if sub.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if x >= sub.m() {
        return Err(Error::UnknownProposal { index: x, m: sub.m() });
    }
    match scheme.positional_vector(sub.m())? {
        Some((weights, normalized)) => {
            let mut total = Rat::zero();
            for (_, r) in sub.entries() {
                total += weights[r.position_of(x) - 1].clone();
            }
            if normalized {
                total /= rat(sub.n() as i64);
            }
            Ok(total)
        }
        None => copeland(scheme, sub, x),
    }
}

/// Strict pairwise majorities within the subprofile; ties contribute 0 to
/// both Copeland variants.
fn copeland(scheme: &ScoringScheme, sub: &SubProfile, x: usize) -> Result<Rat> {
    let n = sub.n();
    let mut wins = 0i64;
    let mut losses = 0i64;
    for y in 0..sub.m() {
        if y == x {
            continue;
        }
        let above = sub
            .entries()
            .iter()
            .filter(|(_, r)| r.prefers(x, y))
            .count();
        if 2 * above > n {
            wins += 1;
        } else if 2 * above < n {
            losses += 1;
        }
    }
    match scheme {
        ScoringScheme::CopelandAsymmetric => Ok(rat(wins)),
        ScoringScheme::CopelandSymmetric => Ok(rat(wins - losses)),
        _ => unreachable!("copeland called on a positional scheme"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Profile, ProposalSet};
    use crate::rat::ratio;

    #[test]
    fn borda_single_ranking() {
        // m = 4, ranking a > b > c > d: Borda vector (3,2,1,0) gives a -> 3.
        let r = Profile::from_letter_rows(4, &["abcd"]).unwrap();
        assert_eq!(score(&ScoringScheme::Borda, &r, 0).unwrap(), rat(3));
        assert_eq!(score(&ScoringScheme::Borda, &r, 3).unwrap(), rat(0));
    }

    #[test]
    fn plurality_counts_tops() {
        let r = Profile::from_letter_rows(3, &["abc", "acb"]).unwrap();
        assert_eq!(score(&ScoringScheme::Plurality, &r, 0).unwrap(), rat(2));
        let nplur = ScoringScheme::NormalizedPlurality;
        assert_eq!(score(&nplur, &r, 0).unwrap(), rat(1));
    }

    #[test]
    fn normalized_borda_on_example3_coalition() {
        let proposals = ProposalSet::from_labels(&["a", "b", "c", "x", "y"]).unwrap();
        let orders = vec![
            vec![0, 3, 4, 1, 2],
            vec![1, 3, 4, 2, 0],
            vec![2, 3, 4, 0, 1],
        ];
        let r = Profile::from_orders(proposals.clone(), &orders).unwrap();
        let sub = r.restrict(&[1, 2].into()).unwrap();
        let x = proposals.index_of("x").unwrap();
        // x sits second in both rankings: Borda sum 6 over 2 agents.
        assert_eq!(score(&ScoringScheme::NormalizedBorda, &sub, x).unwrap(), rat(3));
    }

    #[test]
    fn empty_coalition_is_an_error() {
        let r = Profile::from_letter_rows(2, &["ab"]).unwrap();
        let empty = r.restrict(&Default::default()).unwrap();
        assert!(matches!(
            score(&ScoringScheme::Borda, &empty, 0),
            Err(Error::EmptyCoalition)
        ));
    }

    #[test]
    fn copeland_variants() {
        let r = Profile::from_letter_rows(3, &["abc", "bca", "cab"]).unwrap();
        // Perfect majority cycle: each proposal beats one and loses one.
        for x in 0..3 {
            assert_eq!(score(&ScoringScheme::CopelandAsymmetric, &r, x).unwrap(), rat(1));
            assert_eq!(score(&ScoringScheme::CopelandSymmetric, &r, x).unwrap(), rat(0));
        }
        // A pairwise tie contributes to neither variant.
        let tied = Profile::from_letter_rows(2, &["ab", "ba"]).unwrap();
        assert_eq!(score(&ScoringScheme::CopelandAsymmetric, &tied, 0).unwrap(), rat(0));
        assert_eq!(score(&ScoringScheme::CopelandSymmetric, &tied, 0).unwrap(), rat(0));
    }

    #[test]
    fn scheme_grammar_round_trip() {
        for s in ["borda", "nborda", "plurality", "copeland", "copeland-asym", "vec:3,2,1,0", "nvec:3,2,1,1/100"] {
            let scheme = ScoringScheme::parse(s).unwrap();
            assert_eq!(scheme.to_string(), s);
        }
        assert!(ScoringScheme::parse("nvec:").is_err());
        assert!(ScoringScheme::parse("vec:1,x").is_err());
        assert!(ScoringScheme::parse("bogus").is_err());
    }

    #[test]
    fn epsilon_validation() {
        assert!(validate_epsilon(4, &ratio(1, 100)).is_ok());
        assert!(validate_epsilon(100, &ratio(1, 100)).is_err());
    }

    #[test]
    fn vector_length_mismatch_rejected() {
        let r = Profile::from_letter_rows(3, &["abc"]).unwrap();
        let scheme = ScoringScheme::Positional(ScoringVector::borda(4));
        assert!(score(&scheme, &r, 0).is_err());
    }

    #[test]
    fn positional_scores_are_linear_over_partitions() {
        let r = Profile::from_letter_rows(3, &["abc", "bca", "cab", "cba"]).unwrap();
        let left = r.restrict(&[0, 2].into()).unwrap();
        let right = r.restrict(&[1, 3].into()).unwrap();
        for x in 0..3 {
            let whole = score(&ScoringScheme::Borda, &r, x).unwrap();
            let split = score(&ScoringScheme::Borda, &left, x).unwrap()
                + score(&ScoringScheme::Borda, &right, x).unwrap();
            assert_eq!(whole, split);
        }
    }
}
