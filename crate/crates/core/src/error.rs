use thiserror::Error;

/// Errors produced by profile construction, scoring, and DSF evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown agent id {0}")]
    UnknownAgent(u32),
    #[error("proposal index {index} out of range (m = {m})")]
    UnknownProposal { index: usize, m: usize },
    #[error("proposals must be distinct: got x = y = {0}")]
    IdenticalProposals(usize),
    #[error("profile must contain at least one agent")]
    EmptyProfile,
    #[error("duplicate agent id {0}")]
    DuplicateAgent(u32),
    #[error("ranking is not a permutation of 0..{m}")]
    InvalidRanking { m: usize },
    #[error("proposal sets do not match")]
    ProposalSetMismatch,
    #[error("proposal labels must be pairwise distinct")]
    DuplicateLabel,
    #[error("empty proposal set")]
    EmptyProposalSet,
    #[error("agent id sets overlap (shared id {0})")]
    OverlappingAgents(u32),
    #[error("mapping is not injective on the profile's agents")]
    NotInjective,
    #[error("mapping is not a permutation of the proposals")]
    NotAPermutation,
    #[error("score is undefined on an empty coalition")]
    EmptyCoalition,
    #[error("electorate of size {n} exceeds the exact enumeration cap {cap}; use Monte Carlo sampling")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("electorate of size {0} exceeds the bipartition mask width (64 agents)")]
    ElectorateTooLarge(usize),
    #[error("invalid scheme specification `{0}`")]
    InvalidScheme(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("epsilon vector requires |N|*eps < 1 (|N| = {n}, eps = {eps})")]
    EpsilonTooLarge { n: usize, eps: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
