//! Exact analysis of ranked-preference profiles: which proposals divide an
//! electorate the most, under several families of divisiveness measures, and
//! which normative properties those measures satisfy.
//!
//! The crate is organised around a few small layers:
//!
//! - [`profile`]: proposals, strict rankings, profiles, and subprofiles;
//! - [`scoring`], [`voting`], [`indices`]: positional scores, social choice
//!   functions, and whole-profile indices;
//! - [`dsf`]: the divisiveness selection functions themselves, with exact
//!   Gray-code bipartition enumeration and seeded Monte Carlo estimation;
//! - [`axioms`]: instance-level property checks, bounded counterexample
//!   search, and finite certificates for the impossibility results;
//! - [`io`]: profile parsing/emission and report formatting.
//!
//! All values are exact rationals ([`rat::Rat`]); floating point appears only
//! in advisory output (decimal companions, Monte Carlo standard errors).

pub mod axioms;
pub mod dsf;
pub mod error;
pub mod indices;
pub mod io;
pub mod profile;
pub mod rat;
pub mod scoring;
pub mod voting;

pub use error::{Error, Result};
pub use profile::{AgentId, Profile, ProposalSet, Ranking, SubProfile};
pub use rat::Rat;
