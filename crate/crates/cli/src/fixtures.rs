//! Named reference fixtures: small profiles with known-correct outcomes,
//! re-run end to end by `divisive repro`. Each fixture rebuilds its profile
//! from scratch, runs the designated method, and diffs against the expected
//! result, so any regression in the engine shows up as a concrete mismatch.

use std::collections::BTreeSet;

use anyhow::Result;
use divisive_core::axioms::{
    check_axiom, verify_mutual_exclusion, verify_theorem_1, verify_theorem_2, verify_theorem_3,
    AxiomId, CheckOptions, CheckStatus, TheoremCertificate,
};
use divisive_core::dsf::{navarrete_dsf, rank_variance_dsf, scf_based_dsf, DecompositionScheme, Dsf};
use divisive_core::profile::{Profile, ProposalSet};
use divisive_core::rat::{format_rat, rat};
use divisive_core::scoring::ScoringScheme;
use divisive_core::voting::Scf;

pub const FIXTURES: [&str; 9] = [
    "ex1", "ex2", "ex3", "prop3", "plurality-pu", "thm1", "thm2", "thm3", "exclusion",
];

pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    /// One line per comparison: `ok: ...` or `MISMATCH: expected ... got ...`.
    pub lines: Vec<String>,
}

impl FixtureReport {
    fn new(name: &str) -> Self {
        FixtureReport { name: name.to_string(), pass: true, lines: Vec::new() }
    }

    fn expect_selection(&mut self, what: &str, got: &BTreeSet<usize>, names: &[&str], profile: &Profile) {
        let got_names: Vec<&str> = got
            .iter()
            .map(|&x| profile.proposals().name(x))
            .collect();
        if got_names == names {
            self.lines.push(format!("ok: {what} selects {{{}}}", names.join(",")));
        } else {
            self.pass = false;
            self.lines.push(format!(
                "MISMATCH: {what} expected {{{}}} got {{{}}}",
                names.join(","),
                got_names.join(",")
            ));
        }
    }

    fn expect(&mut self, what: &str, ok: bool, detail: String) {
        if ok {
            self.lines.push(format!("ok: {what}"));
        } else {
            self.pass = false;
            self.lines.push(format!("MISMATCH: {what}: {detail}"));
        }
    }
}

pub fn run_fixture(name: &str) -> Result<FixtureReport> {
    match name {
        "ex1" => ex1(),
        "ex2" => ex2(),
        "ex3" => ex3(),
        "prop3" => prop3(),
        "plurality-pu" => plurality_pu(),
        "thm1" => theorem(name, verify_theorem_1()?),
        "thm2" => theorem(name, verify_theorem_2()?),
        "thm3" => theorem(name, verify_theorem_3()?),
        "exclusion" => theorem(name, verify_mutual_exclusion()?),
        _ => Err(divisive_core::Error::UnknownFixture(name.to_string()).into()),
    }
}

/// Two near-unanimous camps over four proposals: plain normalized Borda ties
/// all four, while flattening the tail weights isolates the top two.
fn ex1() -> Result<FixtureReport> {
    let mut report = FixtureReport::new("ex1");
    let profile = Profile::from_letter_rows(4, &["abcd", "bacd", "abdc", "badc"])?;

    let borda = navarrete_dsf(&profile, &ScoringScheme::NormalizedBorda)?;
    report.expect_selection("navarrete nborda", &borda.selection, &["a", "b", "c", "d"], &profile);

    let flat = ScoringScheme::parse("nvec:3,2,1,1/100")?;
    let flattened = navarrete_dsf(&profile, &flat)?;
    report.expect_selection("navarrete nvec:3,2,1,1/100", &flattened.selection, &["a", "b"], &profile);
    Ok(report)
}

/// A single swapped pair among Borda ballots: the SCF-based DSF cannot
/// separate any proposal and returns the full set, at n = 2 and n = 4.
fn ex2() -> Result<FixtureReport> {
    let mut report = FixtureReport::new("ex2");
    for rows in [vec!["abc", "acb"], vec!["abc", "abc", "acb", "acb"]] {
        let profile = Profile::from_letter_rows(3, &rows)?;
        let out = scf_based_dsf(
            &profile,
            &Scf::BordaRule,
            &DecompositionScheme::ExactUniform,
            divisive_core::dsf::DEFAULT_EXACT_CAP,
        )?;
        report.expect_selection(
            &format!("scf borda exact, n={}", profile.n()),
            &out.selection,
            &["a", "b", "c"],
            &profile,
        );
    }
    Ok(report)
}

/// Three cyclic camps with x parked second everywhere: x wins with every
/// camp's opposition and loses with its supporters, maximal disagreement.
fn ex3() -> Result<FixtureReport> {
    let mut report = FixtureReport::new("ex3");
    let proposals = ProposalSet::from_labels(&["a", "b", "c", "x", "y"])?;
    let orders = vec![
        vec![0, 3, 4, 1, 2], // a > x > y > b > c
        vec![1, 3, 4, 2, 0], // b > x > y > c > a
        vec![2, 3, 4, 0, 1], // c > x > y > a > b
    ];
    let profile = Profile::from_orders(proposals, &orders)?;
    let out = scf_based_dsf(
        &profile,
        &Scf::BordaRule,
        &DecompositionScheme::ExactUniform,
        divisive_core::dsf::DEFAULT_EXACT_CAP,
    )?;
    report.expect_selection("scf borda exact", &out.selection, &["x"], &profile);
    let x = profile.proposals().index_of("x").unwrap();
    report.expect(
        "value of x is exactly 1",
        out.values[x] == rat(1),
        format!("got {}", format_rat(&out.values[x])),
    );
    Ok(report)
}

/// Diluting a 2-agent profile with one copy of every possible ranking flips
/// the rank-variance selection from {a,b,c,d} to {e}.
fn prop3() -> Result<FixtureReport> {
    let mut report = FixtureReport::new("prop3");
    let small = Profile::from_letter_rows(5, &["abcde", "badce"])?;

    let out = rank_variance_dsf(&small);
    report.expect_selection("rank variance on (abcde,badce)", &out.selection, &["a", "b", "c", "d"], &small);
    let e = 4;
    report.expect(
        "variance of e is exactly 0",
        out.values[e] == rat(0),
        format!("got {}", format_rat(&out.values[e])),
    );

    let uniform = Profile::perfectly_uniform(small.proposals().clone(), 1, small.n() as u32);
    let diluted = small.union(&uniform)?;
    report.expect(
        "union has 122 agents",
        diluted.n() == 122,
        format!("got {}", diluted.n()),
    );
    let out = rank_variance_dsf(&diluted);
    report.expect_selection("rank variance on the 122-agent union", &out.selection, &["e"], &diluted);
    Ok(report)
}

/// Normalized Plurality's score-based DSF ties everything on (abc, acb),
/// so the unanimous top proposal a is selected: a Position Unanimity
/// violation on the smallest possible stage.
fn plurality_pu() -> Result<FixtureReport> {
    let mut report = FixtureReport::new("plurality-pu");
    let profile = Profile::from_letter_rows(3, &["abc", "acb"])?;
    let dsf = Dsf::score_based(
        ScoringScheme::NormalizedPlurality,
        DecompositionScheme::ExactUniform,
    );
    let outcome = check_axiom(&dsf, AxiomId::PositionUnanimity, &profile, &CheckOptions::default())?;
    report.expect(
        "position unanimity is violated",
        outcome.status == CheckStatus::Violation,
        format!("got {:?}", outcome.status),
    );
    if let Some(witness) = &outcome.witness {
        report.lines.push(format!("witness: {}", witness.detail));
    }
    Ok(report)
}

fn theorem(name: &str, cert: TheoremCertificate) -> Result<FixtureReport> {
    let mut report = FixtureReport::new(name);
    report.lines.push(cert.theorem.clone());
    for note in &cert.notes {
        report.lines.push(format!("note: {note}"));
    }
    for rejection in &cert.rejections {
        report.lines.push(format!(
            "  {{{}}} rejected: {}",
            rejection.candidate.join(","),
            rejection.reason
        ));
    }
    report.expect(
        "certificate is complete",
        cert.holds,
        "some candidate selection was not rejected".to_string(),
    );
    Ok(report)
}
