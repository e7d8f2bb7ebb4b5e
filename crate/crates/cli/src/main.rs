//! `divisive`: compute the most divisive proposals of a ranked-preference
//! profile and probe divisiveness measures for their normative properties.
//!
//! Exit codes: 0 on success/pass, 1 when an axiom violation or fixture
//! mismatch is found, 2 on usage or parse errors.

mod fixtures;

use std::io::Read as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use divisive_core::axioms::{
    check_axiom, search_counterexample, verify_mutual_exclusion, verify_theorem_1,
    verify_theorem_2, verify_theorem_3, AxiomId, CheckOptions, CheckStatus, GeneratorSpec,
    SearchResult, TheoremCertificate,
};
use divisive_core::dsf::{DecompositionScheme, Dsf, DEFAULT_EXACT_CAP};
use divisive_core::indices::ProfileIndex;
use divisive_core::io::{
    emit_profile, emit_report, parse_profile, ProfileDocument, ProfileFormat, ReportDocument,
    ReportStyle,
};
use divisive_core::scoring::ScoringScheme;
use divisive_core::voting::Scf;

#[derive(Parser)]
#[command(name = "divisive", version, about = "Divisiveness analysis of ranked-preference profiles")]
struct Cli {
    /// Input profile format.
    #[arg(long, global = true, default_value = "lines")]
    format: String,
    /// Report style: `table` or `json`.
    #[arg(long, global = true, default_value = "table")]
    output: String,
    /// Seed for Monte Carlo sampling and sampled permutation sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest electorate enumerated exactly; beyond it, use `--sampling mc:N`.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    #[command(subcommand)]
    command: Command,
}

/// Which DSF to run, shared by `analyze`, `axioms`, and `search`.
#[derive(Args)]
struct DsfArgs {
    /// DSF family: `rankvar`, `navarrete`, `score`, `scf`, or `index`.
    #[arg(long, default_value = "score")]
    dsf: String,
    /// Scoring scheme for `navarrete`/`score`: `borda`, `nborda`,
    /// `plurality`, `copeland`, `copeland-asym`, `vec:3,2,1,0`, `nvec:...`.
    #[arg(long, default_value = "nborda")]
    scheme: String,
    /// Social choice function for `scf`: `borda`, `plurality`, or `vec:...`.
    #[arg(long, default_value = "borda")]
    scf: String,
    /// Profile index for `index`: `kendall` or `const:p/q`.
    #[arg(long, default_value = "kendall")]
    index: String,
    /// Bipartition treatment for `score`/`scf`: `exact` or `mc:<samples>`.
    #[arg(long, default_value = "exact")]
    sampling: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute divisiveness values and the selected proposals.
    Analyze {
        #[command(flatten)]
        dsf: DsfArgs,
        /// Profile file, or `-` for stdin.
        file: String,
    },
    /// Check one axiom (or all ten) for a DSF on a profile.
    Axioms {
        #[command(flatten)]
        dsf: DsfArgs,
        /// Axiom name, or `all`.
        #[arg(long, default_value = "all")]
        axiom: String,
        file: String,
    },
    /// Search bounded profile spaces for an axiom violation.
    Search {
        #[command(flatten)]
        dsf: DsfArgs,
        #[arg(long)]
        axiom: String,
        /// Exhaustive bounds (used unless --random is given).
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Number of random profiles; switches to random generation.
        #[arg(long)]
        random: Option<usize>,
        /// Proposals per random profile.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Agents per random profile.
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Verify an impossibility certificate: thm1, thm2, thm3, or exclusion.
    Verify { name: String },
    /// Re-run a named fixture and compare with its recorded outcome.
    Repro {
        /// One of ex1, ex2, ex3, prop3, plurality-pu, thm1, thm2, thm3,
        /// exclusion — or `all`.
        name: String,
    },
    /// Convert a profile between formats.
    Convert {
        /// Output format (`soc` or `lines`).
        #[arg(long)]
        to: String,
        file: String,
    },
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_profile(path: &str, format: &str) -> anyhow::Result<ProfileDocument> {
    let format = ProfileFormat::parse(format)?;
    let text = read_input(path)?;
    let mut doc = parse_profile(&text, format)?;
    if path != "-" {
        doc.source = Some(path.to_string());
    }
    Ok(doc)
}

fn build_dsf(args: &DsfArgs, seed: u64, exact_cap: usize) -> anyhow::Result<Dsf> {
    let decomposition = || DecompositionScheme::parse(&args.sampling, seed);
    Ok(match args.dsf.as_str() {
        "rankvar" => Dsf::RankVariance,
        "navarrete" => Dsf::Navarrete(ScoringScheme::parse(&args.scheme)?),
        "score" => Dsf::ScoreBased {
            scheme: ScoringScheme::parse(&args.scheme)?,
            decomposition: decomposition()?,
            exact_cap,
        },
        "scf" => Dsf::ScfBased {
            scf: Scf::parse(&args.scf)?,
            decomposition: decomposition()?,
            exact_cap,
        },
        "index" => Dsf::IndexBased(ProfileIndex::parse(&args.index)?),
        other => anyhow::bail!("unknown DSF family `{other}`"),
    })
}

fn outcome_lines(axiom: AxiomId, outcome: &divisive_core::axioms::CheckOutcome) -> Vec<String> {
    let status = match outcome.status {
        CheckStatus::Pass if outcome.exhaustive => "pass",
        CheckStatus::Pass => "pass (within budget)",
        CheckStatus::Violation => "VIOLATION",
        CheckStatus::Inapplicable => "inapplicable",
    };
    let mut lines = vec![format!("{axiom}: {status}")];
    if let Some(witness) = &outcome.witness {
        lines.push(format!("  {}", witness.detail));
        for (agent, ranking) in witness.profile.entries() {
            let names: Vec<&str> = ranking
                .order()
                .iter()
                .map(|&x| witness.profile.proposals().name(x))
                .collect();
            lines.push(format!("  agent {agent}: {}", names.join(">")));
        }
    }
    lines
}

fn print_certificate(cert: &TheoremCertificate) {
    println!("{}", cert.theorem);
    for note in &cert.notes {
        println!("note: {note}");
    }
    for rejection in &cert.rejections {
        println!("  {{{}}} rejected: {}", rejection.candidate.join(","), rejection.reason);
    }
    println!("certificate: {}", if cert.holds { "complete" } else { "INCOMPLETE" });
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let style = ReportStyle::parse(&cli.output)?;

    match &cli.command {
        Command::Analyze { dsf, file } => {
            let doc = load_profile(file, &cli.format)?;
            let dsf = build_dsf(dsf, cli.seed, cli.exact_cap)?;
            let started = Instant::now();
            let report = dsf.evaluate(&doc.profile)?;
            let elapsed = (style == ReportStyle::Table).then(|| started.elapsed());
            let doc = ReportDocument::new(&doc.profile, &report, elapsed);
            print!("{}", emit_report(&doc, style));
            Ok(ExitCode::SUCCESS)
        }
        Command::Axioms { dsf, axiom, file } => {
            let doc = load_profile(file, &cli.format)?;
            let dsf = build_dsf(dsf, cli.seed, cli.exact_cap)?;
            let axioms: Vec<AxiomId> = if axiom == "all" {
                AxiomId::ALL.to_vec()
            } else {
                vec![AxiomId::parse(axiom)?]
            };
            let opts = CheckOptions { seed: cli.seed, ..CheckOptions::default() };
            let mut violated = false;
            for axiom in axioms {
                let outcome = check_axiom(&dsf, axiom, &doc.profile, &opts)?;
                violated |= outcome.is_violation();
                for line in outcome_lines(axiom, &outcome) {
                    println!("{line}");
                }
            }
            Ok(if violated { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Search { dsf, axiom, max_m, max_n, random, m, n } => {
            let dsf = build_dsf(dsf, cli.seed, cli.exact_cap)?;
            let axiom = AxiomId::parse(axiom)?;
            let gen = match random {
                Some(count) => GeneratorSpec::Random { count: *count, seed: cli.seed, m: *m, n: *n },
                None => GeneratorSpec::Exhaustive { max_m: *max_m, max_n: *max_n },
            };
            let opts = CheckOptions { seed: cli.seed, ..CheckOptions::default() };
            match search_counterexample(&dsf, axiom, &gen, &opts)? {
                SearchResult::Violation { index, outcome } => {
                    println!("violation at profile #{index}");
                    if let Some(witness) = &outcome.witness {
                        println!("{}", witness.detail);
                        for line in outcome_lines(axiom, &outcome).into_iter().skip(1) {
                            println!("{line}");
                        }
                    }
                    Ok(ExitCode::from(1))
                }
                SearchResult::Exhausted { checked } => {
                    println!("no violation among {checked} profiles");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Verify { name } => {
            let cert = match name.as_str() {
                "thm1" => verify_theorem_1()?,
                "thm2" => verify_theorem_2()?,
                "thm3" => verify_theorem_3()?,
                "exclusion" => verify_mutual_exclusion()?,
                other => anyhow::bail!("unknown certificate `{other}`"),
            };
            print_certificate(&cert);
            Ok(if cert.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Repro { name } => {
            let names: Vec<&str> = if name == "all" {
                fixtures::FIXTURES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut failed = false;
            for name in names {
                let report = fixtures::run_fixture(name)?;
                println!("{}: {}", report.name, if report.pass { "pass" } else { "FAIL" });
                for line in &report.lines {
                    println!("  {line}");
                }
                failed |= !report.pass;
            }
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Convert { to, file } => {
            let doc = load_profile(file, &cli.format)?;
            let doc = ProfileDocument { format: ProfileFormat::parse(to)?, ..doc };
            print!("{}", emit_profile(&doc));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            // Bad specs, unreadable files, and parse failures are all usage
            // errors; violations and mismatches return 1 from run() itself.
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
