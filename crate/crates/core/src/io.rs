//! Profile ingestion and report emission.
//!
//! Two text formats are supported: a PrefLib-style strict-order-complete
//! format (`soc`) and a compact native format (`lines`) with one ranking per
//! line, e.g. `2x a>b>c`. Parsing assigns agent ids 0..n in file order;
//! emission writes runs of consecutive identical rankings with a count, so
//! parse -> emit -> parse is the identity on the parsed profile.

use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

use crate::dsf::{Direction, DivisivenessReport};
use crate::error::{Error, Result};
use crate::profile::{Profile, ProposalSet, Ranking};
use crate::rat::{approx, format_rat, parse_rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFormat {
    PreflibSoc,
    NativeLines,
}

impl ProfileFormat {
    pub fn parse(name: &str) -> Result<ProfileFormat> {
        match name {
            "soc" | "preflib-soc" => Ok(ProfileFormat::PreflibSoc),
            "lines" | "native-lines" => Ok(ProfileFormat::NativeLines),
            _ => Err(Error::InvalidScheme(name.to_string())),
        }
    }
}

impl fmt::Display for ProfileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileFormat::PreflibSoc => write!(f, "preflib-soc"),
            ProfileFormat::NativeLines => write!(f, "native-lines"),
        }
    }
}

/// A parsed profile together with its provenance.
#[derive(Debug, Clone)]
pub struct ProfileDocument {
    pub source: Option<String>,
    pub format: ProfileFormat,
    pub profile: Profile,
    pub title: Option<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_profile(text: &str, format: ProfileFormat) -> Result<ProfileDocument> {
    match format {
        ProfileFormat::PreflibSoc => parse_soc(text),
        ProfileFormat::NativeLines => parse_native(text),
    }
}

fn parse_soc(text: &str) -> Result<ProfileDocument> {
    let mut title = None;
    let mut declared_m: Option<usize> = None;
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut ballots: Vec<(usize, usize, Vec<usize>)> = Vec::new(); // (line, count, 1-based alts)

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some((key, value)) = meta.split_once(':') {
                let (key, value) = (key.trim(), value.trim());
                if key.eq_ignore_ascii_case("TITLE") {
                    title = Some(value.to_string());
                } else if key.eq_ignore_ascii_case("NUMBER ALTERNATIVES") {
                    declared_m = Some(value.parse().map_err(|_| {
                        parse_err(lineno, format!("bad alternative count `{value}`"))
                    })?);
                } else if let Some(i) = key
                    .to_ascii_uppercase()
                    .strip_prefix("ALTERNATIVE NAME ")
                    .and_then(|i| i.trim().parse::<usize>().ok())
                {
                    if i == 0 {
                        return Err(parse_err(lineno, "alternative numbers are 1-based"));
                    }
                    names.push((i, value.to_string()));
                }
                // Other header keys (NUMBER VOTERS, DATA TYPE, ...) are informational.
            }
            continue;
        }
        if line.contains('{') || line.contains('}') {
            return Err(parse_err(lineno, "ties are not supported; strict orders only"));
        }
        let (count, order) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `count: c1,c2,...`"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad ballot count `{}`", count.trim())))?;
        if count == 0 {
            return Err(parse_err(lineno, "ballot count must be positive"));
        }
        let alts = order
            .split(',')
            .map(|item| {
                let item = item.trim();
                item.parse::<usize>()
                    .ok()
                    .filter(|&a| a >= 1)
                    .ok_or_else(|| parse_err(lineno, format!("bad alternative `{item}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        ballots.push((lineno, count, alts));
    }

    if ballots.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let m = declared_m
        .or_else(|| names.iter().map(|&(i, _)| i).max())
        .unwrap_or_else(|| ballots[0].2.len());

    let proposals = if names.is_empty() {
        ProposalSet::lettered(m)
    } else {
        let mut labels = vec![None; m];
        for (i, name) in names {
            if i > m {
                return Err(parse_err(0, format!("alternative {i} exceeds count {m}")));
            }
            labels[i - 1] = Some(name);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, name)| name.ok_or_else(|| parse_err(0, format!("alternative {} unnamed", i + 1))))
            .collect::<Result<Vec<String>>>()?;
        ProposalSet::from_labels(&labels)?
    };

    let mut entries = Vec::new();
    for (lineno, count, alts) in ballots {
        let order: Vec<usize> = alts.iter().map(|&a| a - 1).collect();
        if order.iter().any(|&x| x >= m) {
            return Err(parse_err(lineno, format!("alternative out of range 1..={m}")));
        }
        let ranking = Ranking::new(order)
            .map_err(|_| parse_err(lineno, "ballot is not a complete strict order"))?;
        for _ in 0..count {
            entries.push((entries.len() as u32, ranking.clone()));
        }
    }

    Ok(ProfileDocument {
        source: None,
        format: ProfileFormat::PreflibSoc,
        profile: Profile::new(proposals, entries)?,
        title,
    })
}

fn parse_native(text: &str) -> Result<ProfileDocument> {
    let mut title = None;
    let mut declared: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, usize, Vec<String>)> = Vec::new(); // (line, count, labels)

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            if let Some((key, value)) = meta.trim().split_once(':') {
                let (key, value) = (key.trim(), value.trim());
                if key.eq_ignore_ascii_case("proposals") {
                    declared = Some(value.split(',').map(|s| s.trim().to_string()).collect());
                } else if key.eq_ignore_ascii_case("title") {
                    title = Some(value.to_string());
                }
            }
            continue;
        }

        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (count, rest) = match tokens.as_slice() {
            [mult, rest @ ..] if !rest.is_empty() => {
                if let Some(k) = mult.strip_suffix('x').and_then(|k| k.parse::<usize>().ok()) {
                    (k, rest)
                } else if let Ok(k) = mult.parse::<usize>() {
                    // `k x a>b>c` with a detached multiplier marker.
                    match rest {
                        ["x", tail @ ..] if !tail.is_empty() => (k, tail),
                        _ => (1, tokens.as_slice()),
                    }
                } else {
                    (1, tokens.as_slice())
                }
            }
            _ => (1, tokens.as_slice()),
        };
        if count == 0 {
            return Err(parse_err(lineno, "multiplier must be positive"));
        }
        let labels: Vec<String> = rest
            .join("")
            .split('>')
            .map(|s| s.trim().to_string())
            .collect();
        if labels.iter().any(String::is_empty) {
            return Err(parse_err(lineno, "expected labels separated by `>`"));
        }
        rows.push((lineno, count, labels));
    }

    if rows.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let proposals = match declared {
        Some(labels) => ProposalSet::from_labels(&labels)?,
        None => {
            // Distinct sorted labels from the first ballot; a repeated label
            // there surfaces as a length mismatch with a line number below.
            let labels: std::collections::BTreeSet<&String> = rows[0].2.iter().collect();
            let labels: Vec<&String> = labels.into_iter().collect();
            ProposalSet::from_labels(&labels)?
        }
    };

    let m = proposals.m();
    let mut entries = Vec::new();
    for (lineno, count, labels) in rows {
        if labels.len() != m {
            return Err(parse_err(lineno, format!("expected {m} labels, got {}", labels.len())));
        }
        let order = labels
            .iter()
            .map(|label| {
                proposals
                    .index_of(label)
                    .ok_or_else(|| parse_err(lineno, format!("unknown proposal `{label}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let ranking = Ranking::new(order)
            .map_err(|_| parse_err(lineno, "ranking is not a permutation of the proposals"))?;
        for _ in 0..count {
            entries.push((entries.len() as u32, ranking.clone()));
        }
    }

    Ok(ProfileDocument {
        source: None,
        format: ProfileFormat::NativeLines,
        profile: Profile::new(proposals, entries)?,
        title,
    })
}

/// Runs of consecutive identical rankings, preserving agent order.
fn ranking_runs(profile: &Profile) -> Vec<(usize, &Ranking)> {
    let mut runs: Vec<(usize, &Ranking)> = Vec::new();
    for (_, ranking) in profile.entries() {
        match runs.last_mut() {
            Some((count, last)) if *last == ranking => *count += 1,
            _ => runs.push((1, ranking)),
        }
    }
    runs
}

pub fn emit_profile(doc: &ProfileDocument) -> String {
    let profile = &doc.profile;
    let names = profile.proposals().names();
    let mut out = String::new();
    match doc.format {
        ProfileFormat::PreflibSoc => {
            if let Some(title) = &doc.title {
                out.push_str(&format!("# TITLE: {title}\n"));
            }
            out.push_str(&format!("# NUMBER ALTERNATIVES: {}\n", profile.m()));
            for (i, name) in names.iter().enumerate() {
                out.push_str(&format!("# ALTERNATIVE NAME {}: {name}\n", i + 1));
            }
            out.push_str(&format!("# NUMBER VOTERS: {}\n", profile.n()));
            for (count, ranking) in ranking_runs(profile) {
                let alts: Vec<String> =
                    ranking.order().iter().map(|&x| (x + 1).to_string()).collect();
                out.push_str(&format!("{count}: {}\n", alts.join(",")));
            }
        }
        ProfileFormat::NativeLines => {
            if let Some(title) = &doc.title {
                out.push_str(&format!("# title: {title}\n"));
            }
            out.push_str(&format!("# proposals: {}\n", names.join(",")));
            for (count, ranking) in ranking_runs(profile) {
                let row: Vec<&str> =
                    ranking.order().iter().map(|&x| names[x].as_str()).collect();
                if count == 1 {
                    out.push_str(&format!("{}\n", row.join(">")));
                } else {
                    out.push_str(&format!("{count}x {}\n", row.join(">")));
                }
            }
        }
    }
    out
}

/// Output style for reports: aligned columns or stable-key structured text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStyle {
    Table,
    Machine,
}

impl ReportStyle {
    pub fn parse(name: &str) -> Result<ReportStyle> {
        match name {
            "table" => Ok(ReportStyle::Table),
            "json" | "machine" => Ok(ReportStyle::Machine),
            _ => Err(Error::InvalidScheme(name.to_string())),
        }
    }
}

/// A divisiveness report bound to proposal labels, ready for emission.
#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub method: String,
    pub proposals: Vec<String>,
    pub values: Vec<Rat>,
    pub std_errors: Option<Vec<f64>>,
    pub direction: Direction,
    /// Selected proposals, by label, in proposal order.
    pub selection: Vec<String>,
    pub sampling: Option<(u64, u64)>, // (samples, seed)
    /// Advisory timing, shown only in table output to keep machine output
    /// byte-stable across runs.
    pub elapsed: Option<Duration>,
}

impl ReportDocument {
    pub fn new(profile: &Profile, report: &DivisivenessReport, elapsed: Option<Duration>) -> Self {
        let names = profile.proposals().names();
        ReportDocument {
            method: report.method.clone(),
            proposals: names.to_vec(),
            values: report.values.clone(),
            std_errors: report.std_errors.clone(),
            direction: report.direction,
            selection: report.selection.iter().map(|&x| names[x].clone()).collect(),
            sampling: report.sampling,
            elapsed,
        }
    }
}

/// Six significant digits; the exact rational remains the normative value.
pub fn decimal_companion(r: &Rat) -> String {
    let f = approx(r);
    if f == 0.0 {
        return "0".to_string();
    }
    let magnitude = f.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{f:.decimals$}")
}

pub fn emit_report(doc: &ReportDocument, style: ReportStyle) -> String {
    match style {
        ReportStyle::Table => emit_table(doc),
        ReportStyle::Machine => emit_machine(doc),
    }
}

fn emit_table(doc: &ReportDocument) -> String {
    let mut out = format!("method: {}\n", doc.method);
    if let Some((samples, seed)) = doc.sampling {
        out.push_str(&format!("sampling: {samples} samples, seed {seed}\n"));
    }
    let width = doc.proposals.iter().map(String::len).max().unwrap_or(1);
    let value_width = doc.values.iter().map(|v| format_rat(v).len()).max().unwrap_or(1);
    for (i, name) in doc.proposals.iter().enumerate() {
        let mut line = format!(
            "  {name:<width$} = {:>value_width$} ({})",
            format_rat(&doc.values[i]),
            decimal_companion(&doc.values[i]),
        );
        if let Some(errs) = &doc.std_errors {
            line.push_str(&format!(" +/- {:.6}", errs[i]));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("selection: {}\n", doc.selection.join(" ")));
    if let Some(elapsed) = doc.elapsed {
        out.push_str(&format!("elapsed: {:.3}s\n", elapsed.as_secs_f64()));
    }
    out
}

fn emit_machine(doc: &ReportDocument) -> String {
    // serde_json's default map is ordered by key, so output is stable.
    let mut root = json!({
        "method": doc.method,
        "direction": match doc.direction {
            Direction::Max => "max",
            Direction::Min => "min",
        },
        "proposals": doc.proposals,
        "values": doc.values.iter().map(format_rat).collect::<Vec<_>>(),
        "approx": doc.values.iter().map(decimal_companion).collect::<Vec<_>>(),
        "selection": doc.selection,
    });
    if let Some(errs) = &doc.std_errors {
        root["std_errors"] = json!(errs);
    }
    if let Some((samples, seed)) = doc.sampling {
        root["sampling"] = json!({ "samples": samples, "seed": seed });
    }
    let mut out = serde_json::to_string_pretty(&root).expect("report serializes");
    out.push('\n');
    out
}

/// Parses machine-readable report output back into a document. Intended for
/// downstream tooling and round-trip tests; timing is never round-tripped.
pub fn parse_report(text: &str) -> Result<ReportDocument> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let strings = |key: &str| -> Result<Vec<String>> {
        root[key]
            .as_array()
            .ok_or_else(|| parse_err(0, format!("missing array `{key}`")))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| parse_err(0, format!("non-string entry in `{key}`")))
            })
            .collect()
    };
    let values = strings("values")?
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<Rat>>>()?;
    let std_errors = match root.get("std_errors") {
        Some(Value::Array(errs)) => Some(
            errs.iter()
                .map(|v| v.as_f64().ok_or_else(|| parse_err(0, "bad std_errors entry")))
                .collect::<Result<Vec<f64>>>()?,
        ),
        _ => None,
    };
    let sampling = root.get("sampling").and_then(|s| {
        Some((s.get("samples")?.as_u64()?, s.get("seed")?.as_u64()?))
    });
    let direction = match root["direction"].as_str() {
        Some("min") => Direction::Min,
        _ => Direction::Max,
    };
    Ok(ReportDocument {
        method: root["method"].as_str().unwrap_or_default().to_string(),
        proposals: strings("proposals")?,
        values,
        std_errors,
        direction,
        selection: strings("selection")?,
        sampling,
        elapsed: None,
    })
}
