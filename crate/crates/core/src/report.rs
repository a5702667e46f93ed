//! Human- and machine-readable renderings of a [`RunResult`].
//!
//! * presentation: text or JSON ([`PresentationDoc`], schema version 1)
//! * witness table: CSV, text, or JSON (full witnesses with certificates)
//! * progress table: CSV, text, or JSON
//! * verification: text or JSON
//!
//! CSV tables have a header row. Witness CSV columns are
//! `iteration,alpha,beta,word1,word2`, where `iteration` is the round number
//! or `residual`. Progress CSV columns are
//! `iteration,anagraphs,commutators`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Letter, LetterSet};
use crate::pipeline::{RunResult, VerificationReport};

pub const PRESENTATION_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl ReportFormat {
    /// Guesses the format from a file extension, defaulting to text.
    pub fn from_path(path: &std::path::Path) -> ReportFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => ReportFormat::Json,
            Some("csv") => ReportFormat::Csv,
            _ => ReportFormat::Text,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{report} cannot be rendered as {format:?}")]
    UnsupportedFormat { report: &'static str, format: ReportFormat },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Missing commutators grouped the way a presentation is usually stated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MissingGroup {
    /// Every pair among a set of hub letters.
    Among { letters: Vec<Letter>, pairs: Vec<(Letter, Letter)> },
    /// Missing pairs of one hub letter with non-hub letters.
    With { letter: Letter, partners: Vec<Letter> },
}

impl MissingGroup {
    pub fn len(&self) -> usize {
        match self {
            MissingGroup::Among { pairs, .. } => pairs.len(),
            MissingGroup::With { partners, .. } => partners.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub schema_version: u32,
    pub generators: String,
    pub relation_count: usize,
    pub relations: Vec<(Letter, Letter)>,
    pub missing_count: usize,
    pub missing: Vec<(Letter, Letter)>,
    pub missing_groups: Vec<MissingGroup>,
    /// Set when every anagram relation follows from the listed commutators.
    pub right_angled_artin_group: bool,
}

impl PresentationDoc {
    pub fn from_result(r: &RunResult) -> Self {
        let relations: Vec<(Letter, Letter)> =
            r.alphabet.pairs().filter(|&(a, b)| r.commutators.contains(a, b)).collect();
        PresentationDoc {
            schema_version: PRESENTATION_SCHEMA_VERSION,
            generators: r.alphabet.as_string(),
            relation_count: relations.len(),
            relations,
            missing_count: r.missing.len(),
            missing: r.missing.clone(),
            missing_groups: group_missing(&r.missing),
            right_angled_artin_group: r.is_right_angled(),
        }
    }
}

/// Picks hub letters by greedy vertex cover of the missing-pair graph
/// (highest remaining degree first, ties alphabetical), then lists the pairs
/// among hubs followed by each hub's pairs with the other letters.
///
/// When the hubs are not pairwise missing, falls back to one group per
/// letter.
pub fn group_missing(missing: &[(Letter, Letter)]) -> Vec<MissingGroup> {
    let mut uncovered: Vec<(Letter, Letter)> = missing.to_vec();
    let mut hubs = LetterSet::EMPTY;
    while !uncovered.is_empty() {
        let mut degree: BTreeMap<Letter, usize> = BTreeMap::new();
        for &(a, b) in &uncovered {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        let (&best, _) = degree.iter().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0))).expect("non-empty");
        hubs.insert(best);
        uncovered.retain(|&(a, b)| a != best && b != best);
    }

    let mut groups = Vec::new();
    let among: Vec<(Letter, Letter)> =
        missing.iter().copied().filter(|&(a, b)| hubs.contains(a) && hubs.contains(b)).collect();
    if among.len() != hubs.len() * hubs.len().saturating_sub(1) / 2 {
        return group_by_first_letter(missing);
    }
    if !among.is_empty() {
        groups.push(MissingGroup::Among { letters: hubs.iter().collect(), pairs: among });
    }
    for hub in hubs.iter() {
        let partners: Vec<Letter> = missing
            .iter()
            .filter_map(|&(a, b)| match (a == hub, b == hub) {
                (true, _) if !hubs.contains(b) => Some(b),
                (_, true) if !hubs.contains(a) => Some(a),
                _ => None,
            })
            .collect();
        if !partners.is_empty() {
            groups.push(MissingGroup::With { letter: hub, partners });
        }
    }
    groups
}

/// One group per letter, listing its missing partners later in the alphabet.
fn group_by_first_letter(missing: &[(Letter, Letter)]) -> Vec<MissingGroup> {
    let mut by_letter: BTreeMap<Letter, Vec<Letter>> = BTreeMap::new();
    for &(a, b) in missing {
        by_letter.entry(a).or_default().push(b);
    }
    by_letter.into_iter().map(|(letter, partners)| MissingGroup::With { letter, partners }).collect()
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        "commutator"
    } else {
        "commutators"
    }
}

pub fn emit_presentation(r: &RunResult, format: ReportFormat) -> Result<String, ReportError> {
    let doc = PresentationDoc::from_result(r);
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(&doc)? + "\n"),
        ReportFormat::Text => Ok(render_presentation_text(&doc)),
        ReportFormat::Csv => Err(ReportError::UnsupportedFormat { report: "presentation", format }),
    }
}

fn render_presentation_text(doc: &PresentationDoc) -> String {
    let total = doc.relation_count + doc.missing_count;
    let mut out = String::new();
    let generators: Vec<char> = doc.generators.chars().collect();
    let _ = writeln!(out, "generators: {}", join(&generators));
    let _ = writeln!(out, "relations: {} of the {} commutators of pairs of generators", doc.relation_count, total);
    if doc.missing_count == 0 {
        let _ = writeln!(out, "missing: none");
    } else {
        let _ = writeln!(out, "missing: {}", doc.missing_count);
        for group in &doc.missing_groups {
            match group {
                MissingGroup::Among { letters, pairs } => {
                    let _ = writeln!(
                        out,
                        "  - the {} {} of each pair of {}",
                        pairs.len(),
                        plural(pairs.len()),
                        join(letters)
                    );
                }
                MissingGroup::With { letter, partners } => {
                    let _ = writeln!(
                        out,
                        "  - the {} {} of {} with {}",
                        partners.len(),
                        plural(partners.len()),
                        letter,
                        join(partners)
                    );
                }
            }
        }
    }
    let class = if doc.right_angled_artin_group {
        "right-angled Artin group (all relations are generator commutators)"
    } else {
        "not established as right-angled: some relations are unresolved or unchecked"
    };
    let _ = writeln!(out, "group: {class}");
    out
}

fn sorted_witnesses(r: &RunResult) -> Vec<&crate::model::CommutatorWitness> {
    let mut rows: Vec<_> = r.witnesses.iter().collect();
    rows.sort_by_key(|w| (w.stage, w.alpha, w.beta));
    rows
}

fn stage_label(stage: crate::model::Stage) -> String {
    stage.to_string()
}

pub fn emit_witness_table(r: &RunResult, format: ReportFormat) -> Result<String, ReportError> {
    let rows = sorted_witnesses(r);
    match format {
        ReportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["iteration", "alpha", "beta", "word1", "word2"])?;
            for w in rows {
                writer.write_record([
                    stage_label(w.stage),
                    w.alpha.to_string(),
                    w.beta.to_string(),
                    w.word1.to_string(),
                    w.word2.to_string(),
                ])?;
            }
            let bytes = writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv of ascii"))
        }
        ReportFormat::Text => {
            let width = rows.iter().map(|w| w.word1.len()).max().unwrap_or(0).max(5);
            let mut out = String::new();
            let _ = writeln!(out, "{:<9}  α  β  {:<width$}  word2", "iteration", "word1");
            for w in rows {
                let _ = write!(
                    out,
                    "{:<9}  {}  {}  {:<width$}  {}",
                    stage_label(w.stage),
                    w.alpha,
                    w.beta,
                    w.word1.as_str(),
                    w.word2
                );
                if !w.chain.is_empty() {
                    let links: Vec<String> = w.chain.iter().map(|(a, b)| format!("{a}={b}")).collect();
                    let _ = write!(out, "  via {}", links.join(", "));
                }
                out.push('\n');
            }
            Ok(out)
        }
        ReportFormat::Json => Ok(serde_json::to_string_pretty(&rows)? + "\n"),
    }
}

pub fn emit_progress(r: &RunResult, format: ReportFormat) -> Result<String, ReportError> {
    match format {
        ReportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["iteration", "anagraphs", "commutators"])?;
            for s in &r.stats {
                writer.write_record([
                    s.iteration.to_string(),
                    s.bucket_count.to_string(),
                    s.cumulative_commutators.to_string(),
                ])?;
            }
            let bytes = writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv of ascii"))
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:>9}  {:>9}  {:>11}", "iteration", "anagraphs", "commutators");
            for s in &r.stats {
                let _ = writeln!(out, "{:>9}  {:>9}  {:>11}", s.iteration, s.bucket_count, s.cumulative_commutators);
            }
            Ok(out)
        }
        ReportFormat::Json => Ok(serde_json::to_string_pretty(&r.stats)? + "\n"),
    }
}

pub fn emit_verification(report: &VerificationReport, format: ReportFormat) -> Result<String, ReportError> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "anagram classes checked: {}\nall relations implied: {}",
                report.classes_checked, report.all_relations_implied
            );
            for (a, b) in &report.failing_pairs {
                let _ = writeln!(out, "  not implied: {a} = {b}");
            }
            let consistent = report.maximality.iter().filter(|m| m.consistent()).count();
            let _ = writeln!(
                out,
                "missing pairs with a single order in every class: {} of {}",
                consistent,
                report.maximality.len()
            );
            for m in report.maximality.iter().filter(|m| !m.consistent()) {
                let _ = writeln!(
                    out,
                    "  [{}, {}]: {} mixed classes, e.g. {} / {}",
                    m.alpha,
                    m.beta,
                    m.violations.len(),
                    m.violations[0].0,
                    m.violations[0].1
                );
            }
            Ok(out)
        }
        ReportFormat::Csv => Err(ReportError::UnsupportedFormat { report: "verification", format }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Dictionary;
    use crate::pipeline::{run, RunConfig};

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    fn pairs(list: &str) -> Vec<(Letter, Letter)> {
        list.split_whitespace()
            .map(|p| {
                let mut cs = p.chars();
                let (a, b) = (l(cs.next().unwrap()), l(cs.next().unwrap()));
                (a.min(b), a.max(b))
            })
            .collect()
    }

    #[test]
    fn grouping_recovers_hub_structure() {
        let mut missing = pairs("jq jx jz qx qz xz jf jk jl jw jy qb qf qg qk qw qy xf xk xv zf zk zv zw");
        missing.sort();
        let groups = group_missing(&missing);
        let lens: Vec<usize> = groups.iter().map(MissingGroup::len).collect();
        assert_eq!(lens, [6, 5, 6, 3, 4]);
        match &groups[0] {
            MissingGroup::Among { letters, .. } => {
                assert_eq!(letters, &[l('j'), l('q'), l('x'), l('z')]);
            }
            other => panic!("{other:?}"),
        }
        match &groups[2] {
            MissingGroup::With { letter, partners } => {
                assert_eq!(*letter, l('q'));
                assert_eq!(partners, &[l('b'), l('f'), l('g'), l('k'), l('w'), l('y')]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_result_has_no_relations() {
        let r = run(&Dictionary::default(), &RunConfig::default()).unwrap();
        let doc = PresentationDoc::from_result(&r);
        assert_eq!(doc.relation_count, 0);
        assert_eq!(doc.missing_count, 325);
        assert_eq!(emit_progress(&r, ReportFormat::Csv).unwrap(), "iteration,anagraphs,commutators\n");
    }

    #[test]
    fn presentation_json_roundtrip() {
        let d = Dictionary::from_strs("t", &["able", "bale", "tea", "eat", "eta"]).unwrap();
        let r = run(&d, &RunConfig::default()).unwrap();
        let json = emit_presentation(&r, ReportFormat::Json).unwrap();
        let doc: PresentationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, PresentationDoc::from_result(&r));
        assert_eq!(doc.relations, pairs("ab at et"));
        assert!(emit_presentation(&r, ReportFormat::Csv).is_err());
    }

    #[test]
    fn witness_csv_rows() {
        let d = Dictionary::from_strs("t", &["able", "bale"]).unwrap();
        let r = run(&d, &RunConfig::default()).unwrap();
        let csv = emit_witness_table(&r, ReportFormat::Csv).unwrap();
        assert_eq!(csv, "iteration,alpha,beta,word1,word2\n1,a,b,able,bale\n");
        let text = emit_witness_table(&r, ReportFormat::Text).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("1          a  b  able   bale"));
    }

    #[test]
    fn progress_rows() {
        let d = Dictionary::from_strs("t", &["ab", "ba"]).unwrap();
        let r = run(&d, &RunConfig::default()).unwrap();
        assert_eq!(emit_progress(&r, ReportFormat::Csv).unwrap(), "iteration,anagraphs,commutators\n1,1,1\n");
    }

    #[test]
    fn format_from_extension() {
        use std::path::Path;
        assert_eq!(ReportFormat::from_path(Path::new("out.json")), ReportFormat::Json);
        assert_eq!(ReportFormat::from_path(Path::new("out.csv")), ReportFormat::Csv);
        assert_eq!(ReportFormat::from_path(Path::new("out.txt")), ReportFormat::Text);
        assert_eq!(ReportFormat::from_path(Path::new("-")), ReportFormat::Text);
    }
}
