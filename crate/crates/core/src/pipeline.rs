//! The end-to-end computation of an anagram group presentation.
//!
//! 1. Bucket the dictionary into anagraphs.
//! 2. Scan every bucket for admissible pairs and record new commutators.
//! 3. Reduce and merge the buckets with the enlarged commutation set.
//! 4. Repeat 2-3 until a round finds nothing and changes nothing.
//! 5. Resolve what is left: relations already implied by the known
//!    commutators are discarded, and relations that still witness a single
//!    commutator modulo the known ones contribute it.
//!
//! Finally every anagram class of the raw dictionary is checked against the
//! final commutation set.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::anagraph::{build_anagraphs, reduce_store_with_summary, Anagraph, AnagraphStore};
use crate::ingest::Dictionary;
use crate::model::{letter_count, Alphabet, CommutationSet, CommutatorWitness, Letter, LetterCount, Stage, Word};
use crate::scan::{scan_for_commutators, ExtractionRule, RejectedClaim};
use crate::trace::{projection, trace_equal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Upper bound on rounds of the scan/reduce loop (and separately on
    /// residual rounds).
    pub max_iterations: u32,
    pub residual: bool,
    pub verify: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub parallelism: Option<usize>,
    pub alphabet: Alphabet,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_iterations: 50, residual: true, verify: true, parallelism: None, alphabet: Alphabet::ENGLISH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationStats {
    pub iteration: u32,
    /// Buckets scanned in this round.
    pub bucket_count: usize,
    /// Commutators known after this round's scan.
    pub cumulative_commutators: usize,
}

/// Per missing commutator `[α, β]`: whether every dictionary anagram class
/// containing both letters orders them the same way in all its words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityEntry {
    pub alpha: Letter,
    pub beta: Letter,
    /// Anagram classes (of two or more words) containing both letters.
    pub classes_checked: usize,
    /// Word pairs from one class whose αβ patterns differ.
    pub violations: Vec<(Word, Word)>,
}

impl MaximalityEntry {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub all_relations_implied: bool,
    pub classes_checked: usize,
    pub failing_pairs: Vec<(Word, Word)>,
    pub maximality: Vec<MaximalityEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunResult {
    pub alphabet: Alphabet,
    pub commutators: CommutationSet,
    /// One witness per commutator, ordered by stage then pair.
    pub witnesses: Vec<CommutatorWitness>,
    /// Pairs of the alphabet without a commutator, sorted.
    pub missing: Vec<(Letter, Letter)>,
    pub stats: Vec<IterationStats>,
    /// Buckets left when the scan/reduce loop reached its fixpoint.
    pub residual_buckets: AnagraphStore,
    pub residual_rounds: u32,
    /// Buckets still holding relations that are neither implied nor
    /// commutator witnesses after residual processing.
    pub unresolved_buckets: AnagraphStore,
    pub unresolved_pairs: Vec<(Word, Word)>,
    pub rejected: Vec<RejectedClaim>,
    pub verification: Option<VerificationReport>,
}

impl RunResult {
    /// Commutators known by the end of the scan/reduce loop.
    pub fn loop_commutators(&self) -> usize {
        self.stats.last().map_or(0, |s| s.cumulative_commutators)
    }

    /// Commutators known strictly before `stage`.
    pub fn commutators_before(&self, stage: Stage) -> CommutationSet {
        CommutationSet::from_pairs(self.witnesses.iter().filter(|w| w.stage < stage).map(|w| w.pair()))
    }

    /// Whether every relation is accounted for by commutators alone.
    pub fn is_right_angled(&self) -> bool {
        match &self.verification {
            Some(report) => report.all_relations_implied,
            None => self.unresolved_pairs.is_empty() && self.rejected.is_empty() && self.residual_rounds > 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("no fixpoint after {rounds} rounds ({commutators} commutators, {buckets} buckets left)")]
    IterationCap { rounds: u32, commutators: usize, buckets: usize },
    #[error("cannot start worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// Runs the whole computation on `d`.
pub fn run(d: &Dictionary, config: &RunConfig) -> Result<RunResult, PipelineError> {
    match config.parallelism {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| run_inner(d, config))
        }
        None => run_inner(d, config),
    }
}

/// State of the scan/reduce loop.
pub struct FixpointOutcome {
    pub store: AnagraphStore,
    pub commutators: CommutationSet,
    pub witnesses: Vec<CommutatorWitness>,
    pub stats: Vec<IterationStats>,
    pub rejected: Vec<RejectedClaim>,
}

/// The scan/reduce loop: repeats scan and reduction until a round adds no commutator
/// and changes no bucket, or the store is empty.
pub fn run_fixpoint(d: &Dictionary, max_iterations: u32) -> Result<FixpointOutcome, PipelineError> {
    let mut store = build_anagraphs(d);
    let mut commutators = CommutationSet::new();
    let mut witnesses = Vec::new();
    let mut stats = Vec::new();
    let mut rejected = Vec::new();
    let mut iteration = 0;
    while !store.is_empty() {
        if iteration >= max_iterations {
            return Err(PipelineError::IterationCap {
                rounds: iteration,
                commutators: commutators.len(),
                buckets: store.len(),
            });
        }
        iteration += 1;
        let bucket_count = store.len();
        let scan = scan_for_commutators(&store, &commutators, ExtractionRule::Admissible, Stage::Iteration(iteration));
        let found = scan.witnesses.len();
        for w in &scan.witnesses {
            commutators.insert(w.alpha, w.beta);
        }
        witnesses.extend(scan.witnesses);
        rejected.extend(scan.rejected);
        stats.push(IterationStats { iteration, bucket_count, cumulative_commutators: commutators.len() });
        let (next, summary) = reduce_store_with_summary(store, &commutators);
        store = next;
        if found == 0 && !summary.changed() {
            break;
        }
    }
    Ok(FixpointOutcome { store, commutators, witnesses, stats, rejected })
}

pub struct ResidualOutcome {
    pub commutators: CommutationSet,
    /// New witnesses, tagged [`Stage::Residual`].
    pub witnesses: Vec<CommutatorWitness>,
    /// Buckets with components that are still not resolved.
    pub store: AnagraphStore,
    pub unresolved_pairs: Vec<(Word, Word)>,
    pub rejected: Vec<RejectedClaim>,
    pub rounds: u32,
}

/// The residual phase: extracts commutators from the remaining relations modulo the
/// known ones, re-reducing after each round, then discards every component
/// whose words are all equal modulo the final commutation set.
pub fn process_residuals(
    store: AnagraphStore,
    commutators: &CommutationSet,
    max_rounds: u32,
) -> Result<ResidualOutcome, PipelineError> {
    let mut store = store;
    let mut commutators = commutators.clone();
    let mut witnesses = Vec::new();
    let mut rejected = Vec::new();
    let mut rounds = 0;
    loop {
        if rounds >= max_rounds {
            return Err(PipelineError::IterationCap { rounds, commutators: commutators.len(), buckets: store.len() });
        }
        rounds += 1;
        let scan = scan_for_commutators(&store, &commutators, ExtractionRule::Trace, Stage::Residual(rounds));
        rejected.extend(scan.rejected);
        if scan.witnesses.is_empty() {
            break;
        }
        for w in &scan.witnesses {
            commutators.insert(w.alpha, w.beta);
        }
        witnesses.extend(scan.witnesses);
        store = reduce_store_with_summary(store, &commutators).0;
    }

    let pruned: Vec<(Anagraph, Vec<(Word, Word)>)> =
        store.buckets().collect::<Vec<_>>().into_par_iter().filter_map(|g| prune_implied(g, &commutators)).collect();
    let unresolved_pairs = pruned.iter().flat_map(|(_, p)| p.iter().cloned()).collect();
    let store = store.with_buckets(pruned.into_iter().map(|(g, _)| g));
    Ok(ResidualOutcome { commutators, witnesses, store, unresolved_pairs, rejected, rounds })
}

/// Keeps only components whose words are not all trace equal, with one
/// representative pair per extra trace class.
fn prune_implied(g: &Anagraph, commutators: &CommutationSet) -> Option<(Anagraph, Vec<(Word, Word)>)> {
    let mut keep = vec![false; g.len()];
    let mut failing = Vec::new();
    for component in g.components() {
        let mut reps: Vec<usize> = Vec::new();
        for &i in &component {
            let word = &g.vertices()[i].word;
            if !reps.iter().any(|&r| trace_equal(&g.vertices()[r].word, word, commutators)) {
                reps.push(i);
            }
        }
        if reps.len() > 1 {
            for &i in &component {
                keep[i] = true;
            }
            let first = &g.vertices()[reps[0]].word;
            failing.extend(reps[1..].iter().map(|&r| (first.clone(), g.vertices()[r].word.clone())));
        }
    }
    if failing.is_empty() {
        return None;
    }
    g.retain_vertices(|i| keep[i]).map(|g| (g, failing))
}

/// Checks that every anagram relation of `d` follows from `commutators`, and
/// for each missing pair of `alphabet` that no anagram class mixes the two
/// possible orders of its letters.
pub fn verify_containment(d: &Dictionary, commutators: &CommutationSet, alphabet: Alphabet) -> VerificationReport {
    let mut classes: BTreeMap<LetterCount, Vec<&Word>> = BTreeMap::new();
    for w in d.words() {
        classes.entry(letter_count(w)).or_default().push(w);
    }
    let classes: Vec<Vec<&Word>> = classes
        .into_values()
        .filter(|c| c.len() >= 2)
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();

    let failing_pairs: Vec<(Word, Word)> = classes
        .par_iter()
        .flat_map_iter(|class| {
            let rep = class[0];
            class[1..]
                .iter()
                .filter(move |w| !trace_equal(rep, w, commutators))
                .map(move |w| (rep.clone(), (*w).clone()))
        })
        .collect();

    let maximality = commutators
        .missing(alphabet)
        .into_par_iter()
        .map(|(alpha, beta)| {
            let mut classes_checked = 0;
            let mut violations = Vec::new();
            for class in &classes {
                let support = class[0].support();
                if !(support.contains(alpha) && support.contains(beta)) {
                    continue;
                }
                classes_checked += 1;
                let pattern = projection(class[0], alpha, beta);
                violations.extend(
                    class[1..]
                        .iter()
                        .filter(|w| projection(w, alpha, beta) != pattern)
                        .map(|w| (class[0].clone(), (*w).clone())),
                );
            }
            MaximalityEntry { alpha, beta, classes_checked, violations }
        })
        .collect();

    VerificationReport {
        all_relations_implied: failing_pairs.is_empty(),
        classes_checked: classes.len(),
        failing_pairs,
        maximality,
    }
}

fn run_inner(d: &Dictionary, config: &RunConfig) -> Result<RunResult, PipelineError> {
    let fixpoint = run_fixpoint(d, config.max_iterations)?;
    let mut commutators = fixpoint.commutators;
    let mut witnesses = fixpoint.witnesses;
    let mut rejected = fixpoint.rejected;
    let residual_buckets = fixpoint.store;

    let (unresolved_buckets, unresolved_pairs, residual_rounds) = if config.residual {
        let residual = process_residuals(residual_buckets.clone(), &commutators, config.max_iterations)?;
        commutators = residual.commutators;
        witnesses.extend(residual.witnesses);
        rejected.extend(residual.rejected);
        (residual.store, residual.unresolved_pairs, residual.rounds)
    } else {
        (residual_buckets.clone(), Vec::new(), 0)
    };

    let verification = config.verify.then(|| verify_containment(d, &commutators, config.alphabet));

    Ok(RunResult {
        alphabet: config.alphabet,
        missing: commutators.missing(config.alphabet),
        commutators,
        witnesses,
        stats: fixpoint.stats,
        residual_buckets,
        residual_rounds,
        unresolved_buckets,
        unresolved_pairs,
        rejected,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dict(words: &[&str]) -> Dictionary {
        Dictionary::from_strs("test", words).unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    #[test]
    fn able_bale() {
        let r = run(&dict(&["able", "bale"]), &RunConfig::default()).unwrap();
        assert_eq!(r.commutators.pairs().collect::<Vec<_>>(), [(l('a'), l('b'))]);
        // Round 1 finds [a,b]; nothing is removable, so round 2 confirms the
        // fixpoint with the bucket still in place.
        assert_eq!(
            r.stats,
            [
                IterationStats { iteration: 1, bucket_count: 1, cumulative_commutators: 1 },
                IterationStats { iteration: 2, bucket_count: 1, cumulative_commutators: 1 },
            ]
        );
        assert_eq!(r.residual_buckets.len(), 1);
        assert!(r.unresolved_buckets.is_empty());
        assert!(r.verification.as_ref().unwrap().all_relations_implied);
        assert_eq!(r.missing.len(), 324);
    }

    #[test]
    fn loop_stops_when_store_empties() {
        let r = run(&dict(&["ab", "ba"]), &RunConfig::default()).unwrap();
        assert_eq!(r.stats.len(), 1);
        assert!(r.residual_buckets.is_empty());
    }

    #[test]
    fn empty_dictionary_runs_no_rounds() {
        let r = run(&Dictionary::default(), &RunConfig::default()).unwrap();
        assert!(r.stats.is_empty());
        assert!(r.commutators.is_empty());
        assert_eq!(r.missing.len(), 325);
    }

    #[test]
    fn residual_phase_finds_commutators_hidden_by_other_letters() {
        // ab/ba and bc/cb give [a,b] and [b,c] in round 1. b does not commute
        // with d, so abcd/cbad is never reduced; modulo the known commutators
        // it still witnesses [a,c].
        let d = dict(&["ab", "ba", "bc", "cb", "abcd", "cbad"]);
        let fix = run_fixpoint(&d, 50).unwrap();
        assert_eq!(fix.commutators.len(), 2);
        assert_eq!(fix.stats.len(), 2);
        assert_eq!(fix.store.len(), 1);
        let r = run(&d, &RunConfig::default()).unwrap();
        assert_eq!(r.commutators.len(), 3);
        let last = r.witnesses.last().unwrap();
        assert_eq!(last.stage, Stage::Residual(1));
        assert_eq!(last.pair(), (l('a'), l('c')));
        assert_eq!((last.word1.as_str(), last.word2.as_str()), ("abcd", "cbad"));
        assert!(r.is_right_angled());
        assert!(r.unresolved_buckets.is_empty());
    }

    #[test]
    fn unresolvable_relation_is_reported() {
        let d = dict(&["abc", "bca"]);
        let r = run(&d, &RunConfig::default()).unwrap();
        assert!(r.commutators.is_empty());
        assert_eq!(r.unresolved_pairs.len(), 1);
        assert_eq!(r.unresolved_buckets.len(), 1);
        let report = r.verification.as_ref().unwrap();
        assert!(!report.all_relations_implied);
        assert_eq!(report.failing_pairs, [("abc".parse().unwrap(), "bca".parse().unwrap())]);
        assert!(!r.is_right_angled());
    }

    #[test]
    fn verify_reports_missing_commutator() {
        let d = dict(&["ab", "ba"]);
        let report = verify_containment(&d, &CommutationSet::new(), Alphabet::new(2).unwrap());
        assert!(!report.all_relations_implied);
        assert_eq!(report.failing_pairs.len(), 1);
        assert_eq!(report.maximality.len(), 1);
        assert!(!report.maximality[0].consistent());
    }

    #[test]
    fn iteration_cap_is_an_error() {
        let d = dict(&["ab", "ba"]);
        let err = run(&d, &RunConfig { max_iterations: 0, ..RunConfig::default() }).unwrap_err();
        assert!(matches!(err, PipelineError::IterationCap { .. }));
    }
}
