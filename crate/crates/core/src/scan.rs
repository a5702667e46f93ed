//! Scanning anagraphs for commutators.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anagraph::{Anagraph, AnagraphStore, Provenance};
use crate::model::{CommutationSet, CommutatorWitness, Letter, Stage, Word};
use crate::trace::{admissible_pair, extract_commutator, find_certificate, trace_equal};

/// Which component pairs count as witnessing a commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractionRule {
    /// Words that literally read `s1·α·β·s2` and `s1·β·α·s2`.
    Admissible,
    /// Words whose only disagreement modulo the known commutators is one
    /// adjacent transposition of a single pair (see
    /// [`extract_commutator`]).
    Trace,
}

/// A claimed commutator whose certificate could not be produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedClaim {
    pub alpha: Letter,
    pub beta: Letter,
    pub word1: Word,
    pub word2: Word,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanOutcome {
    /// One witness per new commutator, ordered by `(α, β)`.
    pub witnesses: Vec<CommutatorWitness>,
    pub rejected: Vec<RejectedClaim>,
}

struct Candidate {
    bucket: usize,
    u: usize,
    v: usize,
    direct: bool,
}

/// Finds commutators not yet in `commutation` that are witnessed by pairs in
/// a common component of some bucket.
///
/// `commutation` is frozen for the whole scan. For each commutator the first
/// candidate in scan order (bucket key, then word pair) is kept, preferring
/// pairs backed by a single dictionary anagram class; every kept witness
/// carries validated certificates. Candidates whose certificate search fails
/// are reported in [`ScanOutcome::rejected`] and the next candidate is tried.
pub fn scan_for_commutators(
    store: &AnagraphStore,
    commutation: &CommutationSet,
    rule: ExtractionRule,
    stage: Stage,
) -> ScanOutcome {
    let buckets: Vec<&Anagraph> = store.buckets().collect();
    let per_bucket: Vec<Vec<((Letter, Letter), Candidate)>> = buckets
        .par_iter()
        .enumerate()
        .map(|(bucket, g)| {
            g.component_index_pairs()
                .filter_map(|(u, v)| {
                    let (w1, w2) = (&g.vertices()[u].word, &g.vertices()[v].word);
                    let pair = match rule {
                        ExtractionRule::Admissible => admissible_pair(w1, w2),
                        ExtractionRule::Trace if trace_equal(w1, w2, commutation) => None,
                        ExtractionRule::Trace => extract_commutator(w1, w2, commutation),
                    }?;
                    if commutation.contains(pair.0, pair.1) {
                        return None;
                    }
                    let direct = store.shares_class(g, u, v);
                    Some((pair, Candidate { bucket, u, v, direct }))
                })
                .collect()
        })
        .collect();

    let mut by_pair: BTreeMap<(Letter, Letter), Vec<Candidate>> = BTreeMap::new();
    for (pair, candidate) in per_bucket.into_iter().flatten() {
        by_pair.entry(pair).or_default().push(candidate);
    }

    let results: Vec<(Option<CommutatorWitness>, Vec<RejectedClaim>)> = by_pair
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|((alpha, beta), mut candidates)| {
            candidates.sort_by_key(|c| !c.direct);
            let mut rejected = Vec::new();
            for c in candidates {
                let g = buckets[c.bucket];
                match certify(store, g, c.u, c.v, alpha, beta, commutation, stage) {
                    Ok(witness) => return (Some(witness), rejected),
                    Err(claim) => rejected.push(claim),
                }
            }
            (None, rejected)
        })
        .collect();

    let mut outcome = ScanOutcome::default();
    for (witness, rejected) in results {
        outcome.witnesses.extend(witness);
        outcome.rejected.extend(rejected);
    }
    outcome
}

#[allow(clippy::too_many_arguments)]
fn certify(
    store: &AnagraphStore,
    g: &Anagraph,
    u: usize,
    v: usize,
    alpha: Letter,
    beta: Letter,
    commutation: &CommutationSet,
    stage: Stage,
) -> Result<CommutatorWitness, RejectedClaim> {
    let (word1, word2, chain) = match store.provenance(g, u, v) {
        Some(Provenance::Direct(a, b)) => (a, b, Vec::new()),
        Some(Provenance::Chain(links)) => (g.vertices()[u].word.clone(), g.vertices()[v].word.clone(), links),
        None => unreachable!("candidates come from one component"),
    };
    match find_certificate(&word1, &word2, alpha, beta, commutation) {
        Ok((c1, c2)) => Ok(CommutatorWitness { alpha, beta, stage, word1, word2, certificates: [c1, c2], chain }),
        Err(e) => Err(RejectedClaim { alpha, beta, word1, word2, reason: e.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anagraph::{build_anagraphs, reduce_store};
    use crate::ingest::Dictionary;
    use crate::trace::check_certificate_pair;

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    fn store(words: &[&str]) -> AnagraphStore {
        build_anagraphs(&Dictionary::from_strs("test", words).unwrap())
    }

    #[test]
    fn finds_admissible_pairs_once_each() {
        let s = store(&["able", "bale", "albe", "ab", "ba", "tea", "eta", "eat"]);
        let out = scan_for_commutators(&s, &CommutationSet::new(), ExtractionRule::Admissible, Stage::Iteration(1));
        let pairs: Vec<(char, char)> = out.witnesses.iter().map(|w| (w.alpha.to_char(), w.beta.to_char())).collect();
        assert_eq!(pairs, [('a', 'b'), ('a', 't'), ('b', 'l'), ('e', 't')]);
        // [a,b] is witnessed by both ab/ba and able/bale; ab/ba comes first.
        assert_eq!(out.witnesses[0].word1.as_str(), "ab");
        assert!(out.rejected.is_empty());
        for w in &out.witnesses {
            let [c1, c2] = &w.certificates;
            assert!(check_certificate_pair(c1, c2, w.alpha, w.beta, &CommutationSet::new()));
        }
    }

    #[test]
    fn known_commutators_are_skipped() {
        let s = store(&["ab", "ba"]);
        let known = CommutationSet::from_pairs([(l('a'), l('b'))]);
        let out = scan_for_commutators(&s, &known, ExtractionRule::Admissible, Stage::Iteration(2));
        assert!(out.witnesses.is_empty());
    }

    #[test]
    fn empty_store_finds_nothing() {
        let s = store(&[]);
        let out = scan_for_commutators(&s, &CommutationSet::new(), ExtractionRule::Trace, Stage::Iteration(1));
        assert_eq!(out, ScanOutcome::default());
    }

    #[test]
    fn trace_rule_sees_through_known_commutators() {
        // abcd = cbad witnesses [a,c] only once [a,b] and [b,c] are known.
        let s = store(&["abcd", "cbad"]);
        let none = scan_for_commutators(&s, &CommutationSet::new(), ExtractionRule::Trace, Stage::Residual(1));
        assert!(none.witnesses.is_empty());
        let known = CommutationSet::from_pairs([(l('a'), l('b')), (l('b'), l('c'))]);
        let out = scan_for_commutators(&s, &known, ExtractionRule::Trace, Stage::Residual(1));
        assert_eq!(out.witnesses.len(), 1);
        assert_eq!(out.witnesses[0].pair(), (l('a'), l('c')));
    }

    #[test]
    fn chained_witness_uses_reduced_words() {
        let mut central = CommutationSet::new();
        for c in ['c', 'd'] {
            for other in 'a'..='z' {
                central.insert(l(c), l(other));
            }
        }
        // cabf/cfba -> abf/fba and dfba/dbaf -> fba/baf. Only abf/baf is a
        // witness, and no single class contains both.
        let s = reduce_store(store(&["cabf", "cfba", "dfba", "dbaf"]), &central);
        let out = scan_for_commutators(&s, &central, ExtractionRule::Admissible, Stage::Iteration(2));
        assert_eq!(out.witnesses.len(), 1);
        let w = &out.witnesses[0];
        assert_eq!(w.pair(), (l('a'), l('b')));
        assert_eq!((w.word1.as_str(), w.word2.as_str()), ("abf", "baf"));
        let chain: Vec<(&str, &str)> = w.chain.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        assert_eq!(chain, [("cabf", "cfba"), ("dfba", "dbaf")]);
        let [c1, c2] = &w.certificates;
        assert!(check_certificate_pair(c1, c2, w.alpha, w.beta, &central));
    }
}
