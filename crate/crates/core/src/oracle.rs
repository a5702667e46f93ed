//! Brute-force ground truth for small instances.
//!
//! Everything here enumerates trace classes explicitly by breadth-first
//! search over single swaps of adjacent commuting letters. It is exponential
//! and only meant for tests and audits on short words; nothing in the
//! pipeline depends on it.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::model::{CommutationSet, Letter, Word};

/// Words reachable from a seed by swapping adjacent commuting letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceClass {
    pub members: BTreeSet<Word>,
    /// Set when the search stopped at the size limit.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Equal,
    Distinct,
    Unknown,
}

fn neighbours<'a>(w: &'a [u8], commutation: &'a CommutationSet) -> impl Iterator<Item = Vec<u8>> + 'a {
    (0..w.len().saturating_sub(1)).filter_map(move |i| {
        let (a, b) = (w[i], w[i + 1]);
        let commute = a != b && commutation.contains(Letter::from_char(a as char)?, Letter::from_char(b as char)?);
        commute.then(|| {
            let mut next = w.to_vec();
            next.swap(i, i + 1);
            next
        })
    })
}

/// Breadth-first closure of `w` under allowed swaps, giving up once more
/// than `limit` words have been found.
pub fn enumerate_trace_class(w: &Word, commutation: &CommutationSet, limit: usize) -> TraceClass {
    let start = w.as_str().as_bytes().to_vec();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut truncated = false;
    'search: while let Some(cur) = queue.pop_front() {
        for next in neighbours(&cur, commutation) {
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= limit {
                truncated = true;
                break 'search;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let members =
        seen.into_iter().map(|bytes| String::from_utf8(bytes).expect("ascii").parse().expect("letters")).collect();
    TraceClass { members, truncated }
}

pub fn oracle_trace_equal(w1: &Word, w2: &Word, commutation: &CommutationSet, limit: usize) -> OracleVerdict {
    let class = enumerate_trace_class(w1, commutation, limit);
    if class.members.contains(w2) {
        OracleVerdict::Equal
    } else if class.truncated {
        OracleVerdict::Unknown
    } else {
        OracleVerdict::Distinct
    }
}

/// Whether the relation `w1 = w2`, modulo `commutation`, forces `[alpha, beta]`
/// by exhibiting `s1·x·y·s2 ~ w1` and `s1·y·x·s2 ~ w2` with `{x, y} = {alpha, beta}`.
///
/// Returns `None` if either class is truncated before an answer is found.
pub fn oracle_witnesses_commutator(
    w1: &Word,
    w2: &Word,
    alpha: Letter,
    beta: Letter,
    commutation: &CommutationSet,
    limit: usize,
) -> Option<bool> {
    let c1 = enumerate_trace_class(w1, commutation, limit);
    let c2 = enumerate_trace_class(w2, commutation, limit);
    let (a, b) = (alpha.to_char() as u8, beta.to_char() as u8);
    for m in &c1.members {
        let bytes = m.as_str().as_bytes();
        for i in 0..bytes.len().saturating_sub(1) {
            let (x, y) = (bytes[i], bytes[i + 1]);
            if (x, y) == (a, b) || (x, y) == (b, a) {
                let mut flipped = bytes.to_vec();
                flipped.swap(i, i + 1);
                let flipped: Word = String::from_utf8(flipped).expect("ascii").parse().expect("letters");
                if c2.members.contains(&flipped) {
                    return Some(true);
                }
            }
        }
    }
    if c1.truncated || c2.truncated {
        None
    } else {
        Some(false)
    }
}

/// Whether `reduced` is `original` with some letters deleted entirely, each
/// deleted letter commuting with every letter of `original`.
pub fn oracle_valid_deletion(original: &Word, reduced: &Word, commutation: &CommutationSet) -> bool {
    let present: BTreeSet<char> = original.as_str().chars().collect();
    let kept: BTreeSet<char> = reduced.as_str().chars().collect();
    let deleted: Vec<char> = present.difference(&kept).copied().collect();
    let spelled: String = original.as_str().chars().filter(|c| kept.contains(c)).collect();
    let letter = |c: char| Letter::from_char(c).expect("lowercase");
    spelled == reduced.as_str()
        && deleted.iter().all(|&d| present.iter().all(|&o| o == d || commutation.contains(letter(d), letter(o))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    fn words(class: &TraceClass) -> Vec<&str> {
        class.members.iter().map(Word::as_str).collect()
    }

    #[test]
    fn class_examples() {
        let ab = CommutationSet::from_pairs([(l('a'), l('b'))]);
        assert_eq!(words(&enumerate_trace_class(&w("ab"), &ab, 10)), ["ab", "ba"]);
        assert_eq!(words(&enumerate_trace_class(&w("ab"), &CommutationSet::new(), 10)), ["ab"]);

        // With [a,b] and [b,c]: b moves freely but a stays before c.
        let i = CommutationSet::from_pairs([(l('a'), l('b')), (l('b'), l('c'))]);
        let class = enumerate_trace_class(&w("abc"), &i, 100);
        assert!(!class.truncated);
        assert_eq!(words(&class), ["abc", "acb", "bac"]);
    }

    #[test]
    fn verdicts() {
        let ab = CommutationSet::from_pairs([(l('a'), l('b'))]);
        assert_eq!(oracle_trace_equal(&w("ab"), &w("ba"), &ab, 10), OracleVerdict::Equal);
        assert_eq!(oracle_trace_equal(&w("abab"), &w("baba"), &CommutationSet::new(), 10), OracleVerdict::Distinct);
        let eorstz =
            CommutationSet::from_pairs("eorstz".chars().flat_map(|a| "eorstz".chars().map(move |b| (l(a), l(b)))));
        assert_eq!(oracle_trace_equal(&w("quartzose"), &w("quatorzes"), &eorstz, 3), OracleVerdict::Unknown);
        assert_eq!(oracle_trace_equal(&w("quartzose"), &w("quatorzes"), &eorstz, 100_000), OracleVerdict::Equal);
    }

    #[test]
    fn truncation_flag() {
        let all = CommutationSet::complete(crate::model::Alphabet::ENGLISH);
        let class = enumerate_trace_class(&w("abcd"), &all, 5);
        assert!(class.truncated);
        assert_eq!(class.members.len(), 5);
        let class = enumerate_trace_class(&w("abcd"), &all, 24);
        assert!(!class.truncated);
        assert_eq!(class.members.len(), 24);
    }

    #[test]
    fn witness_oracle() {
        let none = CommutationSet::new();
        assert_eq!(oracle_witnesses_commutator(&w("able"), &w("bale"), l('a'), l('b'), &none, 100), Some(true));
        assert_eq!(oracle_witnesses_commutator(&w("abab"), &w("baba"), l('a'), l('b'), &none, 100), Some(false));
        let ab = CommutationSet::from_pairs([(l('a'), l('b'))]);
        assert_eq!(oracle_witnesses_commutator(&w("acb"), &w("cab"), l('a'), l('c'), &ab, 100), Some(true));
    }

    #[test]
    fn deletion_oracle() {
        let c_central = CommutationSet::from_pairs("abdef".chars().map(|o| (l('c'), l(o))));
        assert!(oracle_valid_deletion(&w("cabf"), &w("abf"), &c_central));
        assert!(!oracle_valid_deletion(&w("cabf"), &w("bf"), &c_central));
        assert!(!oracle_valid_deletion(&w("cabf"), &w("baf"), &c_central));
    }
}
