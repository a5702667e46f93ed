//! Word equivalence modulo a commutation set.
//!
//! Two words are equal in the partially commutative monoid defined by a
//! [`CommutationSet`] iff they are anagrams and agree on the projection to
//! every non-commuting pair of letters. The same projections locate the
//! single commutator an anagram pair witnesses, and [`find_certificate`]
//! backs every such claim with an explicit, replayable swap sequence.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{is_anagram, CommutationSet, Letter, Word};

/// The subsequence of a word consisting of its `alpha` and `beta` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProjection {
    pub alpha: Letter,
    pub beta: Letter,
    pub sequence: Vec<Letter>,
}

pub fn projection(w: &Word, alpha: Letter, beta: Letter) -> PairProjection {
    debug_assert_ne!(alpha, beta);
    PairProjection { alpha, beta, sequence: w.letters().filter(|&l| l == alpha || l == beta).collect() }
}

fn projections_agree(w1: &Word, w2: &Word, a: Letter, b: Letter) -> bool {
    let keep = |l: &Letter| *l == a || *l == b;
    w1.letters().filter(keep).eq(w2.letters().filter(keep))
}

/// Non-commuting pairs `(α, β)`, `α < β`, among the letters of `w`.
fn dependent_pairs<'a>(w: &Word, commutation: &'a CommutationSet) -> impl Iterator<Item = (Letter, Letter)> + 'a {
    let support = w.support();
    support
        .iter()
        .flat_map(move |a| support.iter().filter(move |&b| a < b).map(move |b| (a, b)))
        .filter(move |&(a, b)| !commutation.contains(a, b))
}

/// Whether `w1` and `w2` are connected by swaps of adjacent commuting letters.
pub fn trace_equal(w1: &Word, w2: &Word, commutation: &CommutationSet) -> bool {
    is_anagram(w1, w2) && dependent_pairs(w1, commutation).all(|(a, b)| projections_agree(w1, w2, a, b))
}

/// The position `i` at which `p` and `q` differ exactly by exchanging the
/// adjacent entries `i` and `i + 1`.
fn single_transposition(p: &[Letter], q: &[Letter]) -> Option<usize> {
    if p.len() != q.len() {
        return None;
    }
    let i = p.iter().zip(q).position(|(x, y)| x != y)?;
    let swapped = i + 1 < p.len() && p[i] == q[i + 1] && p[i + 1] == q[i] && p[i + 2..] == q[i + 2..];
    swapped.then_some(i)
}

/// The commutator `[α, β]` (with `α < β`) that the relation `w1 = w2`
/// witnesses modulo `commutation`, if any.
///
/// Accepts exactly when the words are anagrams, a single non-commuting pair
/// has differing projections, and those projections differ by one adjacent
/// transposition. Such a pair can always be rewritten into the forms
/// `s1·α·β·s2` and `s1·β·α·s2` (see [`find_certificate`]).
pub fn extract_commutator(w1: &Word, w2: &Word, commutation: &CommutationSet) -> Option<(Letter, Letter)> {
    if !is_anagram(w1, w2) {
        return None;
    }
    let mut differing = None;
    for (a, b) in dependent_pairs(w1, commutation) {
        if !projections_agree(w1, w2, a, b) {
            if differing.is_some() {
                return None;
            }
            differing = Some((a, b));
        }
    }
    let (a, b) = differing?;
    let p1 = projection(w1, a, b).sequence;
    let p2 = projection(w2, a, b).sequence;
    single_transposition(&p1, &p2).map(|_| (a, b))
}

/// Literal admissible pair test: `w1 = s1·α·β·s2` and `w2 = s1·β·α·s2`.
/// Returns the pair with `α < β`.
pub fn admissible_pair(w1: &Word, w2: &Word) -> Option<(Letter, Letter)> {
    let (a, b) = (w1.as_bytes(), w2.as_bytes());
    if a.len() != b.len() {
        return None;
    }
    let i = a.iter().zip(b).position(|(x, y)| x != y)?;
    let ok = i + 1 < a.len() && a[i] == b[i + 1] && a[i + 1] == b[i] && a[i + 2..] == b[i + 2..];
    ok.then(|| {
        let (x, y) = (w1.letter_at(i), w1.letter_at(i + 1));
        (x.min(y), x.max(y))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwapKind {
    /// Exchange of two letters whose commutator is already known.
    Known,
    /// Exchange of the target pair itself; never valid inside a certificate.
    Target,
}

/// Exchange of the letters at `position` and `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Swap {
    pub position: usize,
    pub kind: SwapKind,
}

/// `prefix · first · second · suffix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndForm {
    pub prefix: Word,
    pub first: Letter,
    pub second: Letter,
    pub suffix: Word,
}

impl EndForm {
    pub fn spell(&self) -> Word {
        Word::from_letters(self.prefix.letters().chain([self.first, self.second]).chain(self.suffix.letters()))
    }
}

/// A replayable proof that `start` rewrites to `end_form` by swapping
/// adjacent commuting letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwapCertificate {
    pub start: Word,
    pub swaps: Vec<Swap>,
    pub end_form: EndForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("{w1} = {w2} does not witness [{alpha}, {beta}]")]
    NotExtractable { w1: Word, w2: Word, alpha: Letter, beta: Letter },
    #[error("cannot bring the {first}{second} occurrences in {word} together")]
    NoAdmissibleForm { word: Word, first: Letter, second: Letter },
    #[error("{from} does not rewrite to {to} with known commutators")]
    NotEquivalent { from: Word, to: Word },
}

/// Adjacent swaps turning `from` into `to`, each exchanging commuting letters.
///
/// Greedy: position by position, bubble the first remaining occurrence of the
/// wanted letter to the front. This succeeds exactly when the words are
/// trace equivalent.
pub(crate) fn rewrite_swaps(
    from: &Word,
    to: &Word,
    commutation: &CommutationSet,
) -> Result<Vec<Swap>, CertificateError> {
    let fail = || CertificateError::NotEquivalent { from: from.clone(), to: to.clone() };
    if !is_anagram(from, to) {
        return Err(fail());
    }
    let mut cur: Vec<Letter> = from.letters().collect();
    let mut swaps = Vec::new();
    for (p, want) in to.letters().enumerate() {
        let q = p + cur[p..].iter().position(|&l| l == want).ok_or_else(fail)?;
        for k in (p..q).rev() {
            if !commutation.contains(cur[k], want) {
                return Err(fail());
            }
            cur.swap(k, k + 1);
            swaps.push(Swap { position: k, kind: SwapKind::Known });
        }
    }
    Ok(swaps)
}

/// Certificates rewriting `w1` to `s1·x·y·s2` and `w2` to `s1·y·x·s2` where
/// `{x, y} = {alpha, beta}`, using only swaps of pairs in `commutation`.
pub fn find_certificate(
    w1: &Word,
    w2: &Word,
    alpha: Letter,
    beta: Letter,
    commutation: &CommutationSet,
) -> Result<(SwapCertificate, SwapCertificate), CertificateError> {
    let (lo, hi) = (alpha.min(beta), alpha.max(beta));
    if extract_commutator(w1, w2, commutation) != Some((lo, hi)) {
        return Err(CertificateError::NotExtractable { w1: w1.clone(), w2: w2.clone(), alpha, beta });
    }
    let p1 = projection(w1, lo, hi).sequence;
    let p2 = projection(w2, lo, hi).sequence;
    let d = single_transposition(&p1, &p2).expect("checked by extract_commutator");

    // Positions in w1 of the two occurrences that trade places.
    let mut occurrences = w1.letters().enumerate().filter(|&(_, l)| l == lo || l == hi).map(|(i, _)| i);
    let i = occurrences.nth(d).expect("projection index in range");
    let j = occurrences.next().expect("projection index in range");
    let letters: Vec<Letter> = w1.letters().collect();
    let (x, y) = (letters[i], letters[j]);
    let depends = |a: Letter, b: Letter| !commutation.commutes(a, b) || a == b;

    // Letters strictly between the two occurrences split into those that must
    // stay after x (they depend on x, directly or through each other) and
    // the rest, which can move in front of x.
    let mut before = Vec::new();
    let mut after: Vec<Letter> = Vec::new();
    for &c in &letters[i + 1..j] {
        if depends(c, x) || after.iter().any(|&u| depends(c, u)) {
            after.push(c);
        } else {
            before.push(c);
        }
    }
    if after.iter().any(|&u| depends(u, y)) {
        return Err(CertificateError::NoAdmissibleForm { word: w1.clone(), first: x, second: y });
    }
    let prefix = Word::from_letters(letters[..i].iter().copied().chain(before));
    let suffix = Word::from_letters(after.into_iter().chain(letters[j + 1..].iter().copied()));

    let form1 = EndForm { prefix: prefix.clone(), first: x, second: y, suffix: suffix.clone() };
    let form2 = EndForm { prefix, first: y, second: x, suffix };
    let cert1 =
        SwapCertificate { start: w1.clone(), swaps: rewrite_swaps(w1, &form1.spell(), commutation)?, end_form: form1 };
    let cert2 =
        SwapCertificate { start: w2.clone(), swaps: rewrite_swaps(w2, &form2.spell(), commutation)?, end_form: form2 };
    debug_assert!(check_certificate_pair(&cert1, &cert2, lo, hi, commutation));
    Ok((cert1, cert2))
}

/// Replays a certificate: every swap must exchange distinct adjacent letters
/// that commute in `commutation`, and the result must spell the end form.
pub fn check_certificate(cert: &SwapCertificate, commutation: &CommutationSet) -> bool {
    let mut cur: Vec<Letter> = cert.start.letters().collect();
    for swap in &cert.swaps {
        let p = swap.position;
        if swap.kind != SwapKind::Known || p + 1 >= cur.len() {
            return false;
        }
        if !commutation.contains(cur[p], cur[p + 1]) {
            return false;
        }
        cur.swap(p, p + 1);
    }
    let form = &cert.end_form;
    form.first != form.second && Word::from_letters(cur) == form.spell()
}

/// Checks a certificate pair for `[alpha, beta]`: both replay, they share
/// prefix and suffix, and the middle letters appear in opposite orders.
pub fn check_certificate_pair(
    c1: &SwapCertificate,
    c2: &SwapCertificate,
    alpha: Letter,
    beta: Letter,
    commutation: &CommutationSet,
) -> bool {
    let (f1, f2) = (&c1.end_form, &c2.end_form);
    let same_pair = (f1.first, f1.second) == (alpha, beta) || (f1.first, f1.second) == (beta, alpha);
    same_pair
        && f1.prefix == f2.prefix
        && f1.suffix == f2.suffix
        && (f1.first, f1.second) == (f2.second, f2.first)
        && check_certificate(c1, commutation)
        && check_certificate(c2, commutation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse_allow_empty(s).unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    fn set(pairs: &[&str]) -> CommutationSet {
        CommutationSet::from_pairs(pairs.iter().map(|p| {
            let mut cs = p.chars();
            (l(cs.next().unwrap()), l(cs.next().unwrap()))
        }))
    }

    fn all_pairs_of(letters: &str) -> CommutationSet {
        let ls: Vec<Letter> = letters.chars().map(l).collect();
        let mut out = CommutationSet::new();
        for (i, &a) in ls.iter().enumerate() {
            for &b in &ls[i + 1..] {
                out.insert(a, b);
            }
        }
        out
    }

    #[test]
    fn projection_examples() {
        assert_eq!(projection(&w("aquiline"), l('a'), l('q')).sequence, vec![l('a'), l('q')]);
        assert_eq!(projection(&w("quiniela"), l('a'), l('q')).sequence, vec![l('q'), l('a')]);
        assert_eq!(projection(&w("banana"), l('b'), l('z')).sequence, vec![l('b')]);
    }

    #[test]
    fn trace_equal_examples() {
        let eorstz = all_pairs_of("eorstz");
        assert!(trace_equal(&w("quartzose"), &w("quatorzes"), &eorstz));
        assert!(trace_equal(&w("banana"), &w("banana"), &CommutationSet::new()));
        assert!(!trace_equal(&w("ab"), &w("ba"), &CommutationSet::new()));
        assert!(!trace_equal(&w("ab"), &w("abb"), &CommutationSet::complete(Alphabet::ENGLISH)));
    }

    #[test]
    fn extract_examples() {
        let empty = CommutationSet::new();
        assert_eq!(extract_commutator(&w("able"), &w("bale"), &empty), Some((l('a'), l('b'))));
        assert_eq!(extract_commutator(&w("abab"), &w("baba"), &empty), None);
        assert_eq!(extract_commutator(&w("able"), &w("able"), &empty), None);
        assert_eq!(extract_commutator(&w("cat"), &w("dog"), &empty), None);
        // With [a,b] known only the a/c projections differ.
        assert_eq!(extract_commutator(&w("acb"), &w("cab"), &set(&["ab"])), Some((l('a'), l('c'))));
        assert_eq!(extract_commutator(&w("abc"), &w("bca"), &empty), None);
    }

    #[test]
    fn admissible_pair_examples() {
        assert_eq!(admissible_pair(&w("able"), &w("bale")), Some((l('a'), l('b'))));
        assert_eq!(admissible_pair(&w("tael"), &w("teal")), Some((l('a'), l('e'))));
        assert_eq!(admissible_pair(&w("able"), &w("albe")), Some((l('b'), l('l'))));
        assert_eq!(admissible_pair(&w("abc"), &w("cba")), None);
        assert_eq!(admissible_pair(&w("ab"), &w("ab")), None);
        assert_eq!(admissible_pair(&w("ab"), &w("abc")), None);
    }

    #[test]
    fn certificate_for_admissible_pair_has_no_swaps() {
        let (c1, c2) = find_certificate(&w("able"), &w("bale"), l('a'), l('b'), &CommutationSet::new()).unwrap();
        assert!(c1.swaps.is_empty() && c2.swaps.is_empty());
        assert_eq!(c1.end_form.prefix, w(""));
        assert_eq!((c1.end_form.first, c1.end_form.second), (l('a'), l('b')));
        assert_eq!((c2.end_form.first, c2.end_form.second), (l('b'), l('a')));
        assert_eq!(c1.end_form.suffix, w("le"));
    }

    #[test]
    fn certificate_moves_blocking_letters() {
        let i = set(&["ab"]);
        let (c1, c2) = find_certificate(&w("acb"), &w("cab"), l('a'), l('c'), &i).unwrap();
        assert!(check_certificate_pair(&c1, &c2, l('a'), l('c'), &i));

        let i = set(&["ab", "bc"]);
        let (c1, c2) = find_certificate(&w("abc"), &w("cba"), l('a'), l('c'), &i).unwrap();
        assert!(check_certificate_pair(&c1, &c2, l('a'), l('c'), &i));
        assert!(!c1.swaps.is_empty());
    }

    #[test]
    fn certificate_refuses_non_witness() {
        let err = find_certificate(&w("abab"), &w("baba"), l('a'), l('b'), &CommutationSet::new());
        assert!(matches!(err, Err(CertificateError::NotExtractable { .. })));
    }

    #[test]
    fn check_certificate_detects_violations() {
        let i = set(&["ab", "bc"]);
        let (good, _) = find_certificate(&w("abc"), &w("cba"), l('a'), l('c'), &i).unwrap();
        assert!(check_certificate(&good, &i));

        // Swapping a non-commuting pair.
        let mut bad = good.clone();
        bad.swaps.insert(0, Swap { position: 0, kind: SwapKind::Known });
        bad.swaps.insert(0, Swap { position: 0, kind: SwapKind::Known });
        assert!(check_certificate(&bad, &i));
        assert!(!check_certificate(&bad, &set(&["bc"])));

        // End form mismatch.
        let mut bad = good.clone();
        bad.end_form.suffix = w("x");
        assert!(!check_certificate(&bad, &i));

        // Target swaps are never allowed.
        let mut bad = good.clone();
        if let Some(s) = bad.swaps.first_mut() {
            s.kind = SwapKind::Target;
        }
        assert!(!check_certificate(&bad, &i));

        // Position out of range.
        let mut bad = good;
        bad.swaps.push(Swap { position: 2, kind: SwapKind::Known });
        assert!(!check_certificate(&bad, &i));
    }

    #[test]
    fn rewrite_matches_trace_equality() {
        let i = set(&["ab"]);
        assert!(rewrite_swaps(&w("abc"), &w("bac"), &i).is_ok());
        assert!(rewrite_swaps(&w("abc"), &w("acb"), &i).is_err());
    }
}
