//! Alphabet, words, letter counts and commutation sets.
//!
//! Words are positive words over the generators `a..z`. Two words are
//! anagrams exactly when their [`LetterCount`]s agree, and a
//! [`CommutationSet`] records which generator pairs are known to commute.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trace::SwapCertificate;

/// Number of generators in the full lowercase alphabet.
pub const ALPHABET_SIZE: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("character {0:?} is not a lowercase letter a-z")]
    InvalidChar(char),
}

/// A generator, stored as its index `0..26` (`a` is 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: u8) -> Option<Self> {
        ((index as usize) < ALPHABET_SIZE).then_some(Letter(index))
    }

    pub fn from_char(c: char) -> Option<Self> {
        c.is_ascii_lowercase().then(|| Letter(c as u8 - b'a'))
    }

    pub(crate) fn from_byte(b: u8) -> Self {
        debug_assert!(b.is_ascii_lowercase());
        Letter(b - b'a')
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_char(self) -> char {
        (b'a' + self.0) as char
    }

    pub(crate) fn byte(self) -> u8 {
        b'a' + self.0
    }

    fn bit(self) -> u32 {
        1 << self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        s.serialize_str(self.to_char().encode_utf8(&mut buf))
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::from_char(c).ok_or_else(|| de::Error::custom(WordError::InvalidChar(c))),
            _ => Err(de::Error::custom(format!("expected a single letter, got {s:?}"))),
        }
    }
}

/// The first `size` letters of `a..z`.
///
/// The production alphabet is [`Alphabet::ENGLISH`]; smaller alphabets are
/// used for synthetic dictionaries so that "all pairs" means the pairs of the
/// letters actually in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub const ENGLISH: Alphabet = Alphabet { size: ALPHABET_SIZE as u8 };

    pub fn new(size: usize) -> Option<Self> {
        (1..=ALPHABET_SIZE).contains(&size).then_some(Alphabet { size: size as u8 })
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.size).map(Letter)
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.0 < self.size
    }

    /// Unordered pairs `(α, β)` with `α < β`, in lexicographic order.
    pub fn pairs(self) -> impl Iterator<Item = (Letter, Letter)> {
        let n = self.size;
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| (Letter(a), Letter(b))))
    }

    pub fn pair_count(self) -> usize {
        let n = self.size();
        n * (n - 1) / 2
    }

    /// The letters as a string, e.g. `"abcd"`.
    pub fn as_string(self) -> String {
        self.letters().map(Letter::to_char).collect()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::ENGLISH
    }
}

/// A set of letters, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn insert(&mut self, letter: Letter) {
        self.0 |= letter.bit();
    }

    pub fn remove(&mut self, letter: Letter) {
        self.0 &= !letter.bit();
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 & letter.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..ALPHABET_SIZE as u8).map(Letter).filter(move |l| self.contains(*l))
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        let mut set = LetterSet::EMPTY;
        for l in iter {
            set.insert(l);
        }
        set
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A positive word over `a..z`, stored as lowercase ASCII.
///
/// Dictionary words are never empty; the empty word only arises by deleting
/// letters during reduction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Box<[u8]>);

impl Word {
    /// Parses a non-empty lowercase word.
    pub fn parse(s: &str) -> Result<Self, WordError> {
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        Self::parse_allow_empty(s)
    }

    /// Like [`Word::parse`] but accepts the empty string.
    pub fn parse_allow_empty(s: &str) -> Result<Self, WordError> {
        if let Some(c) = s.chars().find(|c| !c.is_ascii_lowercase()) {
            return Err(WordError::InvalidChar(c));
        }
        Ok(Word(s.as_bytes().into()))
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word(letters.into_iter().map(Letter::byte).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_str(&self) -> &str {
        // Only ASCII lowercase bytes are ever stored.
        std::str::from_utf8(&self.0).expect("word bytes are ASCII")
    }

    pub(crate) fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        Letter::from_byte(self.0[i])
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().map(|&b| Letter::from_byte(b))
    }

    pub fn support(&self) -> LetterSet {
        self.letters().collect()
    }

    pub fn letter_count(&self) -> LetterCount {
        letter_count(self)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse_allow_empty(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse_allow_empty(&s).map_err(de::Error::custom)
    }
}

/// The abelianized image of a word: one multiplicity per generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LetterCount([u32; ALPHABET_SIZE]);

impl LetterCount {
    pub fn zero() -> Self {
        LetterCount([0; ALPHABET_SIZE])
    }

    pub fn get(&self, letter: Letter) -> u32 {
        self.0[letter.index()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> LetterSet {
        (0..ALPHABET_SIZE as u8).map(Letter).filter(|l| self.0[l.index()] > 0).collect()
    }

    /// Zeroes the multiplicity of every letter in `letters`.
    pub fn without(&self, letters: LetterSet) -> LetterCount {
        let mut out = self.clone();
        for l in letters.iter() {
            out.0[l.index()] = 0;
        }
        out
    }

    /// The letters in alphabetical order, each repeated by its multiplicity.
    pub fn sorted_word(&self) -> Word {
        Word::from_letters(
            (0..ALPHABET_SIZE as u8).map(Letter).flat_map(|l| std::iter::repeat_n(l, self.0[l.index()] as usize)),
        )
    }

    fn last_letter(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c > 0)
    }
}

/// Counts the occurrences of each generator in `w`.
pub fn letter_count(w: &Word) -> LetterCount {
    let mut counts = [0u32; ALPHABET_SIZE];
    for &b in w.as_bytes() {
        counts[(b - b'a') as usize] += 1;
    }
    LetterCount(counts)
}

pub fn is_anagram(w1: &Word, w2: &Word) -> bool {
    w1.len() == w2.len() && letter_count(w1) == letter_count(w2)
}

/// Orders letter counts like their sorted spellings (`"aab" < "ab" < "b"`).
impl Ord for LetterCount {
    fn cmp(&self, other: &Self) -> Ordering {
        let Some(i) = (0..ALPHABET_SIZE).find(|&i| self.0[i] != other.0[i]) else {
            return Ordering::Equal;
        };
        // The shorter run of letter i is followed either by the end of its
        // spelling (smaller) or by some later letter (larger).
        let (shorter, flip) = if self.0[i] < other.0[i] { (self, false) } else { (other, true) };
        let shorter_is_smaller = shorter.last_letter().is_none_or(|last| last <= i);
        let ord = if shorter_is_smaller { Ordering::Less } else { Ordering::Greater };
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for LetterCount {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LetterCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LetterCount({})", self.sorted_word())
    }
}

impl fmt::Display for LetterCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.sorted_word(), f)
    }
}

/// A symmetric, irreflexive relation on generators: the commutators
/// `[α, β]` known to hold.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CommutationSet {
    rows: [u32; ALPHABET_SIZE],
}

impl CommutationSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every pair of distinct letters of `alphabet`.
    pub fn complete(alphabet: Alphabet) -> Self {
        let mut set = Self::new();
        for (a, b) in alphabet.pairs() {
            set.insert(a, b);
        }
        set
    }

    pub fn from_pairs<I: IntoIterator<Item = (Letter, Letter)>>(pairs: I) -> Self {
        let mut set = Self::new();
        set.extend(pairs);
        set
    }

    /// Records `[a, b]`. Returns `true` if the pair was new; `[a, a]` is
    /// never stored.
    pub fn insert(&mut self, a: Letter, b: Letter) -> bool {
        if a == b || self.contains(a, b) {
            return false;
        }
        self.rows[a.index()] |= b.bit();
        self.rows[b.index()] |= a.bit();
        true
    }

    /// Whether the pair `{a, b}` is stored. Always `false` for `a == b`.
    pub fn contains(&self, a: Letter, b: Letter) -> bool {
        self.rows[a.index()] & b.bit() != 0
    }

    /// Whether `a` and `b` commute: stored, or equal.
    pub fn commutes(&self, a: Letter, b: Letter) -> bool {
        a == b || self.contains(a, b)
    }

    /// Letters known to commute with `a` (excluding `a` itself).
    pub fn partners(&self, a: Letter) -> LetterSet {
        LetterSet(self.rows[a.index()])
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_subset(&self, other: &CommutationSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Stored pairs in canonical orientation `α < β`, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        Alphabet::ENGLISH.pairs().filter(|&(a, b)| self.contains(a, b))
    }

    /// Pairs of `alphabet` that are not stored.
    pub fn missing(&self, alphabet: Alphabet) -> Vec<(Letter, Letter)> {
        alphabet.pairs().filter(|&(a, b)| !self.contains(a, b)).collect()
    }
}

impl Extend<(Letter, Letter)> for CommutationSet {
    fn extend<T: IntoIterator<Item = (Letter, Letter)>>(&mut self, iter: T) {
        for (a, b) in iter {
            self.insert(a, b);
        }
    }
}

impl fmt::Debug for CommutationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs().map(|(a, b)| format!("{a}{b}"))).finish()
    }
}

impl Serialize for CommutationSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (a, b) in self.pairs() {
            seq.serialize_element(&format!("{a}{b}"))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CommutationSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PairsVisitor;

        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = CommutationSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a list of two-letter strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut set = CommutationSet::new();
                while let Some(pair) = seq.next_element::<String>()? {
                    let letters: Vec<Letter> = pair.chars().filter_map(Letter::from_char).collect();
                    match letters[..] {
                        [a, b] if a != b && pair.len() == 2 => {
                            set.insert(a, b);
                        }
                        _ => return Err(de::Error::custom(format!("bad commutator {pair:?}"))),
                    }
                }
                Ok(set)
            }
        }

        d.deserialize_seq(PairsVisitor)
    }
}

/// Letters present in `gamma` that commute with every other letter present.
///
/// A letter that is the only distinct letter present is always removable.
pub fn removable_letters(gamma: &LetterCount, commutation: &CommutationSet) -> LetterSet {
    let support = gamma.support();
    support
        .iter()
        .filter(|&l| {
            let mut others = support;
            others.remove(l);
            others.is_subset(commutation.partners(l))
        })
        .collect()
}

/// When a commutator was discovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// Round of the scan/reduce fixpoint loop, starting at 1.
    Iteration(u32),
    /// Round of residual processing after the loop, starting at 1.
    Residual(u32),
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Iteration(n) => write!(f, "{n}"),
            Stage::Residual(_) => f.write_str("residual"),
        }
    }
}

/// A discovered commutator together with the evidence for it.
///
/// `word1` and `word2` are anagrams. When they are a dictionary anagram pair
/// `chain` is empty; otherwise they are reduced words and `chain` lists the
/// dictionary anagram pairs whose reductions connect `word1` to `word2`.
/// The certificates rewrite `word1` to `s1·x·y·s2` and `word2` to
/// `s1·y·x·s2` using only commutators known before `stage`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorWitness {
    pub alpha: Letter,
    pub beta: Letter,
    pub stage: Stage,
    pub word1: Word,
    pub word2: Word,
    pub certificates: [SwapCertificate; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<(Word, Word)>,
}

impl CommutatorWitness {
    pub fn pair(&self) -> (Letter, Letter) {
        (self.alpha, self.beta)
    }

    pub fn is_direct(&self) -> bool {
        self.chain.is_empty()
    }
}
