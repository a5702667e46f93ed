//! Loading word lists.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::model::{Word, WordError};

/// How lines that are not plain `a-z` words are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SanitizePolicy {
    /// Reject the whole file at the first bad line.
    #[default]
    Strict,
    /// Skip bad lines and count them.
    Lenient,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{source_name}:{line}: {content:?}: {reason}")]
    InvalidLine { source_name: String, line: usize, content: String, reason: WordError },
}

/// A deduplicated word list in first-seen order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dictionary {
    words: Vec<Word>,
    source_name: String,
    skipped_lines: usize,
}

impl Dictionary {
    /// Builds a dictionary from words, dropping duplicates and empty words.
    pub fn from_words<I: IntoIterator<Item = Word>>(source_name: impl Into<String>, words: I) -> Self {
        let mut seen = HashSet::new();
        let words = words.into_iter().filter(|w| !w.is_empty() && seen.insert(w.clone())).collect();
        Dictionary { words, source_name: source_name.into(), skipped_lines: 0 }
    }

    /// Parses lowercase words; convenient for small in-memory lists.
    pub fn from_strs<S: AsRef<str>>(source_name: impl Into<String>, words: &[S]) -> Result<Self, WordError> {
        let words = words.iter().map(|s| Word::parse(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_words(source_name, words))
    }

    /// Reads one word per line. Surrounding whitespace is trimmed, blank
    /// lines are ignored and uppercase is folded to lowercase.
    pub fn parse<R: BufRead>(
        reader: R,
        source_name: impl Into<String>,
        policy: SanitizePolicy,
    ) -> Result<Self, IngestError> {
        let source_name = source_name.into();
        let mut words = Vec::new();
        let mut skipped = 0;
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| IngestError::Io { path: source_name.clone(), source })?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            match Word::parse(&trimmed.to_ascii_lowercase()) {
                Ok(word) => words.push(word),
                Err(reason) => match policy {
                    SanitizePolicy::Lenient => skipped += 1,
                    SanitizePolicy::Strict => {
                        return Err(IngestError::InvalidLine { source_name, line: idx + 1, content: line, reason })
                    }
                },
            }
        }
        let mut dict = Self::from_words(source_name, words);
        dict.skipped_lines = skipped;
        Ok(dict)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    /// Lines dropped under [`SanitizePolicy::Lenient`].
    pub fn skipped_lines(&self) -> usize {
        self.skipped_lines
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    /// Writes the words one per line, in order.
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for w in &self.words {
            writeln!(out, "{w}")?;
        }
        Ok(())
    }
}

pub fn load_dictionary(path: impl AsRef<Path>, policy: SanitizePolicy) -> Result<Dictionary, IngestError> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let file = File::open(path).map_err(|source| IngestError::Io { path: name.clone(), source })?;
    Dictionary::parse(BufReader::new(file), name, policy)
}
