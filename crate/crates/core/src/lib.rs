//! Presentations of anagram groups.
//!
//! Given a word list `D`, two words are related when they are anagrams. The
//! anagram group is the free group on the letters modulo all such relations.
//! This crate finds the generator commutators `[α, β]` that those relations
//! force, and checks whether the commutators alone account for every
//! relation, in which case the group is right-angled Artin.
//!
//! ```
//! use anagram_group::{run, Dictionary, RunConfig};
//!
//! let d = Dictionary::from_strs("demo", &["able", "bale", "tea", "eat", "eta"]).unwrap();
//! let r = run(&d, &RunConfig::default()).unwrap();
//! assert_eq!(r.commutators.len(), 3); // [a,b], [a,t], [e,t]
//! assert!(r.is_right_angled());
//! ```
//!
//! The module layout follows the computation:
//!
//! * [`model`]: letters, words, letter counts, commutation sets, witnesses
//! * [`ingest`]: loading word lists
//! * [`trace`]: equality modulo commutators, commutator extraction, swap
//!   certificates
//! * [`anagraph`]: buckets of anagrams and their reduction
//! * [`scan`]: finding new commutators in a bucket store
//! * [`pipeline`]: the full fixpoint computation and verification
//! * [`oracle`]: brute-force checks for small inputs
//! * [`report`]: text, JSON and CSV output
//! * [`cli`]: the `anagram-group` binary

pub mod anagraph;
pub mod cli;
mod dsu;
pub mod ingest;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod scan;
pub mod trace;

pub use anagraph::{build_anagraphs, component_pairs, reduce_store, reduce_word, Anagraph, AnagraphStore};
pub use ingest::{load_dictionary, Dictionary, IngestError, SanitizePolicy};
pub use model::{
    is_anagram, letter_count, removable_letters, Alphabet, CommutationSet, CommutatorWitness, Letter, LetterCount,
    LetterSet, Stage, Word, WordError,
};
pub use pipeline::{run, verify_containment, PipelineError, RunConfig, RunResult, VerificationReport};
pub use report::{emit_presentation, emit_progress, emit_witness_table, PresentationDoc, ReportFormat};
pub use scan::{scan_for_commutators, ExtractionRule};
pub use trace::{
    check_certificate, check_certificate_pair, extract_commutator, find_certificate, projection, trace_equal,
    SwapCertificate,
};
