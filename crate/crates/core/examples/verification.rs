//! Checking a commutator set against every anagram relation of a list, and
//! the order patterns behind each missing commutator.
//!
//!     cargo run --example verification

use anagram_group::report::{emit_verification, ReportFormat};
use anagram_group::{verify_containment, Alphabet, CommutationSet, Dictionary, Letter};

fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = Dictionary::from_strs("demo", &["ab", "ba", "abc", "bac", "cab", "acb"])?;
    let alphabet = Alphabet::new(3).unwrap();

    let partial = CommutationSet::from_pairs([(letter('a'), letter('b'))]);
    println!("with [a,b] only:");
    print!("{}", emit_verification(&verify_containment(&d, &partial, alphabet), ReportFormat::Text)?);

    let full = CommutationSet::complete(alphabet);
    println!("\nwith every pair:");
    print!("{}", emit_verification(&verify_containment(&d, &full, alphabet), ReportFormat::Text)?);
    Ok(())
}
