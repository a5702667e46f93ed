//! Anagram buckets, their reduction by central letters, and merging.
//!
//!     cargo run --example anagraphs

use anagram_group::anagraph::{build_anagraphs, reduce_store, Provenance};
use anagram_group::{CommutationSet, Dictionary, Letter};

fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = Dictionary::from_strs("demo", &["cabf", "cfba", "dfba", "dbaf", "able", "bale", "cat"])?;
    let store = build_anagraphs(&d);
    println!("{} buckets from {} words", store.len(), d.len());

    // Make c and d commute with everything: both can be deleted, and the
    // two buckets land on the same letter count.
    let mut central = CommutationSet::new();
    for c in ['c', 'd'] {
        for other in 'a'..='z' {
            central.insert(letter(c), letter(other));
        }
    }
    let reduced = reduce_store(store, &central);
    for g in reduced.buckets() {
        println!("bucket {}:", g.key());
        for component in g.components() {
            let words: Vec<&str> = component.iter().map(|&i| g.vertices()[i].word.as_str()).collect();
            println!("  component {words:?}");
        }
        if let Some(i) = g.vertices().iter().position(|v| v.word.as_str() == "abf") {
            let j = g.vertices().iter().position(|v| v.word.as_str() == "baf").unwrap();
            match reduced.provenance(g, i, j) {
                Some(Provenance::Chain(links)) => println!("  abf = baf via {links:?}"),
                other => println!("  abf = baf: {other:?}"),
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&reduced)?);
    Ok(())
}
