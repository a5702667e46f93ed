//! Equality of words modulo commuting letters, and reading a commutator off
//! a relation.
//!
//!     cargo run --example trace_equivalence

use anagram_group::{extract_commutator, projection, trace_equal, Alphabet, CommutationSet, Letter, Word};

fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

fn spell(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

fn describe(w1: &Word, w2: &Word, known: &CommutationSet) {
    println!("{w1} = {w2}");
    println!("  equal modulo known commutators: {}", trace_equal(w1, w2, known));
    for (a, b) in Alphabet::ENGLISH.pairs() {
        if known.contains(a, b) || !(w1.support().contains(a) && w1.support().contains(b)) {
            continue;
        }
        let (p1, p2) = (projection(w1, a, b).sequence, projection(w2, a, b).sequence);
        if p1 != p2 {
            println!("  {a}{b}-projections differ: {} / {}", spell(&p1), spell(&p2));
        }
    }
    match extract_commutator(w1, w2, known) {
        Some((x, y)) => println!("  witnesses [{x}, {y}]"),
        None => println!("  witnesses no single new commutator"),
    }
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn main() {
    let known = CommutationSet::from_pairs([(letter('e'), letter('r')), (letter('e'), letter('s'))]);
    println!("known: [e, r], [e, s]");
    for (a, b) in [("ers", "rse"), ("ers", "sre"), ("able", "bale"), ("abab", "baba")] {
        describe(&word(a), &word(b), &known);
    }

    let more = CommutationSet::from_pairs([(letter('a'), letter('b')), (letter('b'), letter('c'))]);
    println!("\nknown: none");
    describe(&word("abcd"), &word("cbad"), &CommutationSet::new());
    println!("\nknown: [a, b], [b, c]");
    describe(&word("abcd"), &word("cbad"), &more);
}
