//! Swap certificates: replayable proofs that a relation forces a commutator.
//!
//!     cargo run --example certificates

use anagram_group::{check_certificate, check_certificate_pair, find_certificate, CommutationSet, Letter, Word};

fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

fn show(label: &str, cert: &anagram_group::SwapCertificate) {
    let f = &cert.end_form;
    let positions: Vec<usize> = cert.swaps.iter().map(|s| s.position).collect();
    println!("  {label}: {} --swaps at {positions:?}--> {}·{}{}·{}", cert.start, f.prefix, f.first, f.second, f.suffix);
}

fn main() {
    // e commutes with r and s, so "bruxes" and "exurbs" can be brought to
    // forms differing only in the order of one b and one x.
    let mut known = CommutationSet::new();
    for p in ["be", "bs", "bu", "br", "eu", "er", "es", "rs", "su", "ru", "ex", "sx", "rx", "ux"] {
        let mut cs = p.chars();
        known.insert(letter(cs.next().unwrap()), letter(cs.next().unwrap()));
    }

    let w1: Word = "bruxes".parse().unwrap();
    let w2: Word = "exurbs".parse().unwrap();
    match find_certificate(&w1, &w2, letter('b'), letter('x'), &known) {
        Ok((c1, c2)) => {
            println!("[b, x] from {w1} = {w2}");
            show("first", &c1);
            show("second", &c2);
            println!("  pair replays: {}", check_certificate_pair(&c1, &c2, letter('b'), letter('x'), &known));

            // Without the known commutators the same swaps are illegal.
            println!("  replays with no commutators: {}", check_certificate(&c1, &CommutationSet::new()));
        }
        Err(e) => println!("no certificate: {e}"),
    }

    let refused =
        find_certificate(&"abab".parse().unwrap(), &"baba".parse().unwrap(), letter('a'), letter('b'), &known);
    println!("abab = baba: {}", refused.unwrap_err());
}
