//! Differential check of the projection test against brute-force search.
//!
//!     cargo run --release --example oracle_audit -- [instances] [seed]

use anagram_group::oracle::{enumerate_trace_class, oracle_trace_equal, OracleVerdict};
use anagram_group::{trace_equal, Alphabet, CommutationSet, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let instances: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (mut equal, mut distinct, mut unknown, mut disagreements) = (0, 0, 0, 0);
    for _ in 0..instances {
        let alphabet = Alphabet::new(rng.gen_range(2..=5)).unwrap();
        let set = CommutationSet::from_pairs(alphabet.pairs().filter(|_| rng.gen_bool(0.5)));
        let len = rng.gen_range(1..=8);
        let letters: Vec<Letter> =
            (0..len).map(|_| Letter::new(rng.gen_range(0..alphabet.size() as u8)).unwrap()).collect();
        let mut shuffled = letters.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let (w1, w2) = (Word::from_letters(letters), Word::from_letters(shuffled));

        let fast = trace_equal(&w1, &w2, &set);
        match oracle_trace_equal(&w1, &w2, &set, 50_000) {
            OracleVerdict::Unknown => unknown += 1,
            verdict => {
                let slow = verdict == OracleVerdict::Equal;
                if slow {
                    equal += 1
                } else {
                    distinct += 1
                }
                if slow != fast {
                    disagreements += 1;
                    println!("disagreement: {w1} / {w2}");
                }
            }
        }
    }
    println!(
        "{instances} instances: {equal} equal, {distinct} distinct, {unknown} undecided, {disagreements} disagreements"
    );

    let ab = CommutationSet::from_pairs([(Letter::new(0).unwrap(), Letter::new(1).unwrap())]);
    let class = enumerate_trace_class(&"abcab".parse().unwrap(), &ab, 100);
    let members: Vec<&str> = class.members.iter().map(Word::as_str).collect();
    println!("class of abcab with [a,b]: {members:?}");
}
