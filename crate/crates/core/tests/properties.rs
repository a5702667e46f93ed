use anagram_group::oracle::{oracle_trace_equal, OracleVerdict};
use anagram_group::pipeline::run_fixpoint;
use anagram_group::{
    build_anagraphs, extract_commutator, is_anagram, letter_count, reduce_store, removable_letters, run, trace_equal,
    Alphabet, CommutationSet, Dictionary, Letter, RunConfig, Word,
};
use proptest::prelude::*;

const ALPHABET: usize = 5;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..ALPHABET as u8, 1..=max_len)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|i| Letter::new(i).unwrap())))
}

fn commutation() -> impl Strategy<Value = CommutationSet> {
    let pairs: Vec<(Letter, Letter)> = Alphabet::new(ALPHABET).unwrap().pairs().collect();
    prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
        CommutationSet::from_pairs(pairs.iter().zip(mask).filter(|(_, keep)| *keep).map(|(p, _)| *p))
    })
}

fn superset(i: &CommutationSet, extra: &CommutationSet) -> CommutationSet {
    let mut j = i.clone();
    j.extend(extra.pairs());
    j
}

/// A word and a rearrangement of it.
fn anagram_pair(max_len: usize) -> impl Strategy<Value = (Word, Word)> {
    word(max_len).prop_flat_map(|w| {
        let letters: Vec<Letter> = w.letters().collect();
        (Just(w), Just(letters).prop_shuffle().prop_map(Word::from_letters))
    })
}

fn dictionary() -> impl Strategy<Value = Dictionary> {
    prop::collection::vec(anagram_pair(6), 1..10)
        .prop_map(|pairs| Dictionary::from_words("prop", pairs.into_iter().flat_map(|(a, b)| [a, b])))
}

proptest! {
    #[test]
    fn letter_count_is_permutation_invariant((w1, w2) in anagram_pair(10)) {
        prop_assert_eq!(letter_count(&w1), letter_count(&w2));
        prop_assert!(is_anagram(&w1, &w2));
        prop_assert_eq!(letter_count(&w1).total(), w1.len() as u64);
    }

    #[test]
    fn removable_letters_grow_with_commutation(w in word(8), i in commutation(), extra in commutation()) {
        let j = superset(&i, &extra);
        let gamma = letter_count(&w);
        prop_assert!(removable_letters(&gamma, &i).is_subset(removable_letters(&gamma, &j)));
    }

    #[test]
    fn commutation_is_symmetric(i in commutation()) {
        for a in Alphabet::ENGLISH.letters() {
            for b in Alphabet::ENGLISH.letters() {
                prop_assert_eq!(i.commutes(a, b), i.commutes(b, a));
            }
        }
    }

    #[test]
    fn trace_equal_is_an_equivalence(
        (w1, w2) in anagram_pair(7),
        w3 in word(7),
        i in commutation(),
    ) {
        prop_assert!(trace_equal(&w1, &w1, &i));
        prop_assert_eq!(trace_equal(&w1, &w2, &i), trace_equal(&w2, &w1, &i));
        if trace_equal(&w1, &w2, &i) && trace_equal(&w2, &w3, &i) {
            prop_assert!(trace_equal(&w1, &w3, &i));
        }
    }

    #[test]
    fn trace_equal_grows_with_commutation((w1, w2) in anagram_pair(7), i in commutation(), extra in commutation()) {
        if trace_equal(&w1, &w2, &i) {
            prop_assert!(trace_equal(&w1, &w2, &superset(&i, &extra)));
        }
    }

    #[test]
    fn trace_equal_matches_oracle((w1, w2) in anagram_pair(7), i in commutation()) {
        let oracle = oracle_trace_equal(&w1, &w2, &i, 10_000);
        prop_assert_ne!(oracle, OracleVerdict::Unknown);
        prop_assert_eq!(trace_equal(&w1, &w2, &i), oracle == OracleVerdict::Equal);
    }

    #[test]
    fn extraction_never_reports_known_pairs((w1, w2) in anagram_pair(7), i in commutation()) {
        if let Some((a, b)) = extract_commutator(&w1, &w2, &i) {
            prop_assert!(a < b);
            prop_assert!(!i.contains(a, b));
            prop_assert!(!trace_equal(&w1, &w2, &i));
        }
    }

    #[test]
    fn reduction_is_idempotent(d in dictionary(), i in commutation()) {
        let once = reduce_store(build_anagraphs(&d), &i);
        let twice = reduce_store(once.clone(), &i);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn reduction_keeps_keys_coherent_and_shrinks(d in dictionary(), i in commutation(), extra in commutation()) {
        let built = build_anagraphs(&d);
        let first = reduce_store(built.clone(), &i);
        let second = reduce_store(first.clone(), &superset(&i, &extra));
        for store in [&first, &second] {
            for g in store.buckets() {
                for v in g.vertices() {
                    prop_assert_eq!(&letter_count(&v.word), g.key());
                }
            }
        }
        prop_assert!(first.len() <= built.len());
        prop_assert!(second.len() <= first.len());
        prop_assert!(second.vertex_count() <= first.vertex_count());
    }

    #[test]
    fn fixpoint_is_stable(d in dictionary()) {
        let fix = run_fixpoint(&d, 50).unwrap();
        let again = reduce_store(fix.store.clone(), &fix.commutators);
        prop_assert_eq!(&again, &fix.store);
    }

    #[test]
    fn runs_are_deterministic(d in dictionary()) {
        let one = RunConfig { parallelism: Some(1), ..RunConfig::default() };
        let four = RunConfig { parallelism: Some(4), ..RunConfig::default() };
        let a = serde_json::to_string(&run(&d, &one).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&d, &four).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dictionary_dump_reloads(d in dictionary()) {
        let mut bytes = Vec::new();
        d.write_to(&mut bytes).unwrap();
        let back = Dictionary::parse(bytes.as_slice(), "prop", Default::default()).unwrap();
        prop_assert_eq!(back.words(), d.words());
    }
}
