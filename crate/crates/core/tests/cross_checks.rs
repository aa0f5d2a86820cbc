//! Cross-module identities on deterministic pseudo-random words: the two
//! Alexander routes agree, invariants survive Markov moves, and the
//! family's three routes coincide.

use braidknots::alexander::{alexander, family_alexander_closed, family_alexander_via_link};
use braidknots::braid::{family_braid, BraidWord};
use braidknots::homfly::{alexander_from_homfly, homfly, Caps};
use braidknots::FamilyParams;

/// SplitMix64; fixed seeds keep these runs reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn word(&mut self, max_strands: u64, max_len: u64) -> BraidWord {
        let strands = 2 + self.below(max_strands - 1);
        let len = self.below(max_len + 1);
        let letters = (0..len)
            .map(|_| {
                let k = 1 + self.below(strands - 1) as i64;
                if self.below(2) == 0 {
                    k
                } else {
                    -k
                }
            })
            .collect();
        BraidWord::new(strands as usize, letters).unwrap()
    }

    fn knot_word(&mut self, max_strands: u64, max_len: u64) -> BraidWord {
        loop {
            let word = self.word(max_strands, max_len);
            if word.is_knot() {
                return word;
            }
        }
    }
}

#[test]
fn homfly_specialization_matches_burau() {
    let caps = Caps::default();
    let mut rng = Rng(7);
    for _ in 0..50 {
        let word = rng.knot_word(4, 10);
        let via_homfly = alexander_from_homfly(&homfly(&word, &caps).unwrap()).unwrap();
        let via_burau = alexander(&word).unwrap();
        assert_eq!(via_homfly, via_burau, "word {word}");
    }
}

#[test]
fn alexander_is_markov_invariant() {
    let mut rng = Rng(11);
    for _ in 0..50 {
        let word = rng.knot_word(4, 10);
        let base = alexander(&word).unwrap();
        let k = 1 + rng.below(word.strands() as u64 - 1) as i64;
        assert_eq!(alexander(&word.conjugate(k).unwrap()).unwrap(), base);
        assert_eq!(alexander(&word.stabilize(true)).unwrap(), base);
        assert_eq!(alexander(&word.stabilize(false)).unwrap(), base);
        assert_eq!(alexander(&word.free_reduce()).unwrap(), base);
        // mirror invariance of the Alexander polynomial
        assert_eq!(alexander(&word.mirror()).unwrap(), base);
    }
}

#[test]
fn family_routes_agree_on_a_window() {
    for n in 0..=3 {
        for m in -3..=3 {
            let p = FamilyParams::new(n, m);
            let closed = family_alexander_closed(p).unwrap();
            assert_eq!(
                closed,
                family_alexander_via_link(p).unwrap(),
                "link route at ({n},{m})"
            );
            assert_eq!(
                closed,
                alexander(&family_braid(p).unwrap()).unwrap(),
                "burau route at ({n},{m})"
            );
        }
    }
}

#[test]
fn bennequin_genus_matches_alexander_degree_for_positive_family() {
    for n in 0..=10 {
        for m in -8..0 {
            let p = FamilyParams::new(n, m);
            let word = family_braid(p).unwrap();
            let delta = family_alexander_closed(p).unwrap();
            assert_eq!(
                word.bennequin_genus().unwrap() as i64,
                delta.max_degree().unwrap(),
                "at ({n},{m})"
            );
        }
    }
}

#[test]
fn conjugation_and_stabilization_preserve_homfly_invariants() {
    let caps = Caps::default();
    let mut rng = Rng(23);
    for _ in 0..20 {
        let word = rng.knot_word(4, 8);
        let base = homfly(&word, &caps).unwrap();
        let k = 1 + rng.below(word.strands() as u64 - 1) as i64;
        let conjugated = word.conjugate(k).unwrap();
        assert_eq!(
            homfly(&conjugated, &caps).unwrap(),
            base,
            "conjugation by {k} on {word}"
        );
        assert_eq!(
            homfly(&word.stabilize(true), &caps).unwrap(),
            base,
            "stabilize {word}"
        );
    }
}

#[test]
fn corpus_single_sign_words_have_bennequin_genus_equal_alexander_degree() {
    use braidknots::braid::SignClass;
    use braidknots::corpus::{load_corpus, TableTag};
    let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut checked = 0;
    for (file, tag) in [
        ("census_lspace.tsv", TableTag::LSpace),
        ("census_non_lspace.tsv", TableTag::NonLSpace),
    ] {
        for entry in load_corpus(&data.join(file), tag).unwrap() {
            let stats = entry.word.stats();
            let single_sign = matches!(stats.sign_class, SignClass::Positive | SignClass::Negative);
            if !single_sign || stats.length > 60 || !entry.word.is_knot() {
                continue;
            }
            let genus = entry.word.bennequin_genus().unwrap();
            let delta = alexander(&entry.word).unwrap();
            assert_eq!(
                genus as i64,
                delta.max_degree().unwrap(),
                "genus mismatch for {}",
                entry.name
            );
            checked += 1;
        }
    }
    assert!(checked > 50, "expected a healthy sample, got {checked}");
}
