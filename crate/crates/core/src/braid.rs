//! Braid words: parsing, validation, Markov moves, and the knot families
//! generated from the four-strand template.
//!
//! A word is a sequence of nonzero integers; the integer `k` stands for the
//! standard generator of index `|k|`, with the sign giving the crossing
//! sign. Words are stored verbatim; reduction is an explicit operation so
//! crossing counts in reports reflect the source table.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("letter 0 is not a braid generator")]
    ZeroLetter,
    #[error("token {0:?} is not a nonzero integer")]
    BadToken(String),
    #[error("letter {letter} needs at least {} strands, got {strands}", letter.unsigned_abs() + 1)]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("strand count must be at least 1")]
    NoStrands,
    #[error("word text must be a bracketed or bare comma-separated integer list")]
    Malformed,
    #[error("family parameter n must be nonnegative, got {0}")]
    NegativeFamilyIndex(i64),
    #[error("Bennequin genus needs a single-sign word, got a {0:?} one")]
    MixedSign(SignClass),
    #[error("closure is not a knot")]
    NotAKnot,
    #[error("crossing/strand parity violation: {0} crossings on {1} strands")]
    ParityViolation(usize, usize),
}

/// A word in braid generators together with its strand count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

/// Parameters `(n, m)` of the doubly indexed knot family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: i64,
    pub m: i64,
}

impl FamilyParams {
    pub fn new(n: i64, m: i64) -> Self {
        FamilyParams { n, m }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Positive,
    Negative,
    Mixed,
    Empty,
}

impl SignClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SignClass::Positive => "positive",
            SignClass::Negative => "negative",
            SignClass::Mixed => "mixed",
            SignClass::Empty => "empty",
        }
    }
}

/// Letter counts and exponent sum of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidStats {
    pub exponent_sum: i64,
    pub length: usize,
    pub positive_count: usize,
    pub negative_count: usize,
    pub sign_class: SignClass,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        if strands < 1 {
            return Err(BraidError::NoStrands);
        }
        for &letter in &letters {
            if letter == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds on the minimum strand count hosting the letters.
    pub fn from_letters(letters: Vec<i64>) -> Result<Self, BraidError> {
        let strands = min_strands(&letters);
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All crossing signs flipped; the closure of the result is the mirror.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|k| -k).collect(),
        }
    }

    pub fn stats(&self) -> BraidStats {
        let positive_count = self.letters.iter().filter(|&&k| k > 0).count();
        let negative_count = self.letters.len() - positive_count;
        let sign_class = match (positive_count, negative_count) {
            (0, 0) => SignClass::Empty,
            (_, 0) => SignClass::Positive,
            (0, _) => SignClass::Negative,
            _ => SignClass::Mixed,
        };
        BraidStats {
            exponent_sum: self.letters.iter().map(|k| k.signum()).sum(),
            length: self.letters.len(),
            positive_count,
            negative_count,
            sign_class,
        }
    }

    /// The permutation of `{0, .., n-1}` induced by the closure: the product
    /// of the transpositions `(|k|-1, |k|)` in word order.
    pub fn closure_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// True iff the closure has a single component.
    pub fn is_knot(&self) -> bool {
        cycle_count(&self.closure_permutation()) == 1
    }

    /// Deletes adjacent `(k, -k)` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i64> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if out.last().is_some_and(|&last| last == -k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Returns `k · w · k^{-1}`.
    pub fn conjugate(&self, k: i64) -> Result<Self, BraidError> {
        if k == 0 {
            return Err(BraidError::ZeroLetter);
        }
        if k.unsigned_abs() as usize >= self.strands {
            return Err(BraidError::LetterOutOfRange {
                letter: k,
                strands: self.strands,
            });
        }
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(k);
        letters.extend_from_slice(&self.letters);
        letters.push(-k);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Markov stabilization: one more strand, word followed by `±n`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i64;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Seifert genus of the closure of a single-sign knot word:
    /// `(length - strands + 1) / 2`.
    pub fn bennequin_genus(&self) -> Result<u64, BraidError> {
        let stats = self.stats();
        match stats.sign_class {
            SignClass::Positive | SignClass::Negative | SignClass::Empty => {}
            mixed => return Err(BraidError::MixedSign(mixed)),
        }
        if !self.is_knot() {
            return Err(BraidError::NotAKnot);
        }
        let euler = self.letters.len() as i64 - self.strands as i64 + 1;
        if euler % 2 != 0 {
            return Err(BraidError::ParityViolation(
                self.letters.len(),
                self.strands,
            ));
        }
        Ok((euler / 2) as u64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strands": self.strands,
            "letters": self.letters,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(self))
    }
}

fn min_strands(letters: &[i64]) -> usize {
    1 + letters
        .iter()
        .map(|k| k.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
        }
    }
    count
}

/// Cycle type of a permutation, sorted descending.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

/// Parses the appendix word format: a bracketed (or bare) comma- or
/// whitespace-separated list of nonzero integers. With `strands` omitted,
/// the minimum index hosting the word is used.
pub fn parse_word(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
    let trimmed = text.trim();
    let inner = if let Some(stripped) = trimmed.strip_prefix('[') {
        stripped.strip_suffix(']').ok_or(BraidError::Malformed)?
    } else if trimmed.ends_with(']') {
        return Err(BraidError::Malformed);
    } else {
        trimmed
    };
    let mut letters = Vec::new();
    for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let letter: i64 = token
            .parse()
            .map_err(|_| BraidError::BadToken(token.to_string()))?;
        if letter == 0 {
            return Err(BraidError::ZeroLetter);
        }
        letters.push(letter);
    }
    match strands {
        Some(n) => BraidWord::new(n, letters),
        None => BraidWord::from_letters(letters),
    }
}

/// Canonical text form, inverse to `parse_word`.
pub fn format_word(word: &BraidWord) -> String {
    let body: Vec<String> = word.letters.iter().map(|k| k.to_string()).collect();
    format!("[{}]", body.join(","))
}

/// The four-strand family word: `(2,1,3,2)^{2n+1}`, then the middle block
/// `sigma_1^{-(2m+1)}`, then `2,1,1,2`.
pub fn family_braid(params: FamilyParams) -> Result<BraidWord, BraidError> {
    if params.n < 0 {
        return Err(BraidError::NegativeFamilyIndex(params.n));
    }
    let reps = 2 * params.n as usize + 1;
    let mut letters = Vec::with_capacity(4 * reps + 8);
    for _ in 0..reps {
        letters.extend_from_slice(&[2, 1, 3, 2]);
    }
    let twist = 2 * params.m + 1;
    if twist >= 0 {
        letters.extend(std::iter::repeat_n(-1, twist as usize));
    } else {
        letters.extend(std::iter::repeat_n(1, (-twist) as usize));
    }
    letters.extend_from_slice(&[2, 1, 1, 2]);
    BraidWord::new(4, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    const O9_WORD: &str = "[2,1,3,2,2,1,3,2,2,1,3,2,-1,2,1,1,2]";

    #[test]
    fn parse_examples() {
        let w = parse_word(O9_WORD, None).unwrap();
        assert_eq!(w.strands(), 4);
        assert_eq!(w.len(), 17);

        let id = parse_word("[]", Some(1)).unwrap();
        assert_eq!(id.strands(), 1);
        assert!(id.is_empty());

        assert_eq!(parse_word("[1,0,2]", None), Err(BraidError::ZeroLetter));
        assert!(matches!(
            parse_word("[1,x]", None),
            Err(BraidError::BadToken(_))
        ));
        assert_eq!(
            parse_word("[3]", Some(2)),
            Err(BraidError::LetterOutOfRange {
                letter: 3,
                strands: 2
            })
        );
        // bare and whitespace-tolerant forms
        assert_eq!(parse_word("1, 2, -1", None).unwrap().letters(), &[1, 2, -1]);
        assert_eq!(parse_word("[ 1 , 2 ]", None).unwrap().letters(), &[1, 2]);
    }

    #[test]
    fn parse_format_roundtrip() {
        for text in [O9_WORD, "[]", "[1]", "[-1,-2,-1]"] {
            let w = parse_word(text, None).unwrap();
            assert_eq!(parse_word(&format_word(&w), Some(w.strands())).unwrap(), w);
        }
    }

    #[test]
    fn stats_examples() {
        let w = parse_word(O9_WORD, None).unwrap();
        let s = w.stats();
        assert_eq!(s.length, 17);
        assert_eq!(s.positive_count, 16);
        assert_eq!(s.negative_count, 1);
        assert_eq!(s.exponent_sum, 15);
        assert_eq!(s.sign_class, SignClass::Mixed);

        let m016 = parse_word("[-1, -1, -1, -2, -1, -2, -2, -2, -2, -1, -2, -2]", None).unwrap();
        assert_eq!(m016.stats().sign_class, SignClass::Negative);

        let empty = parse_word("[]", Some(3)).unwrap();
        let s = empty.stats();
        assert_eq!(
            (s.length, s.positive_count, s.negative_count, s.exponent_sum),
            (0, 0, 0, 0)
        );
        assert_eq!(s.sign_class, SignClass::Empty);
    }

    #[test]
    fn closure_permutation_examples() {
        let w = parse_word(O9_WORD, None).unwrap();
        assert_eq!(cycle_type(&w.closure_permutation()), vec![4]);
        assert!(w.is_knot());

        let empty = parse_word("[]", Some(5)).unwrap();
        assert_eq!(empty.closure_permutation(), vec![0, 1, 2, 3, 4]);
        assert!(!empty.is_knot());

        let pure = parse_word("[1,1]", Some(2)).unwrap();
        assert_eq!(cycle_type(&pure.closure_permutation()), vec![1, 1]);
        assert!(!pure.is_knot());

        assert!(parse_word("[1]", Some(2)).unwrap().is_knot());
    }

    #[test]
    fn free_reduce_examples() {
        let w = parse_word("[1,-1]", None).unwrap();
        assert!(w.free_reduce().is_empty());

        let w = parse_word("[2,1,-1,2]", None).unwrap();
        assert_eq!(w.free_reduce().letters(), &[2, 2]);

        // cancellation exposed by an inner deletion
        let w = parse_word("[1,2,-2,-1,3]", None).unwrap();
        assert_eq!(w.free_reduce().letters(), &[3]);

        let o9 = parse_word(O9_WORD, None).unwrap();
        assert_eq!(o9.free_reduce(), o9);
    }

    #[test]
    fn conjugate_and_stabilize() {
        let empty = parse_word("[]", Some(2)).unwrap();
        assert_eq!(empty.conjugate(1).unwrap().letters(), &[1, -1]);

        let w = parse_word("[1]", Some(3)).unwrap();
        assert_eq!(w.conjugate(2).unwrap().letters(), &[2, 1, -2]);
        assert!(matches!(
            w.conjugate(3),
            Err(BraidError::LetterOutOfRange { .. })
        ));

        let unknot = parse_word("[]", Some(1)).unwrap().stabilize(true);
        assert_eq!((unknot.strands(), unknot.letters()), (2, &[1_i64][..]));

        let tref = parse_word("[1,1,1]", None).unwrap().stabilize(true);
        assert_eq!((tref.strands(), tref.letters()), (3, &[1_i64, 1, 1, 2][..]));
        assert!(tref.is_knot());
    }

    #[test]
    fn family_words() {
        let beta1 = family_braid(FamilyParams::new(1, 0)).unwrap();
        assert_eq!(format_word(&beta1), O9_WORD.replace(' ', ""));

        let t09847 = family_braid(FamilyParams::new(1, -1)).unwrap();
        assert_eq!(
            t09847.letters(),
            &[2, 1, 3, 2, 2, 1, 3, 2, 2, 1, 3, 2, 1, 2, 1, 1, 2]
        );

        let k00 = family_braid(FamilyParams::new(0, 0)).unwrap();
        assert_eq!(k00.letters(), &[2, 1, 3, 2, -1, 2, 1, 1, 2]);
        assert!(k00.is_knot());

        assert!(family_braid(FamilyParams::new(-1, 0)).is_err());
    }

    #[test]
    fn bennequin_examples() {
        let tref = parse_word("[1,1,1]", None).unwrap();
        assert_eq!(tref.bennequin_genus().unwrap(), 1);

        let w = family_braid(FamilyParams::new(1, -1)).unwrap();
        assert_eq!(w.bennequin_genus().unwrap(), 7);

        let empty = parse_word("[]", Some(1)).unwrap();
        assert_eq!(empty.bennequin_genus().unwrap(), 0);

        let mixed = parse_word(O9_WORD, None).unwrap();
        assert!(matches!(
            mixed.bennequin_genus(),
            Err(BraidError::MixedSign(_))
        ));

        let link = parse_word("[1,1]", None).unwrap();
        assert_eq!(link.bennequin_genus(), Err(BraidError::NotAKnot));
    }

    #[test]
    fn knot_type_invariant_under_moves() {
        let w = parse_word("[1,2,1,-2]", None).unwrap();
        assert_eq!(w.is_knot(), w.conjugate(2).unwrap().is_knot());
        assert_eq!(w.is_knot(), w.stabilize(false).is_knot());
        assert_eq!(w.is_knot(), w.free_reduce().is_knot());
        let conj = cycle_type(&w.conjugate(1).unwrap().closure_permutation());
        assert_eq!(conj, cycle_type(&w.closure_permutation()));
    }
}
