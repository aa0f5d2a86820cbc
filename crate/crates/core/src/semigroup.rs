//! Formal semigroups of L-space knots: the exponent set of
//! `t^g Delta(t) / (1 - t)`, the test for being an actual semigroup, and
//! minimal generating sets.

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::alexander::{self, AlexanderError};
use crate::braid::SignClass;
use crate::corpus::CensusEntry;
use crate::{Int, IntPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("series coefficient {coefficient} at degree {degree} is outside {{0,1}}: input is not in L-space form")]
    NotLSpaceForm { degree: usize, coefficient: Int },
    #[error("polynomial is not symmetrized")]
    NotSymmetrized,
    #[error("generators are only defined for actual semigroups")]
    NotASemigroup,
}

/// The formal semigroup of an L-space knot: membership below `2g` as a
/// bitset, everything from `2g` on a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSemigroup {
    genus: usize,
    small: Vec<bool>,
}

impl FormalSemigroup {
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// First index from which every natural number is a member.
    pub fn tail_start(&self) -> usize {
        2 * self.genus
    }

    pub fn contains(&self, s: usize) -> bool {
        if s >= self.small.len() {
            true
        } else {
            self.small[s]
        }
    }

    /// Members below `2g`, sorted.
    pub fn small_elements(&self) -> Vec<usize> {
        (0..self.small.len()).filter(|&s| self.small[s]).collect()
    }

    /// Non-members (all below `2g`), sorted.
    pub fn gaps(&self) -> Vec<usize> {
        (0..self.small.len()).filter(|&s| !self.small[s]).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "small_elements": self.small_elements(),
            "tail_start": self.tail_start(),
        })
    }
}

/// Expands `t^g Delta(t) * (1 + t + t^2 + ...)` to degree `2g`; the partial
/// sums must all be 0 or 1, the 1s are the members.
pub fn formal_semigroup(delta: &IntPoly) -> Result<FormalSemigroup, SemigroupError> {
    if delta.is_zero() || !delta.is_palindromic() || !delta.eval_at_one().is_one() {
        return Err(SemigroupError::NotSymmetrized);
    }
    let genus = delta.max_degree().unwrap() as usize;
    let shifted = delta.shift(genus as i64);
    let mut small = vec![false; 2 * genus];
    let mut partial = Int::zero();
    for (degree, slot) in small.iter_mut().enumerate() {
        partial += shifted.coeff(degree as i64);
        if partial.is_zero() {
            continue;
        }
        if partial.is_one() {
            *slot = true;
        } else {
            return Err(SemigroupError::NotLSpaceForm {
                degree,
                coefficient: partial,
            });
        }
    }
    Ok(FormalSemigroup { genus, small })
}

/// Checks closure under addition. Sums reaching the tail are automatically
/// members, so testing pairs of small elements is enough; the witness is
/// the first failing pair in lexicographic order.
pub fn is_semigroup(s: &FormalSemigroup) -> (bool, Option<(usize, usize)>) {
    let members = s.small_elements();
    for (idx, &a) in members.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for &b in &members[idx..] {
            if !s.contains(a + b) {
                return (false, Some((a, b)));
            }
        }
    }
    (true, None)
}

/// Nonzero members not expressible as a sum of two nonzero members. The
/// search stops at `largest_gap + multiplicity`: any member beyond that
/// splits off the multiplicity and stays a member.
pub fn minimal_generators(s: &FormalSemigroup) -> Result<Vec<usize>, SemigroupError> {
    let (closed, _) = is_semigroup(s);
    if !closed {
        return Err(SemigroupError::NotASemigroup);
    }
    let multiplicity = (1..).find(|&x| s.contains(x)).unwrap();
    let largest_gap = s.gaps().last().copied().unwrap_or(0);
    let bound = largest_gap + multiplicity;
    let mut generators = Vec::new();
    for candidate in 1..=bound {
        if !s.contains(candidate) {
            continue;
        }
        let decomposable = (1..candidate).any(|a| s.contains(a) && s.contains(candidate - a));
        if !decomposable {
            generators.push(candidate);
        }
    }
    Ok(generators)
}

/// Per-knot verdict of the census scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub name: String,
    pub outcome: Result<ScanVerdict, String>,
}

#[derive(Debug, Clone)]
pub struct ScanVerdict {
    pub genus: usize,
    pub small_elements: Vec<usize>,
    pub is_semigroup: bool,
    pub witness: Option<(usize, usize)>,
    pub generators: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub semigroup_positive: Vec<String>,
}

impl ScanRow {
    pub fn to_json(&self) -> Value {
        match &self.outcome {
            Ok(v) => json!({
                "name": self.name,
                "genus": v.genus,
                "small_elements": v.small_elements,
                "is_semigroup": v.is_semigroup,
                "witness": v.witness.map(|(a, b)| json!([a, b])),
                "generators": v.generators,
            }),
            Err(e) => json!({ "name": self.name, "error": e }),
        }
    }
}

impl ScanReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(ScanRow::to_json).collect::<Vec<_>>(),
            "semigroup_positive": self.semigroup_positive,
        })
    }

    /// Tab-separated rows: name, genus, small elements, is_semigroup, and
    /// a witness pair or the generator list.
    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("name\tgenus\tsmall_elements\tis_semigroup\twitness_or_generators\n");
        for row in &self.rows {
            match &row.outcome {
                Ok(v) => {
                    let elements = v
                        .small_elements
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    let last = match (&v.witness, &v.generators) {
                        (Some((a, b)), _) => format!("witness={a}+{b}"),
                        (None, Some(gens)) => format!(
                            "generators={}",
                            gens.iter()
                                .map(usize::to_string)
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                        (None, None) => String::new(),
                    };
                    out.push_str(&format!(
                        "{}\t{}\t{{{elements}}}\t{}\t{last}\n",
                        row.name, v.genus, v.is_semigroup
                    ));
                }
                Err(e) => out.push_str(&format!("{}\terror\t\t\t{e}\n", row.name)),
            }
        }
        out
    }
}

/// Runs the formal-semigroup pipeline on one word: Alexander polynomial,
/// L-space form check, series expansion, closure test. Mirrors are no
/// concern since the Alexander polynomial is mirror-invariant.
pub fn scan_word(word: &crate::BraidWord) -> Result<ScanVerdict, String> {
    let delta = alexander::alexander(word).map_err(|e| e.to_string())?;
    let form = alexander::lspace_form_check(&delta);
    if !form.passes {
        return Err(format!(
            "Alexander polynomial is not in L-space form: {}{}",
            form.reason.as_str(),
            form.offending_degree
                .map(|d| format!(" at degree {d}"))
                .unwrap_or_default()
        ));
    }
    let s = formal_semigroup(&delta).map_err(|e| e.to_string())?;
    let (closed, witness) = is_semigroup(&s);
    let generators = if closed {
        Some(minimal_generators(&s).unwrap())
    } else {
        None
    };
    Ok(ScanVerdict {
        genus: s.genus(),
        small_elements: s.small_elements(),
        is_semigroup: closed,
        witness,
        generators,
    })
}

/// Scans a corpus table entry by entry, never aborting the batch; the
/// report lists every verdict plus the names whose formal semigroups are
/// actual semigroups, sorted by name.
pub fn census_semigroup_scan(entries: &[CensusEntry]) -> ScanReport {
    let mut rows: Vec<ScanRow> = entries
        .iter()
        .map(|entry| ScanRow {
            name: entry.name.clone(),
            outcome: scan_word(&entry.word),
        })
        .collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    let semigroup_positive = rows
        .iter()
        .filter(|row| matches!(&row.outcome, Ok(v) if v.is_semigroup))
        .map(|row| row.name.clone())
        .collect();
    ScanReport {
        rows,
        semigroup_positive,
    }
}

/// Sanity flag used by reports: an all-negative word closes to the mirror
/// of a positive-braid knot, which shares its Alexander polynomial.
pub fn needs_mirror(word: &crate::BraidWord) -> bool {
    word.stats().sign_class == SignClass::Negative
}

impl From<AlexanderError> for SemigroupError {
    fn from(_: AlexanderError) -> Self {
        SemigroupError::NotSymmetrized
    }
}
