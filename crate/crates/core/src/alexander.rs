//! Alexander polynomials three independent ways: reduced Burau
//! determinant, closed form for the knot family, and the multivariable
//! link-polynomial specialization. Also the coefficient-shape test an
//! L-space knot's polynomial must pass.
//!
//! The symmetrized polynomial (`d(t) = d(1/t)`, `d(1) = 1`) is the
//! canonical representative everywhere; raw unit-ambiguous values never
//! leave this module.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord, FamilyParams};
use crate::polynomial::{Coeff, LaurentPoly, MultiPoly, PolyError};
use crate::{Int, IntPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("reduced Burau needs at least 2 strands")]
    TooFewStrands,
    #[error("closure is not a knot")]
    NotAKnot,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("unit normalization failed: {0}")]
    UnitNormalization(PolyError),
    #[error("inexact division in the Alexander pipeline: {0}")]
    Inexact(PolyError),
}

/// Square matrix of Laurent polynomials, the image of a word under the
/// reduced Burau representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurauMatrix<C: Coeff> {
    size: usize,
    entries: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Coeff> BurauMatrix<C> {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly<C> {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly<C>>] {
        &self.entries
    }

    fn identity(size: usize) -> Self {
        let entries = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| {
                        if r == c {
                            LaurentPoly::one()
                        } else {
                            LaurentPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        BurauMatrix { size, entries }
    }

    /// Right multiplication by a generator matrix. The generator differs
    /// from the identity only in column `i-1`, so only one column changes.
    fn apply_generator(&mut self, letter: i64) {
        let col = letter.unsigned_abs() as usize - 1;
        let inverse = letter < 0;
        for row in 0..self.size {
            let above = if col > 0 {
                Some(self.entries[row][col - 1].clone())
            } else {
                None
            };
            let below = if col + 1 < self.size {
                Some(self.entries[row][col + 1].clone())
            } else {
                None
            };
            let mid = self.entries[row][col].clone();
            let new = if !inverse {
                // generator column: (i-1) -> t, i -> -t, (i+1) -> 1
                let mut acc = mid.mul(&LaurentPoly::monomial(1, -C::one()));
                if let Some(a) = above {
                    acc = acc.add(&a.shift(1));
                }
                if let Some(b) = below {
                    acc = acc.add(&b);
                }
                acc
            } else {
                // inverse column: (i-1) -> 1, i -> -1/t, (i+1) -> 1/t
                let mut acc = mid.mul(&LaurentPoly::monomial(-1, -C::one()));
                if let Some(a) = above {
                    acc = acc.add(&a);
                }
                if let Some(b) = below {
                    acc = acc.add(&b.shift(-1));
                }
                acc
            };
            self.entries[row][col] = new;
        }
    }
}

/// Product of the reduced Burau generator matrices in word order, size
/// `(strands - 1)`.
pub fn reduced_burau<C: Coeff>(word: &BraidWord) -> Result<BurauMatrix<C>, AlexanderError> {
    if word.strands() < 2 {
        return Err(AlexanderError::TooFewStrands);
    }
    let mut m = BurauMatrix::identity(word.strands() - 1);
    for &letter in word.letters() {
        m.apply_generator(letter);
    }
    Ok(m)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting;
/// every division is exact in the Laurent ring.
pub fn determinant<C: Coeff>(matrix: &BurauMatrix<C>) -> LaurentPoly<C> {
    let n = matrix.size;
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut m = matrix.entries.clone();
    let mut sign = false;
    let mut prev_pivot = LaurentPoly::<C>::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev_pivot)
                    .expect("Bareiss divisions are exact by the Sylvester identity");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev_pivot = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Symmetrized Alexander polynomial of the closure, via
/// `det(burau - I) * (1 - t) / (1 - t^n)`.
pub fn alexander(word: &BraidWord) -> Result<IntPoly, AlexanderError> {
    if !word.is_knot() {
        return Err(AlexanderError::NotAKnot);
    }
    if word.strands() == 1 {
        return Ok(IntPoly::one());
    }
    let mut m = reduced_burau::<Int>(word)?;
    for i in 0..m.size {
        let shifted = m.entries[i][i].sub(&LaurentPoly::one());
        m.entries[i][i] = shifted;
    }
    let det = determinant(&m);
    // (1 - t^n) / (1 - t) = 1 + t + ... + t^(n-1)
    let cyclic_sum = IntPoly::from_coeffs(0, vec![Int::one(); word.strands()]);
    let quotient = det
        .exact_div(&cyclic_sum)
        .map_err(AlexanderError::Inexact)?;
    quotient
        .symmetrize()
        .map_err(AlexanderError::UnitNormalization)
}

/// The closed-form Alexander polynomial of the family knot `K_{n,m}`,
/// symmetrized.
///
/// Three blocks: twisted tails `t^{m-1} sum_{i=0}^{n} (t^{-4i-1} - t^{-4i})`
/// and `t^{1-m} sum_{k=0}^{n} (t^{4k+1} - t^{4k})` around the center block
/// `(t^{m+1} - t^m + t^{-m} - t^{-m-1}) / (t - t^{-1})`, which expands to
/// `(-1)^u sum_{j=-u}^{u} (-t)^j` with `u = m` for `m >= 0` and
/// `u = -1-m` for `m < 0` (the rational form is invariant under
/// `m <-> -1-m`).
pub fn family_alexander_closed(params: FamilyParams) -> Result<IntPoly, AlexanderError> {
    if params.n < 0 {
        return Err(AlexanderError::Braid(BraidError::NegativeFamilyIndex(
            params.n,
        )));
    }
    let (n, m) = (params.n, params.m);
    let mut total = IntPoly::zero();
    for i in 0..=n {
        total = total.add(&IntPoly::from_ints(m - 1 - 4 * i - 1, &[1, -1]));
    }
    let u = if m >= 0 { m } else { -1 - m };
    for j in -u..=u {
        let sign = if (u + j) % 2 == 0 { 1 } else { -1 };
        total = total.add(&IntPoly::from_ints(j, &[sign]));
    }
    for k in 0..=n {
        total = total.add(&IntPoly::from_ints(1 - m + 4 * k, &[-1, 1]));
    }
    total
        .symmetrize()
        .map_err(AlexanderError::UnitNormalization)
}

/// The fixed three-variable polynomial of the surgery-description link:
/// `(x^2-1)(x^3y^2z + x^2y^3z - x^2y^2z + x^2y + xy^2z - xy + x + y)`.
pub fn link_polynomial() -> MultiPoly<Int> {
    let inner: Vec<((i64, i64, i64), Int)> = vec![
        ((3, 2, 1), Int::from(1)),
        ((2, 3, 1), Int::from(1)),
        ((2, 2, 1), Int::from(-1)),
        ((2, 1, 0), Int::from(1)),
        ((1, 2, 1), Int::from(1)),
        ((1, 1, 0), Int::from(-1)),
        ((1, 0, 0), Int::from(1)),
        ((0, 1, 0), Int::from(1)),
    ];
    let inner = MultiPoly::from_terms(inner);
    let x2_minus_1 = MultiPoly::from_terms([((2, 0, 0), Int::from(1)), ((0, 0, 0), Int::from(-1))]);
    x2_minus_1.mul(&inner)
}

/// Alexander polynomial of `K_{n,m}` through the link polynomial: the
/// substitution `x -> t, y -> t^{4(n+1)}, z -> t^{-2(m+2n+3)}`, the Torres
/// factor `(t-1)/((t^4-1)(t^2-1))`, then symmetrization.
pub fn family_alexander_via_link(params: FamilyParams) -> Result<IntPoly, AlexanderError> {
    if params.n < 0 {
        return Err(AlexanderError::Braid(BraidError::NegativeFamilyIndex(
            params.n,
        )));
    }
    let (n, m) = (params.n, params.m);
    let specialized = link_polynomial().substitute_monomial(1, 4 * (n + 1), -2 * (m + 2 * n + 3));
    let numerator = specialized.mul(&IntPoly::from_ints(0, &[-1, 1]));
    let denominator =
        IntPoly::from_ints(0, &[-1, 0, 0, 0, 1]).mul(&IntPoly::from_ints(0, &[-1, 0, 1]));
    let quotient = numerator
        .exact_div(&denominator)
        .map_err(AlexanderError::Inexact)?;
    quotient
        .symmetrize()
        .map_err(AlexanderError::UnitNormalization)
}

/// Why a symmetrized polynomial fails (or passes) the L-space coefficient
/// shape: nonzero coefficients all `±1`, alternating in sign from the top
/// degree down, top coefficient `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormReason {
    Ok,
    NonunitCoefficient,
    NonalternatingSigns,
    Asymmetric,
    ValueAtOne,
}

impl FormReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FormReason::Ok => "ok",
            FormReason::NonunitCoefficient => "nonunit_coefficient",
            FormReason::NonalternatingSigns => "nonalternating_signs",
            FormReason::Asymmetric => "asymmetric",
            FormReason::ValueAtOne => "value_at_one",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LSpaceFormReport {
    pub passes: bool,
    pub reason: FormReason,
    pub offending_degree: Option<i64>,
}

impl LSpaceFormReport {
    fn pass() -> Self {
        LSpaceFormReport {
            passes: true,
            reason: FormReason::Ok,
            offending_degree: None,
        }
    }

    fn fail(reason: FormReason, degree: Option<i64>) -> Self {
        LSpaceFormReport {
            passes: false,
            reason,
            offending_degree: degree,
        }
    }
}

/// Checks the coefficient shape required of an L-space knot's symmetrized
/// Alexander polynomial. Unit coefficients are scanned outward from degree
/// zero so the most central offender is reported first.
pub fn lspace_form_check(d: &IntPoly) -> LSpaceFormReport {
    if d.is_zero() || !d.is_palindromic() {
        return LSpaceFormReport::fail(FormReason::Asymmetric, None);
    }
    if !d.eval_at_one().is_one() {
        return LSpaceFormReport::fail(FormReason::ValueAtOne, None);
    }
    let g = d.max_degree().unwrap();
    for dist in 0..=g {
        for deg in if dist == 0 {
            vec![0]
        } else {
            vec![dist, -dist]
        } {
            let c = d.coeff(deg);
            if !c.is_zero() && !c.abs().is_one() {
                return LSpaceFormReport::fail(FormReason::NonunitCoefficient, Some(deg));
            }
        }
    }
    let mut expected = Int::one();
    for deg in (-g..=g).rev() {
        let c = d.coeff(deg);
        if c.is_zero() {
            continue;
        }
        if c != expected {
            return LSpaceFormReport::fail(FormReason::NonalternatingSigns, Some(deg));
        }
        expected = -expected;
    }
    LSpaceFormReport::pass()
}

/// True iff the top coefficient of the symmetrized polynomial is `±1`.
pub fn is_monic(d: &IntPoly) -> bool {
    d.leading_coeff().abs().is_one()
}
