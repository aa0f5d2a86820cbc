//! Exact one-variable Laurent polynomials and sparse three-variable
//! polynomials over a generic integer scalar.
//!
//! `LaurentPoly` is dense from `min_degree`; all arithmetic is exact ring
//! arithmetic, and `exact_div` refuses inexact quotients instead of
//! truncating. The scalar is anything integer-like (`i64`, `i128`,
//! `BigInt`); the crate root exports `IntPoly` for the arbitrary-precision
//! instantiation used by the invariant engines.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Scalar bound for polynomial coefficients: an ordered integer ring.
pub trait Coeff:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i32> + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i32> + Send + Sync + 'static
{
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("cannot symmetrize: not palindromic up to a unit")]
    NotPalindromic,
    #[error("cannot symmetrize: value at t=1 is not a unit")]
    ValueAtOneNotUnit,
}

/// Integer Laurent polynomial, dense from `min_degree`.
///
/// Canonical form: the first and last stored coefficients are nonzero;
/// the zero polynomial stores an empty coefficient vector with
/// `min_degree = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C: Coeff> {
    min_degree: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn monomial(degree: i64, coeff: C) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_degree: degree,
            coeffs: vec![coeff],
        }
    }

    /// Builds from a dense coefficient slice starting at `min_degree`,
    /// trimming leading/trailing zeros into canonical form.
    pub fn from_coeffs(min_degree: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { min_degree, coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(min_degree: i64, coeffs: &[i32]) -> Self {
        Self::from_coeffs(min_degree, coeffs.iter().map(|&c| C::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.min_degree == 0 && self.coeffs[0].is_one()
    }

    /// Smallest degree with a nonzero coefficient; `None` for zero.
    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_degree)
    }

    /// Largest degree with a nonzero coefficient; `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_degree + self.coeffs.len() as i64 - 1)
    }

    /// Degree span `max - min`; 0 for constants and zero.
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, degree: i64) -> C {
        if self.is_zero() || degree < self.min_degree {
            return C::zero();
        }
        let idx = (degree - self.min_degree) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min_degree.min(other.min_degree);
        let max = (self.min_degree + self.coeffs.len() as i64)
            .max(other.min_degree + other.coeffs.len() as i64);
        let mut coeffs = vec![C::zero(); (max - min) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = (self.min_degree - min) as usize + i;
            coeffs[idx] = std::mem::replace(&mut coeffs[idx], C::zero()) + c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.min_degree - min) as usize + i;
            coeffs[idx] = std::mem::replace(&mut coeffs[idx], C::zero()) + c.clone();
        }
        Self::from_coeffs(min, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = i + j;
                coeffs[idx] =
                    std::mem::replace(&mut coeffs[idx], C::zero()) + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(self.min_degree + other.min_degree, coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_degree: self.min_degree + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The substitution `t -> 1/t` (coefficient reversal).
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let max = self.max_degree().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            min_degree: -max,
            coeffs,
        }
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a
    /// remainder or the divisor is zero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Err(PolyError::InexactDivision);
        }
        let qlen = rem.len() - divisor.coeffs.len() + 1;
        let mut quot = vec![C::zero(); qlen];
        let dlead = divisor.coeffs.last().unwrap().clone();
        for k in (0..qlen).rev() {
            let top = rem[k + divisor.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dlead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = std::mem::replace(&mut rem[k + j], C::zero()) - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        Ok(Self::from_coeffs(
            self.min_degree - divisor.min_degree,
            quot,
        ))
    }

    /// Evaluates at an integer point, as a pair `(value, denominator_power)`
    /// meaning `value / point^denominator_power`; the denominator absorbs
    /// negative exponents exactly.
    pub fn eval_rational(&self, point: &C) -> (C, u32) {
        if self.is_zero() {
            return (C::zero(), 0);
        }
        let denom_pow = if self.min_degree < 0 {
            (-self.min_degree) as u32
        } else {
            0
        };
        // value = sum c_i * point^(i - min_degree_neg_part) via Horner from the top
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point.clone() + c.clone();
        }
        if self.min_degree > 0 {
            for _ in 0..self.min_degree {
                acc = acc * point.clone();
            }
        }
        (acc, denom_pow)
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn eval_at_one(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// The gcd of all coefficients, with the sign of the leading one;
    /// zero for the zero polynomial.
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if !g.is_zero() && self.leading_coeff().is_negative() {
            g = -g;
        }
        g
    }

    /// Whether `p(t) = p(1/t)` exactly.
    pub fn is_palindromic(&self) -> bool {
        *self == self.reversed()
    }

    /// Rescales by a unit `±t^k` so the result `S` satisfies
    /// `S(t) = S(1/t)` and `S(1) = 1`.
    pub fn symmetrize(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ValueAtOneNotUnit);
        }
        let lo = self.min_degree().unwrap();
        let hi = self.max_degree().unwrap();
        if (lo + hi) % 2 != 0 {
            return Err(PolyError::NotPalindromic);
        }
        let shifted = self.shift(-(lo + hi) / 2);
        if !shifted.is_palindromic() {
            return Err(PolyError::NotPalindromic);
        }
        let at_one = shifted.eval_at_one();
        if at_one.is_one() {
            Ok(shifted)
        } else if (-at_one.clone()).is_one() {
            Ok(shifted.neg())
        } else {
            Err(PolyError::ValueAtOneNotUnit)
        }
    }

    /// Canonical report form, terms in ascending degree with explicit signs.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = self.min_degree + i as i64;
            if out.is_empty() {
                out.push_str(&format!("{c}*t^{deg}"));
            } else if c.is_negative() {
                out.push_str(&format!(" - {}*t^{deg}", -c.clone()));
            } else {
                out.push_str(&format!(" + {c}*t^{deg}"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "min_degree": if self.is_zero() { 0 } else { self.min_degree },
            "coefficients": self.coeffs.iter().map(coeff_json).collect::<Vec<_>>(),
        })
    }
}

/// Renders a coefficient as a JSON number when it fits in `i64`, falling
/// back to a decimal string for larger values.
pub fn coeff_json<C: Coeff>(c: &C) -> Value {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Sparse polynomial in three variables `(x, y, z)` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly<C: Coeff> {
    terms: BTreeMap<(i64, i64, i64), C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64, i64), C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: (i64, i64, i64), c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(C::zero);
        *entry = std::mem::replace(entry, C::zero()) + c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, i64), &C)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(
                    (e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2),
                    c1.clone() * c2.clone(),
                );
            }
        }
        out
    }

    /// Substitutes `x -> t^a, y -> t^b, z -> t^c`, collapsing to one variable.
    pub fn substitute_monomial(&self, a: i64, b: i64, c: i64) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for ((i, j, k), coeff) in &self.terms {
            out = out.add(&LaurentPoly::monomial(a * i + b * j + c * k, coeff.clone()));
        }
        out
    }
}
