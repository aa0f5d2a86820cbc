//! Whether all roots of an integer Laurent polynomial are roots of unity,
//! decided by exhaustive cyclotomic trial division.
//!
//! A root of unity of a degree-`D` polynomial has order `d` with
//! `phi(d) <= D`, so dividing out every such cyclotomic polynomial is a
//! complete test; no floating point is involved anywhere.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::polynomial::coeff_json;
use crate::{Int, IntPoly};

/// Euler's totient.
pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `d`-th cyclotomic polynomial, via
/// `Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e`.
pub fn cyclotomic_poly(d: u64) -> IntPoly {
    fn build(d: u64, cache: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
        if let Some(hit) = cache.get(&d) {
            return hit.clone();
        }
        let result = if d == 1 {
            IntPoly::from_ints(0, &[-1, 1])
        } else {
            let mut numerator = IntPoly::monomial(d as i64, Int::one()).sub(&IntPoly::one());
            for e in 1..=d / 2 {
                if d.is_multiple_of(e) {
                    let phi_e = build(e, cache);
                    numerator = numerator
                        .exact_div(&phi_e)
                        .expect("proper cyclotomic divisors divide t^d - 1 exactly");
                }
            }
            numerator
        };
        cache.insert(d, result.clone());
        result
    }
    build(d, &mut BTreeMap::new())
}

/// A complete peeling of cyclotomic factors: up to the stripped unit
/// `t^k`, the input equals `content * prod Phi_d^multiplicity * residual`,
/// and the residual has no root of unity among its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub content: Int,
    pub unit_exponent: i64,
    pub factors: BTreeMap<u64, u32>,
    pub residual: IntPoly,
}

impl CyclotomicFactorization {
    /// `content * prod Phi_d^mult * residual`, the unit-stripped input.
    pub fn reconstruct(&self) -> IntPoly {
        let mut out = IntPoly::monomial(0, self.content.clone());
        for (&d, &mult) in &self.factors {
            out = out.mul(&cyclotomic_poly(d).pow(mult));
        }
        out.mul(&self.residual)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "content": coeff_json(&self.content),
            "unit_exponent": self.unit_exponent,
            "factors": self.factors.iter().map(|(&d, &m)| json!([d, m])).collect::<Vec<_>>(),
            "residual": self.residual.to_json(),
        })
    }
}

/// Peels off every cyclotomic factor of a nonzero polynomial by trial
/// division, in ascending order of `d`.
pub fn factor_cyclotomic(p: &IntPoly) -> CyclotomicFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let unit_exponent = p.min_degree().unwrap();
    let content = p.content();
    let mut residual = p
        .shift(-unit_exponent)
        .exact_div(&IntPoly::monomial(0, content.clone()))
        .expect("content divides every coefficient");
    let mut factors: BTreeMap<u64, u32> = BTreeMap::new();
    let mut d = 1u64;
    while residual.span() > 0 {
        let span = residual.span() as u64;
        // phi(d) >= sqrt(d/2), so orders beyond 2*span^2 cannot divide
        if d > 2 * span * span {
            break;
        }
        if euler_phi(d) <= span {
            let phi_d = cyclotomic_poly(d);
            while let Ok(quotient) = residual.exact_div(&phi_d) {
                *factors.entry(d).or_insert(0) += 1;
                residual = quotient;
            }
        }
        d += 1;
    }
    CyclotomicFactorization {
        content,
        unit_exponent,
        factors,
        residual,
    }
}

/// True iff every root is a root of unity: the residual must be the
/// constant 1 and the content a unit (nonunit content means the roots are
/// not algebraic integers, hence not roots of unity).
pub fn all_roots_of_unity(p: &IntPoly) -> bool {
    let factorization = factor_cyclotomic(p);
    factorization.residual.is_one() && factorization.content.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::family_alexander_closed;
    use crate::FamilyParams;

    #[test]
    fn phi_values() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_ints(0, &[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_ints(0, &[1, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_ints(0, &[1, -1, 1]));
        assert_eq!(
            cyclotomic_poly(12),
            IntPoly::from_ints(0, &[1, 0, -1, 0, 1])
        );
        // prime power and a squarefree composite
        assert_eq!(
            cyclotomic_poly(9),
            IntPoly::from_ints(0, &[1, 0, 0, 1, 0, 0, 1])
        );
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(18), 6);
    }

    #[test]
    fn factor_census_polynomial() {
        // t^6 + 1 = Phi_4 Phi_12 and t^9 + 1 = Phi_2 Phi_6 Phi_18 over the
        // denominator Phi_2 Phi_4 leave exactly {6, 12, 18}
        let delta = family_alexander_closed(FamilyParams::new(1, 0)).unwrap();
        let f = factor_cyclotomic(&delta);
        assert!(f.residual.is_one());
        assert_eq!(f.content, Int::one());
        assert_eq!(f.factors, BTreeMap::from([(6, 1), (12, 1), (18, 1)]));
        assert_eq!(f.reconstruct(), delta.shift(-f.unit_exponent));
    }

    #[test]
    fn factor_golden_ratio() {
        let p = IntPoly::from_ints(0, &[-1, -1, 1]); // t^2 - t - 1
        let f = factor_cyclotomic(&p);
        assert!(f.factors.is_empty());
        assert_eq!(f.residual, p);
        assert!(!all_roots_of_unity(&p));
    }

    #[test]
    fn factor_linear() {
        let p = IntPoly::from_ints(0, &[-1, 1]); // t - 1
        let f = factor_cyclotomic(&p);
        assert_eq!(f.factors, BTreeMap::from([(1, 1)]));
        assert!(f.residual.is_one());
        assert!(all_roots_of_unity(&p));
    }

    #[test]
    fn units_and_content() {
        assert!(all_roots_of_unity(&IntPoly::one()));
        assert!(all_roots_of_unity(&IntPoly::from_ints(-3, &[-1])));
        // content 2 disqualifies even a cyclotomic shape
        let doubled = cyclotomic_poly(6).scale(&Int::from(2));
        assert!(!all_roots_of_unity(&doubled));
        let f = factor_cyclotomic(&doubled);
        assert_eq!(f.content, Int::from(2));
        assert_eq!(f.factors, BTreeMap::from([(6, 1)]));
    }

    #[test]
    fn repeated_factors() {
        let p = cyclotomic_poly(4).pow(3).mul(&cyclotomic_poly(1));
        let f = factor_cyclotomic(&p);
        assert_eq!(f.factors, BTreeMap::from([(1, 1), (4, 3)]));
        assert!(f.residual.is_one());
        assert_eq!(f.reconstruct(), p);
    }

    #[test]
    fn family_roots() {
        for n in 1..=3 {
            assert!(all_roots_of_unity(
                &family_alexander_closed(FamilyParams::new(n, 0)).unwrap()
            ));
            assert!(all_roots_of_unity(
                &family_alexander_closed(FamilyParams::new(n, -1)).unwrap()
            ));
            assert!(!all_roots_of_unity(
                &family_alexander_closed(FamilyParams::new(n, -2)).unwrap()
            ));
        }
    }
}
