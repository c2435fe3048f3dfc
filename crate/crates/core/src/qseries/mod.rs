//! q-combinatorial primitives (brackets, factorials, Pochhammer symbols)
//! and the truncated q-trigonometric series in z.

mod zseries;

pub use zseries::ZSeries;

use num::One;

use crate::error::{Error, Result};
use crate::exact::{ExactRational, LaurentPoly, RationalFunc};

/// The q-bracket [n]_q = 1 + q + … + q^(n-1), with [0]_q = 0.
pub fn q_bracket(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    Ok(LaurentPoly::from_terms(
        (0..n).map(|j| (2 * j, ExactRational::one())),
    ))
}

/// The q-factorial [n]_q! = [1]_q [2]_q … [n]_q, with [0]_q! = 1.
pub fn q_factorial(n: i64) -> Result<LaurentPoly> {
    q_bracket_product(1, n)
}

/// The partial factorial [lo]_q [lo+1]_q … [hi]_q, an empty product when
/// lo > hi.  Dividing two factorials reduces to this without polynomial
/// division: [m]!/[l]! = q_bracket_product(l+1, m).
pub fn q_bracket_product(lo: i64, hi: i64) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for j in lo..=hi {
        acc = acc.mul(&q_bracket(j)?);
    }
    Ok(acc)
}

/// Sign of the leading argument of a Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Description of the q-Pochhammer symbol (sign·u^a_exp ; u^base_exp)_length.
///
/// Every Pochhammer in the verified identities has a signed monomial
/// first argument and a base that is an integer power of q, so base_exp
/// is even: base q^2 is `base_exp = 4` and base q^4 is `base_exp = 8`.
/// Half-integral q-powers in the first argument are odd values of
/// `a_exp`, e.g. q^(9/2) is `a_exp = 9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPochSpec {
    pub sign: Sign,
    pub a_exp: i64,
    pub base_exp: i64,
    pub length: i64,
}

impl QPochSpec {
    pub fn new(sign: Sign, a_exp: i64, base_exp: i64, length: i64) -> Self {
        Self {
            sign,
            a_exp,
            base_exp,
            length,
        }
    }

    /// (q^a_q ; q^base_q)_length with plain integral q-exponents.
    pub fn in_q(a_q: i64, base_q: i64, length: i64) -> Self {
        Self::new(Sign::Plus, 2 * a_q, 2 * base_q, length)
    }
}

/// Expands a q-Pochhammer symbol into a Laurent polynomial:
/// Π_{i=0}^{length-1} (1 − sign·u^(a_exp + i·base_exp)).
pub fn q_pochhammer(spec: QPochSpec) -> Result<LaurentPoly> {
    if spec.base_exp < 2 || spec.base_exp % 2 != 0 {
        return Err(Error::BadPochhammerBase(spec.base_exp));
    }
    if spec.length < 0 {
        return Err(Error::NegativeIndex(spec.length));
    }
    let step = match spec.sign {
        Sign::Plus => -ExactRational::one(),
        Sign::Minus => ExactRational::one(),
    };
    let mut acc = LaurentPoly::one();
    for i in 0..spec.length {
        let factor = LaurentPoly::from_terms([
            (0, ExactRational::one()),
            (spec.a_exp + i * spec.base_exp, step.clone()),
        ]);
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Coefficient (−1)^n q^(n²) / [m]_q! shared by the two q-trigonometric
/// series.
fn trig_coeff(n: i64, m: i64) -> RationalFunc {
    let numerator = LaurentPoly::monomial(
        if n % 2 == 0 {
            ExactRational::one()
        } else {
            -ExactRational::one()
        },
        2 * n * n,
    );
    let denominator = q_factorial(m).expect("m is nonnegative");
    RationalFunc::new(numerator, denominator).expect("factorials are nonzero")
}

/// The q-sine series Σ (−1)^n z^(2n+1) q^(n²)/[2n+1]_q!, truncated
/// modulo z^order.
pub fn sin_q(order: usize) -> ZSeries {
    ZSeries::from_coeffs(
        (0..order)
            .map(|m| {
                if m % 2 == 1 {
                    trig_coeff((m / 2) as i64, m as i64)
                } else {
                    RationalFunc::zero()
                }
            })
            .collect(),
    )
}

/// The q-cosine series Σ (−1)^n z^(2n) q^(n²)/[2n]_q!, truncated modulo
/// z^order.
pub fn cos_q(order: usize) -> ZSeries {
    ZSeries::from_coeffs(
        (0..order)
            .map(|m| {
                if m % 2 == 0 {
                    trig_coeff((m / 2) as i64, m as i64)
                } else {
                    RationalFunc::zero()
                }
            })
            .collect(),
    )
}

/// The q-tangent sin_q/cos_q, truncated modulo z^order.  Computed by
/// series division; one extra working order keeps the quotient exact
/// through z^(order-1).
pub fn tan_q(order: usize) -> ZSeries {
    sin_q(order + 1)
        .div(&cos_q(order + 1))
        .expect("cos_q is invertible")
        .truncated(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn brackets_match_their_definition() {
        assert_eq!(q_bracket(0).unwrap(), LaurentPoly::zero());
        assert!(q_bracket(1).unwrap().is_one());
        assert_eq!(
            q_bracket(3).unwrap(),
            LaurentPoly::from_terms([(0, int(1)), (2, int(1)), (4, int(1))])
        );
        assert!(matches!(q_bracket(-1), Err(Error::NegativeIndex(-1))));
    }

    #[test]
    fn factorials_expand_correctly() {
        assert!(q_factorial(0).unwrap().is_one());
        assert_eq!(
            q_factorial(2).unwrap(),
            LaurentPoly::from_terms([(0, int(1)), (2, int(1))])
        );
        assert_eq!(
            q_factorial(3).unwrap(),
            LaurentPoly::from_terms([(0, int(1)), (2, int(2)), (4, int(2)), (6, int(1))])
        );
        assert_eq!(
            q_bracket_product(3, 4).unwrap(),
            q_factorial(4)
                .unwrap()
                .div_exact(&q_factorial(2).unwrap())
                .unwrap()
        );
        assert!(q_bracket_product(5, 4).unwrap().is_one());
    }

    #[test]
    fn pochhammer_expansion() {
        assert!(q_pochhammer(QPochSpec::in_q(1, 2, 0)).unwrap().is_one());

        let k = 1;
        let vanishing = q_pochhammer(QPochSpec::in_q(-2 * k + 2, 2, 1)).unwrap();
        assert!(vanishing.is_zero());

        let k = 2;
        let half = q_pochhammer(QPochSpec::new(Sign::Minus, 9 - 2 * k, 8, 1)).unwrap();
        assert_eq!(half, LaurentPoly::from_terms([(0, int(1)), (5, int(1))]));

        assert_eq!(
            q_pochhammer(QPochSpec::in_q(1, 2, 2)).unwrap(),
            LaurentPoly::one()
                .sub(&LaurentPoly::q_pow(1))
                .mul(&LaurentPoly::one().sub(&LaurentPoly::q_pow(3)))
        );

        assert!(matches!(
            q_pochhammer(QPochSpec::new(Sign::Plus, 2, 3, 1)),
            Err(Error::BadPochhammerBase(3))
        ));
        assert!(matches!(
            q_pochhammer(QPochSpec::new(Sign::Plus, 2, 4, -1)),
            Err(Error::NegativeIndex(-1))
        ));
    }

    #[test]
    fn sine_series_terms() {
        let s = sin_q(6);
        assert!(s.coeff(0).is_zero());
        assert!(s.coeff(1).is_one());
        let minus_q_over_3fact =
            RationalFunc::new(LaurentPoly::q_pow(1).neg(), q_factorial(3).unwrap()).unwrap();
        assert_eq!(s.coeff(3), &minus_q_over_3fact);
        let q4_over_5fact =
            RationalFunc::new(LaurentPoly::q_pow(4), q_factorial(5).unwrap()).unwrap();
        assert_eq!(s.coeff(5), &q4_over_5fact);
        assert!(s.coeff(2).is_zero() && s.coeff(4).is_zero());
    }

    #[test]
    fn cosine_series_terms() {
        let c = cos_q(5);
        assert!(c.coeff(0).is_one());
        let minus_q_over_2fact =
            RationalFunc::new(LaurentPoly::q_pow(1).neg(), q_factorial(2).unwrap()).unwrap();
        assert_eq!(c.coeff(2), &minus_q_over_2fact);
        let q4_over_4fact =
            RationalFunc::new(LaurentPoly::q_pow(4), q_factorial(4).unwrap()).unwrap();
        assert_eq!(c.coeff(4), &q4_over_4fact);
        assert!(c.coeff(1).is_zero() && c.coeff(3).is_zero());
    }

    #[test]
    fn tangent_is_odd_with_known_low_terms() {
        let t = tan_q(8);
        assert!(t.coeff(1).is_one());
        for m in [0, 2, 4, 6] {
            assert!(t.coeff(m).is_zero());
        }
        let expected_z3 = RationalFunc::new(LaurentPoly::q_pow(2), q_bracket(3).unwrap()).unwrap();
        assert_eq!(t.coeff(3), &expected_z3);
    }

    #[test]
    fn tangent_classical_limit() {
        let t = tan_q(8);
        let one = int(1);
        assert_eq!(t.coeff(1).eval_rational(&one).unwrap(), int(1));
        assert_eq!(t.coeff(3).eval_rational(&one).unwrap(), rat(1, 3));
        assert_eq!(t.coeff(5).eval_rational(&one).unwrap(), rat(2, 15));
        assert_eq!(t.coeff(7).eval_rational(&one).unwrap(), rat(17, 315));
    }

    #[test]
    fn division_reproduces_simple_quotients() {
        let order = 8;
        let c = cos_q(order);
        let shifted = c.shift_z(1);
        let quot = shifted.div(&c).unwrap();
        assert_eq!(quot.valuation(), Some(1));
        assert!(quot.coeff(1).is_one());
        for m in 2..quot.order() {
            assert!(quot.coeff(m).is_zero(), "z^{m} should vanish");
        }
    }
}
