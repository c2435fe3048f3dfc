//! Finite continued fractions with partial numerators −z², their series
//! expansions, and the inverse problem: extracting partial denominators
//! from a raw power series.
//!
//! Extraction is the independent confirmation of the conjectured
//! expansion: it recovers each b_j from −z·tan_q(z) alone, by successive
//! reciprocals, without assuming the closed form.

use crate::continuants::{b_coeff, ZPoly};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, RationalFunc};
use crate::qseries::ZSeries;

/// The series −z², used as the partial numerator at every level.
fn minus_z2(order: usize) -> ZSeries {
    let mut coeffs = vec![RationalFunc::zero(); order];
    if order > 2 {
        coeffs[2] = RationalFunc::one().neg();
    }
    ZSeries::from_coeffs(coeffs)
}

/// Truncation of the continued fraction
/// −z²/(b_1 − z²/(b_2 − … − z²/b_depth)) with explicit partial
/// denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFTruncation {
    partial_denominators: Vec<LaurentPoly>,
}

impl CFTruncation {
    /// The fraction of Prodinger's conjecture, with partial denominators
    /// b_coeff(1) … b_coeff(depth).
    pub fn prodinger(depth: usize) -> Self {
        Self {
            partial_denominators: (1..=depth as i64)
                .map(|n| b_coeff(n).expect("n is positive"))
                .collect(),
        }
    }

    pub fn from_partial_denominators(partial_denominators: Vec<LaurentPoly>) -> Self {
        Self {
            partial_denominators,
        }
    }

    pub fn depth(&self) -> usize {
        self.partial_denominators.len()
    }

    pub fn partial_denominators(&self) -> &[LaurentPoly] {
        &self.partial_denominators
    }

    /// The continuant pair (A_n, B_n) of this truncation, built from its
    /// own partial denominators, so the fraction's value is A_n/B_n.
    pub fn convergent(&self) -> (ZPoly, ZPoly) {
        let mut a_prev = ZPoly::one();
        let mut b_prev = ZPoly::zero();
        let mut a = ZPoly::zero();
        let mut b = ZPoly::one();
        for level in &self.partial_denominators {
            let a_next = a.scale_poly(level).sub(&a_prev.mul_z2());
            let b_next = b.scale_poly(level).sub(&b_prev.mul_z2());
            a_prev = a;
            b_prev = b;
            a = a_next;
            b = b_next;
        }
        (a, b)
    }

    /// Series expansion of the fraction modulo z^order, via series
    /// division of the continuant pair.
    pub fn as_series(&self, order: usize) -> Result<ZSeries> {
        let (a, b) = self.convergent();
        a.to_series(order).div(&b.to_series(order))
    }

    /// Series expansion by folding the fraction bottom-up.  Slower than
    /// [`Self::as_series`] but shares none of its machinery, which makes
    /// it a useful cross-check.
    pub fn fold_series(&self, order: usize) -> Result<ZSeries> {
        let Some((last, levels)) = self.partial_denominators.split_last() else {
            return Ok(ZSeries::zero(order));
        };
        let constant = |p: &LaurentPoly| {
            let mut coeffs = vec![RationalFunc::zero(); order];
            if order > 0 {
                coeffs[0] = RationalFunc::from_poly(p.clone());
            }
            ZSeries::from_coeffs(coeffs)
        };
        let mut value = constant(last);
        for level in levels.iter().rev() {
            let reciprocal = minus_z2(order + 2).div(&value)?.truncated(order);
            value = constant(level).add(&reciprocal);
        }
        minus_z2(order + 2).div(&value).map(|s| s.truncated(order))
    }
}

/// Recovers the first `m` partial denominators of a continued fraction
/// with partial numerators −z² from the series `f` alone.
///
/// Iterates F_0 = f, Q_j = −z²/F_j, b_(j+1) = constant z-coefficient of
/// Q_j, F_(j+1) = Q_j − b_(j+1).  Each step consumes two orders of
/// z-precision, hence the requirement order(f) ≥ 2m + 2.  Every
/// extracted coefficient is certified z-constant and polynomial in q;
/// violations are reported as errors rather than truncated away.
pub fn extract_cf_coeffs(f: &ZSeries, m: usize) -> Result<Vec<LaurentPoly>> {
    let needed = 2 * m + 2;
    if f.order() < needed {
        return Err(Error::InsufficientOrder {
            order: f.order(),
            depth: m,
            needed,
        });
    }
    if f.valuation() != Some(2) {
        return Err(Error::ExtractionValuation {
            found: f.valuation(),
        });
    }
    let mut current = f.clone();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let quotient = minus_z2(current.order()).div(&current)?;
        let level = quotient.coeff(0).clone();
        if !quotient.coeff(1).is_zero() {
            return Err(Error::NonConstantPartialDenominator { index: j + 1 });
        }
        let poly =
            level
                .as_poly()
                .cloned()
                .ok_or_else(|| Error::NonPolynomialPartialDenominator {
                    index: j + 1,
                    value: level.to_string(),
                })?;
        out.push(poly);
        if j + 1 < m {
            let mut coeffs = quotient.coeffs().to_vec();
            coeffs[0] = RationalFunc::zero();
            current = ZSeries::from_coeffs(coeffs);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::tan_q;

    fn minus_z_tan(order: usize) -> ZSeries {
        tan_q(order.saturating_sub(1)).shift_z(1).neg()
    }

    #[test]
    fn extraction_recovers_the_partial_denominators() {
        let f = minus_z_tan(12);
        let extracted = extract_cf_coeffs(&f, 4).unwrap();
        for (i, value) in extracted.iter().enumerate() {
            assert_eq!(value, &b_coeff(i as i64 + 1).unwrap(), "b_{}", i + 1);
        }
    }

    #[test]
    fn extraction_checks_its_preconditions() {
        assert!(matches!(
            extract_cf_coeffs(&minus_z_tan(9), 4),
            Err(Error::InsufficientOrder {
                order: 9,
                depth: 4,
                needed: 10
            })
        ));
        let tan = tan_q(8);
        assert!(matches!(
            extract_cf_coeffs(&tan, 2),
            Err(Error::ExtractionValuation { found: Some(1) })
        ));
        assert!(matches!(
            extract_cf_coeffs(&ZSeries::zero(10), 2),
            Err(Error::ExtractionValuation { found: None })
        ));
    }

    #[test]
    fn extraction_rejects_non_cf_shapes() {
        let mut coeffs = vec![RationalFunc::zero(); 4];
        coeffs[2] = RationalFunc::one().neg();
        coeffs[3] = RationalFunc::one().neg();
        let f = ZSeries::from_coeffs(coeffs);
        assert!(matches!(
            extract_cf_coeffs(&f, 1),
            Err(Error::NonConstantPartialDenominator { index: 1 })
        ));

        let mut coeffs = vec![RationalFunc::zero(); 4];
        coeffs[2] = RationalFunc::new(
            LaurentPoly::one().add(&LaurentPoly::q_pow(1)),
            LaurentPoly::one(),
        )
        .unwrap();
        let g = ZSeries::from_coeffs(coeffs);
        assert!(matches!(
            extract_cf_coeffs(&g, 1),
            Err(Error::NonPolynomialPartialDenominator { index: 1, .. })
        ));
    }

    #[test]
    fn series_of_depth_one() {
        let cf = CFTruncation::prodinger(1);
        let series = cf.as_series(6).unwrap();
        assert_eq!(series, minus_z2(6));
    }

    #[test]
    fn fold_agrees_with_continuant_division() {
        for depth in 0..=4 {
            let cf = CFTruncation::prodinger(depth);
            let by_division = cf.as_series(10).unwrap();
            let by_folding = cf.fold_series(10).unwrap();
            assert_eq!(by_division, by_folding, "depth {depth}");
        }
    }

    #[test]
    fn convergents_approximate_the_tangent_series() {
        let n = 3;
        let order = 2 * n + 4;
        let cf = CFTruncation::prodinger(n);
        let difference = cf.as_series(order).unwrap().sub(&minus_z_tan(order));
        let val = difference.valuation();
        assert!(
            val.is_none() || val.unwrap() >= 2 * n + 2,
            "valuation {val:?} below {}",
            2 * n + 2
        );
    }

    #[test]
    fn floating_point_convergence_to_classical_tangent() {
        let z: f64 = 0.5;
        let target = -z * z.tan();
        let (a, b) = CFTruncation::prodinger(8).convergent();
        let approx = a.eval_f64(1.0, z) / b.eval_f64(1.0, z);
        assert!((approx - target).abs() < 1e-12, "{approx} vs {target}");
    }
}
