use crate::error::{Error, Result};
use crate::exact::RationalFunc;

/// Truncated formal power series in z with `RationalFunc` coefficients.
///
/// A value with `order() == T` is known exactly modulo z^T.  Arithmetic
/// follows the conservative minimum rule: results never claim more
/// precision than the least precise operand supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<RationalFunc>,
}

impl ZSeries {
    /// The zero series known modulo z^order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![RationalFunc::zero(); order],
        }
    }

    /// Wraps explicit coefficients for z^0 … z^(len-1).
    pub fn from_coeffs(coeffs: Vec<RationalFunc>) -> Self {
        Self { coeffs }
    }

    /// Truncation order: the series is known modulo z^order.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of z^m, which must be below the truncation order.
    pub fn coeff(&self, m: usize) -> &RationalFunc {
        &self.coeffs[m]
    }

    pub fn get(&self, m: usize) -> Option<&RationalFunc> {
        self.coeffs.get(m)
    }

    pub fn coeffs(&self) -> &[RationalFunc] {
        &self.coeffs
    }

    /// Smallest power of z with nonzero coefficient, if any below the
    /// truncation order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops precision down to `order` (a no-op when already coarser).
    pub fn truncated(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..order.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(RationalFunc::neg).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..order)
                .map(|m| self.coeffs[m].add(&other.coeffs[m]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![RationalFunc::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self { coeffs }
    }

    /// Multiplies every coefficient by a fixed rational function.
    pub fn scale(&self, factor: &RationalFunc) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        }
    }

    /// Multiplies by z^m.  The low m coefficients are exactly zero, so
    /// the result is known modulo z^(order + m).
    pub fn shift_z(&self, m: usize) -> Self {
        let mut coeffs = vec![RationalFunc::zero(); m];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Exact truncated division.  Requires the divisor to be nonzero to
    /// its order and its valuation to be at most the dividend's; the
    /// quotient loses valuation(divisor) orders of precision.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let Some(dval) = divisor.valuation() else {
            return Err(Error::ZeroSeriesDivisor);
        };
        let Some(fval) = self.valuation() else {
            return Ok(Self::zero(self.order().saturating_sub(dval)));
        };
        if fval < dval {
            return Err(Error::ValuationMismatch {
                dividend: fval,
                divisor: dval,
            });
        }
        let order = self.order().min(divisor.order()) - dval;
        let f = &self.coeffs[dval..dval + order.min(self.order() - dval)];
        let g = &divisor.coeffs[dval..dval + order];
        let lead_inv = g[0].recip()?;
        let mut quot: Vec<RationalFunc> = Vec::with_capacity(order);
        for m in 0..order {
            let mut acc = f.get(m).cloned().unwrap_or_else(RationalFunc::zero);
            for (i, h) in quot.iter().enumerate() {
                if !h.is_zero() && !g[m - i].is_zero() {
                    acc = acc.sub(&h.mul(&g[m - i]));
                }
            }
            quot.push(acc.mul(&lead_inv));
        }
        Ok(Self { coeffs: quot })
    }
}
