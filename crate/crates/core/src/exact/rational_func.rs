use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::laurent::{ExactRational, LaurentPoly};

/// Quotient of two Laurent polynomials in u = q^(1/2), kept in canonical
/// form: numerator and denominator share no non-unit factor, and the
/// denominator is unit-normalized so its lowest term is exactly 1 with
/// u-exponent zero.  Monomial units and scalars live in the numerator.
/// With that normalization the derived equality is semantic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    /// Builds and canonicalizes `num / den`, failing when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = LaurentPoly::gcd(&num, &den)?;
        if g.is_one() {
            Ok(Self::normalized(num, den))
        } else {
            Ok(Self::normalized(num.div_exact(&g)?, den.div_exact(&g)?))
        }
    }

    /// Canonicalizes a fraction whose parts are already coprime.
    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let min = den.min_exp().expect("nonzero denominator");
        let low = den.coeff(min).recip();
        Self {
            num: num.shifted(-min).scale(&low),
            den: den.shifted(-min).scale(&low),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn constant(value: ExactRational) -> Self {
        Self::from_poly(LaurentPoly::constant(value))
    }

    pub fn u_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::u_pow(e))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is trivial, so the value is a Laurent
    /// polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = LaurentPoly::gcd(&self.den, &other.den).expect("nonzero denominators");
        let (scaled_self, scaled_other, den) = if g.is_one() {
            (
                self.num.mul(&other.den),
                other.num.mul(&self.den),
                self.den.mul(&other.den),
            )
        } else {
            let other_red = other.den.div_exact(&g).expect("gcd divides");
            let self_red = self.den.div_exact(&g).expect("gcd divides");
            (
                self.num.mul(&other_red),
                other.num.mul(&self_red),
                self.den.mul(&other_red),
            )
        };
        Self::new(scaled_self.add(&scaled_other), den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = LaurentPoly::gcd(&self.num, &other.den).expect("nonzero");
        let g2 = LaurentPoly::gcd(&other.num, &self.den).expect("nonzero");
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let b = other.num.div_exact(&g2).expect("gcd divides");
        let c = self.den.div_exact(&g2).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        Self::normalized(a.mul(&b), c.mul(&d))
    }

    /// Multiplicative inverse, failing on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(factor),
            den: self.den.clone(),
        }
    }

    /// Evaluates at a rational value of u, failing at poles.
    pub fn eval_rational(&self, u: &ExactRational) -> Result<ExactRational> {
        let den = self.den.eval_rational(u)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint {
                point: u.to_string(),
            });
        }
        Ok(self.num.eval_rational(u)? / den)
    }

    /// Evaluates at a floating-point value of u, failing when the
    /// denominator evaluates to zero.
    pub fn eval_f64(&self, u: f64) -> Result<f64> {
        let den = self.den.eval_f64(u);
        if den == 0.0 {
            return Err(Error::PoleAtPoint {
                point: format!("{u}"),
            });
        }
        Ok(self.num.eval_f64(u) / den)
    }

    /// Renders with at most `max_terms` terms per polynomial part.
    pub fn render_limited(&self, max_terms: usize) -> String {
        let force_u = !(self.num.is_q_integral() && self.den.is_q_integral());
        let num = self.num.render_in(force_u, max_terms);
        if self.is_polynomial() {
            return num;
        }
        let den = self.den.render_in(force_u, max_terms);
        let num_part = if self.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{num_part}/({den})")
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_limited(usize::MAX))
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({self})")
    }
}
