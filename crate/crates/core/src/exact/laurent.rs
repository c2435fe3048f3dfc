use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar used for every coefficient in this
/// crate.  Backed by `num::BigRational`, which keeps values reduced after
/// every operation.
pub type ExactRational = BigRational;

/// Builds the exact rational `num/den`.  Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

/// Builds the exact integer `n`.
pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// Sparse Laurent polynomial in the auxiliary variable u = q^(1/2) with
/// exact rational coefficients.
///
/// Exponents are stored in u so that every q-power appearing in the
/// verified identities has an integral exponent, including half-integral
/// ones such as q^(17/2 - k).  The q-power q^e is the term u^(2e).
///
/// The map holds only nonzero coefficients, so it is a canonical form and
/// the derived equality is semantic equality.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, ExactRational>,
}

fn add_term(terms: &mut BTreeMap<i64, ExactRational>, exp: i64, coeff: ExactRational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(exp) {
        Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

fn checked_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("u-exponent overflow")
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    /// A constant polynomial.
    pub fn constant(value: ExactRational) -> Self {
        Self::monomial(value, 0)
    }

    /// The single term `coeff * u^u_exp`.
    pub fn monomial(coeff: ExactRational, u_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(u_exp, coeff);
        }
        Self { terms }
    }

    /// The power u^e.
    pub fn u_pow(e: i64) -> Self {
        Self::monomial(ExactRational::one(), e)
    }

    /// The power q^e, that is u^(2e).
    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(checked_exp(e, e))
    }

    /// Collects `(u_exp, coeff)` pairs, summing duplicate exponents and
    /// dropping zero coefficients.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, ExactRational)>,
    {
        let mut terms = BTreeMap::new();
        for (exp, coeff) in pairs {
            add_term(&mut terms, exp, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of u^u_exp, zero when the term is absent.
    pub fn coeff(&self, u_exp: i64) -> ExactRational {
        self.terms
            .get(&u_exp)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Terms in ascending u-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Smallest u-exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest u-exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every u-exponent is even, so the polynomial is a Laurent
    /// polynomial in q itself.
    pub fn is_q_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            add_term(&mut terms, e, c.clone());
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            add_term(&mut terms, e, -c);
        }
        Self { terms }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, factor: &ExactRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * factor)).collect(),
        }
    }

    /// Multiplies by u^e.
    pub fn shifted(&self, e: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (checked_exp(k, e), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (amin, a) = self.to_dense();
        let (bmin, b) = other.to_dense();
        let mut out = vec![ExactRational::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if !cb.is_zero() {
                    out[i + j] += ca * cb;
                }
            }
        }
        Self::from_dense(checked_exp(amin, bmin), out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Dense coefficient vector starting at the minimal exponent.  Only
    /// valid on nonzero polynomials.
    fn to_dense(&self) -> (i64, Vec<ExactRational>) {
        let min = self.min_exp().expect("dense form of the zero polynomial");
        let max = self.max_exp().unwrap();
        let len = usize::try_from(max - min).expect("exponent span overflow") + 1;
        let mut out = vec![ExactRational::zero(); len];
        for (&e, c) in &self.terms {
            out[(e - min) as usize] = c.clone();
        }
        (min, out)
    }

    fn from_dense(min_exp: i64, coeffs: Vec<ExactRational>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (checked_exp(min_exp, i as i64), c)),
        )
    }

    /// Exact division, failing when `divisor` does not divide `self`
    /// up to a monomial unit.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (amin, mut a) = self.to_dense();
        let (bmin, b) = divisor.to_dense();
        if a.len() < b.len() {
            return Err(Error::InexactDivision);
        }
        let lead = b.last().unwrap();
        let mut quo = vec![ExactRational::zero(); a.len() - b.len() + 1];
        for k in (0..quo.len()).rev() {
            let c = &a[k + b.len() - 1] / lead;
            if !c.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    let delta = &c * bc;
                    a[k + j] -= delta;
                }
            }
            quo[k] = c;
        }
        if a.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_dense(amin - bmin, quo))
    }

    /// Shifts the minimal exponent to zero and scales the lowest
    /// coefficient to one.  This is the canonical representative of the
    /// polynomial modulo the monomial units of the Laurent ring.
    pub fn unit_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let min = self.min_exp().unwrap();
        let low = self.coeff(min);
        self.shifted(-min).scale(&low.recip())
    }

    /// Greatest common divisor, canonicalized by [`Self::unit_normalized`].
    /// Monomials are units of the Laurent ring, so any monomial argument
    /// contributes the trivial divisor.  Fails when both arguments are
    /// zero.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Err(Error::GcdOfZeros),
            (true, false) => Ok(b.unit_normalized()),
            (false, true) => Ok(a.unit_normalized()),
            (false, false) => {
                if a.num_terms() == 1 || b.num_terms() == 1 {
                    return Ok(Self::one());
                }
                if a == b {
                    return Ok(a.unit_normalized());
                }
                let mut x = a.to_primitive_ints();
                let mut y = b.to_primitive_ints();
                if x.len() < y.len() {
                    std::mem::swap(&mut x, &mut y);
                }
                while !y.is_empty() {
                    let r = pseudo_rem(&x, &y);
                    x = y;
                    y = make_primitive(r);
                }
                let poly = Self::from_terms(
                    x.into_iter()
                        .enumerate()
                        .map(|(i, c)| (i as i64, ExactRational::from_integer(c))),
                );
                Ok(poly.unit_normalized())
            }
        }
    }

    /// Integer coefficient vector of the unit-normalized polynomial with
    /// content stripped.  Only valid on nonzero polynomials.
    fn to_primitive_ints(&self) -> Vec<BigInt> {
        let (_, dense) = self.to_dense();
        let mut den_lcm = BigInt::one();
        for c in &dense {
            if !c.is_zero() {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let ints: Vec<BigInt> = dense
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        make_primitive(ints)
    }

    /// Evaluates at a rational value of u.  Negative exponents at u = 0
    /// are reported as a pole.
    pub fn eval_rational(&self, u: &ExactRational) -> Result<ExactRational> {
        let mut acc = ExactRational::zero();
        for (&e, c) in &self.terms {
            acc += c * rational_pow(u, e)?;
        }
        Ok(acc)
    }

    /// Evaluates at a floating-point value of u.
    pub fn eval_f64(&self, u: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, c)| c.to_f64().unwrap_or(f64::NAN) * u.powi(e as i32))
            .sum()
    }

    /// Renders at most `max_terms` terms, appending an ellipsis with the
    /// count of omitted terms beyond the limit.
    pub fn render_limited(&self, max_terms: usize) -> String {
        self.render_in(false, max_terms)
    }

    /// Renders the polynomial, forcing the variable u when `force_u` is
    /// set even if every exponent is even.
    pub fn render_in(&self, force_u: bool, max_terms: usize) -> String {
        let mut out = String::new();
        self.write_terms(&mut out, max_terms, force_u)
            .expect("writing to a String cannot fail");
        out
    }

    fn write_terms(
        &self,
        out: &mut impl fmt::Write,
        max_terms: usize,
        force_u: bool,
    ) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let (var, shift) = if !force_u && self.is_q_integral() {
            ("q", 2)
        } else {
            ("u", 1)
        };
        for (shown, (&e, c)) in self.terms.iter().enumerate() {
            if shown == max_terms {
                let rest = self.terms.len() - shown;
                return write!(out, " + ... ({rest} more terms)");
            }
            let negative = c.is_negative();
            if shown == 0 {
                if negative {
                    out.write_str("-")?;
                }
            } else if negative {
                out.write_str(" - ")?;
            } else {
                out.write_str(" + ")?;
            }
            let mag = c.abs();
            let exp = e / shift;
            if exp == 0 {
                write!(out, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(out, "{mag}*")?;
                }
                if exp == 1 {
                    out.write_str(var)?;
                } else {
                    write!(out, "{var}^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, usize::MAX, false)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// u^e with rational base, failing on negative exponents at zero.
fn rational_pow(u: &ExactRational, e: i64) -> Result<ExactRational> {
    if e == 0 {
        return Ok(ExactRational::one());
    }
    if u.is_zero() {
        return if e > 0 {
            Ok(ExactRational::zero())
        } else {
            Err(Error::PoleAtPoint {
                point: "0".to_string(),
            })
        };
    }
    let magnitude = usize::try_from(e.unsigned_abs()).expect("exponent too large to evaluate");
    let direct = num::pow::pow(u.clone(), magnitude);
    Ok(if e > 0 { direct } else { direct.recip() })
}

/// Strips the integer content and trims leading zeros, returning the
/// primitive part.  An all-zero input becomes the empty vector.
fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let mut content = BigInt::zero();
    for c in &v {
        if !c.is_zero() {
            content = content.gcd(c);
        }
        if content.is_one() {
            return v;
        }
    }
    if content.is_zero() {
        return Vec::new();
    }
    for c in &mut v {
        *c /= &content;
    }
    v
}

/// Pseudo-remainder of `a` by `b` over the integers: the remainder of
/// lead(b)^k * a modulo b for the smallest sufficient k.  `b` must be
/// nonempty with a nonzero leading coefficient.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let c = r.pop().unwrap();
        if !c.is_zero() {
            for x in r.iter_mut() {
                *x *= lead;
            }
            let offset = r.len() - db;
            for (j, bc) in b[..db].iter().enumerate() {
                r[offset + j] -= &c * bc;
            }
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_u(e: i64) -> LaurentPoly {
        LaurentPoly::one().sub(&LaurentPoly::u_pow(e))
    }

    #[test]
    fn ring_basics() {
        let p = LaurentPoly::from_terms([(0, int(1)), (2, int(1))]);
        let q = LaurentPoly::from_terms([(0, int(1)), (2, int(-1))]);
        assert_eq!(p.mul(&q), one_minus_u(4));
        assert_eq!(p.add(&p.neg()), LaurentPoly::zero());
        assert_eq!(p.sub(&p), LaurentPoly::zero());
        assert!(LaurentPoly::zero().is_zero());
        assert!(LaurentPoly::one().is_one());
        assert_eq!(p.pow(0), LaurentPoly::one());
        assert_eq!(p.pow(2), p.mul(&p));
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = LaurentPoly::from_terms([(3, int(2)), (3, int(-2)), (0, int(5)), (1, int(0))]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(0), int(5));
        assert_eq!(p.coeff(3), int(0));
    }

    #[test]
    fn shifted_reaches_negative_exponents() {
        let p = LaurentPoly::from_terms([(0, int(1)), (4, int(1))]).shifted(-4);
        assert_eq!(p.min_exp(), Some(-4));
        assert_eq!(p.max_exp(), Some(0));
        assert!(p.is_q_integral());
        assert!(!LaurentPoly::u_pow(3).is_q_integral());
    }

    #[test]
    fn exact_division() {
        let num = one_minus_u(6);
        let den = one_minus_u(2);
        let quo = num.div_exact(&den).unwrap();
        assert_eq!(
            quo,
            LaurentPoly::from_terms([(0, int(1)), (2, int(1)), (4, int(1))])
        );
        assert_eq!(quo.mul(&den), num);
        assert!(matches!(
            one_minus_u(2).div_exact(&one_minus_u(3)),
            Err(Error::InexactDivision)
        ));
        assert!(matches!(
            num.div_exact(&LaurentPoly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn division_handles_monomial_units() {
        let p = LaurentPoly::from_terms([(-2, int(3)), (1, int(1))]);
        let quo = p.div_exact(&LaurentPoly::u_pow(-2)).unwrap();
        assert_eq!(quo, LaurentPoly::from_terms([(0, int(3)), (3, int(1))]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = one_minus_u(4);
        let b = one_minus_u(2);
        assert_eq!(LaurentPoly::gcd(&a, &b).unwrap(), b);
        let c = a.mul(&one_minus_u(6));
        let d = b.mul(&one_minus_u(6));
        let g = LaurentPoly::gcd(&c, &d).unwrap();
        assert!(c.div_exact(&g).is_ok());
        assert!(d.div_exact(&g).is_ok());
        assert_eq!(g, b.mul(&one_minus_u(6)).scale(&rat(1, 1)));
    }

    #[test]
    fn gcd_treats_monomials_as_units() {
        let g = LaurentPoly::gcd(&LaurentPoly::u_pow(5), &one_minus_u(2)).unwrap();
        assert!(g.is_one());
        assert!(matches!(
            LaurentPoly::gcd(&LaurentPoly::zero(), &LaurentPoly::zero()),
            Err(Error::GcdOfZeros)
        ));
        let h = LaurentPoly::gcd(&LaurentPoly::zero(), &one_minus_u(2).scale(&int(-7))).unwrap();
        assert_eq!(h, one_minus_u(2).scale(&int(-1)).unit_normalized());
    }

    #[test]
    fn unit_normalization_is_canonical() {
        let p = one_minus_u(2).shifted(-5).scale(&rat(3, 7));
        let n = p.unit_normalized();
        assert_eq!(n.min_exp(), Some(0));
        assert_eq!(n.coeff(0), int(1));
        assert_eq!(n, one_minus_u(2));
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::from_terms([(2, int(1)), (0, int(1))]);
        assert_eq!(p.eval_rational(&int(3)).unwrap(), int(10));
        let laurent = LaurentPoly::u_pow(-2);
        assert_eq!(laurent.eval_rational(&int(2)).unwrap(), rat(1, 4));
        assert!(matches!(
            laurent.eval_rational(&int(0)),
            Err(Error::PoleAtPoint { .. })
        ));
        assert!((p.eval_f64(2.0) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn display_uses_q_for_even_exponents() {
        let p = LaurentPoly::from_terms([(-4, int(1)), (-2, int(1)), (0, int(1))]);
        assert_eq!(p.to_string(), "q^-2 + q^-1 + 1");
        let m = LaurentPoly::q_pow(2).neg();
        assert_eq!(m.to_string(), "-q^2");
        let mixed = LaurentPoly::from_terms([(0, int(-1)), (1, rat(3, 2))]);
        assert_eq!(mixed.to_string(), "-1 + 3/2*u");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms([(2, int(1))]).to_string(), "q");
    }

    #[test]
    fn limited_rendering_reports_omissions() {
        let p = LaurentPoly::from_terms((0..10).map(|e| (2 * e, int(1))));
        let s = p.render_limited(3);
        assert_eq!(s, "1 + q + q^2 + ... (7 more terms)");
        assert_eq!(p.render_limited(10), p.to_string());
    }
}
