//! Continuant polynomials of the continued fraction for −z·tan_q(z) and
//! their z²-coefficient tables, computed by three independent routes.
//!
//! The partial denominators are b_0 = 0 and b_n = [2n−1]_q·q^(e(n)) with
//! e(n) = (−1)^(n−1)·n(n−1)/2 − n + 1.  Numerators A_n and denominators
//! B_n of the convergents satisfy the shared recurrence
//! w_n = b_n·w_{n−1} − z²·w_{n−2} under Perron's normalization
//! A_{−1} = 1, B_{−1} = 0, A_0 = 0, B_0 = 1.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, RationalFunc};
use crate::qseries::{q_bracket, ZSeries};

/// Polynomial in z with Laurent-polynomial coefficients, indexed by the
/// power of z.  Trailing zero coefficients are trimmed, so equality is
/// semantic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: Vec<LaurentPoly>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(value: LaurentPoly) -> Self {
        Self::from_coeffs(vec![value])
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in z, `None` for the zero polynomial.
    pub fn deg_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of z^m (zero beyond the degree).
    pub fn coeff(&self, m: usize) -> LaurentPoly {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// True when only even powers of z occur.
    pub fn is_even_in_z(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| m % 2 == 0 || c.is_zero())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(LaurentPoly::neg).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..len)
                .map(|m| self.coeff(m).add(&other.coeff(m)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplies every coefficient by a fixed Laurent polynomial.
    pub fn scale_poly(&self, factor: &LaurentPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(factor)).collect())
    }

    /// Multiplies by z².
    pub fn mul_z2(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(), LaurentPoly::zero()];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Reinterprets the polynomial as a truncated series modulo z^order.
    pub fn to_series(&self, order: usize) -> ZSeries {
        ZSeries::from_coeffs(
            (0..order)
                .map(|m| RationalFunc::from_poly(self.coeff(m)))
                .collect(),
        )
    }

    /// Floating-point evaluation at (u, z).
    pub fn eval_f64(&self, u: f64, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + c.eval_f64(u))
    }
}

/// The exponent e(n) = (−1)^(n−1)·n(n−1)/2 − n + 1 of the q-power in the
/// partial denominator b_n.
pub fn b_exponent(n: i64) -> i64 {
    let alternating = if n % 2 == 1 { 1 } else { -1 };
    alternating * n * (n - 1) / 2 - n + 1
}

/// Partial denominator b_n of the continued fraction: b_0 = 0 and
/// b_n = [2n−1]_q·q^(e(n)) for n ≥ 1.
pub fn b_coeff(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    if n == 0 {
        return Ok(LaurentPoly::zero());
    }
    Ok(q_bracket(2 * n - 1)?.shifted(2 * b_exponent(n)))
}

/// Continuant pair (A_n, B_n) at depth n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantPair {
    pub n: i64,
    pub a: ZPoly,
    pub b: ZPoly,
}

/// Continuants for n = −1 … n_max under Perron's normalization, via the
/// shared three-term recurrence.
pub fn continuant_pairs(n_max: i64) -> Vec<ContinuantPair> {
    let mut pairs = Vec::new();
    if n_max < -1 {
        return pairs;
    }
    pairs.push(ContinuantPair {
        n: -1,
        a: ZPoly::one(),
        b: ZPoly::zero(),
    });
    if n_max >= 0 {
        pairs.push(ContinuantPair {
            n: 0,
            a: ZPoly::zero(),
            b: ZPoly::one(),
        });
    }
    for n in 1..=n_max {
        let b_n = b_coeff(n).expect("n is positive");
        let prev = &pairs[(n as usize + 1) - 1];
        let prev2 = &pairs[(n as usize + 1) - 2];
        let a = prev.a.scale_poly(&b_n).sub(&prev2.a.mul_z2());
        let b = prev.b.scale_poly(&b_n).sub(&prev2.b.mul_z2());
        pairs.push(ContinuantPair { n, a, b });
    }
    pairs
}

/// Product b_1·b_2·…·b_n of the partial denominators (1 when n = 0).
pub fn base_products(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut acc = LaurentPoly::one();
    for s in 1..=n {
        acc = acc.mul(&b_coeff(s)?);
    }
    Ok(acc)
}

/// Route by which a coefficient table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffRoute {
    /// Read off from the continuant polynomials.
    Direct,
    /// Filled by the two-term recursion in n.
    Recursion,
    /// Filled by the rewritten summation form.
    SumForm,
}

/// Table of the z²-coefficients of the continuants:
/// A_n = Σ_k c_{n,k} z^(2k) and B_n = Σ_k d_{n,k} z^(2k).
///
/// Rows range over n = −1 … n_max and columns over k = 0 … k_max; only
/// nonzero entries are stored.  Reads with k < 0 return zero (the
/// convention d_{n,−1} = 0 used by the recursions); reads outside the
/// computed window panic, since they would silently alias absent data.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    route: CoeffRoute,
    n_max: i64,
    k_max: i64,
    c: BTreeMap<(i64, i64), LaurentPoly>,
    d: BTreeMap<(i64, i64), LaurentPoly>,
}

impl CoeffTable {
    fn new(route: CoeffRoute, n_max: i64, k_max: i64) -> Self {
        Self {
            route,
            n_max,
            k_max,
            c: BTreeMap::new(),
            d: BTreeMap::new(),
        }
    }

    pub fn route(&self) -> CoeffRoute {
        self.route
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    fn check_window(&self, n: i64, k: i64) {
        assert!(
            (-1..=self.n_max).contains(&n) && k <= self.k_max,
            "coefficient ({n}, {k}) is outside the computed window \
             n in [-1, {}], k <= {}",
            self.n_max,
            self.k_max
        );
    }

    /// c_{n,k}, the z^(2k)-coefficient of A_n.
    pub fn c(&self, n: i64, k: i64) -> LaurentPoly {
        self.check_window(n, k);
        self.c
            .get(&(n, k))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    /// d_{n,k}, the z^(2k)-coefficient of B_n.
    pub fn d(&self, n: i64, k: i64) -> LaurentPoly {
        self.check_window(n, k);
        self.d
            .get(&(n, k))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    fn set_c(&mut self, n: i64, k: i64, value: LaurentPoly) {
        if !value.is_zero() {
            self.c.insert((n, k), value);
        }
    }

    fn set_d(&mut self, n: i64, k: i64, value: LaurentPoly) {
        if !value.is_zero() {
            self.d.insert((n, k), value);
        }
    }

    /// Seeds shared by the recursion and summation routes, chosen to be
    /// consistent with the continuant initial conditions: A_{−1} = 1
    /// forces c_{−1,0} = 1, and B_0 = 1 forces d_{0,0} = 1.  All other
    /// seed entries vanish.
    fn seed(&mut self) {
        self.set_c(-1, 0, LaurentPoly::one());
        self.set_d(0, 0, LaurentPoly::one());
    }
}

/// Ground-truth table: coefficients read off from the continuant
/// polynomials themselves.
pub fn cd_direct(n_max: i64, k_max: i64) -> CoeffTable {
    let mut table = CoeffTable::new(CoeffRoute::Direct, n_max, k_max);
    for pair in continuant_pairs(n_max) {
        for k in 0..=k_max {
            table.set_c(pair.n, k, pair.a.coeff(2 * k as usize));
            table.set_d(pair.n, k, pair.b.coeff(2 * k as usize));
        }
    }
    table
}

/// Table filled by the coefficient-level recursion
/// c_{n,k} = b_n·c_{n−1,k} − c_{n−2,k−1} (and likewise for d).
pub fn cd_recursive(n_max: i64, k_max: i64) -> CoeffTable {
    let mut table = CoeffTable::new(CoeffRoute::Recursion, n_max, k_max);
    table.seed();
    for n in 1..=n_max {
        let b_n = b_coeff(n).expect("n is positive");
        for k in 0..=k_max {
            let c = b_n.mul(&table.c(n - 1, k)).sub(&table.c(n - 2, k - 1));
            let d = b_n.mul(&table.d(n - 1, k)).sub(&table.d(n - 2, k - 1));
            table.set_c(n, k, c);
            table.set_d(n, k, d);
        }
    }
    table
}

/// Table filled by the rewritten summation form
/// c_{n,k} = −Σ_i c_{i,k−1}·Π_{j=i+3}^{n} b_j (and likewise for d).
///
/// The sum runs from i = −1, one index below the usual display: the seed
/// row contributes c_{−1,0} = 1, without which the k = 1 column would
/// come out zero instead of −Π b_s.  Column k = 0 is the closed form
/// c_{n,0} = 0, d_{n,0} = Π_{s=1}^{n} b_s.
pub fn cd_sumform(n_max: i64, k_max: i64) -> CoeffTable {
    let mut table = CoeffTable::new(CoeffRoute::SumForm, n_max, k_max);
    table.seed();
    let mut product = LaurentPoly::one();
    for n in 1..=n_max {
        product = product.mul(&b_coeff(n).expect("n is positive"));
        table.set_d(n, 0, product.clone());
    }
    for k in 1..=k_max {
        for n in 1..=n_max {
            let mut c_sum = LaurentPoly::zero();
            let mut d_sum = LaurentPoly::zero();
            let mut tail = LaurentPoly::one();
            for i in (-1..=n - 2).rev() {
                c_sum = c_sum.add(&table.c(i, k - 1).mul(&tail));
                d_sum = d_sum.add(&table.d(i, k - 1).mul(&tail));
                tail = tail.mul(&b_coeff(i + 2).expect("index at least 1"));
            }
            table.set_c(n, k, c_sum.neg());
            table.set_d(n, k, d_sum.neg());
        }
    }
    table
}
