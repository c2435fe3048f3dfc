//! The identity suites that mechanize the proof of the continued-fraction
//! expansion: residual vanishing, the key lemma, its inductive step, the
//! master identity, the specialized finite 6φ5 evaluation, and the final
//! telescoped identity, plus cross-route and extraction comparisons.
//!
//! Every check is exact.  Identities whose natural denominators are
//! q-factorials are compared after clearing denominators, so the hot path
//! works in the polynomial ring; rational functions appear only at the
//! public accessors and in failure witnesses.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cfrac::extract_cf_coeffs;
use crate::continuants::{
    b_coeff, base_products, cd_direct, cd_recursive, cd_sumform, continuant_pairs, CoeffTable,
    ContinuantPair, ZPoly,
};
use crate::error::{Error, Result};
use crate::exact::{ExactRational, LaurentPoly, RationalFunc};
use crate::qseries::{
    q_bracket, q_bracket_product, q_factorial, q_pochhammer, tan_q, QPochSpec, Sign, ZSeries,
};

fn bracket(n: i64) -> LaurentPoly {
    q_bracket(n).expect("bracket index is nonnegative")
}

/// 1 − q^e as a Laurent polynomial; e may be negative.
fn one_minus_q(e: i64) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::q_pow(e))
}

/// (q^a ; q^2)_len expanded in u.
fn poch_q2(a: i64, len: i64) -> LaurentPoly {
    q_pochhammer(QPochSpec::in_q(a, 2, len)).expect("nonnegative length")
}

fn parity_sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The residual A_n·cos_q + z·B_n·sin_q modulo z^order.
///
/// Internally the trigonometric coefficients are scaled by the common
/// denominator [order−1]_q!, which turns the whole computation into
/// polynomial convolutions; each coefficient is divided back out at the
/// end.
pub fn residual_series_to_order(n: i64, order: usize) -> Result<ZSeries> {
    if n < 1 {
        return Err(Error::NegativeIndex(n));
    }
    let pairs = continuant_pairs(n);
    residual_from_pair(&pairs[(n + 1) as usize], order)
}

/// The residual to the default order 2n+2, one past the last power the
/// vanishing assertion covers.
pub fn residual_series(n: i64) -> Result<ZSeries> {
    let order = usize::try_from(2 * n + 2).map_err(|_| Error::NegativeIndex(n))?;
    residual_series_to_order(n, order)
}

fn residual_from_pair(pair: &ContinuantPair, order: usize) -> Result<ZSeries> {
    if order == 0 {
        return Ok(ZSeries::zero(0));
    }
    let top = order as i64 - 1;
    let den = q_factorial(top)?;

    // Scaled series coefficients: coeff_m · [top]!, with
    // [top]!/[m]! built as a running suffix product of brackets.
    let mut scaled_cos = vec![LaurentPoly::zero(); order];
    let mut scaled_sin = vec![LaurentPoly::zero(); order];
    let mut suffix = LaurentPoly::one();
    for m in (0..order).rev() {
        let half = (m / 2) as i64;
        let signed = LaurentPoly::monomial(
            ExactRational::from_integer(parity_sign(half).into()),
            2 * half * half,
        );
        let value = suffix.mul(&signed);
        if m % 2 == 0 {
            scaled_cos[m] = value;
        } else {
            scaled_sin[m] = value;
        }
        if m > 0 {
            suffix = suffix.mul(&bracket(m as i64));
        }
    }

    let mut scaled = vec![LaurentPoly::zero(); order];
    for (i, ca) in pair.a.coeffs().iter().enumerate() {
        if ca.is_zero() || i >= order {
            continue;
        }
        for (j, cos) in scaled_cos.iter().enumerate().take(order - i) {
            if !cos.is_zero() {
                scaled[i + j] = scaled[i + j].add(&ca.mul(cos));
            }
        }
    }
    for (i, cb) in pair.b.coeffs().iter().enumerate() {
        if cb.is_zero() || i + 1 >= order {
            continue;
        }
        for (j, sin) in scaled_sin.iter().enumerate().take(order - i - 1) {
            if !sin.is_zero() {
                scaled[i + 1 + j] = scaled[i + 1 + j].add(&cb.mul(sin));
            }
        }
    }
    scaled
        .into_iter()
        .map(|p| RationalFunc::new(p, den.clone()))
        .collect::<Result<Vec<_>>>()
        .map(ZSeries::from_coeffs)
}

/// Numerator of the lemma's left side over the denominator [2k−1]_q!:
/// Σ_{i=0}^{k−1} (−1)^i q^((k−i−1)²)·(c_{n,i+1}·[2k−2i−1] + d_{n,i})
/// ·[2k−1]!/[2k−2i−1]!.
fn lemma_lhs_scaled(table: &CoeffTable, n: i64, k: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for i in 0..k {
        let e = k - i - 1;
        let signed_power = LaurentPoly::monomial(
            ExactRational::from_integer(parity_sign(i).into()),
            2 * e * e,
        );
        let inner = table
            .c(n, i + 1)
            .mul(&bracket(2 * k - 2 * i - 1))
            .add(&table.d(n, i));
        let cofactor = q_bracket_product(2 * k - 2 * i, 2 * k - 1).expect("positive range");
        acc = acc.add(&signed_power.mul(&inner).mul(&cofactor));
    }
    acc
}

/// Numerator of the lemma's right side over the denominator [2k]_q!:
/// (−1)^n q^(E/8)·Π_{s=k−n}^{k} [2s], where E is the closed-form
/// exponent.  Defined for n ≥ 0; the inductive step references row 0.
/// Identically zero for k ≤ n because the product contains [0]_q.
fn lemma_rhs_scaled(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    if k <= n {
        return Ok(LaurentPoly::zero());
    }
    let eps = parity_sign(n);
    let e = 5 + 3 * eps - 12 * k - 4 * eps * k + 8 * k * k + 8 * n - 8 * k * n + 4 * n * n
        - 2 * eps * n * n;
    if e % 8 != 0 {
        return Err(Error::FractionalExponent {
            numerator: e,
            denominator: 8,
        });
    }
    let mut acc = LaurentPoly::monomial(ExactRational::from_integer(eps.into()), e / 4);
    for s in (k - n)..=k {
        acc = acc.mul(&bracket(2 * s));
    }
    Ok(acc)
}

/// Left side of the key lemma:
/// Σ_{i=0}^{k−1} (−1)^i q^((k−i−1)²)/[2k−2i−2]!·(c_{n,i+1} + d_{n,i}/[2k−2i−1]).
pub fn lemma_lhs(n: i64, k: i64) -> Result<RationalFunc> {
    if n < 1 {
        return Err(Error::NegativeIndex(n));
    }
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    if k == 0 {
        return Ok(RationalFunc::zero());
    }
    let table = cd_direct(n, k);
    RationalFunc::new(lemma_lhs_scaled(&table, n, k), q_factorial(2 * k - 1)?)
}

/// Right side of the key lemma:
/// (−1)^n q^(E/8)·Π_{s=k−n}^{k}[2s] / [2k]!.
pub fn lemma_rhs(n: i64, k: i64) -> Result<RationalFunc> {
    RationalFunc::new(lemma_rhs_scaled(n, k)?, q_factorial(2 * k)?)
}

/// Exact comparison of the two lemma sides at (n, k), cleared of their
/// factorial denominators: lhs·[2k] against rhs over [2k]!.
pub fn check_lemma(n: i64, k: i64) -> Result<VerifyReport> {
    if n < 1 {
        return Err(Error::NegativeIndex(n));
    }
    let table = cd_direct(n, k.max(0));
    check_lemma_with(&table, n, k)
}

fn check_lemma_with(table: &CoeffTable, n: i64, k: i64) -> Result<VerifyReport> {
    let start = Instant::now();
    let rhs = lemma_rhs_scaled(n, k)?;
    let lhs = if k >= 1 {
        lemma_lhs_scaled(table, n, k).mul(&bracket(2 * k))
    } else {
        LaurentPoly::zero()
    };
    let params = [("k", k), ("n", n)];
    if lhs == rhs {
        return Ok(VerifyReport::pass("lemma", &params, start.elapsed()));
    }
    let diff = RationalFunc::new(lhs.sub(&rhs), q_factorial(2 * k)?)?;
    Ok(VerifyReport::fail("lemma", &params, &diff, start.elapsed()))
}

/// The identity obtained by substituting the rewritten coefficient
/// recursion into the lemma and interchanging summations:
/// q^((k−1)²)(1−[2k−1])·Πb_s/[2k−1]! + Σ_{i=0}^{n−2} rhs(i,k−1)·Π_{j=i+3}^{n} b_j
/// = rhs(n,k), checked over the common denominator [2k]!.
pub fn inductive_step_check(n: i64, k: i64) -> Result<VerifyReport> {
    if n < 1 {
        return Err(Error::NegativeIndex(n));
    }
    if k < 1 {
        return Err(Error::NegativeIndex(k));
    }
    let start = Instant::now();
    let e = k - 1;
    let boundary = LaurentPoly::u_pow(2 * e * e)
        .mul(&LaurentPoly::one().sub(&bracket(2 * k - 1)))
        .mul(&base_products(n)?)
        .mul(&bracket(2 * k));
    let mut sum = LaurentPoly::zero();
    let mut tail = LaurentPoly::one();
    for i in (0..=n - 2).rev() {
        sum = sum.add(&lemma_rhs_scaled(i, k - 1)?.mul(&tail));
        tail = tail.mul(&b_coeff(i + 2)?);
    }
    let cofactor = bracket(2 * k - 1).mul(&bracket(2 * k));
    let lhs = boundary.add(&sum.mul(&cofactor));
    let rhs = lemma_rhs_scaled(n, k)?;
    let params = [("k", k), ("n", n)];
    if lhs == rhs {
        return Ok(VerifyReport::pass(
            "inductive-step",
            &params,
            start.elapsed(),
        ));
    }
    let diff = RationalFunc::new(lhs.sub(&rhs), q_factorial(2 * k)?)?;
    Ok(VerifyReport::fail(
        "inductive-step",
        &params,
        &diff,
        start.elapsed(),
    ))
}

/// The j-th summand of the master identity's 6φ5-type sum:
/// [(q^(−2k+6);q⁴)_j (q^(−2k+4);q⁴)_j (q^(17/2−k);q⁴)_j (−q^(17/2−k);q⁴)_j]
/// / [(q⁷;q⁴)_j (q⁹;q⁴)_j (q^(9/2−k);q⁴)_j (−q^(9/2−k);q⁴)_j] · q^((2k−1)j).
///
/// The denominator never vanishes for integral k: the exponents 7+4i and
/// 9+4i are positive, and 9/2−k−... the half-integral exponents 9−2k+8i
/// in u are odd, so no factor 1 ∓ u^e has e = 0.
fn master_summand(k: i64, j: i64) -> Result<RationalFunc> {
    let poch4 = |sign: Sign, a_u: i64| q_pochhammer(QPochSpec::new(sign, a_u, 8, j));
    let num = poch4(Sign::Plus, 2 * (6 - 2 * k))?
        .mul(&poch4(Sign::Plus, 2 * (4 - 2 * k))?)
        .mul(&poch4(Sign::Plus, 17 - 2 * k)?)
        .mul(&poch4(Sign::Minus, 17 - 2 * k)?);
    let den = poch4(Sign::Plus, 14)?
        .mul(&poch4(Sign::Plus, 18)?)
        .mul(&poch4(Sign::Plus, 9 - 2 * k)?)
        .mul(&poch4(Sign::Minus, 9 - 2 * k)?);
    RationalFunc::new(num.shifted(2 * (2 * k - 1) * j), den)
}

/// The master identity: the 6φ5-type sum times its prefactor, minus two
/// boundary terms, plus two more, is identically zero.  The sum's upper
/// limit ⌈(n−4)/2⌉ is negative for n ≤ 2, where the sum is empty.
pub fn master_identity_check(n: i64, k: i64) -> Result<VerifyReport> {
    if n < 1 {
        return Err(Error::NegativeIndex(n));
    }
    let start = Instant::now();
    let upper = (n - 3).div_euclid(2);
    let mut sum = RationalFunc::zero();
    for j in 0..=upper {
        sum = sum.add(&master_summand(k, j)?);
    }
    let prefactor = RationalFunc::new(
        poch_q2(1, n)
            .mul(&LaurentPoly::q_pow(1))
            .mul(&one_minus_q(2 * k - 1))
            .mul(&one_minus_q(2 * k - 2))
            .mul(&one_minus_q(9 - 2 * k)),
        one_minus_q(1).mul(&one_minus_q(3)).mul(&one_minus_q(5)),
    )?;

    let term_a = one_minus_q(2 * k - 1).mul(&poch_q2(3, n - 1));

    let eps = parity_sign(n);
    let w = -1 + eps + 2 * k - 2 * eps * k + 2 * n - 4 * k * n + 4 * n * n;
    if w % 2 != 0 {
        return Err(Error::FractionalExponent {
            numerator: w,
            denominator: 2,
        });
    }
    let mut term_b = poch_q2(2 * k - 2 * n, n).shifted(w / 2);
    if eps < 0 {
        term_b = term_b.neg();
    }

    let term_c = poch_q2(1, n);

    let term_d = if n % 2 == 0 {
        one_minus_q(2 * k - 1)
            .mul(&poch_q2(2 * k - 2 * n + 2, n - 1))
            .shifted(n * (2 * n - 2 * k + 1))
    } else {
        LaurentPoly::zero()
    };

    let total = sum
        .mul(&prefactor)
        .sub(&RationalFunc::from_poly(term_a))
        .sub(&RationalFunc::from_poly(term_b))
        .add(&RationalFunc::from_poly(term_c))
        .add(&RationalFunc::from_poly(term_d));

    let params = [("k", k), ("n", n)];
    if total.is_zero() {
        Ok(VerifyReport::pass(
            "master-identity",
            &params,
            start.elapsed(),
        ))
    } else {
        Ok(VerifyReport::fail(
            "master-identity",
            &params,
            &total,
            start.elapsed(),
        ))
    }
}

/// Direct term-by-term value of Σ_{j=0}^{x} of the master summand.
pub fn phi65_finite_sum(x: i64, k: i64) -> Result<RationalFunc> {
    if x < 0 {
        return Err(Error::NegativeIndex(x));
    }
    let mut sum = RationalFunc::zero();
    for j in 0..=x {
        sum = sum.add(&master_summand(k, j)?);
    }
    Ok(sum)
}

/// Closed form of the same sum:
/// (1−q³)(1−q⁵)/((1−q^(2k−1))(1−q^(9−2k)))
/// · (1 − q^((2k−1)(x+1))·(q^(−2k+4);q²)_{2x+2}/(q³;q²)_{2x+2}).
pub fn phi65_closed_form(x: i64, k: i64) -> Result<RationalFunc> {
    if x < 0 {
        return Err(Error::NegativeIndex(x));
    }
    let front = RationalFunc::new(
        one_minus_q(3).mul(&one_minus_q(5)),
        one_minus_q(2 * k - 1).mul(&one_minus_q(9 - 2 * k)),
    )?;
    let ratio = RationalFunc::new(
        poch_q2(4 - 2 * k, 2 * x + 2).shifted(2 * (2 * k - 1) * (x + 1)),
        poch_q2(3, 2 * x + 2),
    )?;
    Ok(front.mul(&RationalFunc::one().sub(&ratio)))
}

fn phi65_check(x: i64, k: i64) -> Result<VerifyReport> {
    let start = Instant::now();
    let direct = phi65_finite_sum(x, k)?;
    let closed = phi65_closed_form(x, k)?;
    let params = [("k", k), ("x", x)];
    if direct == closed {
        Ok(VerifyReport::pass(
            "phi65-evaluation",
            &params,
            start.elapsed(),
        ))
    } else {
        Ok(VerifyReport::fail(
            "phi65-evaluation",
            &params,
            &direct.sub(&closed),
            start.elapsed(),
        ))
    }
}

/// The telescoped identity that closes the proof:
/// (q^(−2k+2);q²)_{2N−1} = −q^(−2(k−N)(2N−1))·(q^(2k−4N+2);q²)_{2N−1}.
pub fn final_identity_check(big_n: i64, k: i64) -> Result<VerifyReport> {
    if big_n < 1 {
        return Err(Error::NegativeIndex(big_n));
    }
    let start = Instant::now();
    let lhs = poch_q2(2 - 2 * k, 2 * big_n - 1);
    let rhs = poch_q2(2 * k - 4 * big_n + 2, 2 * big_n - 1)
        .shifted(-4 * (k - big_n) * (2 * big_n - 1))
        .neg();
    let params = [("N", big_n), ("k", k)];
    if lhs == rhs {
        Ok(VerifyReport::pass(
            "final-identity",
            &params,
            start.elapsed(),
        ))
    } else {
        Ok(VerifyReport::fail(
            "final-identity",
            &params,
            &RationalFunc::from_poly(lhs.sub(&rhs)),
            start.elapsed(),
        ))
    }
}

/// Outcome of a single identity check.
///
/// `passed` is true exactly when `witness` is absent; the constructors
/// maintain that invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity_id: String,
    pub parameters: BTreeMap<String, i64>,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    fn pass(id: &str, params: &[(&str, i64)], elapsed: Duration) -> Self {
        Self {
            identity_id: id.to_string(),
            parameters: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            passed: true,
            witness: None,
            elapsed,
        }
    }

    fn fail(id: &str, params: &[(&str, i64)], diff: &RationalFunc, elapsed: Duration) -> Self {
        let parameters: BTreeMap<String, i64> =
            params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let witness = Some(render_witness(id, &parameters, diff));
        Self {
            identity_id: id.to_string(),
            parameters,
            passed: false,
            witness,
            elapsed,
        }
    }

    fn fail_with(id: &str, params: &[(&str, i64)], witness: String, elapsed: Duration) -> Self {
        Self {
            identity_id: id.to_string(),
            parameters: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            passed: false,
            witness: Some(witness),
            elapsed,
        }
    }
}

/// Renders a failure difference, truncated to 40 terms per polynomial
/// part; oversized witnesses are additionally dumped in full to a file
/// in the system temporary directory.
fn render_witness(id: &str, parameters: &BTreeMap<String, i64>, diff: &RationalFunc) -> String {
    const LIMIT: usize = 40;
    let short = diff.render_limited(LIMIT);
    if diff.num().num_terms() <= LIMIT && diff.den().num_terms() <= LIMIT {
        return short;
    }
    let mut name = format!("qtan-witness-{id}");
    for (key, value) in parameters {
        name.push_str(&format!("-{key}{value}"));
    }
    name.push_str(".txt");
    let path = std::env::temp_dir().join(name);
    match std::fs::write(&path, format!("{diff}\n")) {
        Ok(()) => format!("{short} [full form written to {}]", path.display()),
        Err(_) => short,
    }
}

/// How suite reports should be serialized by a front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

/// Parameter ranges and output options for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Upper n for the families indexed by depth: residual vanishing,
    /// lemma, inductive step, master identity, coefficient routes,
    /// determinants.  Zero runs nothing.
    pub max_n: i64,
    /// Upper k for the lemma, inductive step, master identity, the 6φ5
    /// evaluation, and the final identity.
    pub max_k: i64,
    /// Upper N for the final identity.
    pub max_final_n: i64,
    /// Upper x for the finite 6φ5 evaluation.
    pub max_x: i64,
    /// Extraction depth for the continued-fraction comparison.
    pub max_depth: usize,
    /// Working order of the tangent series fed to extraction; must be at
    /// least 2·max_depth + 2.
    pub series_order: usize,
    /// Where a front end should write the serialized report.
    pub output_path: Option<PathBuf>,
    pub format: ReportFormat,
    /// Test hook: index of a partial denominator whose reference value
    /// is deliberately corrupted, to prove the extraction comparison can
    /// fail.
    pub corrupt_b: Option<i64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_n: 8,
            max_k: 10,
            max_final_n: 8,
            max_x: 8,
            max_depth: 10,
            series_order: 26,
            output_path: None,
            format: ReportFormat::Text,
            corrupt_b: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("max_n", self.max_n),
            ("max_k", self.max_k),
            ("max_N", self.max_final_n),
            ("max_x", self.max_x),
        ] {
            if value < 0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be nonnegative, got {value}"
                )));
            }
        }
        let needed = 2 * self.max_depth + 2;
        if self.series_order < needed {
            return Err(Error::InvalidConfig(format!(
                "series_order {} is too small for depth {}; at least {} is needed",
                self.series_order, self.max_depth, needed
            )));
        }
        Ok(())
    }
}

enum Job {
    Residual { n: i64 },
    Extraction,
    Lemma { n: i64, k: i64 },
    Inductive { n: i64, k: i64 },
    Master { n: i64, k: i64 },
    Phi65 { x: i64, k: i64 },
    Final { big_n: i64, k: i64 },
    RouteAgreement { n: i64 },
    Determinant { n: i64 },
    BaseCase { n: i64 },
}

struct SuiteContext<'a> {
    config: &'a SuiteConfig,
    pairs: Vec<ContinuantPair>,
    direct: CoeffTable,
    recursive: CoeffTable,
    sumform: CoeffTable,
}

/// Runs every identity family over the configured ranges and returns the
/// reports sorted by (identity_id, parameters).  A run with max_n = 0
/// verifies nothing and returns the empty list.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerifyReport>> {
    config.validate()?;
    if config.max_n <= 0 {
        return Ok(Vec::new());
    }
    let ctx = SuiteContext {
        config,
        pairs: continuant_pairs(config.max_n),
        direct: cd_direct(config.max_n, config.max_k.max(1)),
        recursive: cd_recursive(config.max_n, config.max_k.max(1)),
        sumform: cd_sumform(config.max_n, config.max_k.max(1)),
    };

    let mut jobs = Vec::new();
    if config.max_depth > 0 {
        jobs.push(Job::Extraction);
    }
    for n in 1..=config.max_n {
        jobs.push(Job::Residual { n });
        jobs.push(Job::RouteAgreement { n });
        jobs.push(Job::Determinant { n });
        jobs.push(Job::BaseCase { n });
        for k in 0..=config.max_k {
            jobs.push(Job::Lemma { n, k });
        }
        for k in 1..=config.max_k {
            jobs.push(Job::Inductive { n, k });
            jobs.push(Job::Master { n, k });
        }
    }
    for x in 0..=config.max_x {
        for k in 0..=config.max_k {
            jobs.push(Job::Phi65 { x, k });
        }
    }
    for big_n in 1..=config.max_final_n {
        for k in 0..=config.max_k {
            jobs.push(Job::Final { big_n, k });
        }
    }

    let nested: Vec<Vec<VerifyReport>> = jobs
        .into_par_iter()
        .map(|job| run_job(job, &ctx))
        .collect::<Result<_>>()?;
    let mut reports: Vec<VerifyReport> = nested.into_iter().flatten().collect();
    reports.sort_by(|a, b| (&a.identity_id, &a.parameters).cmp(&(&b.identity_id, &b.parameters)));
    Ok(reports)
}

fn run_job(job: Job, ctx: &SuiteContext<'_>) -> Result<Vec<VerifyReport>> {
    match job {
        Job::Residual { n } => residual_check(&ctx.pairs[(n + 1) as usize]).map(|r| vec![r]),
        Job::Extraction => extraction_reports(ctx.config),
        Job::Lemma { n, k } => check_lemma_with(&ctx.direct, n, k).map(|r| vec![r]),
        Job::Inductive { n, k } => inductive_step_check(n, k).map(|r| vec![r]),
        Job::Master { n, k } => master_identity_check(n, k).map(|r| vec![r]),
        Job::Phi65 { x, k } => phi65_check(x, k).map(|r| vec![r]),
        Job::Final { big_n, k } => final_identity_check(big_n, k).map(|r| vec![r]),
        Job::RouteAgreement { n } => Ok(vec![route_agreement_check(ctx, n)]),
        Job::Determinant { n } => Ok(vec![determinant_check(&ctx.pairs, n)]),
        Job::BaseCase { n } => base_case_check(&ctx.direct, n).map(|r| vec![r]),
    }
}

/// Passed when the coefficients of z^0 … z^(2n) of the residual all
/// vanish (the whole computed window does, including z^(2n+1), which is
/// zero by parity).
fn residual_check(pair: &ContinuantPair) -> Result<VerifyReport> {
    let start = Instant::now();
    let n = pair.n;
    let order = (2 * n + 2) as usize;
    let series = residual_from_pair(pair, order)?;
    let params = [("n", n)];
    for m in 0..order.min((2 * n + 1) as usize) {
        if !series.coeff(m).is_zero() {
            let witness = format!("z^{m}: {}", series.coeff(m).render_limited(40));
            return Ok(VerifyReport::fail_with(
                "residual-vanishing",
                &params,
                witness,
                start.elapsed(),
            ));
        }
    }
    Ok(VerifyReport::pass(
        "residual-vanishing",
        &params,
        start.elapsed(),
    ))
}

/// Extracts max_depth partial denominators from −z·tan_q and compares
/// each against the closed form, honoring the corruption hook.
fn extraction_reports(config: &SuiteConfig) -> Result<Vec<VerifyReport>> {
    let start = Instant::now();
    let f = tan_q(config.series_order - 1).shift_z(1).neg();
    let extracted = extract_cf_coeffs(&f, config.max_depth)?;
    let shared = start.elapsed();
    let mut reports = Vec::with_capacity(extracted.len());
    for (index, value) in extracted.iter().enumerate() {
        let step = Instant::now();
        let n = index as i64 + 1;
        let mut expected = b_coeff(n)?;
        if config.corrupt_b == Some(n) {
            expected = expected.add(&LaurentPoly::q_pow(1));
        }
        let params = [("n", n)];
        let elapsed = shared + step.elapsed();
        if value == &expected {
            reports.push(VerifyReport::pass("cf-extraction", &params, elapsed));
        } else {
            let diff = RationalFunc::from_poly(value.sub(&expected));
            reports.push(VerifyReport::fail("cf-extraction", &params, &diff, elapsed));
        }
    }
    Ok(reports)
}

/// Entrywise agreement of the three coefficient routes at row n.
fn route_agreement_check(ctx: &SuiteContext<'_>, n: i64) -> VerifyReport {
    let start = Instant::now();
    let params = [("n", n)];
    for k in 1..=ctx.config.max_k.max(1) {
        for (route, table) in [("recursion", &ctx.recursive), ("sumform", &ctx.sumform)] {
            for (entry, lhs, rhs) in [
                ("c", ctx.direct.c(n, k), table.c(n, k)),
                ("d", ctx.direct.d(n, k), table.d(n, k)),
            ] {
                if lhs != rhs {
                    let diff = RationalFunc::from_poly(lhs.sub(&rhs));
                    let witness = format!(
                        "{entry}({n},{k}) direct vs {route}: {}",
                        diff.render_limited(40)
                    );
                    return VerifyReport::fail_with(
                        "route-agreement",
                        &params,
                        witness,
                        start.elapsed(),
                    );
                }
            }
        }
    }
    VerifyReport::pass("route-agreement", &params, start.elapsed())
}

/// The classical continuant determinant A_n·B_{n−1} − A_{n−1}·B_n = −z^(2n).
fn determinant_check(pairs: &[ContinuantPair], n: i64) -> VerifyReport {
    let start = Instant::now();
    let i = (n + 1) as usize;
    let det = pairs[i]
        .a
        .mul(&pairs[i - 1].b)
        .sub(&pairs[i - 1].a.mul(&pairs[i].b));
    let mut expected = vec![LaurentPoly::zero(); (2 * n + 1) as usize];
    expected[(2 * n) as usize] = LaurentPoly::one().neg();
    let expected = ZPoly::from_coeffs(expected);
    let params = [("n", n)];
    if det == expected {
        VerifyReport::pass("determinant", &params, start.elapsed())
    } else {
        let diff = det.sub(&expected);
        let leading = diff
            .coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("z^{m}: {}", c.render_limited(40)))
            .unwrap_or_else(|| "0".to_string());
        VerifyReport::fail_with("determinant", &params, leading, start.elapsed())
    }
}

/// The k = 1 base case −c_{n,1} = d_{n,0} = Π_{s=1}^{n} b_s.
fn base_case_check(direct: &CoeffTable, n: i64) -> Result<VerifyReport> {
    let start = Instant::now();
    let product = base_products(n)?;
    let params = [("n", n)];
    let c_ok = direct.c(n, 1).neg() == product;
    let d_ok = direct.d(n, 0) == product;
    if c_ok && d_ok {
        Ok(VerifyReport::pass("base-case", &params, start.elapsed()))
    } else {
        let side = if c_ok {
            direct.d(n, 0)
        } else {
            direct.c(n, 1).neg()
        };
        let diff = RationalFunc::from_poly(side.sub(&product));
        Ok(VerifyReport::fail(
            "base-case",
            &params,
            &diff,
            start.elapsed(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn rf(num: LaurentPoly, den: LaurentPoly) -> RationalFunc {
        RationalFunc::new(num, den).unwrap()
    }

    #[test]
    fn residual_vanishes_through_the_asserted_window() {
        for n in 1..=4 {
            let series = residual_series(n).unwrap();
            assert_eq!(series.order(), (2 * n + 2) as usize);
            assert!(series.is_zero_to_order(), "residual window n={n}");
        }
    }

    #[test]
    fn residual_first_surviving_term() {
        let series = residual_series_to_order(1, 6).unwrap();
        for m in 0..4 {
            assert!(series.coeff(m).is_zero(), "z^{m}");
        }
        let expected = rf(LaurentPoly::q_pow(2), bracket(3));
        assert_eq!(series.coeff(4), &expected);
        assert!(series.coeff(5).is_zero());
    }

    #[test]
    fn lemma_sides_at_anchored_values() {
        assert!(lemma_lhs(1, 0).unwrap().is_zero());
        assert!(lemma_lhs(1, 1).unwrap().is_zero());
        let anchored = rf(LaurentPoly::q_pow(2).neg(), bracket(3));
        assert_eq!(lemma_lhs(1, 2).unwrap(), anchored);
        assert_eq!(lemma_rhs(1, 2).unwrap(), anchored);
        assert!(lemma_rhs(2, 1).unwrap().is_zero());
        for n in 1..=4 {
            for k in 0..=n {
                assert!(lemma_rhs(n, k).unwrap().is_zero(), "rhs({n},{k})");
            }
        }
    }

    #[test]
    fn lemma_exponent_is_always_integral() {
        for n in 0..=12 {
            for k in 0..=14 {
                assert!(lemma_rhs_scaled(n, k).is_ok(), "({n},{k})");
            }
        }
    }

    #[test]
    fn lemma_holds_on_a_small_window() {
        for n in 1..=4 {
            for k in 0..=6 {
                let report = check_lemma(n, k).unwrap();
                assert!(report.passed, "lemma ({n},{k}): {:?}", report.witness);
            }
        }
    }

    #[test]
    fn lemma_is_strictly_stronger_than_the_vanishing_window() {
        let report = check_lemma(2, 4).unwrap();
        assert!(report.passed);
        assert!(!lemma_lhs(2, 4).unwrap().is_zero());
        assert!(!lemma_rhs(2, 4).unwrap().is_zero());
    }

    #[test]
    fn inductive_step_holds_on_a_small_window() {
        for n in 1..=4 {
            for k in 1..=6 {
                let report = inductive_step_check(n, k).unwrap();
                assert!(report.passed, "step ({n},{k}): {:?}", report.witness);
            }
        }
    }

    #[test]
    fn master_identity_holds_including_empty_sums() {
        assert!(master_summand(3, 0).unwrap().is_one());
        for (n, k) in [(1, 2), (2, 1), (3, 2), (4, 3), (5, 4)] {
            let report = master_identity_check(n, k).unwrap();
            assert!(report.passed, "master ({n},{k}): {:?}", report.witness);
        }
    }

    #[test]
    fn phi65_sum_matches_closed_form() {
        assert!(phi65_finite_sum(0, 3).unwrap().is_one());
        assert!(phi65_closed_form(0, 3).unwrap().is_one());
        for (x, k) in [(1, 2), (2, 5), (3, 0), (4, 6)] {
            let report = phi65_check(x, k).unwrap();
            assert!(report.passed, "phi65 ({x},{k}): {:?}", report.witness);
        }
    }

    #[test]
    fn final_identity_holds() {
        for big_n in 1..=3 {
            for k in 0..=5 {
                let report = final_identity_check(big_n, k).unwrap();
                assert!(report.passed, "final ({big_n},{k}): {:?}", report.witness);
            }
        }
    }

    #[test]
    fn suite_runs_clean_on_a_small_config() {
        let config = SuiteConfig {
            max_n: 3,
            max_k: 4,
            max_final_n: 2,
            max_x: 2,
            max_depth: 3,
            series_order: 8,
            ..SuiteConfig::default()
        };
        let reports = run_suite(&config).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.passed), "all checks pass");
        assert!(reports.iter().all(|r| r.witness.is_none()));

        let keys: Vec<_> = reports
            .iter()
            .map(|r| (r.identity_id.clone(), r.parameters.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "reports come back sorted");

        let again = run_suite(&config).unwrap();
        let again_keys: Vec<_> = again
            .iter()
            .map(|r| (r.identity_id.clone(), r.parameters.clone()))
            .collect();
        assert_eq!(keys, again_keys, "deterministic report set");
    }

    #[test]
    fn suite_with_empty_range_is_empty() {
        let config = SuiteConfig {
            max_n: 0,
            ..SuiteConfig::default()
        };
        assert!(run_suite(&config).unwrap().is_empty());
    }

    #[test]
    fn suite_rejects_inconsistent_orders() {
        let config = SuiteConfig {
            max_depth: 10,
            series_order: 10,
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(&config), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn corruption_hook_produces_a_witnessed_failure() {
        let config = SuiteConfig {
            max_n: 2,
            max_k: 2,
            max_final_n: 1,
            max_x: 1,
            max_depth: 3,
            series_order: 8,
            corrupt_b: Some(2),
            ..SuiteConfig::default()
        };
        let reports = run_suite(&config).unwrap();
        let failures: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
        assert_eq!(failures.len(), 1);
        let failure = failures[0];
        assert_eq!(failure.identity_id, "cf-extraction");
        assert_eq!(failure.parameters.get("n"), Some(&2));
        let witness = failure.witness.as_deref().unwrap();
        assert!(
            witness.contains("q"),
            "witness renders the difference: {witness}"
        );
    }

    #[test]
    fn classical_limit_of_the_tangent_series() {
        let t = tan_q(8);
        let expectations = [
            (1, crate::exact::rat(1, 1)),
            (3, crate::exact::rat(1, 3)),
            (5, crate::exact::rat(2, 15)),
            (7, crate::exact::rat(17, 315)),
        ];
        for (m, value) in expectations {
            assert_eq!(t.coeff(m).eval_rational(&int(1)).unwrap(), value);
        }
    }
}
