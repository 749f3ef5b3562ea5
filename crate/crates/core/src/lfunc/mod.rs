//! `l`-adic L-functions: Kubota-Leopoldt through the regularized Bernoulli
//! measure, its `z = -1` variant, Hurwitz-type functions, Dirichlet
//! L-series and the `Z[1/m]` functions.
//!
//! Two evaluation routes exist. The measure route integrates against
//! `E_{1,c}`. The interpolation route picks the integer `k ≡ β mod (l-1)`,
//! `k ≡ s mod l^M` and evaluates a closed Bernoulli expression there; its
//! precision is governed by the valuation `v = v_l(c_0^k - 1)` of the
//! regularizing factor, where `c_0` is the least primitive root mod `l^2`.

mod character;
mod hurwitz;

pub use character::{primitive_root, CharValue, DirichletCharacter};
pub use hurwitz::{
    classical_special, classical_special_exact, dirichlet_l, hurwitz_l, hurwitz_special, zinv_l, zinv_special,
    ZinvReport,
};

use thiserror::Error;

use crate::exactq::{gen_bernoulli, int, Rational};
use crate::measure::{bernoulli_measure, mellin_multi, MeasureError};
use crate::padic::{self, max_digits, pow_mod, pow_u64, PadicError, PadicNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("regularizer degenerate (increase precision or change c)")]
    Degenerate,
    #[error("c = {0} is not admissible: need c prime to l with c^(l-1) ≢ 1 mod l^2")]
    BadRegularizer(i64),
    #[error("α not coprime to m")]
    NotCoprime,
    #[error("m divisible by ℓ")]
    EllDividesModulus,
    #[error("index {i} outside 0 < i < {m}")]
    BadIndex { i: u64, m: u64 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("character values outside ℤ_ℓ")]
    OutsideZl,
    #[error("character value {0} is not prime to l")]
    ValueNotUnit(i64),
    #[error("values are not multiplicative at {0}")]
    NotMultiplicative(u64),
    #[error("values do not determine the character on every unit")]
    Incomplete,
    #[error("character is induced from modulus {0}, not primitive")]
    NotPrimitive(u64),
    #[error("σ-dependent; Euler-factor formula not applicable (β must be even)")]
    OddBeta,
    #[error("bad prime set: {0}")]
    BadPrimes(String),
    #[error("s must lie in Z_l with at least {0} known digits")]
    BadExponent(u32),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Measure,
    Interpolation,
}

/// A Kubota-Leopoldt query `L^β(1-s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LQuery {
    pub ell: u64,
    pub beta: i64,
    pub s: PadicNum,
    /// Regularizing unit; `None` picks the least primitive root mod `l^2`.
    pub c: Option<i64>,
    pub method: Method,
    /// Depth of the measure-route Riemann sum.
    pub level: usize,
    /// `M` for the interpolation route.
    pub prec: u32,
}

impl LQuery {
    pub fn new(ell: u64, beta: i64, s: PadicNum) -> Self {
        LQuery { ell, beta, s, c: None, method: Method::Measure, level: 6, prec: 2 }
    }
}

/// An L-value with its guaranteed precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LValue {
    /// Reduced to the guaranteed precision.
    pub value: PadicNum,
    /// The value is known modulo `l^precision`.
    pub precision: i64,
    /// The interpolation integer `k`, when that route was used.
    pub k: Option<u64>,
    /// The exact rational value at `k`, when available.
    pub exact: Option<Rational>,
    pub notes: Vec<String>,
}

/// Least `c` in `[2, l^2)` generating `(Z/l^2)^×`.
pub fn default_regularizer(ell: u64) -> i64 {
    let m = ell * ell;
    let phi = ell * (ell - 1);
    let mut factors = character::prime_factors(ell - 1);
    factors.push(ell);
    (2..m)
        .find(|&c| c % ell != 0 && factors.iter().all(|&q| pow_mod(c, (phi / q) as u128, m) != 1))
        .expect("cyclic group has a generator") as i64
}

/// `v_l(c_0^k - 1)`: zero unless `(l-1) | k`, then `1 + v_l(k)`.
pub fn regularizer_valuation(ell: u64, k: u64) -> i64 {
    if !k.is_multiple_of(ell - 1) {
        return 0;
    }
    let mut v = 1;
    let mut k = k;
    while k > 0 && k.is_multiple_of(ell) {
        k /= ell;
        v += 1;
    }
    v
}

/// Precision of the interpolation route at `k` for congruence depth `M`:
/// the observed loss is `max(v, 2v - 1)`.
pub fn interpolation_precision(ell: u64, k: u64, m: u32) -> i64 {
    let v = regularizer_valuation(ell, k);
    (m as i64 - v).min(m as i64 + 1 - 2 * v)
}

/// The least `k >= 1` with `k ≡ β mod (l-1)` and `k ≡ s mod l^M`.
pub fn interpolation_point(ell: u64, beta: i64, s: &PadicNum, m: u32) -> Result<u64> {
    if !s.is_zero() && s.valuation() < 0 {
        return Err(LError::BadExponent(m));
    }
    let r = s.residue(m).map_err(|_| LError::BadExponent(m))?;
    let lm = pow_u64(ell, m);
    let b = beta.rem_euclid(ell as i64 - 1) as u64;
    // k = r + lm·t with r + lm·t ≡ b mod (l-1)
    let mut k = r;
    for _ in 0..ell - 1 {
        if k >= 1 && k % (ell - 1) == b {
            return Ok(k);
        }
        k += lm;
    }
    unreachable!("l^M is a unit mod l-1")
}

/// `-(1/k) B_{k, ω^{β-k}}` to `digits` digits of absolute precision.
pub fn kl_special_value(beta: i64, k: u64, ell: u64, digits: u32) -> PadicNum {
    let vk = crate::padic::rational_valuation(&int(k as i64), ell).unwrap_or(0);
    let g = gen_bernoulli(k as usize, beta - k as i64, ell, digits + vk as u32 + 1);
    let minus_inv_k = PadicNum::from_rational(&Rational::new((-1).into(), (k as i64).into()), ell, max_digits(ell));
    (&g * &minus_inv_k).with_absolute_precision(digits as i64)
}

/// `-(1/k) B_{k, ω^{β-k}}` exactly, when `ω^{β-k}` takes rational values.
pub fn kl_special_exact(beta: i64, k: u64, ell: u64) -> Option<Rational> {
    let j = beta - k as i64;
    if (j.rem_euclid(ell as i64 - 1) + k as i64) % 2 == 1 {
        return Some(int(0));
    }
    crate::exactq::gen_bernoulli_exact(k as usize, j, ell).map(|b| -b / int(k as i64))
}

fn regularizer(q: &LQuery) -> Result<i64> {
    let c = q.c.unwrap_or_else(|| default_regularizer(q.ell));
    let m = q.ell * q.ell;
    let cr = c.rem_euclid(m as i64) as u64;
    if cr.is_multiple_of(q.ell) || pow_mod(cr, (q.ell - 1) as u128, m) == 1 {
        return Err(LError::BadRegularizer(c));
    }
    Ok(c)
}

/// `ω(c)^β [c]^s - 1` to `digits` digits.
fn regularizing_denominator(c: i64, beta: i64, s: &PadicNum, ell: u64, digits: u32) -> Result<PadicNum> {
    let cp = PadicNum::from_int(c, ell, digits);
    let (w, bracket) = cp.unit_decompose()?;
    let val = &w.pow(beta)? * &bracket.one_unit_pow(s)?;
    Ok(&val - &PadicNum::one(ell, digits))
}

/// `L^β(1-s)` for the Kubota-Leopoldt function.
///
/// Measure route: `(ω(c)^β [c]^s - 1)^{-1} ∫_{Z_l^×} [x]^s x^{-1} ω(x)^β dE_{1,c}`
/// at the query level, known to `level - v` digits with `v` the valuation
/// of the denominator. Interpolation route: [`kl_special_value`] at the
/// interpolation point.
pub fn kubota_leopoldt(q: &LQuery) -> Result<LValue> {
    padic::check_prime(q.ell)?;
    match q.method {
        Method::Interpolation => {
            let k = interpolation_point(q.ell, q.beta, &q.s, q.prec)?;
            let precision = interpolation_precision(q.ell, k, q.prec);
            let exact = kl_special_exact(q.beta, k, q.ell);
            let value = match &exact {
                Some(x) => PadicNum::from_rational_abs(x, q.ell, precision),
                None => kl_special_value(q.beta, k, q.ell, precision.max(0) as u32).with_absolute_precision(precision),
            };
            Ok(LValue { value, precision, k: Some(k), exact, notes: Vec::new() })
        }
        Method::Measure => {
            let c = regularizer(q)?;
            let e = bernoulli_measure(c, q.ell, q.level)?;
            let integral = mellin_multi(&e, std::slice::from_ref(&q.s), &[q.beta], q.level)?;
            let digits = max_digits(q.ell);
            let denom = regularizing_denominator(c, q.beta, &q.s, q.ell, digits)?;
            if denom.is_zero() {
                return Err(LError::Degenerate);
            }
            let v = denom.valuation();
            if v >= integral.precision {
                return Err(LError::Degenerate);
            }
            let precision = integral.precision - v;
            let value = integral.value.checked_div(&denom)?.with_absolute_precision(precision);
            Ok(LValue { value, precision, k: None, exact: None, notes: Vec::new() })
        }
    }
}

/// `((1 - E)/E) L^β(1-s)` with `E = 2^{-1} ω(2)^β [2]^s`, the `z = -1`
/// function; only defined this way for even `β`.
pub fn minus_one_l(q: &LQuery) -> Result<LValue> {
    if q.beta.rem_euclid(2) == 1 {
        return Err(LError::OddBeta);
    }
    let kl = kubota_leopoldt(q)?;
    let ell = q.ell;
    let digits = max_digits(ell);
    let two = PadicNum::from_int(2, ell, digits);
    let (w, bracket) = two.unit_decompose()?;
    let e = &(&w.pow(q.beta)? * &bracket.one_unit_pow(&q.s)?) * &two.inverse()?;
    let factor = (&PadicNum::one(ell, digits) - &e).checked_div(&e)?;
    // a positive valuation of the factor would only sharpen the bound
    let precision = kl.precision + factor.valuation().min(0);
    let value = (&factor * &kl.value).with_absolute_precision(precision);
    let exact = match (kl.k, &kl.exact) {
        (Some(k), Some(x)) => {
            let p = crate::exactq::pow_int(2, k as i64 - 1);
            Some((int(1) - &p) / p * x)
        }
        _ => None,
    };
    Ok(LValue { value, precision, k: kl.k, exact, notes: kl.notes })
}

/// `(1 - l^{k-1}) ((1 - 2^{k-1})/2^{k-1}) (-B_k/k)`, the special value of the
/// `z = -1` function at `k ≡ β`.
pub fn minus_one_special(k: u64, ell: u64) -> Rational {
    let p = crate::exactq::pow_int(2, k as i64 - 1);
    let factor = (int(1) - &p) / p;
    let base = -crate::exactq::euler_removed_bernoulli(k as usize, ell) / int(k as i64);
    factor * base
}
