//! Fixed-precision arithmetic in `Q_l` for an odd prime `l`.
//!
//! A [`PadicNum`] stores `l^v * u` where `u` is a unit known modulo `l^N`.
//! The absolute precision of such a value is `v + N`. Zero is represented by
//! an empty unit together with the absolute precision it is known to; the
//! exact zero carries no precision bound at all.
//!
//! All residues live in `u64` and products are reduced through `u128`, so the
//! number of digits is capped by [`max_digits`].

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactq::Rational;

const EXACT: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("prime {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("not a unit")]
    NotUnit,
    #[error("not a one-unit")]
    NotOneUnit,
    #[error("exponent not integral")]
    ExponentNotIntegral,
    #[error("not integral")]
    NotIntegral,
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision: value known to l^{known}, need l^{needed}")]
    InsufficientPrecision { known: i64, needed: i64 },
    #[error("modulus {0} is not coprime to the denominator")]
    NotCoprime(u64),
}

pub type Result<T> = std::result::Result<T, PadicError>;

/// Largest `N` with `l^N < 2^62`.
pub fn max_digits(ell: u64) -> u32 {
    let mut n = 0;
    let mut p: u128 = 1;
    while p * ell as u128 <= (1u128 << 62) {
        p *= ell as u128;
        n += 1;
    }
    n
}

/// Primes above this bound are rejected: several tables are indexed by
/// residues mod `l`.
pub const MAX_PRIME: u64 = 1 << 16;

pub fn is_odd_prime(ell: u64) -> bool {
    if ell < 3 || ell.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d <= ell / d {
        if ell.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(ell: u64) -> Result<()> {
    if ell > MAX_PRIME {
        Err(PadicError::PrimeTooLarge(ell))
    } else if is_odd_prime(ell) {
        Ok(())
    } else {
        Err(PadicError::BadPrime(ell))
    }
}

pub(crate) fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("prime power overflows u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: u64) -> Option<u64> {
    let m = m as i128;
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m) as u64)
}

fn big_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Strips factors of `ell` from `n`, returning the count.
fn strip(n: &mut BigInt, ell: u64) -> i64 {
    let l = BigInt::from(ell);
    let mut v = 0;
    while !n.is_zero() && (&*n % &l).is_zero() {
        *n /= &l;
        v += 1;
    }
    v
}

/// Valuation of a rational; `None` for zero.
pub fn rational_valuation(q: &Rational, ell: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let mut n = q.numer().clone();
    let mut d = q.denom().clone();
    Some(strip(&mut n, ell) - strip(&mut d, ell))
}

/// An element of `Q_l` known to a fixed absolute precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNum {
    ell: u64,
    /// For zero, the absolute precision (`i64::MAX` for the exact zero).
    valuation: i64,
    unit: u64,
    digits: u32,
}

impl PadicNum {
    pub fn zero(ell: u64) -> Self {
        PadicNum { ell, valuation: EXACT, unit: 0, digits: 0 }
    }

    /// Zero known modulo `l^abs_prec`.
    pub fn zero_mod(ell: u64, abs_prec: i64) -> Self {
        PadicNum { ell, valuation: abs_prec, unit: 0, digits: 0 }
    }

    pub fn one(ell: u64, digits: u32) -> Self {
        Self::from_int(1, ell, digits)
    }

    /// Builds `l^valuation * unit` with `digits` relative digits. The unit is
    /// reduced, and any factors of `l` it carries are moved to the valuation.
    pub fn new(ell: u64, valuation: i64, unit: u64, digits: u32) -> Self {
        Self::from_parts(ell, valuation, unit as u128, valuation + digits as i64)
    }

    /// `l^v * raw`, known to absolute precision `abs_prec`.
    fn from_parts(ell: u64, mut v: i64, mut raw: u128, abs_prec: i64) -> Self {
        if abs_prec == EXACT {
            return Self::zero(ell);
        }
        let cap = max_digits(ell) as i64;
        let l = ell as u128;
        if v >= abs_prec {
            return Self::zero_mod(ell, abs_prec);
        }
        raw %= pow_u64(ell, min((abs_prec - v) as u32, cap as u32)) as u128;
        if raw == 0 {
            return Self::zero_mod(ell, abs_prec);
        }
        while raw.is_multiple_of(l) {
            raw /= l;
            v += 1;
        }
        if v >= abs_prec {
            return Self::zero_mod(ell, abs_prec);
        }
        let digits = min(abs_prec - v, cap) as u32;
        let m = pow_u64(ell, digits);
        PadicNum { ell, valuation: v, unit: (raw % m as u128) as u64, digits }
    }

    pub fn from_int(n: i64, ell: u64, digits: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), ell, digits)
    }

    /// An integer with `digits` relative digits.
    pub fn from_bigint(n: &BigInt, ell: u64, digits: u32) -> Self {
        if n.is_zero() {
            return Self::zero(ell);
        }
        let mut n = n.clone();
        let v = strip(&mut n, ell);
        let digits = min(digits, max_digits(ell));
        let m = pow_u64(ell, digits);
        Self::new(ell, v, big_mod(&n, m), digits)
    }

    /// A rational with `digits` relative digits.
    pub fn from_rational(q: &Rational, ell: u64, digits: u32) -> Self {
        if q.is_zero() {
            return Self::zero(ell);
        }
        let mut n = q.numer().clone();
        let mut d = q.denom().clone();
        let v = strip(&mut n, ell) - strip(&mut d, ell);
        let digits = min(digits, max_digits(ell));
        let m = pow_u64(ell, digits);
        let dinv = inv_mod(big_mod(&d, m) as i128, m).expect("denominator is an l-unit");
        Self::new(ell, v, mul_mod(big_mod(&n, m), dinv, m), digits)
    }

    /// A rational known to absolute precision `abs_prec`.
    pub fn from_rational_abs(q: &Rational, ell: u64, abs_prec: i64) -> Self {
        match rational_valuation(q, ell) {
            None => Self::zero(ell),
            Some(v) if v >= abs_prec => Self::zero_mod(ell, abs_prec),
            Some(v) => Self::from_rational(q, ell, (abs_prec - v) as u32),
        }
    }

    pub fn prime(&self) -> u64 {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.unit == 0 && self.valuation == EXACT
    }

    /// Valuation; for zero this is the absolute precision.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    /// Relative precision `N`.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Absolute precision `v + N`; `i64::MAX` for the exact zero.
    pub fn absolute_precision(&self) -> i64 {
        if self.is_zero() {
            self.valuation
        } else {
            self.valuation + self.digits as i64
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.valuation == 0
    }

    pub fn is_integral(&self) -> bool {
        self.valuation >= 0
    }

    /// Drops digits so that the absolute precision is at most `abs_prec`.
    pub fn with_absolute_precision(&self, abs_prec: i64) -> Self {
        if abs_prec >= self.absolute_precision() {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero_mod(self.ell, abs_prec);
        }
        Self::from_parts(self.ell, self.valuation, self.unit as u128, abs_prec)
    }

    /// Caps the relative precision at `digits`.
    pub fn with_digits(&self, digits: u32) -> Self {
        if self.is_zero() || digits >= self.digits {
            return self.clone();
        }
        self.with_absolute_precision(self.valuation + digits as i64)
    }

    /// The integer `l^v * unit` (or zero) as a rational approximation.
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let l = BigInt::from(self.ell);
        let u = BigInt::from(self.unit);
        if self.valuation >= 0 {
            Rational::from_integer(u * l.pow(self.valuation as u32))
        } else {
            Rational::new(u, l.pow((-self.valuation) as u32))
        }
    }

    /// The residue in `[0, l^n)` of an integral value.
    pub fn residue(&self, n: u32) -> Result<u64> {
        if self.is_zero() {
            if self.valuation < n as i64 {
                return Err(PadicError::InsufficientPrecision { known: self.valuation, needed: n as i64 });
            }
            return Ok(0);
        }
        if self.valuation < 0 {
            return Err(PadicError::NotIntegral);
        }
        if self.absolute_precision() < n as i64 {
            return Err(PadicError::InsufficientPrecision { known: self.absolute_precision(), needed: n as i64 });
        }
        let m = pow_u64(self.ell, n);
        if self.valuation >= n as i64 {
            return Ok(0);
        }
        let lv = pow_u64(self.ell, self.valuation as u32);
        Ok(mul_mod(self.unit % m, lv, m))
    }

    /// Valuation of `self - other`, bounded by the available precision.
    pub fn valuation_of_difference(&self, other: &PadicNum) -> i64 {
        (self - other).valuation()
    }

    /// True when `self` and `other` are known to agree modulo `l^k`.
    pub fn congruent(&self, other: &PadicNum, k: i64) -> bool {
        self.valuation_of_difference(other) >= k
    }

    pub fn inverse(&self) -> Result<PadicNum> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let m = pow_u64(self.ell, self.digits);
        let u = inv_mod(self.unit as i128, m).expect("unit");
        Ok(PadicNum { ell: self.ell, valuation: -self.valuation, unit: u, digits: self.digits })
    }

    pub fn checked_div(&self, other: &PadicNum) -> Result<PadicNum> {
        if other.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        if self.is_zero() {
            if self.is_exact_zero() {
                return Ok(self.clone());
            }
            return Ok(Self::zero_mod(self.ell, self.valuation - other.valuation));
        }
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<PadicNum> {
        if e == 0 {
            return Ok(Self::one(self.ell, max_digits(self.ell)));
        }
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        if self.is_zero() {
            if self.is_exact_zero() {
                return Ok(self.clone());
            }
            return Ok(Self::zero_mod(self.ell, self.valuation.saturating_mul(e)));
        }
        let m = pow_u64(self.ell, self.digits);
        Ok(PadicNum {
            ell: self.ell,
            valuation: self.valuation * e,
            unit: pow_mod(self.unit, e as u128, m),
            digits: self.digits,
        })
    }

    /// `ω(x)`, the Teichmüller representative of a unit.
    pub fn teichmuller(&self) -> Result<PadicNum> {
        if !self.is_unit() {
            return Err(PadicError::NotUnit);
        }
        teichmuller(self.unit, self.ell, self.digits)
    }

    /// `(ω(x), [x])` with `ω(x)·[x] = x` and `[x] ≡ 1 mod l`.
    pub fn unit_decompose(&self) -> Result<(PadicNum, PadicNum)> {
        let w = self.teichmuller()?;
        let bracket = self * &w.inverse()?;
        Ok((w, bracket))
    }

    /// `u^s` for a one-unit `u` and `s ∈ Z_l`.
    pub fn one_unit_pow(&self, s: &PadicNum) -> Result<PadicNum> {
        one_unit_pow(self, s)
    }
}

/// `ω(u)`: the `(l-1)`-st root of unity congruent to `u` mod `l`, to `digits`
/// digits. Found as the fixed point of `x ↦ x^l`.
pub fn teichmuller(u: u64, ell: u64, digits: u32) -> Result<PadicNum> {
    if u.is_multiple_of(ell) {
        return Err(PadicError::NotUnit);
    }
    let digits = min(max(digits, 1), max_digits(ell));
    let m = pow_u64(ell, digits);
    let mut x = u % m;
    loop {
        let y = pow_mod(x, ell as u128, m);
        if y == x {
            break;
        }
        x = y;
    }
    Ok(PadicNum::new(ell, 0, x, digits))
}

/// Teichmüller lift of a signed integer residue.
pub fn teichmuller_int(u: i64, ell: u64, digits: u32) -> Result<PadicNum> {
    teichmuller(u.rem_euclid(ell as i64) as u64, ell, digits)
}

/// `u^s = Σ C(s,k)(u-1)^k` for `u ≡ 1 mod l`.
///
/// Since `u^(l^j) ≡ 1 mod l^(j+v(u-1))`, the power only depends on `s` modulo
/// `l^(N-1)`, so it is evaluated at the integer representative of `s`. The
/// result is known to `min(abs prec of u, abs prec of s + v(u-1))`.
pub fn one_unit_pow(u: &PadicNum, s: &PadicNum) -> Result<PadicNum> {
    if !u.is_unit() || u.unit % u.ell != 1 {
        return Err(PadicError::NotOneUnit);
    }
    if !s.is_zero() && s.valuation < 0 {
        return Err(PadicError::ExponentNotIntegral);
    }
    let ell = u.ell;
    let one = PadicNum::one(ell, u.digits);
    let w = (u - &one).valuation().max(1);
    let target = min(u.digits as i64, s.absolute_precision().saturating_add(w));
    if target <= 0 {
        return Ok(PadicNum::zero_mod(ell, 0));
    }
    let target = target as u32;
    // s is needed modulo l^(target - w)
    let need = target.saturating_sub(w as u32);
    let exp = if need == 0 { 0 } else { s.residue(need)? };
    let m = pow_u64(ell, target);
    Ok(PadicNum::new(ell, 0, pow_mod(u.unit % m, exp as u128, m), target))
}

/// The integer in `[0, l^n)` congruent to `q`.
pub fn angle_repr(q: &PadicNum, n: u32) -> Result<u64> {
    if !q.is_zero() && q.valuation < 0 {
        return Err(PadicError::NotIntegral);
    }
    q.residue(n)
}

/// The integer in `[0, modulus)` congruent to the rational `q`; the
/// denominator must be invertible modulo `modulus`.
pub fn angle_repr_rational(q: &Rational, modulus: u64) -> Result<u64> {
    let m = BigInt::from(modulus);
    let d = q.denom().mod_floor(&m);
    let dinv = inv_mod(d.to_i128().unwrap(), modulus).ok_or(PadicError::NotCoprime(modulus))?;
    let n = big_mod(q.numer(), modulus);
    Ok(mul_mod(n, dinv, modulus))
}

impl fmt::Debug for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            write!(f, "0")
        } else if self.is_zero() {
            write!(f, "O({}^{})", self.ell, self.valuation)
        } else {
            write!(f, "{}^{} * {} + O({}^{})", self.ell, self.valuation, self.unit, self.ell, self.absolute_precision())
        }
    }
}

impl<'a> Add<&'a PadicNum> for &'a PadicNum {
    type Output = PadicNum;

    fn add(self, rhs: &'a PadicNum) -> PadicNum {
        assert_eq!(self.ell, rhs.ell, "mixed primes");
        let ell = self.ell;
        let p = min(self.absolute_precision(), rhs.absolute_precision());
        if self.is_zero() {
            return rhs.with_absolute_precision(p);
        }
        if rhs.is_zero() {
            return self.with_absolute_precision(p);
        }
        let v = min(self.valuation, rhs.valuation);
        if v >= p {
            return PadicNum::zero_mod(ell, p);
        }
        let width = (p - v) as u32;
        let m = pow_u64(ell, width) as u128;
        let shifted = |x: &PadicNum| -> u128 {
            let gap = (x.valuation - v) as u32;
            if gap >= width {
                0
            } else {
                (x.unit as u128 % m) * pow_u64(ell, gap) as u128 % m
            }
        };
        PadicNum::from_parts(ell, v, (shifted(self) + shifted(rhs)) % m, p)
    }
}

impl Neg for &PadicNum {
    type Output = PadicNum;

    fn neg(self) -> PadicNum {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_u64(self.ell, self.digits);
        PadicNum { unit: m - self.unit, ..self.clone() }
    }
}

impl<'a> Sub<&'a PadicNum> for &'a PadicNum {
    type Output = PadicNum;

    fn sub(self, rhs: &'a PadicNum) -> PadicNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PadicNum> for &'a PadicNum {
    type Output = PadicNum;

    fn mul(self, rhs: &'a PadicNum) -> PadicNum {
        assert_eq!(self.ell, rhs.ell, "mixed primes");
        let ell = self.ell;
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => {
                if self.is_exact_zero() || rhs.is_exact_zero() {
                    PadicNum::zero(ell)
                } else {
                    PadicNum::zero_mod(ell, self.valuation + rhs.valuation)
                }
            }
            (true, false) | (false, true) => {
                let (z, x) = if self.is_zero() { (self, rhs) } else { (rhs, self) };
                if z.is_exact_zero() {
                    PadicNum::zero(ell)
                } else {
                    PadicNum::zero_mod(ell, z.valuation + x.valuation)
                }
            }
            (false, false) => {
                let digits = min(self.digits, rhs.digits);
                let m = pow_u64(ell, digits);
                PadicNum {
                    ell,
                    valuation: self.valuation + rhs.valuation,
                    unit: mul_mod(self.unit % m, rhs.unit % m, m),
                    digits,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<PadicNum> for PadicNum {
            type Output = PadicNum;
            fn $f(self, rhs: PadicNum) -> PadicNum {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        -&self
    }
}

/// JSON form `{ell, valuation, unit, precision_digits}`; the exact zero has a
/// null valuation.
#[derive(Serialize, Deserialize)]
struct PadicRecord {
    ell: u64,
    valuation: Option<i64>,
    unit: u64,
    precision_digits: u32,
}

impl Serialize for PadicNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicRecord {
            ell: self.ell,
            valuation: (!self.is_exact_zero()).then_some(self.valuation),
            unit: self.unit,
            precision_digits: self.digits,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let r = PadicRecord::deserialize(d)?;
        if !is_odd_prime(r.ell) {
            return Err(D::Error::custom(PadicError::BadPrime(r.ell)));
        }
        if r.precision_digits > max_digits(r.ell) {
            return Err(D::Error::custom("precision_digits too large for u64 residues"));
        }
        match r.valuation {
            None if r.unit == 0 => Ok(PadicNum::zero(r.ell)),
            None => Err(D::Error::custom("nonzero unit needs a valuation")),
            Some(v) if r.unit == 0 => Ok(PadicNum::zero_mod(r.ell, v)),
            Some(v) => {
                if r.precision_digits == 0 || r.unit % r.ell == 0 {
                    return Err(D::Error::custom("unit must be coprime to ell"));
                }
                if r.unit >= pow_u64(r.ell, r.precision_digits) {
                    return Err(D::Error::custom("unit exceeds l^precision_digits"));
                }
                if v.checked_add(r.precision_digits as i64).is_none() {
                    return Err(D::Error::custom("valuation out of range"));
                }
                Ok(PadicNum::new(r.ell, v, r.unit, r.precision_digits))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 5, 2).unwrap().unit(), 1);
        assert_eq!(teichmuller(2, 5, 2).unwrap().unit(), 7);
        assert_eq!(teichmuller(2, 3, 2).unwrap().unit(), 8);
        assert_eq!(teichmuller(5, 5, 2), Err(PadicError::NotUnit));
    }

    #[test]
    fn unit_decompose_examples() {
        let one = PadicNum::from_int(1, 5, 2);
        let (w, b) = one.unit_decompose().unwrap();
        assert_eq!((w.unit(), b.unit()), (1, 1));
        let (w, b) = PadicNum::from_int(2, 5, 2).unit_decompose().unwrap();
        assert_eq!((w.unit(), b.unit()), (7, 11));
        let (w, b) = PadicNum::from_int(7, 5, 2).unit_decompose().unwrap();
        assert_eq!((w.unit(), b.unit()), (7, 1));
        assert_eq!(PadicNum::from_int(10, 5, 2).unit_decompose(), Err(PadicError::NotUnit));
    }

    #[test]
    fn one_unit_pow_examples() {
        let u = PadicNum::from_int(6, 5, 2);
        let zero = PadicNum::from_int(0, 5, 2);
        assert_eq!(one_unit_pow(&u, &zero).unwrap().unit(), 1);
        let two = PadicNum::from_int(2, 5, 2);
        let r = one_unit_pow(&u, &two).unwrap();
        assert_eq!((r.unit(), r.digits()), (11, 2));
        let half = PadicNum::from_rational(&q(1, 2), 5, 2);
        let r = one_unit_pow(&u, &half).unwrap();
        assert_eq!((r.unit(), r.digits()), (16, 2));
        assert_eq!(one_unit_pow(&PadicNum::from_int(2, 5, 2), &two), Err(PadicError::NotOneUnit));
        let fifth = PadicNum::from_rational(&q(1, 5), 5, 2);
        assert_eq!(one_unit_pow(&u, &fifth), Err(PadicError::ExponentNotIntegral));
    }

    #[test]
    fn angle_repr_examples() {
        assert_eq!(angle_repr(&PadicNum::zero(5), 3).unwrap(), 0);
        assert_eq!(angle_repr(&PadicNum::from_int(-1, 5, 4), 2).unwrap(), 24);
        let third = PadicNum::from_rational(&q(1, 3), 5, 4);
        assert_eq!(angle_repr(&third, 1).unwrap(), 2);
        let inv = PadicNum::from_rational(&q(1, 5), 5, 4);
        assert_eq!(angle_repr(&inv, 1), Err(PadicError::NotIntegral));
        // mod an auxiliary modulus coprime to l
        assert_eq!(angle_repr_rational(&q(1, 5), 3).unwrap(), 2);
    }

    #[test]
    fn addition_tracks_precision() {
        // 1 + O(5^3) plus 5 + O(5^2) is known only mod 5^2
        let a = PadicNum::from_int(1, 5, 3);
        let b = PadicNum::new(5, 1, 1, 1);
        let s = &a + &b;
        assert_eq!(s.absolute_precision(), 2);
        assert_eq!(s.unit(), 6);
        // cancellation leaves a zero that remembers its precision
        let z = &a - &a;
        assert!(z.is_zero() && !z.is_exact_zero());
        assert_eq!(z.absolute_precision(), 3);
    }

    #[test]
    fn negative_valuation_roundtrip() {
        let x = PadicNum::from_rational(&q(4, 5), 5, 4);
        assert_eq!(x.valuation(), -1);
        assert_eq!(x.to_rational(), q(4, 5));
        let y = PadicNum::from_rational(&q(-2, 5), 5, 4);
        let back = &(&y * &PadicNum::from_int(5, 5, 4)) + &PadicNum::from_int(2, 5, 4);
        assert!(back.is_zero());
    }

    #[test]
    fn json_record() {
        let x = PadicNum::from_rational(&q(1, 3), 5, 2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"ell":5,"valuation":0,"unit":17,"precision_digits":2}"#);
        let back: PadicNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let z: PadicNum = serde_json::from_str(&serde_json::to_string(&PadicNum::zero(3)).unwrap()).unwrap();
        assert!(z.is_exact_zero());
        assert!(serde_json::from_str::<PadicNum>(r#"{"ell":4,"valuation":0,"unit":1,"precision_digits":1}"#).is_err());
    }
}
