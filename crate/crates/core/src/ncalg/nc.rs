//! Truncated non-commutative power series in the letters `X`, `Y`.
//!
//! A word of length `n` is stored at index `2^n - 1 + bits`, where `bits`
//! spells the word with the first letter in the highest bit, `X = 0` and
//! `Y = 1`. All words up to the truncation degree are stored densely.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::reduced::ReducedSeries;
use super::series::Series1;
use crate::exactq::{format_rational, Rational};

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    pub len: usize,
    pub bits: u64,
}

impl Word {
    pub fn index(&self) -> usize {
        (1usize << self.len) - 1 + self.bits as usize
    }

    pub fn from_index(idx: usize) -> Self {
        let len = (usize::BITS - (idx + 1).leading_zeros() - 1) as usize;
        Word { len, bits: (idx + 1 - (1 << len)) as u64 }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word { len: self.len + other.len, bits: (self.bits << other.len) | other.bits }
    }

    pub fn letter(&self, i: usize) -> char {
        if (self.bits >> (self.len - 1 - i)) & 1 == 1 {
            'Y'
        } else {
            'X'
        }
    }

    pub fn count_y(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Parses a word such as `"XYX"` (the empty string is the empty word).
    pub fn parse(s: &str) -> Option<Word> {
        if s.len() > MAX_DEGREE {
            return None;
        }
        let mut bits = 0;
        for ch in s.chars() {
            bits = (bits << 1)
                | match ch {
                    'X' => 0,
                    'Y' => 1,
                    _ => return None,
                };
        }
        Some(Word { len: s.len(), bits })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("1");
        }
        for i in 0..self.len {
            write!(f, "{}", self.letter(i))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct NcSeries {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl NcSeries {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        NcSeries { degree, coeffs: vec![Rational::zero(); (1 << (degree + 1)) - 1] }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, Word { len: 0, bits: 0 }, Rational::one())
    }

    pub fn monomial(degree: usize, w: Word, c: Rational) -> Self {
        let mut s = Self::zero(degree);
        if w.len <= degree {
            s.coeffs[w.index()] = c;
        }
        s
    }

    pub fn x(degree: usize) -> Self {
        Self::monomial(degree, Word { len: 1, bits: 0 }, Rational::one())
    }

    pub fn y(degree: usize) -> Self {
        Self::monomial(degree, Word { len: 1, bits: 1 }, Rational::one())
    }

    /// `Σ c_n X^n`.
    pub fn from_x_series(degree: usize, s: &Series1) -> Self {
        let mut out = Self::zero(degree);
        for (n, c) in s.coeffs.iter().enumerate().take(degree + 1) {
            out.coeffs[Word { len: n, bits: 0 }.index()] = c.clone();
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, w: Word) -> Rational {
        if w.len > self.degree {
            return Rational::zero();
        }
        self.coeffs[w.index()].clone()
    }

    pub fn set(&mut self, w: Word, c: Rational) {
        if w.len <= self.degree {
            self.coeffs[w.index()] = c;
        }
    }

    /// Nonzero terms in index order (by length, then lexicographically).
    pub fn terms(&self) -> impl Iterator<Item = (Word, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (Word::from_index(i), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        let n = (1 << (d + 1)) - 1;
        NcSeries { degree: d, coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NcSeries { degree: self.degree, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        // fraction-free: convolve integer numerators over common denominators
        let (da, left) = self.numerators(d);
        let (db, right) = other.numerators(d);
        let mut acc = vec![BigInt::zero(); (1 << (d + 1)) - 1];
        for (wa, na) in &left {
            // terms come in index order, hence sorted by length
            for (wb, nb) in right.iter().take_while(|(wb, _)| wa.len + wb.len <= d) {
                acc[wa.concat(wb).index()] += na * nb;
            }
        }
        let den = da * db;
        let coeffs = acc.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        NcSeries { degree: d, coeffs }
    }

    /// A common denominator `D` and the nonzero terms `(w, D·c_w)` up to
    /// length `d`.
    fn numerators(&self, d: usize) -> (BigInt, Vec<(Word, BigInt)>) {
        let den = self.terms().filter(|(w, _)| w.len <= d).fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms =
            self.terms().filter(|(w, _)| w.len <= d).map(|(w, c)| (w, c.numer() * (&den / c.denom()))).collect();
        (den, terms)
    }

    /// The commutator `[A, B] = AB - BA`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn exp(&self) -> Result<Self, NonzeroConstant> {
        if !self.constant_term().is_zero() {
            return Err(NonzeroConstant);
        }
        let d = self.degree;
        let mut term = Self::one(d);
        let mut acc = Self::one(d);
        for k in 1..=d as i64 {
            term = term.mul(self).scale(&Rational::new(1.into(), k.into()));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `log(S)` for `S` with constant term 1.
    pub fn log(&self) -> Result<Self, NonzeroConstant> {
        if !self.constant_term().is_one() {
            return Err(NonzeroConstant);
        }
        let d = self.degree;
        let t = self.sub(&Self::one(d));
        let mut power = Self::one(d);
        let mut acc = Self::zero(d);
        for k in 1..=d as i64 {
            power = power.mul(&t);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), k.into())));
        }
        Ok(acc)
    }

    /// Drops every word of length above `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        let d = degree.min(self.degree);
        NcSeries { degree: d, coeffs: self.coeffs[..(1 << (d + 1)) - 1].to_vec() }
    }

    /// The image modulo `I'_2`: only `X^n` and `Y X^n` survive.
    pub fn reduce_mod_i2(&self) -> ReducedSeries {
        let d = self.degree;
        let mut r = ReducedSeries::zero(d);
        for n in 0..=d {
            r.a.coeffs[n] = self.coeff(Word { len: n, bits: 0 });
            if n < d {
                r.b.coeffs[n] = self.coeff(Word { len: n + 1, bits: 1 << n });
            }
        }
        r
    }

    /// The first word (in index order) where the two series differ.
    pub fn first_discrepancy(&self, other: &Self) -> Option<Word> {
        let d = self.degree.min(other.degree);
        (0..(1 << (d + 1)) - 1).find(|&i| self.coeffs[i] != other.coeffs[i]).map(Word::from_index)
    }
}

impl fmt::Debug for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(w, c)| format!("{}·{}", format_rational(c), w)).collect();
        if terms.is_empty() {
            write!(f, "0 + O(deg {})", self.degree + 1)
        } else {
            write!(f, "{} + O(deg {})", terms.join(" + "), self.degree + 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("series has a nonzero constant term")]
pub struct NonzeroConstant;

/// `A ∘ B = log(exp(A) exp(B))`, truncated at the common degree.
pub fn bch(a: &NcSeries, b: &NcSeries) -> Result<NcSeries, NonzeroConstant> {
    a.exp()?.mul(&b.exp()?).log()
}

/// `[Y, X^{(n)}] = [...[Y, X], ..., X]` with `n` brackets.
pub fn iterated_bracket(degree: usize, n: usize) -> NcSeries {
    let x = NcSeries::x(degree);
    (0..n).fold(NcSeries::y(degree), |acc, _| acc.bracket(&x))
}
