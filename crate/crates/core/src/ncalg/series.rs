//! Truncated one-variable power series in `X` with rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactq::{bernoulli_number, factorial, Rational};

/// `Σ c_n X^n` for `n <= degree`; `coeffs.len() == degree + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    pub coeffs: Vec<Rational>,
}

impl Series1 {
    pub fn zero(degree: usize) -> Self {
        Series1 { coeffs: vec![Rational::zero(); degree + 1] }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(degree, Rational::one())
    }

    pub fn constant(degree: usize, c: Rational) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// From the given coefficients, padded or truncated to `degree`.
    pub fn from_coeffs(degree: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(degree);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(degree, &self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        Series1 { coeffs: (0..=d).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series1 { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `self / other` for `other` with nonzero constant term.
    pub fn div(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        let c0 = other.coeffs[0].clone();
        assert!(!c0.is_zero(), "division by a series without constant term");
        let mut q = Self::zero(d);
        for n in 0..=d {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &other.coeffs[k] * &q.coeffs[n - k];
            }
            q.coeffs[n] = acc / &c0;
        }
        q
    }

    /// `(self - self(0)) / X`, one degree lower.
    pub fn shift_down(&self) -> Self {
        Series1 { coeffs: self.coeffs[1..].to_vec() }.pad(self.degree())
    }

    /// `X · self`, truncated at the same degree.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend_from_slice(&self.coeffs[..self.degree()]);
        Series1 { coeffs }
    }

    fn pad(mut self, degree: usize) -> Self {
        self.coeffs.resize(degree + 1, Rational::zero());
        self
    }

    /// `f(γX)`.
    pub fn rescale(&self, gamma: &Rational) -> Self {
        let mut p = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &p);
            p *= gamma;
        }
        Series1 { coeffs }
    }

    /// `f(-X)`.
    pub fn negate_var(&self) -> Self {
        self.rescale(&-Rational::one())
    }

    /// `e^{γX}`.
    pub fn exp_linear(degree: usize, gamma: &Rational) -> Self {
        Self::from_fn(degree, |n| Rational::new(BigInt::one(), factorial(n as u64))).rescale(gamma)
    }

    /// `(e^{γX} - 1)/(γX) = Σ γ^n X^n / (n+1)!`, equal to 1 when `γ = 0`.
    pub fn e1(degree: usize, gamma: &Rational) -> Self {
        Self::from_fn(degree, |n| Rational::new(BigInt::one(), factorial(n as u64 + 1))).rescale(gamma)
    }

    /// `γX/(e^{γX} - 1) = Σ B_n γ^n X^n / n!`, equal to 1 when `γ = 0`.
    pub fn bernoulli_gen(degree: usize, gamma: &Rational) -> Self {
        Self::from_fn(degree, |n| bernoulli_number(n) / Rational::from_integer(factorial(n as u64))).rescale(gamma)
    }

    pub fn from_fn(degree: usize, f: impl Fn(usize) -> Rational) -> Self {
        Series1 { coeffs: (0..=degree).map(f).collect() }
    }

    /// First index where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let d = self.degree().min(other.degree());
        (0..=d).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};

    #[test]
    fn e1_times_bernoulli_gen_is_one() {
        for g in [int(1), rat(-2, 3), int(0)] {
            let p = Series1::e1(10, &g).mul(&Series1::bernoulli_gen(10, &g));
            assert_eq!(p, Series1::one(10));
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Series1::from_coeffs(6, &[int(1), int(2), rat(1, 3)]);
        let b = Series1::exp_linear(6, &int(3));
        assert_eq!(a.mul(&b).div(&b), a);
    }
}
