//! The quotient of `Q{{X, Y}}` by `I'_2`, spanned by the words `X^n` and
//! `Y X^n`. An element is `a(X) + Y·b(X)` and multiplies by
//! `(a_1 + Y b_1)(a_2 + Y b_2) = a_1 a_2 + Y (b_1 a_2 + a_1(0) b_2)`.

use num_traits::{One, Zero};

use super::series::Series1;
use crate::exactq::Rational;

/// `a(X) + Y·b(X)` truncated at total degree `degree`: `a` has degree
/// `<= degree`, `b` has degree `<= degree - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSeries {
    pub a: Series1,
    pub b: Series1,
}

impl ReducedSeries {
    pub fn zero(degree: usize) -> Self {
        ReducedSeries { a: Series1::zero(degree), b: Series1::zero(degree.saturating_sub(1)) }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.a.coeffs[0] = Rational::one();
        s
    }

    pub fn new(degree: usize, a: &Series1, b: &Series1) -> Self {
        ReducedSeries { a: a.truncate(degree), b: b.truncate(degree.saturating_sub(1)) }
    }

    /// `αX + Y·Φ(X)`.
    pub fn linear(degree: usize, alpha: &Rational, phi: &Series1) -> Self {
        let mut a = Series1::zero(degree);
        if degree >= 1 {
            a.coeffs[1] = alpha.clone();
        }
        Self::new(degree, &a, phi)
    }

    pub fn x(degree: usize) -> Self {
        Self::linear(degree, &Rational::one(), &Series1::zero(degree))
    }

    pub fn y(degree: usize) -> Self {
        Self::linear(degree, &Rational::zero(), &Series1::one(degree))
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    pub fn add(&self, other: &Self) -> Self {
        ReducedSeries { a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ReducedSeries { a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ReducedSeries { a: self.a.scale(c), b: self.b.scale(c) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.a.mul(&other.a);
        let b = self.b.mul(&other.a.truncate(self.b.degree())).add(&other.b.scale(&self.a.coeffs[0]));
        ReducedSeries { a, b }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.a.coeffs[0]
    }

    /// `exp(S)` for `S` without constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs a zero constant term");
        let d = self.degree();
        let mut term = Self::one(d);
        let mut acc = Self::one(d);
        for k in 1..=d {
            term = term.mul(self).scale(&Rational::new(1.into(), (k as i64).into()));
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(S)` for `S` with constant term 1.
    pub fn log(&self) -> Self {
        assert!(self.constant_term().is_one(), "log needs constant term 1");
        let d = self.degree();
        let t = self.sub(&Self::one(d));
        let mut power = Self::one(d);
        let mut acc = Self::zero(d);
        for k in 1..=d as i64 {
            power = power.mul(&t);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), k.into())));
        }
        acc
    }

    /// `A ∘ B = log(exp A · exp B)`.
    pub fn bch(&self, other: &Self) -> Self {
        self.exp().mul(&other.exp()).log()
    }

    /// Substitutes `X ↦ z`, `Y ↦ Y`. This is an algebra map of the quotient
    /// because `z^i Y ∈ I'_2` for `i > 0` whenever `z` has no constant term.
    pub fn substitute_x(&self, z: &Self) -> Self {
        let d = self.degree();
        let horner =
            |s: &Series1| s.coeffs.iter().rev().fold(Self::zero(d), |acc, c| acc.mul(z).add(&Self::one(d).scale(c)));
        horner(&self.a).add(&Self::y(d).mul(&horner(&self.b)))
    }

    /// `e^{-u} · self · e^{u}`.
    pub fn conjugate(&self, u: &Self) -> Self {
        u.neg().exp().mul(self).mul(&u.exp())
    }

    /// The first surviving word where `self` and `other` differ.
    pub fn first_discrepancy(&self, other: &Self) -> Option<String> {
        if let Some(n) = self.a.first_difference(&other.a) {
            return Some(word_x(n));
        }
        self.b.first_difference(&other.b).map(|n| format!("Y{}", word_x(n)))
    }
}

fn word_x(n: usize) -> String {
    match n {
        0 => String::new(),
        1 => "X".into(),
        _ => format!("X^{n}"),
    }
}

/// The closed form of Lemma 0.2.1: for `A ≡ αX + YΦ_1`, `B ≡ βX + YΦ_2`,
/// `A ∘ B ≡ (α+β)X + Y (Φ_1 E(α) e^{βX} + Φ_2 E(β)) · (α+β)X/(e^{(α+β)X} - 1)`
/// with `E(γ) = (e^{γX} - 1)/(γX)`.
pub fn bch_reduced(alpha: &Rational, phi1: &Series1, beta: &Rational, phi2: &Series1, degree: usize) -> ReducedSeries {
    let db = degree.saturating_sub(1);
    let p1 = phi1.truncate(db);
    let p2 = phi2.truncate(db);
    let first = p1.mul(&Series1::e1(db, alpha)).mul(&Series1::exp_linear(db, beta));
    let second = p2.mul(&Series1::e1(db, beta));
    let b = first.add(&second).mul(&Series1::bernoulli_gen(db, &(alpha + beta)));
    ReducedSeries::linear(degree, &(alpha + beta), &b)
}

/// `li_1..li_D` from `l` and `l_1..l_D`: `Σ li_n X^{n-1} = (Σ l_n X^{n-1}) E(l)`.
pub fn li_from_l(l: &Rational, ln: &[Rational]) -> Vec<Rational> {
    if ln.is_empty() {
        return Vec::new();
    }
    let d = ln.len() - 1;
    Series1::from_coeffs(d, ln).mul(&Series1::e1(d, l)).coeffs
}

/// Inverse of [`li_from_l`].
pub fn l_from_li(l: &Rational, li: &[Rational]) -> Vec<Rational> {
    if li.is_empty() {
        return Vec::new();
    }
    let d = li.len() - 1;
    Series1::from_coeffs(d, li).div(&Series1::e1(d, l)).coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};

    #[test]
    fn x_circ_y_and_y_circ_x() {
        let d = 10;
        let xy = ReducedSeries::x(d).bch(&ReducedSeries::y(d));
        let expect_b = Series1::bernoulli_gen(d - 1, &int(1));
        assert_eq!(xy, ReducedSeries::linear(d, &int(1), &expect_b));
        let yx = ReducedSeries::y(d).bch(&ReducedSeries::x(d));
        let expect_b = expect_b.mul(&Series1::exp_linear(d - 1, &int(1)));
        assert_eq!(yx, ReducedSeries::linear(d, &int(1), &expect_b));
    }

    #[test]
    fn closed_form_matches_reduced_bch() {
        let d = 9;
        let phi1 = Series1::from_coeffs(d, &[int(2), rat(-1, 3), int(5)]);
        let phi2 = Series1::from_coeffs(d, &[rat(1, 2), int(0), int(-4), int(1)]);
        for (alpha, beta) in [(int(3), rat(-1, 2)), (int(0), int(2)), (int(1), int(-1))] {
            let a = ReducedSeries::linear(d, &alpha, &phi1);
            let b = ReducedSeries::linear(d, &beta, &phi2);
            assert_eq!(a.bch(&b), bch_reduced(&alpha, &phi1, &beta, &phi2, d));
        }
    }

    #[test]
    fn inverse_and_powers() {
        let d = 8;
        let a = ReducedSeries::linear(d, &int(2), &Series1::from_coeffs(d, &[int(1), int(3)]));
        assert_eq!(a.bch(&a.neg()), ReducedSeries::zero(d));
        // A^α = αA in the BCH group: exp(A)^3 = exp(3A)
        let cube = a.exp().mul(&a.exp()).mul(&a.exp()).log();
        assert_eq!(cube, a.scale(&int(3)));
        assert_eq!(a.exp().log(), a);
    }

    #[test]
    fn li_l_examples() {
        let ln = vec![int(1), int(2), int(3), rat(1, 7)];
        assert_eq!(li_from_l(&int(0), &ln), ln);
        let li = li_from_l(&int(5), &ln);
        assert_eq!(li[1], int(2) + int(5) * int(1) / int(2));
        assert_eq!(l_from_li(&int(5), &li), ln);
    }
}
