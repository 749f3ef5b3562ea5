//! Riemann sums against measure towers.
//!
//! Every factor of the supported integrands is 1-Lipschitz and bounded by 1
//! on its domain, so on a level-`n` cell the integrand varies by at most
//! `l^-n`. Against values in `l^-d Z_l` the level-`n` sum therefore agrees
//! with the integral modulo `l^(n-d)`, shifted by the valuation of any
//! non-integral coefficient.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MeasureError, MeasureTower, Region, Result};
use crate::exactq::{factorial, Rational};
use crate::padic::{self, max_digits, rational_valuation, PadicNum};

/// A factor depending on a single coordinate `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordFactor {
    /// `x^k`
    Pow(u32),
    /// `ω(x)^β`, units only.
    Omega(i64),
    /// `[x]^s` with `s ∈ Z_l`, units only.
    Bracket(PadicNum),
    /// `x^-1`, units only.
    Inv,
}

impl CoordFactor {
    fn needs_unit(&self) -> bool {
        !matches!(self, CoordFactor::Pow(_))
    }
}

/// `coeff · Π_i Π factors[i](x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Vec<CoordFactor>>,
}

/// A finite sum of [`Term`]s on `(Z_l)^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integrand {
    pub rank: usize,
    pub terms: Vec<Term>,
}

impl Integrand {
    pub fn constant(rank: usize, c: Rational) -> Self {
        Integrand { rank, terms: vec![Term { coeff: c, factors: vec![Vec::new(); rank] }] }
    }

    /// A single term with the given per-coordinate factors.
    pub fn monomial(factors: Vec<Vec<CoordFactor>>) -> Self {
        Integrand { rank: factors.len(), terms: vec![Term { coeff: Rational::one(), factors }] }
    }

    /// Whether the integrand uses only integer powers and rational
    /// coefficients, so that its Riemann sums are exact rationals.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().flat_map(|t| t.factors.iter().flatten()).all(|f| !f.needs_unit())
    }

    /// Coordinates on which some factor requires a unit.
    fn unit_coords(&self) -> Vec<bool> {
        (0..self.rank).map(|i| self.terms.iter().any(|t| t.factors[i].iter().any(CoordFactor::needs_unit))).collect()
    }

    fn min_coeff_valuation(&self, ell: u64) -> i64 {
        self.terms.iter().filter_map(|t| rational_valuation(&t.coeff, ell)).min().unwrap_or(0)
    }

    /// Largest loss of precision caused by a `[x]^s` exponent known only
    /// modulo `l^N`: the power is then known modulo `l^(N+1)`.
    fn exponent_precision(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().flatten())
            .filter_map(|f| match f {
                CoordFactor::Bracket(s) => Some(s.absolute_precision().saturating_add(1)),
                _ => None,
            })
            .min()
            .unwrap_or(i64::MAX)
    }
}

/// A Riemann sum with its guaranteed precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integral {
    /// The sum, reduced to the guaranteed absolute precision.
    pub value: PadicNum,
    /// The integral is known modulo `l^precision`.
    pub precision: i64,
    /// The exact rational Riemann sum, for polynomial integrands.
    pub riemann_sum: Option<Rational>,
    pub level: usize,
}

/// Per-prime cache of the Teichmüller lifts of `1..l`.
struct Lifts {
    omega: Vec<Option<PadicNum>>,
}

impl Lifts {
    fn new(ell: u64, digits: u32) -> Self {
        let omega = (0..ell).map(|a| if a == 0 { None } else { padic::teichmuller(a, ell, digits).ok() }).collect();
        Lifts { omega }
    }
}

fn check_region_units(tower: &MeasureTower, region: &Region, unit_coords: &[bool]) -> Result<()> {
    if !unit_coords.iter().any(|&u| u) {
        return Ok(());
    }
    match region {
        Region::Units => Ok(()),
        Region::Full => Err(MeasureError::IntegrandUndefined),
        Region::Cosets { level, cells } => {
            let ell = tower.ell();
            let ok =
                *level >= 1 && cells.iter().all(|c| c.iter().zip(unit_coords).all(|(x, &need)| !need || x % ell != 0));
            if ok {
                Ok(())
            } else {
                Err(MeasureError::IntegrandUndefined)
            }
        }
    }
}

/// `∫_region f dμ` by the level-`n` Riemann sum with canonical
/// representatives in `[0, l^n)`.
pub fn integrate(tower: &MeasureTower, f: &Integrand, region: &Region, level: usize) -> Result<Integral> {
    if f.rank != tower.rank() || f.terms.iter().any(|t| t.factors.len() != tower.rank()) {
        return Err(MeasureError::RankMismatch { expected: tower.rank(), got: f.rank });
    }
    if level > tower.depth() {
        return Err(MeasureError::LevelTooDeep { level, depth: tower.depth() });
    }
    check_region_units(tower, region, &f.unit_coords())?;
    let restricted = tower.truncate(level).restrict(region)?;
    let ell = tower.ell();
    let d = tower.denom_exponent();
    let precision = (level as i64 - d + f.min_coeff_valuation(ell).min(0)).min(f.exponent_precision());

    if f.is_polynomial() {
        let sum = polynomial_sum(&restricted, f, level);
        return Ok(Integral {
            value: PadicNum::from_rational_abs(&sum, ell, precision),
            precision,
            riemann_sum: Some(sum),
            level,
        });
    }

    // working digits: enough that every product lands beyond `precision`
    let work = ((precision + d).max(1) as u32 + 2).min(max_digits(ell));
    let lifts = Lifts::new(ell, work);
    let mut acc = PadicNum::zero(ell);
    for (i, mu) in restricted.level(level).iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let x = restricted.coords(level, i);
        let fx = evaluate(f, &x, ell, work, &lifts)?;
        acc = &acc + &(&fx * &PadicNum::from_rational(mu, ell, work));
    }
    Ok(Integral { value: acc.with_absolute_precision(precision), precision, riemann_sum: None, level })
}

fn polynomial_sum(tower: &MeasureTower, f: &Integrand, level: usize) -> Rational {
    let mut sum = Rational::zero();
    for (i, mu) in tower.level(level).iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let x = tower.coords(level, i);
        let mut fx = Rational::zero();
        for t in &f.terms {
            let mut m = BigInt::one();
            for (xi, fs) in x.iter().zip(&t.factors) {
                for fac in fs {
                    if let CoordFactor::Pow(k) = fac {
                        m *= BigInt::from(*xi).pow(*k);
                    }
                }
            }
            fx += &t.coeff * Rational::from_integer(m);
        }
        sum += fx * mu;
    }
    sum
}

fn evaluate(f: &Integrand, x: &[u64], ell: u64, work: u32, lifts: &Lifts) -> Result<PadicNum> {
    let mut total = PadicNum::zero(ell);
    for t in &f.terms {
        let mut prod = PadicNum::from_rational(&t.coeff, ell, work);
        for (&xi, fs) in x.iter().zip(&t.factors) {
            for fac in fs {
                let v = match fac {
                    CoordFactor::Pow(k) => PadicNum::from_bigint(&BigInt::from(xi).pow(*k), ell, work),
                    CoordFactor::Omega(beta) => {
                        lifts.omega[(xi % ell) as usize].as_ref().ok_or(MeasureError::IntegrandUndefined)?.pow(*beta)?
                    }
                    CoordFactor::Bracket(s) => {
                        let xv = PadicNum::from_int(xi as i64, ell, work);
                        let w = lifts.omega[(xi % ell) as usize].as_ref().ok_or(MeasureError::IntegrandUndefined)?;
                        let bracket = &xv * &w.inverse()?;
                        bracket.one_unit_pow(s)?
                    }
                    CoordFactor::Inv => PadicNum::from_int(xi as i64, ell, work).inverse()?,
                };
                prod = &prod * &v;
            }
        }
        total = &total + &prod;
    }
    Ok(total)
}

/// `∫_{(Z_l^×)^r} Π_i [t_i]^{s_i} t_i^{-1} ω(t_i)^{β_i} dμ`.
pub fn mellin_multi(tower: &MeasureTower, s: &[PadicNum], beta: &[i64], level: usize) -> Result<Integral> {
    let r = tower.rank();
    if s.len() != r || beta.len() != r {
        return Err(MeasureError::RankMismatch { expected: r, got: s.len().min(beta.len()) });
    }
    let factors = s
        .iter()
        .zip(beta)
        .map(|(si, &b)| vec![CoordFactor::Bracket(si.clone()), CoordFactor::Inv, CoordFactor::Omega(b)])
        .collect();
    integrate(tower, &Integrand::monomial(factors), &Region::Units, level)
}

/// A word coefficient `li_w` computed as an exact Riemann sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCoefficient {
    /// `(Π a_i!)^{-1}` times the level-`n` sum.
    pub riemann_sum: Rational,
    /// The sum without the factorial normalization.
    pub unnormalized: Rational,
    pub value: PadicNum,
    pub precision: i64,
    pub level: usize,
}

/// `Π_i L_i(x)^{a_i}` for `L_0 = -x_1`, `L_i = x_i - x_{i+1}`, `L_r = x_r`.
pub(crate) fn word_polynomial(word: &[u32], x: &[u64]) -> BigInt {
    let r = x.len();
    let mut acc = BigInt::one();
    for (i, &a) in word.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let lin = if i == 0 {
            -BigInt::from(x[0])
        } else if i < r {
            BigInt::from(x[i - 1]) - BigInt::from(x[i])
        } else {
            BigInt::from(x[r - 1])
        };
        acc *= lin.pow(a);
    }
    acc
}

/// `li_w = (Π a_i!)^{-1} ∫ (-x_1)^{a_0} (x_1-x_2)^{a_1} ... x_r^{a_r} dμ` for
/// the word `X^{a_0} Y X^{a_1} ... Y X^{a_r}`, given as `[a_0, ..., a_r]`.
pub fn word_coefficient(tower: &MeasureTower, word: &[u32], level: usize) -> Result<WordCoefficient> {
    let r = tower.rank();
    if word.len() != r + 1 {
        return Err(MeasureError::RankMismatch { expected: r, got: word.len().saturating_sub(1) });
    }
    if level > tower.depth() {
        return Err(MeasureError::LevelTooDeep { level, depth: tower.depth() });
    }
    let ell = tower.ell();
    let t = tower.truncate(level);
    let mut sum = Rational::zero();
    for (i, mu) in t.level(level).iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let x = t.coords(level, i);
        sum += Rational::from_integer(word_polynomial(word, &x)) * mu;
    }
    let fact = word.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as u64));
    let vfact = rational_valuation(&Rational::from_integer(fact.clone()), ell).unwrap_or(0);
    let precision = level as i64 - tower.denom_exponent() - vfact;
    let normalized = &sum / Rational::from_integer(fact);
    Ok(WordCoefficient {
        value: PadicNum::from_rational_abs(&normalized, ell, precision),
        riemann_sum: normalized,
        unnormalized: sum,
        precision,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{bernoulli_measure, MeasureTower};
    use super::*;
    use crate::exactq::{int, rat};

    #[test]
    fn total_mass_and_unit_moment() {
        let e = bernoulli_measure(2, 5, 3).unwrap();
        let one = integrate(&e, &Integrand::constant(1, int(1)), &Region::Full, 3).unwrap();
        assert_eq!(one.riemann_sum, Some(rat(1, 2)));
        let x = Integrand::monomial(vec![vec![CoordFactor::Pow(1)]]);
        let units = integrate(&e, &x, &Region::Units, 1).unwrap();
        assert_eq!(units.riemann_sum, Some(int(1)));
        assert_eq!(units.precision, 1);
    }

    #[test]
    fn mellin_examples() {
        let e = bernoulli_measure(2, 5, 4).unwrap();
        let two = PadicNum::from_int(2, 5, 10);
        let m = mellin_multi(&e, &[two], &[2], 4).unwrap();
        assert_eq!(m.value, PadicNum::from_int(1, 5, 4));
        let one = PadicNum::from_int(1, 5, 10);
        let m = mellin_multi(&e, &[one], &[1], 4).unwrap();
        let mass = e.restrict(&Region::Units).unwrap().total_mass().clone();
        assert!(m.value.congruent(&PadicNum::from_rational_abs(&mass, 5, 4), 4));
    }

    #[test]
    fn mellin_factorizes_on_products() {
        let e = bernoulli_measure(2, 5, 2).unwrap();
        let ee = e.tensor(&e).unwrap();
        let s = PadicNum::from_rational(&rat(1, 2), 5, 10);
        let one = mellin_multi(&e, std::slice::from_ref(&s), &[2], 2).unwrap();
        let two = mellin_multi(&ee, &[s.clone(), s], &[2, 2], 2).unwrap();
        assert!(two.value.congruent(&(&one.value * &one.value), 2));
    }

    #[test]
    fn unit_factor_needs_unit_region() {
        let e = bernoulli_measure(2, 5, 2).unwrap();
        let f = Integrand::monomial(vec![vec![CoordFactor::Inv]]);
        assert_eq!(integrate(&e, &f, &Region::Full, 2), Err(MeasureError::IntegrandUndefined));
        let ok = Region::Cosets { level: 1, cells: vec![vec![1], vec![2]] };
        assert!(integrate(&e, &f, &ok, 2).is_ok());
    }

    #[test]
    fn word_examples() {
        let d = MeasureTower::dirac(5, &[3], 2).unwrap();
        let w = word_coefficient(&d, &[0, 3], 2).unwrap();
        assert_eq!(w.riemann_sum, rat(27, 6));
        let w = word_coefficient(&d, &[1, 0], 2).unwrap();
        assert_eq!(w.riemann_sum, int(-3));
        let d2 = MeasureTower::dirac(5, &[7, 2], 2).unwrap();
        let w = word_coefficient(&d2, &[0, 1, 0], 2).unwrap();
        assert_eq!(w.riemann_sum, int(5));
        assert!(word_coefficient(&d2, &[0, 1], 2).is_err());
    }
}
