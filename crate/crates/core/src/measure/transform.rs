//! The Iwasawa (`P`) and exponential (`F`) transforms of a measure, and the
//! inverse passage from a `P`-series back to a tower.
//!
//! Both transforms are computed as exact Riemann sums at the deepest level
//! `n` of the tower. For `P` this is exactly the image of the measure in the
//! group ring `Q[A]/((1+A)^{l^n} - 1)`, since `C(x, k) = 0` for `k > x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MeasureError, MeasureTower, Result};
use crate::exactq::{binomial, factorial, Rational};
use crate::padic::{pow_u64, rational_valuation};

pub type MultiIndex = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Coefficients of `A^n̄`: `∫ Π C(x_i, n_i) dμ`.
    P,
    /// Coefficients of `X^n̄`: `(Π n_i!)^{-1} ∫ Π x_i^{n_i} dμ`.
    F,
}

/// A commutative power series in `r` variables truncated at total degree
/// `degree`. Missing coefficients are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwasawaSeries {
    pub kind: SeriesKind,
    pub ell: u64,
    pub rank: usize,
    pub degree: u32,
    /// The level whose Riemann sums produced the coefficients.
    pub level: usize,
    /// The denominator exponent of the source measure.
    pub denom_exponent: i64,
    pub coeffs: BTreeMap<MultiIndex, Rational>,
}

impl IwasawaSeries {
    pub fn new(kind: SeriesKind, ell: u64, rank: usize, degree: u32) -> Self {
        IwasawaSeries { kind, ell, rank, degree, level: 0, denom_exponent: 0, coeffs: BTreeMap::new() }
    }

    /// The series of `(1+A)^a` (kind `P`), truncated at `degree`.
    pub fn p_of_point(ell: u64, point: &[u64], degree: u32) -> Self {
        let mut s = Self::new(SeriesKind::P, ell, point.len(), degree);
        for idx in multi_indices(point.len(), degree) {
            let c = idx.iter().zip(point).fold(BigInt::one(), |acc, (&k, &a)| acc * binomial(a, k as u64));
            s.set(idx, Rational::from_integer(c));
        }
        s
    }

    pub fn coeff(&self, idx: &[u32]) -> Rational {
        self.coeffs.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, idx: MultiIndex, c: Rational) {
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    /// The exponent `e` such that the coefficient at `idx` agrees with the
    /// true transform modulo `l^e`.
    pub fn coeff_precision(&self, idx: &[u32]) -> i64 {
        let base = self.level as i64 - self.denom_exponent;
        match self.kind {
            // C(x, k) mod l^n has period l^(n + floor(log_l k))
            SeriesKind::P => base - idx.iter().map(|&k| floor_log(self.ell, k)).max().unwrap_or(0),
            SeriesKind::F => {
                let f = idx.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k as u64));
                base - rational_valuation(&Rational::from_integer(f), self.ell).unwrap_or(0)
            }
        }
    }

    /// Substitutes `A_i = e^{X_i} - 1`, turning a `P`-series into an
    /// `F`-series of the same degree.
    pub fn compose_exp_minus_one(&self) -> Result<Self> {
        if self.kind != SeriesKind::P {
            return Err(MeasureError::BadSeries("expected a P-series".into()));
        }
        // (e^X - 1)^k = Σ_n k! S(n, k) X^n / n!
        let stirling = stirling2(self.degree);
        Ok(self.substitute_each(SeriesKind::F, |n, k| {
            Rational::new(factorial(k as u64) * &stirling[n as usize][k as usize], factorial(n as u64))
        }))
    }

    /// Substitutes `X_i = log(1 + A_i)`, turning an `F`-series into a
    /// `P`-series of the same degree; inverse to
    /// [`IwasawaSeries::compose_exp_minus_one`].
    pub fn compose_log_one_plus(&self) -> Result<Self> {
        if self.kind != SeriesKind::F {
            return Err(MeasureError::BadSeries("expected an F-series".into()));
        }
        // log(1+A)^j = j! Σ_k s(k, j) A^k / k!
        let stirling = stirling1(self.degree);
        Ok(self.substitute_each(SeriesKind::P, |k, j| {
            Rational::new(factorial(j as u64) * &stirling[k as usize][j as usize], factorial(k as u64))
        }))
    }

    /// Applies the same one-variable substitution `T^j ↦ Σ_{n>=j} w(n, j) T^n`
    /// in every coordinate, one axis at a time. Degrees only grow, so the
    /// truncation at total degree `degree` is respected.
    fn substitute_each(&self, kind: SeriesKind, w: impl Fn(u32, u32) -> Rational) -> Self {
        let d = self.degree;
        let weights: Vec<Vec<Rational>> = (0..=d).map(|n| (0..=n).map(|j| w(n, j)).collect()).collect();
        let mut coeffs = self.coeffs.clone();
        for axis in 0..self.rank {
            let mut next: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
            for (idx, c) in &coeffs {
                let used: u32 = idx.iter().sum();
                let j = idx[axis];
                for n in j..=j + (d - used) {
                    let wt = &weights[n as usize][j as usize];
                    if wt.is_zero() {
                        continue;
                    }
                    let mut target = idx.clone();
                    target[axis] = n;
                    *next.entry(target).or_insert_with(Rational::zero) += wt * c;
                }
            }
            next.retain(|_, c| !c.is_zero());
            coeffs = next;
        }
        Self { kind, coeffs, ..self.clone() }
    }

    /// For an `F`-series `F(X_1..X_r)`, returns `F(L_1, ..., L_r)` with
    /// `L_j = Σ_i m[i][j] X_i`.
    pub fn substitute_linear(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        let r = self.rank;
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(MeasureError::RankMismatch { expected: r, got: matrix.len() });
        }
        let d = self.degree;
        let linear: Vec<Poly> = (0..r)
            .map(|j| {
                let mut p = Poly::new();
                for (i, row) in matrix.iter().enumerate() {
                    let mut e = vec![0; r];
                    e[i] = 1;
                    add_term(&mut p, e, Rational::from_integer(row[j].into()));
                }
                p
            })
            .collect();
        // powers L_j^k for k <= d
        let powers: Vec<Vec<Poly>> = linear
            .iter()
            .map(|l| {
                let mut v = vec![Poly::from([(vec![0; r], Rational::one())])];
                for k in 1..=d as usize {
                    let next = poly_mul(&v[k - 1], l, d);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::new();
        for (idx, c) in &self.coeffs {
            let mut term = Poly::from([(vec![0; r], c.clone())]);
            for (j, &k) in idx.iter().enumerate() {
                term = poly_mul(&term, &powers[j][k as usize], d);
            }
            for (e, v) in term {
                add_term(&mut acc, e, v);
            }
        }
        Ok(Self { coeffs: acc, ..self.clone() })
    }

    /// The first multi-index where two series differ by more than the
    /// combined coefficient precision allows.
    pub fn first_discrepancy(&self, other: &Self, exact: bool) -> Option<MultiIndex> {
        multi_indices(self.rank, self.degree.min(other.degree)).into_iter().find(|idx| {
            let diff = self.coeff(idx) - other.coeff(idx);
            if diff.is_zero() {
                return false;
            }
            if exact {
                return true;
            }
            let need = self.coeff_precision(idx).min(other.coeff_precision(idx));
            rational_valuation(&diff, self.ell).is_some_and(|v| v < need)
        })
    }
}

type Poly = BTreeMap<MultiIndex, Rational>;

fn add_term(p: &mut Poly, e: MultiIndex, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(e.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

fn poly_mul(a: &Poly, b: &Poly, degree: u32) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: MultiIndex = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() <= degree {
                add_term(&mut out, e, ca * cb);
            }
        }
    }
    out
}

fn floor_log(ell: u64, k: u32) -> i64 {
    let mut e = 0;
    let mut p = ell;
    while p <= k as u64 {
        p *= ell;
        e += 1;
    }
    e
}

/// `S(n, k)` for `n, k <= d`.
fn stirling2(d: u32) -> Vec<Vec<BigInt>> {
    let d = d as usize;
    let mut s = vec![vec![BigInt::zero(); d + 1]; d + 1];
    s[0][0] = BigInt::one();
    for n in 1..=d {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] + BigInt::from(k) * &s[n - 1][k];
        }
    }
    s
}

/// Signed `s(n, k)` for `n, k <= d`.
fn stirling1(d: u32) -> Vec<Vec<BigInt>> {
    let d = d as usize;
    let mut s = vec![vec![BigInt::zero(); d + 1]; d + 1];
    s[0][0] = BigInt::one();
    for n in 1..=d {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] - BigInt::from(n - 1) * &s[n - 1][k];
        }
    }
    s
}

/// All multi-indices of length `rank` with total degree at most `degree`,
/// in lexicographic order.
pub fn multi_indices(rank: usize, degree: u32) -> Vec<MultiIndex> {
    fn go(rank: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == rank {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            go(rank, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, degree, &mut Vec::new(), &mut out);
    out
}

/// Top-level values as integer numerators over a common denominator.
fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nums = values.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    (nums, den)
}

fn transform(tower: &MeasureTower, degree: u32, kind: SeriesKind) -> IwasawaSeries {
    let n = tower.depth();
    let r = tower.rank();
    let ell = tower.ell();
    let side = pow_u64(ell, n as u32);
    let d = degree as usize;
    // table[x][k] = C(x, k) or x^k
    let table: Vec<Vec<BigInt>> = (0..side)
        .map(|x| {
            (0..=d)
                .map(|k| match kind {
                    SeriesKind::P => binomial(x, k as u64),
                    SeriesKind::F => BigInt::from(x).pow(k as u32),
                })
                .collect()
        })
        .collect();
    let (nums, den) = common_denominator(tower.level(n));
    let indices = multi_indices(r, degree);
    let mut sums = vec![BigInt::zero(); indices.len()];
    for (cell, num) in nums.iter().enumerate() {
        if num.is_zero() {
            continue;
        }
        let x = tower.coords(n, cell);
        for (slot, idx) in indices.iter().enumerate() {
            if kind == SeriesKind::P && idx.iter().zip(&x).any(|(&k, &xi)| k as u64 > xi) {
                continue;
            }
            let w = idx.iter().zip(&x).fold(BigInt::one(), |acc, (&k, &xi)| acc * &table[xi as usize][k as usize]);
            sums[slot] += w * num;
        }
    }
    let mut series = IwasawaSeries::new(kind, ell, r, degree);
    series.level = n;
    series.denom_exponent = tower.denom_exponent();
    for (idx, s) in indices.into_iter().zip(sums) {
        let scale = match kind {
            SeriesKind::P => den.clone(),
            SeriesKind::F => idx.iter().fold(den.clone(), |acc, &k| acc * factorial(k as u64)),
        };
        series.set(idx, Rational::new(s, scale));
    }
    series
}

/// `P(μ)`, truncated at total degree `degree`.
pub fn p_transform(tower: &MeasureTower, degree: u32) -> IwasawaSeries {
    transform(tower, degree, SeriesKind::P)
}

/// `F(μ)`, truncated at total degree `degree`.
pub fn f_transform(tower: &MeasureTower, degree: u32) -> IwasawaSeries {
    transform(tower, degree, SeriesKind::F)
}

/// Recovers a tower of the given depth from a `P`-series: each monomial is
/// rewritten in powers of `B = 1 + A`, and the exponents of `B` are folded
/// modulo `l^depth`, i.e. the series is reduced into the group ring
/// `Q[(Z/l^depth)^r]`.
pub fn measure_from_p_series(series: &IwasawaSeries, depth: usize, bound: Option<i64>) -> Result<MeasureTower> {
    if series.kind != SeriesKind::P {
        return Err(MeasureError::BadSeries("expected a P-series".into()));
    }
    if !(1..=3).contains(&series.rank) {
        return Err(MeasureError::BadRank(series.rank));
    }
    if series.coeffs.keys().any(|k| k.len() != series.rank) {
        return Err(MeasureError::BadSeries("multi-index length differs from rank".into()));
    }
    let ell = series.ell;
    let r = series.rank;
    let size = super::cell_count(ell, r, depth)? as usize;
    let side = pow_u64(ell, depth as u32);
    let mut top = vec![Rational::zero(); size];
    for (k, c) in &series.coeffs {
        // A^k = Σ_j (-1)^(k-j) C(k, j) B^j in each coordinate
        let mut cells: Vec<(Vec<u64>, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for &ki in k {
            let mut next = Vec::new();
            for (pos, w) in &cells {
                for j in 0..=ki {
                    let mut b = binomial(ki as u64, j as u64);
                    if (ki - j) % 2 == 1 {
                        b = -b;
                    }
                    let mut p = pos.clone();
                    p.push(j as u64 % side);
                    next.push((p, w * b));
                }
            }
            cells = next;
        }
        for (pos, w) in cells {
            top[super::index_of(ell, depth, &pos)] += c * Rational::from_integer(w);
        }
    }
    let shell = MeasureTower::from_top_level(ell, r, depth, top)?;
    MeasureTower::from_levels_bounded(ell, r, shell.levels().to_vec(), bound)
}
