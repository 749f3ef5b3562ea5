//! Bounded measures on `(Z_l)^r`, stored as towers of coset-value tables.
//!
//! Level `n` of a tower holds one exact rational per coset of
//! `l^n (Z_l)^r`, laid out with the first coordinate varying fastest. The
//! tables are tied together by the distribution relation: each level-`n`
//! value equals the sum of the `l^r` level-`(n+1)` values above it.

mod congruence;
mod file;
mod integrate;
mod synthetic;
mod transform;

pub use congruence::{congruence_check, congruence_check_units, CongruenceReport};
pub use file::TowerFile;
pub use integrate::{
    integrate, mellin_multi, word_coefficient, CoordFactor, Integral, Integrand, Term, WordCoefficient,
};
pub use synthetic::synthetic_tower;
pub use transform::{f_transform, measure_from_p_series, p_transform, IwasawaSeries, MultiIndex, SeriesKind};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactq::{int, rat, Rational};
use crate::padic::{self, check_prime, inv_mod, pow_u64, rational_valuation, PadicError};

/// Upper bound on the number of cells in a single level.
pub const MAX_CELLS: u64 = 10_000_000;

/// Selects cells by their coordinates.
type CellFilter = dyn Fn(&[u64]) -> bool;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("rank must be between 1 and 3, got {0}")]
    BadRank(usize),
    #[error("level {level} has {got} cells, expected {expected}")]
    BadShape { level: usize, got: usize, expected: u64 },
    #[error("tower too large: l^(r*n) exceeds {MAX_CELLS} cells")]
    TooLarge,
    #[error("not a distribution: cell {cell:?} at level {level}")]
    NotDistribution { level: usize, cell: Vec<u64> },
    #[error("not bounded: value with valuation {valuation} exceeds declared bound l^-{bound}")]
    NotBounded { valuation: i64, bound: i64 },
    #[error("{0} is not a unit")]
    NotUnit(i64),
    #[error("region not expressible at depth {depth}")]
    RegionTooDeep { depth: usize },
    #[error("level {level} exceeds tower depth {depth}")]
    LevelTooDeep { level: usize, depth: usize },
    #[error("integrand undefined on region")]
    IntegrandUndefined,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("hypotheses not met: {0}")]
    Hypotheses(String),
    #[error("inconsistent series: {0}")]
    BadSeries(String),
    #[error("malformed tower file: {0}")]
    File(String),
}

pub type Result<T> = std::result::Result<T, MeasureError>;

/// A bounded `Q_l`-valued measure on `(Z_l)^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureTower {
    ell: u64,
    rank: usize,
    levels: Vec<Vec<Rational>>,
    denom_exponent: i64,
}

/// A compact-open region of `(Z_l)^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Full,
    /// `(Z_l^×)^r`
    Units,
    /// A union of level-`level` cosets, given by representatives.
    Cosets {
        level: usize,
        cells: Vec<Vec<u64>>,
    },
}

impl MeasureTower {
    /// Validates the distribution relation and computes the denominator
    /// exponent `d`.
    pub fn from_levels(ell: u64, rank: usize, levels: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_levels_bounded(ell, rank, levels, None)
    }

    /// As [`MeasureTower::from_levels`], additionally rejecting any value
    /// outside `l^-bound Z_l`.
    pub fn from_levels_bounded(ell: u64, rank: usize, levels: Vec<Vec<Rational>>, bound: Option<i64>) -> Result<Self> {
        check_prime(ell)?;
        if !(1..=3).contains(&rank) {
            return Err(MeasureError::BadRank(rank));
        }
        if levels.is_empty() {
            return Err(MeasureError::BadShape { level: 0, got: 0, expected: 1 });
        }
        for (n, table) in levels.iter().enumerate() {
            let expected = cell_count(ell, rank, n)?;
            if table.len() as u64 != expected {
                return Err(MeasureError::BadShape { level: n, got: table.len(), expected });
            }
        }
        let mut tower = MeasureTower { ell, rank, levels, denom_exponent: 0 };
        for n in 0..tower.depth() {
            let sums = tower.coarsen(n + 1);
            if let Some(i) = (0..sums.len()).find(|&i| sums[i] != tower.levels[n][i]) {
                return Err(MeasureError::NotDistribution { level: n, cell: tower.coords(n, i) });
            }
        }
        let min_val = tower.levels.iter().flatten().filter_map(|q| rational_valuation(q, ell)).min().unwrap_or(0);
        if let Some(b) = bound {
            if min_val < -b {
                return Err(MeasureError::NotBounded { valuation: min_val, bound: b });
            }
        }
        tower.denom_exponent = (-min_val).max(0);
        Ok(tower)
    }

    /// Builds a tower from its deepest level; coarser levels are sums.
    pub fn from_top_level(ell: u64, rank: usize, depth: usize, top: Vec<Rational>) -> Result<Self> {
        check_prime(ell)?;
        if !(1..=3).contains(&rank) {
            return Err(MeasureError::BadRank(rank));
        }
        let expected = cell_count(ell, rank, depth)?;
        if top.len() as u64 != expected {
            return Err(MeasureError::BadShape { level: depth, got: top.len(), expected });
        }
        let mut levels = vec![Vec::new(); depth + 1];
        levels[depth] = top;
        let mut tower = MeasureTower { ell, rank, levels, denom_exponent: 0 };
        for n in (0..depth).rev() {
            tower.levels[n] = tower.coarsen(n + 1);
        }
        tower.denom_exponent =
            tower.levels.iter().flatten().filter_map(|q| rational_valuation(q, ell)).min().map_or(0, |v| (-v).max(0));
        Ok(tower)
    }

    /// The point mass at `a`.
    pub fn dirac(ell: u64, point: &[i64], depth: usize) -> Result<Self> {
        let rank = point.len();
        check_prime(ell)?;
        if !(1..=3).contains(&rank) {
            return Err(MeasureError::BadRank(rank));
        }
        let size = cell_count(ell, rank, depth)? as usize;
        let m = pow_u64(ell, depth as u32) as i64;
        let coords: Vec<u64> = point.iter().map(|&a| a.rem_euclid(m) as u64).collect();
        let mut top = vec![Rational::zero(); size];
        let idx = index_of(ell, depth, &coords);
        top[idx] = Rational::one();
        Self::from_top_level(ell, rank, depth, top)
    }

    pub fn zero(ell: u64, rank: usize, depth: usize) -> Result<Self> {
        let size = cell_count(ell, rank, depth)? as usize;
        Self::from_top_level(ell, rank, depth, vec![Rational::zero(); size])
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Deepest stored level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Smallest `d >= 0` with every value in `l^-d Z_l`.
    pub fn denom_exponent(&self) -> i64 {
        self.denom_exponent
    }

    pub fn level(&self, n: usize) -> &[Rational] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<Rational>] {
        &self.levels
    }

    pub fn total_mass(&self) -> &Rational {
        &self.levels[0][0]
    }

    /// Value on the coset `coords + l^n (Z_l)^r`.
    pub fn value(&self, n: usize, coords: &[u64]) -> &Rational {
        &self.levels[n][index_of(self.ell, n, coords)]
    }

    /// Coordinates in `[0, l^n)^r` of the cell with flat index `idx`.
    pub fn coords(&self, n: usize, idx: usize) -> Vec<u64> {
        coords_of(self.ell, self.rank, n, idx)
    }

    /// Sums level `n` down to level `n - 1`.
    fn coarsen(&self, n: usize) -> Vec<Rational> {
        let side = pow_u64(self.ell, n as u32);
        let coarse_side = side / self.ell;
        let mut out = vec![Rational::zero(); pow_u64(coarse_side, self.rank as u32) as usize];
        for (i, v) in self.levels[n].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut rest = i as u64;
            let mut j = 0u64;
            let mut stride = 1u64;
            for _ in 0..self.rank {
                j += (rest % side % coarse_side) * stride;
                rest /= side;
                stride *= coarse_side;
            }
            out[j as usize] += v;
        }
        out
    }

    /// Keeps only the levels `0..=depth`.
    pub fn truncate(&self, depth: usize) -> Self {
        let depth = depth.min(self.depth());
        Self::from_top_level(self.ell, self.rank, depth, self.levels[depth].clone())
            .expect("coarser levels of a valid tower")
    }

    /// `φ_! μ` for the integer matrix `φ` acting on column vectors:
    /// `(φ_! μ)(U) = μ(φ^{-1} U)`. Each level is the image of the group-ring
    /// element `Σ μ(ι)[ι]` under the reduction of `φ`.
    pub fn pushforward_linear(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        let r = self.rank;
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(MeasureError::RankMismatch { expected: r, got: matrix.len() });
        }
        let n = self.depth();
        let side = pow_u64(self.ell, n as u32) as i128;
        let mut top = vec![Rational::zero(); self.levels[n].len()];
        for (i, v) in self.levels[n].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let x = self.coords(n, i);
            let image: Vec<u64> = matrix
                .iter()
                .map(|row| {
                    let s: i128 = row.iter().zip(&x).map(|(&a, &xi)| a as i128 * xi as i128).sum();
                    s.rem_euclid(side) as u64
                })
                .collect();
            top[index_of(self.ell, n, &image)] += v;
        }
        Self::from_top_level(self.ell, r, n, top)
    }

    /// `F_! μ` for `F(x_1..x_r) = (x_1 - x_2, ..., x_{r-1} - x_r, x_r)`.
    pub fn change_of_vars_f(&self) -> Self {
        let r = self.rank;
        let matrix: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            1
                        } else if j == i + 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        self.pushforward_linear(&matrix).expect("square matrix of matching rank")
    }

    /// The measure `V ↦ μ(V ∩ region)`.
    pub fn restrict(&self, region: &Region) -> Result<Self> {
        let keep: Box<CellFilter> = match region {
            Region::Full => return Ok(self.clone()),
            Region::Units => {
                if self.depth() < 1 {
                    return Err(MeasureError::RegionTooDeep { depth: self.depth() });
                }
                let ell = self.ell;
                Box::new(move |c: &[u64]| c.iter().all(|x| x % ell != 0))
            }
            Region::Cosets { level, cells } => {
                if *level > self.depth() {
                    return Err(MeasureError::RegionTooDeep { depth: self.depth() });
                }
                let m = pow_u64(self.ell, *level as u32);
                let set: std::collections::HashSet<Vec<u64>> =
                    cells.iter().map(|c| c.iter().map(|x| x % m).collect()).collect();
                if cells.iter().any(|c| c.len() != self.rank) {
                    return Err(MeasureError::RankMismatch {
                        expected: self.rank,
                        got: cells.first().map_or(0, |c| c.len()),
                    });
                }
                Box::new(move |c: &[u64]| set.contains(&c.iter().map(|x| x % m).collect::<Vec<_>>()))
            }
        };
        let n = self.depth();
        let top = self.levels[n]
            .iter()
            .enumerate()
            .map(|(i, v)| if keep(&self.coords(n, i)) { v.clone() } else { Rational::zero() })
            .collect();
        Self::from_top_level(self.ell, self.rank, n, top)
    }

    /// `m(n̄)^! μ`: the pullback along `t ↦ (l^{n_1} t_1, ..., l^{n_r} t_r)`,
    /// `(m^! μ)(V) = μ(m(V))`. The depth drops by `max n_i`.
    pub fn pullback_scaling(&self, shifts: &[u32]) -> Result<Self> {
        if shifts.len() != self.rank {
            return Err(MeasureError::RankMismatch { expected: self.rank, got: shifts.len() });
        }
        let top_shift = *shifts.iter().max().unwrap() as usize;
        if top_shift > self.depth() {
            return Err(MeasureError::RegionTooDeep { depth: self.depth() });
        }
        let out_depth = self.depth() - top_shift;
        let src = self.depth();
        let side_out = pow_u64(self.ell, out_depth as u32);
        let mut top = vec![Rational::zero(); cell_count(self.ell, self.rank, out_depth)? as usize];
        // a source cell y lies in m(ι + l^n Z^r) iff l^{n_i} | y_i and
        // y_i / l^{n_i} ≡ ι_i mod l^n for every coordinate
        for (i, v) in self.levels[src].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let y = self.coords(src, i);
            let mut target = Vec::with_capacity(self.rank);
            let mut inside = true;
            for (yi, &s) in y.iter().zip(shifts) {
                let p = pow_u64(self.ell, s);
                if yi % p != 0 {
                    inside = false;
                    break;
                }
                target.push((yi / p) % side_out);
            }
            if inside {
                top[index_of(self.ell, out_depth, &target)] += v;
            }
        }
        Self::from_top_level(self.ell, self.rank, out_depth, top)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell || self.rank != other.rank {
            return Err(MeasureError::RankMismatch { expected: self.rank, got: other.rank });
        }
        let n = self.depth().min(other.depth());
        let top = self.levels[n].iter().zip(&other.levels[n]).map(|(a, b)| a + b).collect();
        Self::from_top_level(self.ell, self.rank, n, top)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let n = self.depth();
        let top = self.levels[n].iter().map(|v| v * c).collect();
        Self::from_top_level(self.ell, self.rank, n, top).expect("scaled tower")
    }

    /// The product measure `μ ⊗ ν` on `(Z_l)^(r+s)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let rank = self.rank + other.rank;
        if self.ell != other.ell {
            return Err(MeasureError::Padic(PadicError::BadPrime(other.ell)));
        }
        if rank > 3 {
            return Err(MeasureError::BadRank(rank));
        }
        let n = self.depth().min(other.depth());
        let a = self.truncate(n);
        let b = other.truncate(n);
        let mut top = Vec::with_capacity(a.levels[n].len() * b.levels[n].len());
        for vb in &b.levels[n] {
            for va in &a.levels[n] {
                top.push(va * vb);
            }
        }
        Self::from_top_level(self.ell, rank, n, top)
    }
}

/// `l^(r n)`, checked against [`MAX_CELLS`].
pub fn cell_count(ell: u64, rank: usize, n: usize) -> Result<u64> {
    let e = (rank * n) as u32;
    match ell.checked_pow(e) {
        Some(c) if c <= MAX_CELLS => Ok(c),
        _ => Err(MeasureError::TooLarge),
    }
}

pub(crate) fn index_of(ell: u64, n: usize, coords: &[u64]) -> usize {
    let side = pow_u64(ell, n as u32);
    coords.iter().rev().fold(0u64, |acc, &c| acc * side + c) as usize
}

pub(crate) fn coords_of(ell: u64, rank: usize, n: usize, idx: usize) -> Vec<u64> {
    let side = pow_u64(ell, n as u32);
    let mut rest = idx as u64;
    (0..rank)
        .map(|_| {
            let c = rest % side;
            rest /= side;
            c
        })
        .collect()
}

/// The regularized Bernoulli measure `E_{1,c}` on `Z_l`:
/// `E^(n)(i) = i/l^n - c<c^{-1} i>/l^n + (c-1)/2`.
pub fn bernoulli_measure(c: i64, ell: u64, depth: usize) -> Result<MeasureTower> {
    check_prime(ell)?;
    if c.rem_euclid(ell as i64) == 0 {
        return Err(MeasureError::NotUnit(c));
    }
    let mut levels = Vec::with_capacity(depth + 1);
    let half = rat(c - 1, 2);
    for n in 0..=depth {
        let m = pow_u64(ell, n as u32);
        cell_count(ell, 1, n)?;
        let cinv = inv_mod(c as i128, m).unwrap_or(0);
        let denom = BigInt::from(m);
        let table = (0..m)
            .map(|i| {
                let bracket = padic::mul_mod(cinv, i, m.max(1)) as i128;
                let num = BigInt::from(i as i128 - c as i128 * bracket);
                Rational::new(num, denom.clone()) + &half
            })
            .collect();
        levels.push(table);
    }
    MeasureTower::from_levels(ell, 1, levels)
}

/// The moment `∫ x^k dE_{1,c} = (1 - c^{k+1}) B_{k+1} / (k+1)`.
pub fn bernoulli_measure_moment(c: i64, k: usize) -> Rational {
    let b = crate::exactq::bernoulli_number(k + 1);
    (int(1) - crate::exactq::pow_int(c, k as i64 + 1)) * b / int(k as i64 + 1)
}
