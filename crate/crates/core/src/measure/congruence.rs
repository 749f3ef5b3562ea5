//! Congruences between word coefficients `li_w` and `li_v` for words
//! `w = Y X^{a_1} ... Y X^{a_r}`, `v = Y X^{b_1} ... Y X^{b_r}` with
//! `a_i ≡ b_i mod (l-1) l^M`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::integrate::word_polynomial;
use super::{MeasureError, MeasureTower, Region, Result};
use crate::exactq::Rational;
use crate::padic::{pow_u64, rational_valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    /// `(Π a_i!) li_w - (Π b_i!) li_v` at the evaluation level.
    pub difference: Rational,
    /// Valuation of the difference, capped at `precision`.
    pub valuation: i64,
    /// Precision of the level sums: `n - d`.
    pub precision: i64,
    /// The claimed bound `M + 1 - d`.
    pub required: i64,
    pub level: usize,
    /// `valuation >= required`, known with enough precision to decide.
    pub holds: bool,
}

fn check_hypotheses(ell: u64, a: &[u32], b: &[u32], m: u32, rank: usize) -> Result<()> {
    if a.len() != rank || b.len() != rank {
        return Err(MeasureError::RankMismatch { expected: rank, got: a.len().min(b.len()) });
    }
    let period = (ell - 1) * pow_u64(ell, m);
    for (&ai, &bi) in a.iter().zip(b) {
        if ai == 0 || bi == 0 || (ai as u64).is_multiple_of(ell) || (bi as u64).is_multiple_of(ell) {
            return Err(MeasureError::Hypotheses(format!("exponents must be coprime to {ell}")));
        }
        if !(ai as u64).abs_diff(bi as u64).is_multiple_of(period) {
            return Err(MeasureError::Hypotheses(format!("{ai} and {bi} are not congruent modulo {period}")));
        }
    }
    Ok(())
}

fn report(ell: u64, diff: Rational, precision: i64, required: i64, level: usize) -> CongruenceReport {
    let valuation = rational_valuation(&diff, ell).map_or(precision, |v| v.min(precision));
    CongruenceReport { holds: valuation >= required, difference: diff, valuation, precision, required, level }
}

/// Compares `(Π a_i!) li_w` with `(Π b_i!) li_v` over all of `(Z_l)^r`, at
/// the deepest level of the tower, against the bound `l^{M+1-d}`.
pub fn congruence_check(tower: &MeasureTower, a: &[u32], b: &[u32], m: u32) -> Result<CongruenceReport> {
    check_hypotheses(tower.ell(), a, b, m, tower.rank())?;
    let n = tower.depth();
    let mut wa = vec![0];
    wa.extend_from_slice(a);
    let mut wb = vec![0];
    wb.extend_from_slice(b);
    let mut diff = Rational::zero();
    for (i, mu) in tower.level(n).iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let x = tower.coords(n, i);
        let delta: BigInt = word_polynomial(&wa, &x) - word_polynomial(&wb, &x);
        diff += Rational::from_integer(delta) * mu;
    }
    let d = tower.denom_exponent();
    Ok(report(tower.ell(), diff, n as i64 - d, m as i64 + 1 - d, n))
}

/// The same comparison with the coordinates `t = F(x)` restricted to
/// `(Z_l^×)^r`, where `t^a ≡ t^b mod l^{M+1}` holds pointwise.
pub fn congruence_check_units(tower: &MeasureTower, a: &[u32], b: &[u32], m: u32) -> Result<CongruenceReport> {
    check_hypotheses(tower.ell(), a, b, m, tower.rank())?;
    let t = tower.change_of_vars_f().restrict(&Region::Units)?;
    let n = t.depth();
    let mut diff = Rational::zero();
    for (i, mu) in t.level(n).iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let x = t.coords(n, i);
        let pa = x.iter().zip(a).fold(BigInt::from(1), |acc, (&xi, &e)| acc * BigInt::from(xi).pow(e));
        let pb = x.iter().zip(b).fold(BigInt::from(1), |acc, (&xi, &e)| acc * BigInt::from(xi).pow(e));
        diff += Rational::from_integer(pa - pb) * mu;
    }
    let d = tower.denom_exponent();
    Ok(report(tower.ell(), diff, n as i64 - d, m as i64 + 1 - d, n))
}
