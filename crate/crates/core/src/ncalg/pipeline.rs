//! The modulo-`I'_2` computations behind the inversion formula for
//! Hurwitz-type polylogarithm coefficients.

use num_traits::{One, Zero};

use super::reduced::ReducedSeries;
use super::series::Series1;
use crate::exactq::{bernoulli_number, bernoulli_poly, factorial, Rational};

/// `Z = -(X ∘ Y)` in the quotient: `-X - Y·X/(e^X - 1)`.
pub fn z_reduced(degree: usize) -> ReducedSeries {
    ReducedSeries::x(degree).bch(&ReducedSeries::y(degree)).neg()
}

/// `l_{2k} = B_{2k} / (2 (2k)!) · (1 - χ^{2k})` for `2k <= degree`, indexed
/// so that `out[j] = l_{2(j+1)}`.
pub fn soule_even(chi: &Rational, degree: usize) -> Vec<Rational> {
    (1..=degree / 2)
        .map(|k| {
            let n = 2 * k;
            let chi_n = num_traits::pow(chi.clone(), n);
            bernoulli_number(n) * (Rational::one() - chi_n) / Rational::from_integer(factorial(n as u64) * 2)
        })
        .collect()
}

/// `Σ_k l_k Y X^{k-1}` with `l_{2j+2} = even[j]`, `l_{2j+1} = odd[j]`.
fn polylog_y_series(degree: usize, even: &[Rational], odd: &[Rational]) -> ReducedSeries {
    let mut b = Series1::zero(degree.saturating_sub(1));
    for k in 1..=degree {
        let v = if k % 2 == 0 { even.get(k / 2 - 1) } else { odd.get(k / 2) };
        if let Some(v) = v {
            b.coeffs[k - 1] = v.clone();
        }
    }
    ReducedSeries::new(degree, &Series1::zero(degree), &b)
}

/// `(-log Λ_p(Z, Y)) ∘ (½(χ-1)Y) ∘ log Λ_p(X, Y)` modulo `I'_2`, where
/// `log Λ_p ≡ Σ l_k Y X^{k-1}`.
pub fn gamma_series(chi: &Rational, even: &[Rational], odd: &[Rational], degree: usize) -> ReducedSeries {
    let z = z_reduced(degree);
    let lp = polylog_y_series(degree, even, odd);
    let lp_z = lp.substitute_x(&z);
    let half = ReducedSeries::y(degree).scale(&((chi - Rational::one()) / Rational::from_integer(2.into())));
    lp_z.neg().bch(&half).bch(&lp)
}

/// `Σ_{k>=1} B_k(t)/k! (1 - χ^k) X^{k-1}`, i.e.
/// `e^{tX}/(e^X - 1) - χ e^{tχX}/(e^{χX} - 1)`.
pub fn bernoulli_difference(chi: &Rational, t: &Rational, degree: usize) -> Series1 {
    Series1::from_fn(degree, |n| {
        let k = n + 1;
        let chi_k = num_traits::pow(chi.clone(), k);
        bernoulli_poly(k, t) * (Rational::one() - chi_k) / Rational::from_integer(factorial(k as u64))
    })
}

/// The displayed form of `log Λ_{z^t}` modulo `I'_2`: `Y S(X) + t(1-χ)X`.
pub fn lemma_10_3_display(chi: &Rational, t: &Rational, degree: usize) -> ReducedSeries {
    let db = degree.saturating_sub(1);
    // each quotient is formed after cancelling one power of X
    let over_x = |s: Series1| s.shift_down();
    let e = |g: &Rational| Series1::exp_linear(db + 1, g);
    let one_minus_chi = Rational::one() - chi;
    let g1 = t * &one_minus_chi;
    let g2 = -(t * chi);
    let first = over_x(e(&g1).sub(&e(&g2))).div(&over_x(e(&Rational::one()).sub(&Series1::one(db + 1))));
    let second = if chi.is_zero() {
        Series1::zero(db + 1)
    } else {
        // χ (e^{-tχX} - 1)/(e^{χX} - 1)
        over_x(e(&g2).sub(&Series1::one(db + 1))).div(&over_x(e(chi).sub(&Series1::one(db + 1)))).scale(chi)
    };
    let s = first.add(&second).truncate(db).mul(&Series1::bernoulli_gen(db, &g1));
    ReducedSeries::linear(degree, &g1, &s)
}

/// `log Λ_{z^t}` recomputed as `t(X ∘ Y) ∘ (-t(χX ∘ χY))`.
pub fn z_power_series(chi: &Rational, t: &Rational, degree: usize) -> ReducedSeries {
    let x = ReducedSeries::x(degree);
    let y = ReducedSeries::y(degree);
    let first = x.bch(&y).scale(t);
    let second = x.scale(chi).bch(&y.scale(chi)).scale(&-t);
    first.bch(&second)
}

/// Every stage of the inversion computation, for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub gamma: ReducedSeries,
    pub conjugated: ReducedSeries,
    pub z_power: ReducedSeries,
    pub output: ReducedSeries,
    pub closed_form: ReducedSeries,
}

/// Runs
/// `[e^{-tX} ((e^{-tZ} (log Λ_{β_i}(Z,Y) ∘ log Λ_Γ) e^{tZ}) ∘ log Λ_{z^t}) e^{tX}] ∘ t(χ-1)X`
/// modulo `I'_2` with `log Λ_{β_i} ≡ Y A(X)`, and the closed form
/// `Y (A(-X) + e^{tX}/(e^X-1) - χ e^{tχX}/(e^{χX}-1))` it should equal.
/// `odd` supplies the free odd-index polylog coefficients of `log Λ_Γ`.
pub fn inversion_pipeline(a: &Series1, chi: &Rational, t: &Rational, odd: &[Rational], degree: usize) -> PipelineTrace {
    let d = degree;
    let z = z_reduced(d);
    let p1 = ReducedSeries::new(d, &Series1::zero(d), a).substitute_x(&z);
    let gamma = gamma_series(chi, &soule_even(chi, d), odd, d);
    let q = p1.bch(&gamma);
    let conjugated = q.conjugate(&z.scale(t));
    let z_power = z_power_series(chi, t, d);
    let u = conjugated.bch(&z_power);
    let v = u.conjugate(&ReducedSeries::x(d).scale(t));
    let tail = ReducedSeries::x(d).scale(&(t * (chi - Rational::one())));
    let output = v.bch(&tail);
    let db = d.saturating_sub(1);
    let closed_b = a.truncate(db).negate_var().add(&bernoulli_difference(chi, t, db));
    let closed_form = ReducedSeries::new(d, &Series1::zero(d), &closed_b);
    PipelineTrace { gamma, conjugated, z_power, output, closed_form }
}

/// The expected `Γ` series: `Σ B_k/k! (1 - χ^k) Y X^{k-1}`.
pub fn gamma_closed_form(chi: &Rational, degree: usize) -> ReducedSeries {
    let b = bernoulli_difference(chi, &Rational::zero(), degree.saturating_sub(1));
    ReducedSeries::new(degree, &Series1::zero(degree), &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};

    #[test]
    fn gamma_matches_bernoulli() {
        let d = 10;
        for chi in [int(2), int(3), rat(1, 2)] {
            let g = gamma_series(&chi, &soule_even(&chi, d), &[int(7), rat(-1, 3)], d);
            assert_eq!(g, gamma_closed_form(&chi, d));
        }
        let trivial = gamma_series(&int(1), &soule_even(&int(1), 6), &[int(4)], 6);
        assert_eq!(trivial, ReducedSeries::zero(6));
    }

    #[test]
    fn lemma_10_3_display_agrees() {
        for (chi, t) in [(int(2), rat(1, 3)), (rat(1, 2), rat(2, 5)), (int(1), rat(1, 4))] {
            assert_eq!(z_power_series(&chi, &t, 9), lemma_10_3_display(&chi, &t, 9));
        }
    }

    #[test]
    fn pipeline_matches_closed_form() {
        let a = Series1::from_coeffs(8, &[int(1), rat(2, 3), int(-5), rat(1, 7)]);
        let trace = inversion_pipeline(&a, &int(2), &rat(1, 3), &[int(3)], 8);
        assert_eq!(trace.output, trace.closed_form);
        let trace = inversion_pipeline(&a, &int(1), &rat(1, 3), &[], 8);
        assert_eq!(trace.output.b, a.truncate(7).negate_var());
    }
}
