//! Seeded verification suites over the series identities.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::nc::{bch, iterated_bracket, NcSeries};
use super::pipeline::{
    gamma_closed_form, gamma_series, inversion_pipeline, lemma_10_3_display, soule_even, z_power_series, z_reduced,
};
use super::reduced::{bch_reduced, ReducedSeries};
use super::series::Series1;
use crate::exactq::{format_rational, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, first_discrepancy: Option<String>) -> Self {
        Check { name: name.into(), passed: first_discrepancy.is_none(), first_discrepancy }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub degree: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, degree: usize, seed: u64, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), degree, seed, passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = random_rational(rng);
        if q != int(0) {
            return q;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, terms: usize) -> Series1 {
    let coeffs: Vec<Rational> = (0..terms).map(|_| random_rational(rng)).collect();
    Series1::from_coeffs(degree, &coeffs)
}

/// A Lie series `αX + Σ φ_n [Y, X^{(n)}] + ε [[Y, X], Y]` whose image mod
/// `I'_2` is `αX + Y Φ(X)`.
fn lie_lift(degree: usize, alpha: &Rational, phi: &Series1, eps: &Rational) -> NcSeries {
    let x = NcSeries::x(degree);
    let mut s = x.scale(alpha);
    let mut ad = NcSeries::y(degree);
    for (n, c) in phi.coeffs.iter().enumerate().take(degree) {
        if n > 0 {
            ad = ad.bracket(&x);
        }
        if !c.is_zero() {
            s = s.add(&ad.scale(c));
        }
    }
    s.add(&iterated_bracket(degree, 1).bracket(&NcSeries::y(degree)).scale(eps))
}

fn reduced_diff(a: &ReducedSeries, b: &ReducedSeries) -> Option<String> {
    a.first_discrepancy(b)
}

/// BCH against its closed form modulo `I'_2`, the two classical formulas,
/// the `Z` identity, exp/log inversion and compatibility of the reduced
/// product.
pub fn verify_bch(degree: usize, seed: u64, instances: usize) -> SuiteReport {
    let d = degree;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let x = NcSeries::x(d);
    let y = NcSeries::y(d);
    let xy = bch(&x, &y).expect("no constant term").reduce_mod_i2();
    let expect_xy = ReducedSeries::linear(d, &int(1), &Series1::bernoulli_gen(d.saturating_sub(1), &int(1)));
    checks.push(Check::new("X∘Y ≡ X + Y·X/(e^X-1)", reduced_diff(&xy, &expect_xy)));
    let yx = bch(&y, &x).expect("no constant term").reduce_mod_i2();
    let expect_yx = ReducedSeries::linear(
        d,
        &int(1),
        &Series1::bernoulli_gen(d.saturating_sub(1), &int(1)).mul(&Series1::exp_linear(d.saturating_sub(1), &int(1))),
    );
    checks.push(Check::new("Y∘X ≡ X + Y·X e^X/(e^X-1)", reduced_diff(&yx, &expect_yx)));
    let z = xy.neg();
    checks.push(Check::new("Z ≡ -X - Y·X/(e^X-1)", reduced_diff(&z, &z_reduced(d))));

    for i in 0..instances {
        let alpha = if i % 5 == 4 { int(0) } else { random_nonzero(&mut rng) };
        let beta = random_nonzero(&mut rng);
        let phi1 = random_poly(&mut rng, d, 4);
        let phi2 = random_poly(&mut rng, d, 4);
        let eps = random_rational(&mut rng);
        let a = lie_lift(d, &alpha, &phi1, &eps);
        let b = lie_lift(d, &beta, &phi2, &eps);
        let full = bch(&a, &b).expect("no constant term").reduce_mod_i2();
        let closed = bch_reduced(&alpha, &phi1, &beta, &phi2, d);
        checks.push(Check::new(format!("Lemma 0.2.1 instance {i}"), reduced_diff(&full, &closed)));
    }

    // exp and log are inverse; reduction commutes with products
    let a = lie_lift(d, &random_nonzero(&mut rng), &random_poly(&mut rng, d, 3), &random_rational(&mut rng));
    let roundtrip = a.exp().and_then(|e| e.log()).expect("no constant term");
    checks.push(Check::new("log(exp A) = A", roundtrip.first_discrepancy(&a).map(|w| w.to_string())));
    let b = lie_lift(d, &random_nonzero(&mut rng), &random_poly(&mut rng, d, 3), &random_rational(&mut rng));
    let p = a.add(&NcSeries::one(d)).mul(&b);
    let q = a.add(&NcSeries::one(d)).reduce_mod_i2().mul(&b.reduce_mod_i2());
    checks.push(Check::new("reduced product = reduction of product", reduced_diff(&p.reduce_mod_i2(), &q)));
    let ra = a.reduce_mod_i2();
    let alpha = random_nonzero(&mut rng);
    let powered = ra.scale(&alpha).exp().log();
    let cube = ra.exp().mul(&ra.exp()).mul(&ra.exp()).log();
    checks.push(Check::new(
        "A^3 = 3A in the BCH group",
        reduced_diff(&cube, &ra.scale(&int(3))).or_else(|| reduced_diff(&powered, &ra.scale(&alpha))),
    ));
    SuiteReport::new("bch", degree, seed, checks)
}

/// The `Γ` series against `Σ B_k/k! (1-χ^k) Y X^{k-1}`, and its invariance
/// under the free odd-index coefficients.
pub fn verify_gamma(degree: usize, chis: &[Rational], seed: u64, perturbations: usize) -> SuiteReport {
    let d = degree;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for chi in chis {
        let even = soule_even(chi, d);
        let base = gamma_series(chi, &even, &[], d);
        checks.push(Check::new(
            format!("Γ coefficients, χ = {}", format_rational(chi)),
            reduced_diff(&base, &gamma_closed_form(chi, d)),
        ));
        for p in 0..perturbations {
            let odd: Vec<Rational> = (0..d.div_ceil(2)).map(|_| random_rational(&mut rng)).collect();
            let g = gamma_series(chi, &even, &odd, d);
            checks.push(Check::new(
                format!("odd perturbation {p}, χ = {}", format_rational(chi)),
                reduced_diff(&g, &base),
            ));
        }
    }
    SuiteReport::new("gamma", degree, seed, checks)
}

/// The inversion pipeline against its closed form, plus the displayed
/// `log Λ_{z^t}` series against its recomputation.
pub fn verify_inversion(
    degree: usize,
    chi: Option<&Rational>,
    t: Option<&Rational>,
    seed: u64,
    instances: usize,
) -> SuiteReport {
    let d = degree;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for i in 0..instances {
        let a = random_poly(&mut rng, d, d);
        let c = chi.cloned().unwrap_or_else(|| random_nonzero(&mut rng));
        let tt = t.cloned().unwrap_or_else(|| rat(rng.gen_range(1..=6), 7));
        let odd: Vec<Rational> = (0..d.div_ceil(2)).map(|_| random_rational(&mut rng)).collect();
        let trace = inversion_pipeline(&a, &c, &tt, &odd, d);
        let label = format!("χ = {}, t = {}", format_rational(&c), format_rational(&tt));
        checks.push(Check::new(
            format!("pipeline = closed form, instance {i} ({label})"),
            reduced_diff(&trace.output, &trace.closed_form),
        ));
        checks.push(Check::new(
            format!("log Λ_(z^t) display, instance {i} ({label})"),
            reduced_diff(&z_power_series(&c, &tt, d), &lemma_10_3_display(&c, &tt, d)),
        ));
    }
    SuiteReport::new("inversion", degree, seed, checks)
}
