//! Truncated power series in the non-commuting letters `X`, `Y`, the BCH
//! product `A ∘ B = log(exp A · exp B)`, and the quotient by the ideal
//! `I'_2` generated by words with two `Y`s and by `X^i Y` for `i > 0`.

mod nc;
mod pipeline;
mod reduced;
mod series;
pub mod verify;

pub use nc::{bch, iterated_bracket, NcSeries, NonzeroConstant, Word, MAX_DEGREE};
pub use pipeline::{
    bernoulli_difference, gamma_closed_form, gamma_series, inversion_pipeline, lemma_10_3_display, soule_even,
    z_power_series, z_reduced, PipelineTrace,
};
pub use reduced::{bch_reduced, l_from_li, li_from_l, ReducedSeries};
pub use series::Series1;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 12;
