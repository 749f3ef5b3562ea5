//! Exact and fixed-precision arithmetic for `l`-adic measures and the
//! `l`-adic L-functions built from them.
//!
//! * [`padic`]: fixed-precision `Q_l`, Teichmüller character, one-unit powers.
//! * [`exactq`]: rationals, Bernoulli numbers and polynomials.
//! * [`measure`]: measures on `(Z_l)^r` as coset towers, with transforms,
//!   integration and coefficient congruences.
//! * [`ncalg`]: truncated non-commutative series in `X, Y`, the BCH product
//!   and its reduction modulo the ideal `I'_2`.
//! * [`lfunc`]: Kubota-Leopoldt, Hurwitz, Dirichlet and `Z[1/m]` functions.
//! * [`parse`]: text formats for integrands, matrices and scalars.

pub mod exactq;
pub mod lfunc;
pub mod measure;
pub mod ncalg;
pub mod padic;
pub mod parse;

pub use exactq::Rational;
pub use padic::PadicNum;
