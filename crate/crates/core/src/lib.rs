//! Exact rational approximation of zeta-constants.
//!
//! ζ(s), s ≥ 3, is approximated by α·ζ(2) + β with α, β rational, using the
//! integrals
//!
//! ```text
//! I_s = ∫…∫ P(x1) Q(x2) T(x3) / (1 − x1 x2 … xs) dx1 … dxs
//! ```
//!
//! whose values are exact rational combinations of ζ(2), …, ζ(s). The crate
//! provides
//!
//! * [`numerics`]: exact rationals, harmonic numbers, certified ζ(p)
//!   enclosures and decimal rendering,
//! * [`polynomials`]: shifted Legendre, binomial and explicit polynomials,
//! * [`zeta_series`]: the partial-fraction oracle that decomposes `I_s`, plus
//!   two certified numeric evaluators,
//! * [`theorem_coeffs`]: closed-form coefficient rows for `I_3`, `I_4`, `I_s`,
//! * [`solver`]: the triangular system and its θ error propagation,
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod numerics;
pub mod polynomials;
pub mod solver;
pub mod theorem_coeffs;
pub mod zeta_series;

pub use error::{Error, Result};
pub use numerics::{harmonic, render_decimal, zeta_reference, HarmonicTable, Interval, Rat};
pub use polynomials::{
    binomial_poly, eval_poly, explicit_poly, shifted_legendre, PolyFamily, PolySpec,
};
pub use solver::{
    approximate, build_system, solve_zeta, theta_bound, ApproxResult, TriangularSystem,
};
pub use theorem_coeffs::{
    row_general, row_zeta3, row_zeta4, s_sym, theorem_row, validate_rows, CoefficientRow,
    LowOrderRoute, TranscriptionVariant,
};
pub use zeta_series::{
    beta_rat, decompose_integral, eval_special_series, eval_truncated, partial_fraction_sum,
    ZetaCombination,
};
