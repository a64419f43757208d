//! Exact ζ-decomposition of `I_s` and certified numeric evaluation.

mod combination;
mod evaluators;
pub mod lemma2;
mod partial_fraction;

pub use combination::{Term, TermDifference, ZetaCombination};
pub use evaluators::{beta_rat, eval_special_series, eval_truncated};
pub use partial_fraction::{decompose_integral, partial_fraction_sum};
