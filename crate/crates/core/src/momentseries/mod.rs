//! Exact moment sequences of the root-configuration count, growth
//! diagnostics and the truncated lognormal constants.

mod growth;
mod seq;
mod wagner;

pub use growth::{
    growth_report, k_e, uniform_mean_base, uniform_mean_constant, uniform_variance_base,
    uniform_variance_constant, GrowthReport, GrowthRow, GROWTH_PRECISION, MIN_GROWTH_ENTRIES,
};
pub use seq::{
    mean_seq, moment_seqs, second_moment_seq, variance_seq, RationalSeq, SeqKind, DEFAULT_SEQ_CAP,
};
pub use wagner::{
    two_pow_neg_cherries_mean, wagner_constants, WagnerConstants, CHERRY_CAP, MU_CAP, SIGMA_CAP,
};
