//! Exact verification toolkit for word traces over the one-parameter
//! 3x3 matrix pair
//!
//! ```text
//! A_x = [[1, 0, 0], [0, x, -x], [0, -x, x]]
//! B_x = [[x, -x, 0], [-x, x, 0], [0, 0, 1]]
//! ```
//!
//! Both matrices are positive semidefinite for x >= 0 and decompose into
//! rank-one projections as A_x = P + 2xU, B_x = 2xV + Q. Every trace of a
//! word in A_x, B_x is a polynomial in x with nonnegative coefficients,
//! and its vanishing order as x -> 0+ is a subset-minimization cost on
//! the word's cyclic run decomposition. This crate computes all of it in
//! exact big-rational arithmetic: word traces, the leading-exponent
//! invariant by three independent routes, ensemble averages over all
//! words with a fixed letter content by two independent routes, and the
//! sign of the clustered-minus-average gap, including the region where
//! the average exceeds the clustered trace tr(A^n B^m).
//!
//! Everything is immutable and pure; sweeps over word classes partition
//! into lexicographic rank ranges and reduce with exact rational
//! addition, so parallel results are bit-identical to sequential ones.

pub mod asymptotics;
pub mod average;
pub mod error;
pub mod exact;
pub mod family;
pub mod report;
pub mod words;

pub use asymptotics::{
    classify_order4, kappa_bridge, kappa_brute, kappa_walks, walk_expansion, BridgeSubset,
    Classification, KappaMethod, KappaResult, Minimizer, WalkAssignment,
};
pub use average::{
    coeff_extract_uvw, gap, gap_sign_scan, p_newton, p_word_sum, power_sum_newton, ratio_leading,
    verify_counterexample_5_5, verify_newton10_hardcoded, AverageMethod, CharPolyData,
    EnsembleResult, GapScan, RatioLeading,
};
pub use error::{Error, Result};
pub use exact::{format_rational, parse_rational, BiPoly, Poly, Rational};
pub use family::{
    build_family, build_projections, clustered_trace_closed, commutator, commutator_frobenius_sq,
    verify_normal_form, Mat3, ProjectionSet,
};
pub use report::{all_pass, Check};
pub use words::{
    enumerate_words, run_decomposition, word_trace, Letter, RunForm, Word, WordRange,
};
