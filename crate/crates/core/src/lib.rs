//! Exact arithmetic for side-and-diameter numbers.
//!
//! A side-and-diameter pair is a pair of positive integers `(a, d)` with
//! `d² − 2a² = ±1`. Starting from the seed `(1, 1)` the map
//! `(a, d) → (a + d, 2a + d)` produces every such pair, and the ratios
//! `d / a` are the classical rational approximations of √2.
//!
//! The crate is split into three layers:
//!
//! * [`pair`]: the pairs themselves, generation (iterative and `O(log n)`),
//!   descent, adjacency queries and the "encouraging" II.10 instances.
//! * [`poly`] and [`identity`]: a small exact polynomial ring used to prove
//!   the Euclid II.9 / II.10 identities symbolically, the V.19 subtraction
//!   lemma, and a step-by-step derivation trace for a concrete pair.
//! * [`rational`] and [`approx`]: exact rationals, the Babylonian and
//!   side-diameter iterations, digit-accuracy measurement against √2 without
//!   floating point, and Babylonian preimage analysis.

pub mod approx;
pub mod identity;
pub mod pair;
pub mod poly;
pub mod rational;

pub use num_bigint::BigInt as Int;

pub use approx::{
    babylonian_preimage, babylonian_step, cf_convergent_sqrt2, compare_methods, correct_digits,
    decimal_truncated, is_square, isqrt, ratio, sd_ratio_step, within_of_sqrt2, ApproxError,
    ConvergenceReport, ConvergenceRow, Method, ReportRecord, RowRecord, Side, CSV_HEADER,
};
pub use identity::{
    catalog_entry, identity_catalog, proportion_check, proportion_subtract, trace_elegant,
    trace_elegant_for, verify_identity, DerivationStep, DerivationTrace, Expr, IdentityError,
    Justification, NamedIdentity, PairRecord, ProportionCheck, StepRecord, TraceRecord,
};
pub use pair::{
    adjacent_rational_diameter, encouraging_identity_check, generate, nth, nth_iterative,
    pell_value, plato_check, seed, EncouragingCheck, PairError, PellSign, PlatoGaps,
    SideDiameterPair,
};
pub use poly::{Monomial, Poly, PolyError, PolyRing};
pub use rational::{Rat, RatError};
