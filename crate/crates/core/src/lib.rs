//! Exact computer-algebra workbench for linear differential systems
//! Y' = AY presented over towers of rational-function fields.
//!
//! Everything is computed over arbitrary-precision rationals — no floats,
//! no approximation. The pipeline, bottom to top:
//!
//! * [`poly`], [`ratfunc`], [`matrix`] — multivariate polynomials in
//!   canonical form, reduced rational functions, and exact linear algebra
//!   (row reduction, nullspaces, inverses) over the fraction field;
//! * [`expr`] — the surface grammar: parsing, printing, and conversion to
//!   rational functions;
//! * [`tower`] — differential towers: base variables plus generators, each
//!   with a derivative rule; derivations, constants, new-constant probes;
//! * [`system`] — system specs (A, Z, recovery expressions) and the
//!   fundamental-matrix diagnostics;
//! * [`series`] — truncated power series, the universal expansion
//!   a ↦ Σ ∂ᵏ(a)/k!·Xᵏ, and the two independent routes to the transported
//!   matrix B = taylor(Z)·Z⁻¹;
//! * [`lie`] — symmetry Lie algebras on both sides (constants vs. the full
//!   coefficient field) and the comparison verdict.

pub mod error;
pub mod expr;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod system;
pub mod tower;

/// Default series truncation order used by consumers when none is given.
pub const DEFAULT_ORDER: usize = 12;

pub use error::{Error, Result};
pub use expr::{
    parse, poly_to_expression, print, rational_function_to_expression,
    rational_function_to_string, to_rational_function, Expression,
};
pub use lie::{compare_lie, hull_lie, pv_lie, ComparisonReport, LieAlgebraResult, LieSide,
    STABILITY_GAP};
pub use matrix::{ExactMatrix, ScalarField};
pub use poly::{Monomial, MultiPolynomial, Variables};
pub use ratfunc::RationalFunction;
pub use rational::BigRational;
pub use series::{
    check_membership_base, compute_b, solve_fundamental, taylor, taylor_matrix,
    MembershipReport, MembershipWitness, TruncatedSeries, TruncatedSeriesMatrix,
};
pub use system::{
    z_symbol, EntryResidual, FundamentalReport, RecoveryResidual, SystemSpec,
};
pub use tower::{ConstantsReport, DifferentialTower, ProbeOutcome};
