//! Exact arithmetic kernel shared by every other module.
//!
//! Nothing in here ever rounds. Rationals are kept reduced, sparse maps never
//! store zero coefficients, and every truncated series carries its own bound.

mod cohomology;
mod laurent;
mod linalg;
mod multipoly;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use cohomology::{CohClass, RingDescriptor};
pub use laurent::{invert_linear_factor, HbarLaurent};
pub use linalg::{solve_exact, LinearSolution};
pub use multipoly::MultiPoly;
pub use poly::UniPoly;
pub use ratfunc::{LaurentExpansion, RationalFunction};
pub use rational::{factorial, format_rational, int, parse_rational, rat, Rational};
pub use series::{
    degree_vectors_up_to, revert_mirror_coordinates, series_exp, series_log, substitute_novikov,
    Coefficient, DegreeVector, Series,
};

/// Truncated power series in the Novikov variables with `hbar`-Laurent coefficients.
pub type NovikovSeries = Series<HbarLaurent>;

/// Truncated power series in the Novikov variables with rational coefficients.
pub type ScalarSeries = Series<Rational>;
