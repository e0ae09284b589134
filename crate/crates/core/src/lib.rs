//! Exact-arithmetic workbench for genus-zero Gromov-Witten theory of complete
//! intersections in homogeneous spaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact_algebra`]: rationals, nilpotent cohomology rings, Laurent
//!   polynomials in `hbar`, truncated Novikov series and rational functions.
//! - [`ambient`]: torus fixed points, rays and characters of projective
//!   products, Grassmannians and complete type-A flag manifolds.
//! - [`hypergeo`]: correcting Euler classes and the hypergeometric series of a
//!   decomposable convex bundle over a product of projective spaces.
//! - [`mirror`]: the `1/hbar` expansion, the mirror transformation, instanton
//!   numbers, the double construction and class membership checks.
//! - [`localization_recursion`]: the equivariant correlator computed from the
//!   recursion at fixed points, together with localization oracles.
//! - [`flag_qh`]: quantum cohomology relations of complete flag manifolds.

pub mod ambient;
pub mod error;
pub mod exact_algebra;
pub mod flag_qh;
pub mod hypergeo;
pub mod localization_recursion;
pub mod mirror;

pub use error::{Error, Result};
