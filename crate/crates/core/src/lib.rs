//! Numerical laboratory for Riemann-Stieltjes integral operators T_g between
//! weighted Bergman spaces A^p_alpha on the unit ball of C^n.
//!
//! The crate provides exact calculus for the symbols the theory runs on
//! (polynomials, log and power kernels), weighted-ball quadrature for the
//! space norms, Bergman-metric lattices with atomic synthesis, the Rademacher
//! and Khinchine machinery, and a harness that classifies symbols as
//! bounded/compact/unbounded and cross-validates the classification against
//! empirical operator-norm probes.
//!
//! All volume integrals use the unnormalized Lebesgue measure dv on the ball;
//! conventions that normalize the ball volume to 1 differ by the factor
//! pi^n / n!.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod holo;
pub mod lattice;
pub mod quadrature;
pub mod report;
pub mod rules;

pub use error::{Error, Result};
pub use geometry::{bergman_distance, inner, mobius, BoundaryDirection, MetricBall, Point};
pub use holo::{apply_tg_exact, BasePoint, ClosedSymbol, HoloFunction, MultiIndex, Polynomial, TgImage};
pub use quadrature::{PairParams, QuadratureSpec, SpaceParams};
