//! Exact prolongation calculus for linear differential systems
//! `∂_x Y = A Y` whose coefficients depend on a parameter t.
//!
//! Everything is exact: rational functions in x and t over Q, matrices over
//! them, solution entries in Q(x, t)[x^t, log x], and truncated
//! differential polynomials for the Hopf algebra checks.

pub mod diffmod;
pub mod expr;
pub mod hopf;
pub mod matrix;
pub mod random;
pub mod ratfield;
pub mod solspace;
pub mod suites;
