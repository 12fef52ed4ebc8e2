#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use prolongkit::diffmod::DiffModule;
use prolongkit::matrix::Matrix;
use prolongkit::ratfield::{MPoly, RatFunc};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomials of total degree at most `max_degree` with small integer
/// coefficients.
pub fn poly(max_degree: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (0..=max_degree, 0..=max_degree, -4i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MPoly::from_terms(
            terms
                .into_iter()
                .filter(|(dx, dt, _)| dx + dt <= max_degree)
                .map(|(dx, dt, c)| ((dx, dt), q(c))),
        )
    })
}

pub fn nonzero_poly(max_degree: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    poly(max_degree, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(2, 3), nonzero_poly(2, 3)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

pub fn poly_ratfunc() -> impl Strategy<Value = RatFunc> {
    poly(2, 3).prop_map(RatFunc::from_poly)
}

/// n×n module with polynomial entries of degree at most 2.
pub fn module(n: usize) -> impl Strategy<Value = DiffModule> {
    prop::collection::vec(poly_ratfunc(), n * n).prop_map(move |entries| {
        let mut it = entries.into_iter();
        DiffModule::new(Matrix::from_fn(n, n, |_, _| it.next().unwrap())).unwrap()
    })
}

pub fn small_module() -> impl Strategy<Value = DiffModule> {
    (1usize..=3).prop_flat_map(module)
}

pub fn rf(text: &str) -> RatFunc {
    prolongkit::expr::parse_expr(text).unwrap()
}
