//! Seeded generators of small random inputs, shared by the CLI check
//! suites and the tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffmod::{DiffModule, ModuleMorphism};
use crate::matrix::{Matrix, RfMatrix};
use crate::ratfield::{LinDiffOp, MPoly, RatFunc, Var};

pub const DEFAULT_SEED: u64 = 7;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyShape {
    /// Bound on the total degree.
    pub max_degree: u32,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    pub max_terms: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        Self {
            max_degree: 2,
            coeff_bound: 3,
            max_terms: 3,
        }
    }
}

pub fn random_poly(rng: &mut impl Rng, shape: &PolyShape) -> MPoly {
    let terms = rng.gen_range(0..=shape.max_terms);
    MPoly::from_terms((0..terms).map(|_| {
        let dx = rng.gen_range(0..=shape.max_degree);
        let dt = rng.gen_range(0..=shape.max_degree - dx);
        let c = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        ((dx, dt), BigRational::from_integer(BigInt::from(c)))
    }))
}

/// Quotient of two random polynomials with a nonzero denominator.
pub fn random_ratfunc(rng: &mut impl Rng, shape: &PolyShape) -> RatFunc {
    let num = random_poly(rng, shape);
    loop {
        let den = random_poly(rng, shape);
        if !den.is_zero() {
            return RatFunc::new(num, den).expect("nonzero denominator");
        }
    }
}

/// Module whose matrix has random polynomial entries.
pub fn random_module(rng: &mut impl Rng, n: usize, shape: &PolyShape) -> DiffModule {
    let m = Matrix::from_fn(n, n, |_, _| RatFunc::from_poly(random_poly(rng, shape)));
    DiffModule::new(m).expect("n >= 1")
}

/// Unit upper-triangular matrix with random polynomial entries; always
/// invertible.
pub fn random_gauge(rng: &mut impl Rng, n: usize, shape: &PolyShape) -> RfMatrix {
    Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => RatFunc::one(),
        std::cmp::Ordering::Less => RatFunc::from_poly(random_poly(rng, shape)),
        std::cmp::Ordering::Greater => RatFunc::zero(),
    })
}

/// A random isomorphism out of `m`: a gauge matrix P together with the
/// module `(∂_x P + P A) P^{-1}` it maps onto.
pub fn random_morphism(rng: &mut impl Rng, m: &DiffModule, shape: &PolyShape) -> ModuleMorphism {
    let p = random_gauge(rng, m.dim(), shape);
    let p_inv = p.inverse().expect("unit triangular");
    let target = p.deriv(Var::X).add(&p.mul(m.matrix())).mul(&p_inv);
    let dst = DiffModule::new(target).expect("square");
    ModuleMorphism::new(m.clone(), dst, p).expect("gauge transform is a morphism")
}

/// Operator `Σ c_k ∂^k` with random rational-function coefficients.
pub fn random_operator(rng: &mut impl Rng, var: Var, max_order: usize, shape: &PolyShape) -> LinDiffOp {
    let len = rng.gen_range(0..=max_order + 1);
    LinDiffOp::new(var, (0..len).map(|_| random_ratfunc(rng, shape)).collect())
}
