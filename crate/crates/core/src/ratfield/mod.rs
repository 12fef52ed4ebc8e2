//! The differential field Q(x, t) with commuting derivations ∂_x, ∂_t and
//! the operator rings K[∂_x], K[∂_t].

mod diffop;
mod poly;
mod ratfunc;
mod zgcd;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use diffop::LinDiffOp;
pub use poly::{MPoly, Monomial};
pub use ratfunc::RatFunc;

/// One of the two derivations of the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operators act by different derivations")]
    DerivationMismatch,
}

/// Arithmetic selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic dispatched on `op`; only division can fail.
pub fn arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, FieldError> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        for n in 1..12 {
            for q in 1..=n {
                assert_eq!(binomial(n - 1, q - 1) + binomial(n - 1, q), binomial(n, q));
            }
        }
    }

    #[test]
    fn arith_dispatch() {
        let a = RatFunc::t().div(&RatFunc::x()).unwrap();
        assert!(arith(&a, &a, ArithOp::Sub).unwrap().is_zero());
        assert!(arith(&a, &RatFunc::zero(), ArithOp::Div).is_err());
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..4).prop_map(|terms| {
            MPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(m, c)| (m, num_rational::BigRational::from_integer(c.into()))),
            )
        })
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly()).prop_map(|(n, d)| {
            if d.is_zero() {
                RatFunc::from_poly(n)
            } else {
                RatFunc::new(n, d).unwrap()
            }
        })
    }

    fn small_op(var: Var) -> impl Strategy<Value = LinDiffOp> {
        prop::collection::vec(small_ratfunc(), 0..3).prop_map(move |c| LinDiffOp::new(var, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            }
        }

        #[test]
        fn leibniz(a in small_ratfunc(), b in small_ratfunc()) {
            for v in [Var::X, Var::T] {
                let lhs = a.mul(&b).deriv(v);
                let rhs = a.deriv(v).mul(&b).add(&a.mul(&b.deriv(v)));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn derivations_commute(f in small_ratfunc()) {
            prop_assert_eq!(f.deriv(Var::X).deriv(Var::T), f.deriv(Var::T).deriv(Var::X));
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
            }
        }

        #[test]
        fn action_respects_composition(d in small_op(Var::X), e in small_op(Var::X), f in small_ratfunc()) {
            let de = d.mul(&e).unwrap();
            prop_assert_eq!(de.apply(&f), d.apply(&e.apply(&f)));
        }

        #[test]
        fn operator_mul_is_associative(d in small_op(Var::T), e in small_op(Var::T), f in small_op(Var::T)) {
            let left = d.mul(&e).unwrap().mul(&f).unwrap();
            let right = d.mul(&e.mul(&f).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
