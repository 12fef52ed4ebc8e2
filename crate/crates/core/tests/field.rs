mod common;

use common::{q, ratfunc, rf};
use proptest::prelude::*;

use prolongkit::random::{random_operator, seeded, PolyShape};
use prolongkit::ratfield::{RatFunc, Var};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_commutes(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_distributes(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn multiplication_associates(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverse_cancels(a in ratfunc()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn leibniz(a in ratfunc(), b in ratfunc()) {
        for v in [Var::X, Var::T] {
            let lhs = a.mul(&b).deriv(v);
            let rhs = a.deriv(v).mul(&b).add(&a.mul(&b.deriv(v)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_rule(a in ratfunc(), b in ratfunc()) {
        prop_assume!(!b.is_zero());
        let lhs = a.div(&b).unwrap().deriv(Var::X);
        let rhs = a.deriv(Var::X).mul(&b).sub(&a.mul(&b.deriv(Var::X)))
            .div(&b.mul(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_commute(f in ratfunc()) {
        prop_assert_eq!(f.deriv(Var::X).deriv(Var::T), f.deriv(Var::T).deriv(Var::X));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in 2i64..9, t in -5i64..5) {
        let (x, t) = (q(x), q(t));
        if let (Some(va), Some(vb), Some(vab)) = (a.eval(&x, &t), b.eval(&x, &t), a.mul(&b).eval(&x, &t)) {
            prop_assert_eq!(vab, va * vb);
        }
    }

    #[test]
    fn canonical_denominator_is_monic(a in ratfunc()) {
        prop_assert!(a.denom().leading_coeff().unwrap() == &q(1));
        prop_assert!(a.numer().gcd(a.denom()).is_one());
    }

    #[test]
    fn operator_ring(seed in any::<u64>(), v in prop_oneof![Just(Var::X), Just(Var::T)]) {
        let mut rng = seeded(seed);
        let shape = PolyShape::default();
        let d = random_operator(&mut rng, v, 3, &shape);
        let e = random_operator(&mut rng, v, 3, &shape);
        let f = random_operator(&mut rng, v, 3, &shape);
        let left = d.mul(&e).unwrap().mul(&f).unwrap();
        let right = d.mul(&e.mul(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let g = prolongkit::random::random_ratfunc(&mut rng, &shape);
        prop_assert_eq!(d.mul(&e).unwrap().apply(&g), d.apply(&e.apply(&g)));
    }
}

#[test]
fn known_identities() {
    assert_eq!(rf("(x^2 - t^2)/(x - t)"), rf("x + t"));
    assert_eq!(rf("t/x").deriv(Var::X), rf("-t/x^2"));
    assert_eq!(rf("t/x").deriv(Var::T), rf("1/x"));
    assert_eq!(rf("1/(2*x)").denom(), rf("x").numer());
    assert!(RatFunc::x().div(&RatFunc::zero()).is_err());
}
