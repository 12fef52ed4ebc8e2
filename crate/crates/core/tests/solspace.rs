mod common;

use common::{ratfunc, rf};
use proptest::prelude::*;

use prolongkit::diffmod::{prolong, tensor, DiffModule};
use prolongkit::matrix::Matrix;
use prolongkit::ratfield::Var;
use prolongkit::solspace::{
    build_fundamental_prolongation, build_printed_prolongation, load_solution, parse_sol_expr,
    sol_kron, verify_fundamental, xt_example, SolExpr, SolMatrix,
};

fn sol_expr() -> impl Strategy<Value = SolExpr> {
    prop::collection::vec((0u32..=2, 0u32..=2, ratfunc()), 0..=3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(SolExpr::zero(), |acc, (a, b, c)| acc.add(&SolExpr::monomial((a, b), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leibniz(a in sol_expr(), b in sol_expr()) {
        for v in [Var::X, Var::T] {
            let lhs = a.mul(&b).deriv(v);
            let rhs = a.deriv(v).mul(&b).add(&a.mul(&b.deriv(v)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivations_commute(f in sol_expr()) {
        prop_assert_eq!(f.deriv(Var::X).deriv(Var::T), f.deriv(Var::T).deriv(Var::X));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in sol_expr(), b in sol_expr()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
    }

    #[test]
    fn rendering_round_trips(a in sol_expr()) {
        prop_assert_eq!(parse_sol_expr(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn theta_and_log_derivatives() {
    let theta = SolExpr::theta();
    let logx = SolExpr::logx();
    assert_eq!(theta.deriv(Var::X), theta.scale(&rf("t/x")));
    assert_eq!(theta.deriv(Var::T), theta.mul(&logx));
    assert_eq!(logx.deriv(Var::X), SolExpr::from_ratfunc(rf("1/x")));
    assert!(logx.deriv(Var::T).is_zero());
}

#[test]
fn xt_fundamental_prolongations_verify() {
    let (m, y) = xt_example();
    for i in 0..=3 {
        let yi = build_fundamental_prolongation(&y, i);
        let report = verify_fundamental(&prolong(&m, i), &yi).unwrap();
        assert!(report.passed(), "i = {i}: {report:?}");
    }
}

#[test]
fn stripped_binomials_fail_in_last_block_row() {
    let (m, y) = xt_example();
    let printed = build_printed_prolongation(&y, 2);
    let report = verify_fundamental(&prolong(&m, 2), &printed).unwrap();
    assert!(!report.equation_holds);
    assert!(report.determinant_nonzero());
    let first = report.first_failure.unwrap();
    assert_eq!(first.block(1), (2, 1));
    assert_eq!(report.failing_entries, 1);
}

#[test]
fn printed_and_fundamental_agree_below_order_two() {
    let (_, y) = xt_example();
    for i in 0..=1 {
        assert_eq!(build_printed_prolongation(&y, i), build_fundamental_prolongation(&y, i));
    }
}

#[test]
fn constant_module_gives_block_diagonal_solution() {
    let m = DiffModule::from_rows(vec![vec![rf("0"), rf("1")], vec![rf("0"), rf("0")]]).unwrap();
    let y = load_solution(br#"{"matrix": [["1", "x"], ["0", "1"]]}"#).unwrap();
    for i in 0..=3 {
        let yi = build_fundamental_prolongation(&y, i);
        let diag: SolMatrix = Matrix::identity(i + 1).kron(&y);
        assert_eq!(yi, diag);
        assert!(verify_fundamental(&prolong(&m, i), &yi).unwrap().passed());
    }
}

#[test]
fn tensor_solutions_are_products() {
    let (m, y) = xt_example();
    let yy = sol_kron(&y, &y);
    assert_eq!(yy.get(0, 0), &SolExpr::theta().pow(2));
    assert!(verify_fundamental(&tensor(&m, &m), &yy).unwrap().passed());
}

#[test]
fn wrong_solution_is_reported() {
    let (m, _) = xt_example();
    let y = load_solution(br#"{"matrix": [["x"]]}"#).unwrap();
    assert!(!verify_fundamental(&m, &y).unwrap().passed());
    let singular = load_solution(br#"{"matrix": [["0"]]}"#).unwrap();
    let r = verify_fundamental(&m, &singular).unwrap();
    assert!(r.equation_holds && !r.determinant_nonzero());
}

#[test]
fn unrepresentable_entries_are_errors() {
    assert!(load_solution(br#"{"matrix": [["sin(x)"]]}"#).is_err());
    assert!(load_solution(br#"{"matrix": [["theta^(1/2)"]]}"#).is_err());
    assert!(load_solution(br#"{"matrix": [["1/theta"]]}"#).is_err());
    assert!(load_solution(br#"{"matrix": [["1", "2"]]}"#).is_err());
}
