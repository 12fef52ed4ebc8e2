//! End-to-end acceptance run: one timed criterion per line, nonzero exit on
//! any failure. Runs without the libtest harness so the table prints as is.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use prolongkit::diffmod::{
    dual, embedding_e, iterate_f, prolong, prolong_lemma, tensor, DiffModule,
};
use prolongkit::expr::{parse_expr, render};
use prolongkit::hopf::{check_axioms, h_antipode, DiffFrac, Group};
use prolongkit::matrix::{Matrix, RfMatrix};
use prolongkit::random::{random_module, random_operator, random_ratfunc, seeded, PolyShape};
use prolongkit::ratfield::{RatFunc, Var};
use prolongkit::solspace::{
    build_fundamental_prolongation, build_printed_prolongation, sol_kron, verify_fundamental,
    xt_example, SolExpr,
};
use prolongkit::suites::{
    check_conjugation, check_dual_swap, check_exactness, check_product_rule, random_modules,
};

const SEED: u64 = 2024;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rf(text: &str) -> RatFunc {
    parse_expr(text).expect("valid expression")
}

fn rf_rows(rows: &[&[&str]]) -> RfMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|e| rf(e)).collect()).collect())
        .expect("rectangular")
}

fn xt_module() -> DiffModule {
    DiffModule::from_rows(vec![vec![rf("t/x")]]).expect("1x1")
}

/// Modules of dimension 1, 2 and 3 in turn, entries of degree at most 2.
fn mixed_modules(seed: u64, count: usize) -> Vec<DiffModule> {
    let mut rng = seeded(seed);
    let shape = PolyShape::default();
    (0..count).map(|k| random_module(&mut rng, 1 + k % 3, &shape)).collect()
}

fn matrix_reproduction() -> Check {
    let m = xt_module();
    let a1 = prolong(&m, 1);
    ensure(a1.matrix() == &rf_rows(&[&["t/x", "0"], &["1/x", "t/x"]]), || {
        format!("A_1 = {:?}", a1.matrix())
    })?;
    let a2 = prolong(&m, 2);
    let expected = rf_rows(&[&["t/x", "0", "0"], &["1/x", "t/x", "0"], &["0", "2/x", "t/x"]]);
    ensure(a2.matrix() == &expected, || format!("A_2 = {:?}", a2.matrix()))?;
    let printed: Vec<String> = a2.matrix().entries().map(|(_, _, e)| e.to_string()).collect();
    let wanted = ["t/x", "0", "0", "1/x", "t/x", "0", "0", "2/x", "t/x"];
    ensure(printed == wanted, || format!("rendered A_2 = {printed:?}"))
}

fn solution_verification() -> Check {
    let (m, y) = xt_example();
    for i in 0..=3 {
        let report = verify_fundamental(&prolong(&m, i), &build_fundamental_prolongation(&y, i))
            .map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("Y_{i} does not verify: {report:?}"))?;
    }
    let stripped = verify_fundamental(&prolong(&m, 2), &build_printed_prolongation(&y, 2))
        .map_err(|e| e.to_string())?;
    ensure(!stripped.equation_holds, || "stripped Y_2 verifies".into())?;
    let first = stripped.first_failure.ok_or("no failing entry")?;
    ensure(first.block(m.dim()).0 == 2, || {
        format!("stripped Y_2 first fails in block row {}", first.block(m.dim()).0)
    })
}

fn conjugation() -> Check {
    let mods = mixed_modules(SEED, 100);
    for (k, m) in mods.iter().enumerate() {
        check_conjugation(m, 3).map_err(|e| format!("module {k}: {e}"))?;
    }
    Ok(())
}

fn embedding() -> Check {
    let mut mods = vec![xt_module()];
    mods.extend(random_modules(SEED + 1, 50, 2));
    for (k, m) in mods.iter().enumerate() {
        let e = embedding_e(m);
        let p = e.matrix();
        let lemma = prolong_lemma(m, 2);
        let iterated = iterate_f(m, 2);
        ensure(p.is_constant(), || format!("module {k}: P is not constant"))?;
        ensure(iterated.matrix().mul(p) == p.mul(lemma.matrix()), || {
            format!("module {k}: A^[2] P != P A^(2)")
        })?;
        ensure(e.rank() == 3 * m.dim(), || format!("module {k}: rank(P) = {}", e.rank()))?;
    }
    Ok(())
}

fn exactness() -> Check {
    let mods = mixed_modules(SEED + 2, 100);
    for (k, m) in mods.iter().enumerate() {
        check_exactness(m).map_err(|e| format!("module {k}: {e}"))?;
    }
    Ok(())
}

fn structure_maps() -> Check {
    let mods = random_modules(SEED + 3, 51, 2);
    for (k, pair) in mods.windows(2).enumerate() {
        check_product_rule(&pair[0], &pair[1]).map_err(|e| format!("module {k}: {e}"))?;
        check_dual_swap(&pair[0]).map_err(|e| format!("module {k}: {e}"))?;
    }
    Ok(())
}

fn tensor_and_dual() -> Check {
    let (m, y) = xt_example();
    let yy = sol_kron(&y, &y);
    ensure(yy.get(0, 0) == &SolExpr::theta().pow(2), || format!("Y ⊗ Y = {yy:?}"))?;
    let report = verify_fundamental(&tensor(&m, &m), &yy).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("theta^2 does not solve the tensor square: {report:?}"))?;

    let mut mods = vec![m];
    mods.extend(random_modules(SEED + 4, 5, 2));
    for m in &mods {
        let n = m.dim();
        let both = tensor(&dual(m), m);
        let identity = Matrix::from_fn(n * n, 1, |k, _| {
            if k / n == k % n {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        });
        ensure(both.matrix().mul(&identity).is_zero(), || {
            format!("identity is not horizontal in the dual tensor of {m:?}")
        })?;
    }
    Ok(())
}

fn hopf_axioms() -> Check {
    for group in [Group::Ga, Group::Gm] {
        for order in [3, 4] {
            let report = check_axioms(group, order);
            ensure(report.all_passed(), || format!("{group} N = {order}: {report:?}"))?;
        }
    }
    let y1 = DiffFrac::y(Group::Gm, 3, 1).map_err(|e| e.to_string())?;
    let s = h_antipode(&y1).map_err(|e| e.to_string())?;
    ensure(s.to_string() == "-y_1/y_0^2", || format!("Gm S(y_1) = {s}"))?;
    let note = check_axioms(Group::Ga, 3)
        .printed_antipode
        .ok_or("Ga report carries no printed-antipode note")?;
    ensure(note.first_conflict_p == 1, || {
        format!("printed antipode first conflicts at p = {}", note.first_conflict_p)
    })
}

fn field_layer() -> Check {
    let mut rng = seeded(SEED + 5);
    let shape = PolyShape::default();
    for case in 0..1000 {
        let a = random_ratfunc(&mut rng, &shape);
        let b = random_ratfunc(&mut rng, &shape);
        for v in [Var::X, Var::T] {
            let lhs = a.mul(&b).deriv(v);
            let rhs = a.deriv(v).mul(&b).add(&a.mul(&b.deriv(v)));
            ensure(lhs == rhs, || format!("case {case}: Leibniz fails for {a} and {b}"))?;
        }
        ensure(a.deriv(Var::X).deriv(Var::T) == a.deriv(Var::T).deriv(Var::X), || {
            format!("case {case}: derivations do not commute on {a}")
        })?;

        let v = if case % 2 == 0 { Var::X } else { Var::T };
        let d = random_operator(&mut rng, v, 3, &shape);
        let e = random_operator(&mut rng, v, 3, &shape);
        let f = random_operator(&mut rng, v, 3, &shape);
        let err = |e: prolongkit::ratfield::FieldError| e.to_string();
        let left = d.mul(&e).map_err(err)?.mul(&f).map_err(err)?;
        let right = d.mul(&e.mul(&f).map_err(err)?).map_err(err)?;
        ensure(left == right, || format!("case {case}: operator product does not associate"))?;
        ensure(d.mul(&e).map_err(err)?.apply(&a) == d.apply(&e.apply(&a)), || {
            format!("case {case}: operator product disagrees with composition")
        })?;
    }
    for case in 0..500 {
        let f = random_ratfunc(&mut rng, &shape);
        let text = render(&f);
        let back = parse_expr(&text).map_err(|e| format!("case {case}: {text}: {e}"))?;
        ensure(back == f, || format!("case {case}: {text} reparses as {back}"))?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "matrix reproduction", limit: Duration::from_millis(100), run: matrix_reproduction },
        Criterion { name: "solution verification", limit: Duration::from_secs(1), run: solution_verification },
        Criterion { name: "conjugation equivalence", limit: Duration::from_secs(30), run: conjugation },
        Criterion { name: "embedding E", limit: Duration::from_secs(10), run: embedding },
        Criterion { name: "exact sequence", limit: Duration::from_secs(5), run: exactness },
        Criterion { name: "structure maps", limit: Duration::from_secs(10), run: structure_maps },
        Criterion { name: "tensor and dual", limit: Duration::from_secs(1), run: tensor_and_dual },
        Criterion { name: "hopf axioms", limit: Duration::from_secs(5), run: hopf_axioms },
        Criterion { name: "field layer", limit: Duration::from_secs(10), run: field_layer },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < c.limit, || format!("took {elapsed:.3?}, limit {:?}", c.limit))
        });
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!(
            "{status} {} {:<24} {:>9.3} s  (limit {} s)",
            k + 1,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs_f64()
        );
        if let Err(why) = outcome {
            println!("       {why}");
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
