use std::fs;
use std::path::Path;

use prolongkit::diffmod::{dsum, dual, prolong, prolong_by, tensor, DiffModule, ProlongationKind};
use prolongkit::expr::{load_module, ModuleDoc};
use prolongkit::hopf::{check_axioms, Group};
use prolongkit::solspace::{
    build_fundamental_prolongation, build_printed_prolongation, load_solution, verify_fundamental,
    xt_example, SolMatrix,
};
use prolongkit::suites::{
    conjugation_suite, dual_swap_suite, embedding_suite, exactness_suite, product_rule_suite,
    random_modules, SuiteReport,
};
use serde_json::{json, Value};

use crate::report::{Outcome, Report};
use crate::{CheckArgs, CheckName, Example, GroupArg, KindArg};

/// Input problems; reported with exit code 2.
pub type InputResult<T> = Result<T, String>;

fn read(path: &Path) -> InputResult<Vec<u8>> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn read_module(path: &Path) -> InputResult<DiffModule> {
    load_module(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_solution(path: &Path) -> InputResult<SolMatrix> {
    load_solution(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn module_json(m: &DiffModule) -> Value {
    serde_json::to_value(ModuleDoc::from_module(m, None)).expect("module documents serialize")
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

impl From<KindArg> for ProlongationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Binomial => ProlongationKind::Binomial,
            KindArg::Lemma => ProlongationKind::Lemma,
            KindArg::Iterated => ProlongationKind::Iterated,
        }
    }
}

pub fn prolong_cmd(file: &Path, order: usize, kind: KindArg) -> InputResult<Report> {
    let m = read_module(file)?;
    if kind == KindArg::Iterated && order > 12 {
        return Err(format!("iterated prolongation of order {order} is too large"));
    }
    let out = prolong_by(kind.into(), &m, order);
    let inputs = json!({"file": path_str(file), "i": order, "kind": kind.name()});
    Ok(Report::new("prolong", inputs, Outcome::Result)
        .with_result(module_json(&out))
        .with_summary(format!(
            "prolong ({}, i = {order}): {n}x{n} -> {d}x{d}",
            kind.name(),
            n = m.dim(),
            d = out.dim()
        )))
}

pub struct VerifyInput<'a> {
    pub file: Option<&'a Path>,
    pub order: usize,
    pub example: Option<Example>,
    pub solution: Option<&'a Path>,
    pub strip_binomials: bool,
}

pub fn verify_cmd(args: VerifyInput<'_>) -> InputResult<Report> {
    let (module, base, mut inputs) = match (args.example, args.solution) {
        (Some(Example::Xt), None) => {
            let (m, y) = xt_example();
            (m, y, json!({"example": "xt"}))
        }
        (None, Some(sol)) => {
            let file = args.file.ok_or("--solution needs a module file")?;
            let m = read_module(file)?;
            let y = read_solution(sol)?;
            let inputs = json!({"file": path_str(file), "solution": path_str(sol)});
            (m, y, inputs)
        }
        (Some(_), Some(_)) => return Err("--example and --solution are exclusive".into()),
        (None, None) => return Err("one of --example or --solution is required".into()),
    };
    inputs["i"] = json!(args.order);
    inputs["strip_binomials"] = json!(args.strip_binomials);
    let y = if args.strip_binomials {
        build_printed_prolongation(&base, args.order)
    } else {
        build_fundamental_prolongation(&base, args.order)
    };
    let target = prolong(&module, args.order);
    let report = verify_fundamental(&target, &y).map_err(|e| e.to_string())?;
    let n = module.dim();
    let outcome = if report.passed() { Outcome::Pass } else { Outcome::Fail };
    let mut out = Report::new("verify", inputs, outcome).with_result(json!({
        "equation_holds": report.equation_holds,
        "determinant_nonzero": report.determinant_nonzero(),
        "determinant": report.determinant.to_string(),
        "failing_entries": report.failing_entries,
    }));
    let mut summary = format!(
        "verify (i = {}): d/dx Y = A Y {}, det Y {}",
        args.order,
        if report.equation_holds { "holds" } else { "FAILS" },
        if report.determinant_nonzero() { "nonzero" } else { "ZERO" },
    );
    if let Some(f) = &report.first_failure {
        let (br, bc) = f.block(n);
        out.witnesses.push(json!({
            "row": f.row,
            "col": f.col,
            "block_row": br,
            "block_col": bc,
            "lhs": f.lhs.to_string(),
            "rhs": f.rhs.to_string(),
        }));
        summary.push_str(&format!("; first failure at entry ({}, {}), block ({br}, {bc})", f.row, f.col));
    }
    Ok(out.with_summary(summary))
}

fn suite_report(suite: SuiteReport, inputs: Value) -> Report {
    let outcome = if suite.passed() { Outcome::Pass } else { Outcome::Fail };
    let summary = format!(
        "check {}: {}/{} cases pass",
        suite.suite,
        suite.cases - suite.failures.len(),
        suite.cases
    );
    let mut r = Report::new("check", inputs, outcome).with_summary(summary);
    r.witnesses = suite
        .failures
        .iter()
        .map(|f| serde_json::to_value(f).expect("failures serialize"))
        .collect();
    r.result = Some(json!({"suite": suite.suite, "cases": suite.cases, "failed": suite.failures.len()}));
    r
}

pub fn check_cmd(args: &CheckArgs, seed: u64) -> InputResult<Report> {
    if args.name == CheckName::Hopf {
        return Ok(hopf_check(args));
    }
    if args.n == 0 {
        return Err("--n must be at least 1".into());
    }
    let (mods, mut inputs) = match &args.file {
        Some(f) => (vec![read_module(f)?], json!({"file": path_str(f)})),
        None => (
            random_modules(seed, args.count, args.n),
            json!({"seed": seed, "count": args.count, "n": args.n}),
        ),
    };
    inputs["check"] = json!(args.name.name());
    let suite = match args.name {
        CheckName::Conjugation => {
            inputs["i"] = json!(args.i);
            conjugation_suite(&mods, args.i)
        }
        CheckName::Embedding => embedding_suite(&mods),
        CheckName::Exactness => exactness_suite(&mods),
        CheckName::ProductRule => product_rule_suite(&mods),
        CheckName::DualSwap => dual_swap_suite(&mods),
        CheckName::Hopf => unreachable!("handled above"),
    };
    Ok(suite_report(suite, inputs))
}

fn hopf_check(args: &CheckArgs) -> Report {
    let groups: Vec<Group> = match args.group {
        Some(GroupArg::Ga) => vec![Group::Ga],
        Some(GroupArg::Gm) => vec![Group::Gm],
        None => vec![Group::Ga, Group::Gm],
    };
    let inputs = json!({
        "check": "hopf",
        "groups": groups.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "order": args.order,
    });
    let reports: Vec<_> = groups.iter().map(|&g| check_axioms(g, args.order)).collect();
    let passed = reports.iter().all(|r| r.all_passed());
    let mut out = Report::new("check", inputs, if passed { Outcome::Pass } else { Outcome::Fail });
    let mut summary = Vec::new();
    for r in &reports {
        let ok = r.results.iter().filter(|a| a.passed).count();
        summary.push(format!("{} (N = {}): {ok}/{} axiom families pass", r.group, r.order, r.results.len()));
        for a in r.results.iter().filter(|a| !a.passed) {
            out.witnesses.push(json!({"group": r.group, "axiom": a.axiom, "witness": a.witness}));
        }
        if let Some(note) = &r.printed_antipode {
            out.notes.push(format!("{}: {}", r.group, note.message));
            summary.push(format!("note: {}", note.message));
        }
    }
    out.result = Some(serde_json::to_value(&reports).expect("reports serialize"));
    out.with_summary(format!("check hopf: {}", summary.join("; ")))
}

pub enum BinaryOp {
    Tensor,
    Dsum,
}

pub fn binary_cmd(op: BinaryOp, a: &Path, b: &Path) -> InputResult<Report> {
    let (ma, mb) = (read_module(a)?, read_module(b)?);
    let (name, out) = match op {
        BinaryOp::Tensor => ("tensor", tensor(&ma, &mb)),
        BinaryOp::Dsum => ("dsum", dsum(&ma, &mb)),
    };
    let inputs = json!({"a": path_str(a), "b": path_str(b)});
    Ok(Report::new(name, inputs, Outcome::Result)
        .with_result(module_json(&out))
        .with_summary(format!("{name}: {} and {} -> dimension {}", ma.dim(), mb.dim(), out.dim())))
}

pub fn dual_cmd(a: &Path) -> InputResult<Report> {
    let m = read_module(a)?;
    let out = dual(&m);
    Ok(Report::new("dual", json!({"a": path_str(a)}), Outcome::Result)
        .with_result(module_json(&out))
        .with_summary(format!("dual: dimension {}", out.dim())))
}
