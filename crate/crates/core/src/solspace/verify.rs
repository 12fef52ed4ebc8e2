use serde::Deserialize;
use thiserror::Error;

use super::{SolExpr, SolMatrix};
use crate::diffmod::DiffModule;
use crate::expr::{eval_exponent, parse_ast, BinOp, ExprAst, ExprKind, ParseError, Symbol};
use crate::matrix::Matrix;
use crate::ratfield::{binomial, RatFunc, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolError {
    #[error("solution is {rows}x{cols}, module has dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("solution matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed solution document: {0}")]
    Json(String),
    #[error("entry ({row}, {col}): {source}")]
    Entry {
        row: usize,
        col: usize,
        #[source]
        source: ParseError,
    },
    #[error("entry ({row}, {col}) at byte {offset}: {reason}")]
    Unrepresentable {
        row: usize,
        col: usize,
        offset: usize,
        reason: &'static str,
    },
}

/// Where `∂_x Y = A Y` first fails, in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryFailure {
    pub row: usize,
    pub col: usize,
    pub lhs: SolExpr,
    pub rhs: SolExpr,
}

impl EntryFailure {
    /// Block coordinates for a prolongation of a module of dimension `n`.
    pub fn block(&self, n: usize) -> (usize, usize) {
        (self.row / n, self.col / n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalReport {
    pub equation_holds: bool,
    pub first_failure: Option<EntryFailure>,
    pub failing_entries: usize,
    pub determinant: SolExpr,
}

impl FundamentalReport {
    pub fn determinant_nonzero(&self) -> bool {
        !self.determinant.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.equation_holds && self.determinant_nonzero()
    }
}

fn block_prolongation(y: &SolMatrix, i: usize, weight: impl Fn(usize, usize) -> u64) -> SolMatrix {
    let mut derivs = vec![y.clone()];
    for k in 1..=i {
        let next = derivs[k - 1].sol_deriv(Var::T);
        derivs.push(next);
    }
    Matrix::from_blocks(i + 1, i + 1, y.shape(), |r, c| {
        (c <= r).then(|| {
            let w = RatFunc::from_int(weight(r, c) as i64);
            derivs[r - c].map(|s| s.scale(&w))
        })
    })
}

/// Block `(r, c) = C(r, c) ∂_t^{r-c} Y`, the fundamental matrix of
/// `prolong(M, i)` when `Y` is one for `M`.
pub fn build_fundamental_prolongation(y: &SolMatrix, i: usize) -> SolMatrix {
    block_prolongation(y, i, binomial)
}

/// Block `(r, c) = ∂_t^{r-c} Y` without binomial weights. Agrees with
/// [`build_fundamental_prolongation`] for `i ≤ 1` and is not a solution of
/// `prolong(M, i)` in general beyond that.
pub fn build_printed_prolongation(y: &SolMatrix, i: usize) -> SolMatrix {
    block_prolongation(y, i, |_, _| 1)
}

/// Checks `∂_x Y = A Y` entrywise and that `det Y` is a nonzero element of
/// the term algebra.
pub fn verify_fundamental(m: &DiffModule, y: &SolMatrix) -> Result<FundamentalReport, SolError> {
    if y.shape() != (m.dim(), m.dim()) {
        return Err(SolError::ShapeMismatch {
            rows: y.rows(),
            cols: y.cols(),
            dim: m.dim(),
        });
    }
    let a = m.matrix().map(|c| SolExpr::from_ratfunc(c.clone()));
    let lhs = y.sol_deriv(Var::X);
    let rhs = a.mul(y);
    let mut first_failure = None;
    let mut failing_entries = 0;
    for (r, c, l) in lhs.entries() {
        let rv = rhs.get(r, c);
        if l != rv {
            failing_entries += 1;
            if first_failure.is_none() {
                first_failure = Some(EntryFailure {
                    row: r,
                    col: c,
                    lhs: l.clone(),
                    rhs: rv.clone(),
                });
            }
        }
    }
    Ok(FundamentalReport {
        equation_holds: first_failure.is_none(),
        first_failure,
        failing_entries,
        determinant: y.det_bareiss(),
    })
}

/// The module `∂_x y = (t/x) y` with fundamental solution `(θ)`.
pub fn xt_example() -> (DiffModule, SolMatrix) {
    let t_over_x = RatFunc::t().div(&RatFunc::x()).expect("x is nonzero");
    let module = DiffModule::new(Matrix::from_fn(1, 1, |_, _| t_over_x.clone())).expect("1x1");
    (module, Matrix::from_fn(1, 1, |_, _| SolExpr::theta()))
}

/// Kronecker product, the fundamental matrix of a tensor product.
pub fn sol_kron(a: &SolMatrix, b: &SolMatrix) -> SolMatrix {
    a.kron(b)
}

fn eval_sol(ast: &ExprAst) -> Result<SolExpr, (usize, &'static str)> {
    let field_err = |e: ParseError| (e.offset(), field_reason(&e));
    match &ast.kind {
        ExprKind::Symbol(Symbol::Theta) => Ok(SolExpr::theta()),
        ExprKind::Symbol(Symbol::LogX) => Ok(SolExpr::logx()),
        ExprKind::Int(_) | ExprKind::Symbol(_) => {
            crate::expr::eval_ratfunc(ast).map(SolExpr::from).map_err(field_err)
        }
        ExprKind::Neg(inner) => Ok(eval_sol(inner)?.neg()),
        ExprKind::Binary(op, lhs, rhs) => {
            let a = eval_sol(lhs)?;
            match op {
                BinOp::Add => Ok(a.add(&eval_sol(rhs)?)),
                BinOp::Sub => Ok(a.sub(&eval_sol(rhs)?)),
                BinOp::Mul => Ok(a.mul(&eval_sol(rhs)?)),
                BinOp::Div => {
                    let d = eval_sol(rhs)?
                        .as_ratfunc()
                        .ok_or((rhs.start, "divisor involves theta or logx"))?;
                    let inv = d.inv().map_err(|_| (rhs.start, "division by zero"))?;
                    Ok(a.scale(&inv))
                }
                BinOp::Pow => {
                    let e = eval_exponent(rhs).map_err(field_err)?;
                    if e >= 0 {
                        if e > 64 {
                            return Err((rhs.start, "exponent too large"));
                        }
                        return Ok(a.pow(e as u32));
                    }
                    let base = a
                        .as_ratfunc()
                        .ok_or((lhs.start, "negative power of theta or logx"))?;
                    base.pow(e)
                        .map(SolExpr::from)
                        .map_err(|_| (lhs.start, "division by zero"))
                }
            }
        }
    }
}

fn field_reason(e: &ParseError) -> &'static str {
    match e {
        ParseError::DivisionByZero { .. } => "division by zero",
        ParseError::NonIntegerExponent { .. } => "exponent is not an integer constant",
        ParseError::PowerTooLarge { .. } => "power too large",
        _ => "invalid expression",
    }
}

/// Parses an element of Q(x, t)[θ, λ]; `theta` is x^t and `logx` is log x.
/// Division is allowed only by elements of Q(x, t).
pub fn parse_sol_expr(text: &str) -> Result<SolExpr, SolError> {
    parse_entry(text, 0, 0)
}

fn parse_entry(text: &str, row: usize, col: usize) -> Result<SolExpr, SolError> {
    let ast = parse_ast(text).map_err(|source| SolError::Entry { row, col, source })?;
    eval_sol(&ast).map_err(|(offset, reason)| SolError::Unrepresentable {
        row,
        col,
        offset,
        reason,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDoc {
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
    matrix: Vec<Vec<String>>,
}

/// Reads `{"name": str?, "matrix": [[expr]]}` with solution-algebra entries.
pub fn load_solution(doc: &[u8]) -> Result<SolMatrix, SolError> {
    let doc: SolutionDoc = serde_json::from_slice(doc).map_err(|e| SolError::Json(e.to_string()))?;
    let rows = doc.matrix.len();
    let cols = doc.matrix.first().map_or(0, Vec::len);
    if rows == 0 || doc.matrix.iter().any(|r| r.len() != rows) {
        let cols = doc.matrix.iter().map(Vec::len).find(|&l| l != rows).unwrap_or(cols);
        return Err(SolError::NotSquare { rows, cols });
    }
    let mut out = Vec::with_capacity(rows);
    for (r, cells) in doc.matrix.iter().enumerate() {
        let row = cells
            .iter()
            .enumerate()
            .map(|(c, text)| parse_entry(text, r, c))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    Ok(Matrix::from_rows(out).expect("square checked"))
}
