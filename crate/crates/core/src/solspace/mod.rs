//! Solutions in Q(x, t)[θ, λ] with θ = x^t and λ = log x.
//!
//! The rules ∂_x θ = (t/x) θ, ∂_t θ = λ θ, ∂_x λ = 1/x, ∂_t λ = 0 make this
//! ring closed under both derivations, which is enough to check fundamental
//! solution matrices of the x^t family symbolically.

mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::{ExactDiv, Matrix, Ring};
use crate::ratfield::{RatFunc, Var};

pub use verify::{
    build_fundamental_prolongation, build_printed_prolongation, load_solution, parse_sol_expr,
    sol_kron, verify_fundamental, xt_example, EntryFailure, FundamentalReport, SolError,
};

/// `(deg_θ, deg_λ)`.
pub type SolMonomial = (u32, u32);

/// Polynomial in θ and λ with coefficients in Q(x, t). No zero coefficient
/// is stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SolExpr {
    terms: BTreeMap<SolMonomial, RatFunc>,
}

pub type SolMatrix = Matrix<SolExpr>;

impl SolExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn from_ratfunc(c: RatFunc) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(m: SolMonomial, c: RatFunc) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    /// θ = x^t.
    pub fn theta() -> Self {
        Self::monomial((1, 0), RatFunc::one())
    }

    /// λ = log x.
    pub fn logx() -> Self {
        Self::monomial((0, 1), RatFunc::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SolMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if `self` has no θ or λ.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: SolMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, c)| (m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, v)| (m, v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Partial derivative by the θ/λ chain rules.
    pub fn deriv(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term((a, b), c.deriv(v));
            match v {
                Var::X => {
                    if a > 0 {
                        let t_over_x = RatFunc::t().div(&RatFunc::x()).expect("x is nonzero");
                        out.add_term((a, b), c.mul(&t_over_x).scale_int(u64::from(a)));
                    }
                    if b > 0 {
                        let inv_x = RatFunc::x().inv().expect("x is nonzero");
                        out.add_term((a, b - 1), c.mul(&inv_x).scale_int(u64::from(b)));
                    }
                }
                Var::T => {
                    if a > 0 {
                        out.add_term((a, b + 1), c.scale_int(u64::from(a)));
                    }
                }
            }
        }
        out
    }

    pub fn deriv_n(&self, v: Var, k: usize) -> Self {
        (0..k).fold(self.clone(), |s, _| s.deriv(v))
    }

    /// Exact quotient in Q(x, t)[θ, λ], by lex division on `(deg_θ, deg_λ)`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (&lead_m, lead_c) = d.terms.last_key_value()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&m, c)) = rem.terms.last_key_value() {
            if m.0 < lead_m.0 || m.1 < lead_m.1 {
                return None;
            }
            let q = Self::monomial(
                (m.0 - lead_m.0, m.1 - lead_m.1),
                c.div(lead_c).expect("nonzero leading coefficient"),
            );
            rem = rem.sub(&q.mul(d));
            quot = quot.add(&q);
        }
        Some(quot)
    }
}

impl From<RatFunc> for SolExpr {
    fn from(c: RatFunc) -> Self {
        Self::from_ratfunc(c)
    }
}

impl Ring for SolExpr {
    fn zero() -> Self {
        SolExpr::zero()
    }
    fn one() -> Self {
        SolExpr::one()
    }
    fn is_zero(&self) -> bool {
        SolExpr::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        SolExpr::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        SolExpr::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SolExpr::mul(self, other)
    }
    fn neg(&self) -> Self {
        SolExpr::neg(self)
    }
}

impl ExactDiv for SolExpr {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        SolExpr::div_exact(self, d)
    }
}

impl SolMatrix {
    pub fn sol_deriv(&self, v: Var) -> Self {
        self.map(|s| s.deriv(v))
    }
}

/// `∂_var s`.
pub fn sol_deriv(s: &SolExpr, var: Var) -> SolExpr {
    s.deriv(var)
}

impl fmt::Display for SolExpr {
    /// Sum of `(coefficient)*theta^a*logx^b` terms, highest first; the
    /// output is accepted by [`parse_sol_expr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() || (a == 0 && b == 0) {
                factors.push(format!("({c})"));
            }
            match a {
                0 => {}
                1 => factors.push("theta".into()),
                _ => factors.push(format!("theta^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("logx".into()),
                _ => factors.push(format!("logx^{b}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolExpr({self})")
    }
}
