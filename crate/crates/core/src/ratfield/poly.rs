//! Sparse polynomials in Q[x, t].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zgcd;
use super::Var;

/// Exponent pair `(deg_x, deg_t)`.
///
/// The derived ordering is lex with x > t, which is the monomial order used
/// for leading terms throughout the crate.
pub type Monomial = (u32, u32);

/// A polynomial in x and t with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(
            match v {
                Var::X => (1, 0),
                Var::T => (0, 1),
            },
            BigRational::one(),
        )
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == (0, 0))
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.get(&(0, 0)).cloned()
        } else {
            None
        }
    }

    /// Leading term under lex order with x > t.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading().map(|(_, c)| c)
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(dx, dt)| match v {
                Var::X => dx,
                Var::T => dt,
            })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, dt)| dx + dt).max()
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if self.terms.len() * other.terms.len() <= 16 {
            let mut out = Self::zero();
            for (&(ax, at), ca) in &self.terms {
                for (&(bx, bt), cb) in &other.terms {
                    out.add_term((ax + bx, at + bt), ca * cb);
                }
            }
            return out;
        }
        let (a, da) = to_xpoly(self);
        let (b, db) = to_xpoly(other);
        from_xpoly(&zgcd::xmul(&a, &b), &(da * db))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn deriv(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (&(dx, dt), c) in &self.terms {
            let (k, m) = match v {
                Var::X if dx > 0 => (dx, (dx - 1, dt)),
                Var::T if dt > 0 => (dt, (dx, dt - 1)),
                _ => continue,
            };
            out.add_term(m, c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // With d made primitive over Z, Gauss's lemma keeps the quotient
        // integral, so the division can run in Z[t][x].
        let (a, da) = to_xpoly(self);
        let (b, db) = to_xpoly(d);
        let content = zgcd::xint_content(&b);
        let b = zgcd::xdiv_int(&b, &content);
        let q = zgcd::xdiv_exact(&a, &b)?;
        let scale = BigRational::new(db, da * content);
        Some(from_xpoly(&q, &BigInt::one()).scale(&scale))
    }

    /// Monic greatest common divisor (lex leading coefficient 1).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        // Split off monomial contents: x and t cannot divide the cofactors.
        let (ax, at) = self.monomial_content();
        let (bx, bt) = other.monomial_content();
        let m = (ax.min(bx), at.min(bt));
        let a = self.shift_down((ax, at));
        let b = other.shift_down((bx, bt));
        let g = if a.is_constant() || b.is_constant() {
            Self::one()
        } else {
            from_xpoly(&zgcd::xgcd(&to_xpoly(&a).0, &to_xpoly(&b).0), &BigInt::one()).monic()
        };
        g.shift_up(m)
    }

    /// Largest monomial dividing every term.
    fn monomial_content(&self) -> Monomial {
        self.terms
            .keys()
            .fold((u32::MAX, u32::MAX), |(mx, mt), &(dx, dt)| (mx.min(dx), mt.min(dt)))
    }

    fn shift_down(&self, (sx, st): Monomial) -> Self {
        if (sx, st) == (0, 0) {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(&(dx, dt), c)| ((dx - sx, dt - st), c.clone())).collect(),
        }
    }

    fn shift_up(&self, (sx, st): Monomial) -> Self {
        if (sx, st) == (0, 0) {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(&(dx, dt), c)| ((dx + sx, dt + st), c.clone())).collect(),
        }
    }

    /// Substitutes rational values for x and t.
    pub fn eval(&self, x: &BigRational, t: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(dx, dt), c)| {
            acc + c * num_traits::pow(x.clone(), dx as usize) * num_traits::pow(t.clone(), dt as usize)
        })
    }

    pub(crate) fn fmt_expr(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(dx, dt), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            for (name, d) in [("x", dx), ("t", dt)] {
                match d {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{d}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }

    /// True when the rendered form is a bare `x`, `t^k`, etc.
    pub(crate) fn is_unit_power(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(&(dx, dt), c)| c.is_one() && (dx == 0) != (dt == 0))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_expr(f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

// Z[t][x] view of the polynomial with denominators cleared.
/// Integer image `(P, m)` with `p = P / m`.
pub(super) fn to_xpoly(p: &MPoly) -> (zgcd::XPoly, BigInt) {
    let lcm = p
        .terms
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dx = p.degree_in(Var::X).unwrap_or(0) as usize;
    let mut out: zgcd::XPoly = vec![Vec::new(); dx + 1];
    for (&(ex, et), c) in &p.terms {
        let slot = &mut out[ex as usize];
        if slot.len() <= et as usize {
            slot.resize(et as usize + 1, BigInt::zero());
        }
        slot[et as usize] = c.numer() * (&lcm / c.denom());
    }
    (out, lcm)
}

/// `P / m` back in Q[x, t].
pub(super) fn from_xpoly(p: &[zgcd::ZPoly], m: &BigInt) -> MPoly {
    let terms = p
        .iter()
        .enumerate()
        .flat_map(|(ex, coeff)| {
            coeff.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(et, c)| {
                ((ex as u32, et as u32), BigRational::new(c.clone(), m.clone()))
            })
        })
        .collect();
    MPoly { terms }
}
