use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{from_xpoly, to_xpoly, MPoly};
use super::zgcd::{
    xadd, xderiv_t, xderiv_x, xdiv_exact, xgcd, xis_unit, xmul, xneg, xscale_int, XPoly, ZPoly,
};
use super::{FieldError, Var};

/// An element of Q(x, t) in canonical form.
///
/// Invariants: the denominator is nonzero and monic under lex order with
/// x > t, and numerator and denominator share no common factor. Zero is
/// `0/1`. Two values are equal as field elements iff they are structurally
/// equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return Self {
                num: num.scale(&inv),
                den: MPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").recip();
        Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        // Henrici: only the common part of the denominators can cancel.
        let (an, ad) = self.int_parts();
        let (bn, bd) = other.int_parts();
        let g = xgcd(&ad, &bd);
        if xis_unit(&g) {
            let num = xadd(&xmul(&an, &bd), &xmul(&bn, &ad));
            return Self::from_int_parts(&num, &xmul(&ad, &bd));
        }
        let ad = exact_quo(&ad, &g);
        let bd = exact_quo(&bd, &g);
        let num = xadd(&xmul(&an, &bd), &xmul(&bn, &ad));
        if num.is_empty() {
            return Self::zero();
        }
        let h = xgcd(&num, &g);
        let (num, g) = if xis_unit(&h) { (num, g) } else { (exact_quo(&num, &h), exact_quo(&g, &h)) };
        Self::from_int_parts(&num, &xmul(&xmul(&ad, &bd), &g))
    }

    /// Integer numerator and denominator with the same quotient.
    fn int_parts(&self) -> (XPoly, XPoly) {
        let (num, num_scale) = to_xpoly(&self.num);
        let (den, den_scale) = to_xpoly(&self.den);
        (xscale_int(&num, &den_scale), xscale_int(&den, &num_scale))
    }

    /// Canonical form of `num / den` for coprime integer parts.
    fn from_int_parts(num: &[ZPoly], den: &[ZPoly]) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        let lc = den
            .last()
            .and_then(|c| c.last())
            .expect("nonzero denominator");
        Self {
            num: from_xpoly(num, lc),
            den: from_xpoly(den, lc),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let (an, ad) = self.int_parts();
        let (bn, bd) = other.int_parts();
        let g1 = xgcd(&an, &bd);
        let g2 = xgcd(&bn, &ad);
        let num = xmul(&exact_quo(&an, &g1), &exact_quo(&bn, &g2));
        let den = xmul(&exact_quo(&ad, &g2), &exact_quo(&bd, &g1));
        Self::from_int_parts(&num, &den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: u64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Partial derivative by the quotient rule.
    pub fn deriv(&self, v: Var) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.deriv(v));
        }
        let (num, den) = self.int_parts();
        let deriv = |p: &[ZPoly]| match v {
            Var::X => xderiv_x(p),
            Var::T => xderiv_t(p),
        };
        let dn = deriv(&num);
        let dd = deriv(&den);
        if dd.is_empty() {
            let h = xgcd(&dn, &den);
            return Self::from_int_parts(&exact_quo(&dn, &h), &exact_quo(&den, &h));
        }
        // With g = gcd(d, d'), any common factor of the result lies in g.
        let g = xgcd(&den, &dd);
        let d_g = exact_quo(&den, &g);
        let dd_g = exact_quo(&dd, &g);
        let top = xadd(&xmul(&dn, &d_g), &xneg(&xmul(&num, &dd_g)));
        if top.is_empty() {
            return Self::zero();
        }
        let h = xgcd(&top, &g);
        Self::from_int_parts(&exact_quo(&top, &h), &exact_quo(&xmul(&den, &d_g), &h))
    }

    /// k-fold partial derivative.
    pub fn deriv_n(&self, v: Var, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.deriv(v))
    }

    /// Evaluates at a rational point, or `None` on a pole.
    pub fn eval(&self, x: &BigRational, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x, t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x, t) / d)
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_expr(f);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            self.num.fmt_expr(f)?;
        }
        if self.den.is_unit_power() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

/// Exact quotient by a gcd.
fn exact_quo(p: &[ZPoly], d: &[ZPoly]) -> XPoly {
    if xis_unit(d) && d[0][0].is_one() {
        return p.to_vec();
    }
    xdiv_exact(p, d).expect("gcd divides")
}
