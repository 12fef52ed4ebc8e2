use super::{binomial, FieldError, RatFunc, Var};

/// A linear differential operator `Σ a_q ∂^q` in K[∂_x] or K[∂_t].
///
/// `coeffs[q]` is the coefficient of `∂^q`. The highest stored coefficient
/// is nonzero; the zero operator has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinDiffOp {
    var: Var,
    coeffs: Vec<RatFunc>,
}

impl LinDiffOp {
    pub fn new(var: Var, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        Self { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn identity(var: Var) -> Self {
        Self::new(var, vec![RatFunc::one()])
    }

    /// The bare derivation `∂`.
    pub fn d(var: Var) -> Self {
        Self::new(var, vec![RatFunc::zero(), RatFunc::one()])
    }

    /// Multiplication by `a` (order 0).
    pub fn scalar(var: Var, a: RatFunc) -> Self {
        Self::new(var, vec![a])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_var(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = RatFunc::zero();
        let coeffs = (0..len)
            .map(|q| {
                let a = self.coeffs.get(q).unwrap_or(&zero);
                let b = other.coeffs.get(q).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        Ok(Self::new(self.var, coeffs))
    }

    /// Composition `self · other`, using `∂^i b = Σ_k C(i,k) ∂^k(b) ∂^(i-k)`.
    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, b) in other.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut db = b.clone();
            for k in 0..self.coeffs.len() {
                // db = ∂^k(b)
                for (i, a) in self.coeffs.iter().enumerate().skip(k) {
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&db).scale_int(binomial(i, k));
                    let slot = &mut out[i - k + j];
                    *slot = slot.add(&term);
                }
                db = db.deriv(self.var);
            }
        }
        Ok(Self::new(self.var, out))
    }

    /// The natural action on K: `Σ a_q ∂^q(f)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut df = f.clone();
        for a in &self.coeffs {
            acc = acc.add(&a.mul(&df));
            df = df.deriv(self.var);
        }
        acc
    }

    fn check_var(&self, other: &Self) -> Result<(), FieldError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(FieldError::DerivationMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_rule() {
        // ∂ · x = x·∂ + 1
        let lhs = LinDiffOp::d(Var::X).mul(&LinDiffOp::scalar(Var::X, RatFunc::x())).unwrap();
        let rhs = LinDiffOp::new(Var::X, vec![RatFunc::one(), RatFunc::x()]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_is_neutral() {
        let d = LinDiffOp::new(Var::T, vec![RatFunc::x(), RatFunc::t(), RatFunc::from_int(3)]);
        assert_eq!(LinDiffOp::identity(Var::T).mul(&d).unwrap(), d);
        assert_eq!(d.mul(&LinDiffOp::identity(Var::T)).unwrap(), d);
    }

    #[test]
    fn squared_derivation_past_constant() {
        let f = RatFunc::from_int(5);
        let dd = LinDiffOp::d(Var::X).mul(&LinDiffOp::d(Var::X)).unwrap();
        let got = dd.mul(&LinDiffOp::scalar(Var::X, f.clone())).unwrap();
        assert_eq!(got, LinDiffOp::new(Var::X, vec![RatFunc::zero(), RatFunc::zero(), f]));
        assert_eq!(got.order(), Some(2));
    }

    #[test]
    fn application() {
        assert!(LinDiffOp::d(Var::X).apply(&RatFunc::t()).is_zero());
        let op = LinDiffOp::new(Var::X, vec![RatFunc::one(), RatFunc::x()]);
        assert_eq!(op.apply(&RatFunc::x()), RatFunc::x().scale_int(2));
    }

    #[test]
    fn mismatched_tags() {
        let e = LinDiffOp::d(Var::X).mul(&LinDiffOp::d(Var::T));
        assert_eq!(e, Err(FieldError::DerivationMismatch));
    }
}
