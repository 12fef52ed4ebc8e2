//! Prolongations of a module along ∂_t.
//!
//! The order-i prolongation has dimension (i+1)n. [`prolong`] and
//! [`prolong_lemma`] are both lower block-triangular in the t-derivatives
//! of A and differ by the constant change of basis of
//! [`change_basis_matrix`].

use num_rational::BigRational;
use num_traits::Zero;

use super::{const_to_rf, ConstMatrix, DiffModule, ModuleError, ModuleMorphism};
use crate::matrix::{Matrix, RfMatrix};
use crate::ratfield::{binomial, RatFunc, Var};

/// Which block layout to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProlongationKind {
    /// Blocks `C(r, c) ∂_t^{r-c} A`.
    Binomial,
    /// Blocks `C(i-c, r-c) ∂_t^{r-c} A`.
    Lemma,
    /// `i`-fold iteration of `B ↦ [[B, 0], [∂_t B, B]]`.
    Iterated,
}

pub fn prolong_by(kind: ProlongationKind, m: &DiffModule, i: usize) -> DiffModule {
    match kind {
        ProlongationKind::Binomial => prolong(m, i),
        ProlongationKind::Lemma => prolong_lemma(m, i),
        ProlongationKind::Iterated => iterate_f(m, i),
    }
}

fn t_derivatives(a: &RfMatrix, upto: usize) -> Vec<RfMatrix> {
    let mut out = Vec::with_capacity(upto + 1);
    out.push(a.clone());
    for k in 1..=upto {
        let next = out[k - 1].deriv(Var::T);
        out.push(next);
    }
    out
}

fn lower_block_triangular(
    a: &RfMatrix,
    i: usize,
    weight: impl Fn(usize, usize) -> u64,
) -> RfMatrix {
    let n = a.rows();
    let derivs = t_derivatives(a, i);
    Matrix::from_blocks(i + 1, i + 1, (n, n), |r, c| {
        if c > r {
            return None;
        }
        let w = weight(r, c);
        (w != 0).then(|| derivs[r - c].scale(&RatFunc::from_int(w as i64)))
    })
}

/// `A_i` with block `(r, c) = C(r, c) ∂_t^{r-c} A` for `c ≤ r`.
pub fn prolong(m: &DiffModule, i: usize) -> DiffModule {
    DiffModule::new(lower_block_triangular(m.matrix(), i, binomial)).expect("square")
}

/// `Ã_i` with block `(r, c) = C(i-c, r-c) ∂_t^{r-c} A` for `c ≤ r`.
pub fn prolong_lemma(m: &DiffModule, i: usize) -> DiffModule {
    let mat = lower_block_triangular(m.matrix(), i, |r, c| binomial(i - c, r - c));
    DiffModule::new(mat).expect("square")
}

/// The constant matrix C with `(C^T)^{-1} Ã_i C^T = A_i`.
///
/// C is upper block-triangular with block `(p, q) = C(i-q+p, p) I_n` for
/// `p ≤ q`.
pub fn change_basis_matrix(n: usize, i: usize) -> ConstMatrix {
    let scalar = Matrix::from_fn(i + 1, i + 1, |p, q| {
        if p <= q {
            BigRational::from_integer(binomial(i - q + p, p).into())
        } else {
            BigRational::zero()
        }
    });
    scalar.kron(&Matrix::identity(n))
}

/// Module with matrix `(C^T)^{-1} A C^T`.
///
/// C is constant in x, so this is exactly the gauge transform by
/// `(C^T)^{-1}` and the result is isomorphic to `m`.
pub fn conjugate_constant(m: &DiffModule, c: &ConstMatrix) -> Result<DiffModule, ModuleError> {
    if c.shape() != (m.dim(), m.dim()) {
        return Err(ModuleError::ShapeMismatch {
            expected_rows: m.dim(),
            expected_cols: m.dim(),
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    let ct = c.transpose();
    let ct_inv = ct.inverse().ok_or(ModuleError::Singular)?;
    let mat = const_to_rf(&ct_inv).mul(m.matrix()).mul(&const_to_rf(&ct));
    DiffModule::new(mat)
}

/// Applies `B ↦ [[B, 0], [∂_t B, B]]` `k` times.
pub fn iterate_f(m: &DiffModule, k: usize) -> DiffModule {
    let mut b = m.matrix().clone();
    for _ in 0..k {
        let n = b.rows();
        let bt = b.deriv(Var::T);
        let mut next = Matrix::zeros(2 * n, 2 * n);
        next.set_block(0, 0, &b);
        next.set_block(n, 0, &bt);
        next.set_block(n, n, &b);
        b = next;
    }
    DiffModule::new(b).expect("square")
}

/// The i-th prolongation of a morphism `P: M → N`, a morphism
/// `prolong(M, i) → prolong(N, i)` with blocks `C(r, c) ∂_t^{r-c} P`.
pub fn prolong_morphism(f: &ModuleMorphism, i: usize) -> ModuleMorphism {
    let p = f.matrix();
    let derivs = t_derivatives(p, i);
    let map = Matrix::from_blocks(i + 1, i + 1, p.shape(), |r, c| {
        (c <= r).then(|| derivs[r - c].scale(&RatFunc::from_int(binomial(r, c) as i64)))
    });
    ModuleMorphism::new_unchecked(prolong(f.src(), i), prolong(f.dst(), i), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmod::is_morphism;

    fn rf(s: &str) -> RatFunc {
        match s {
            "x" => RatFunc::x(),
            "t" => RatFunc::t(),
            "t/x" => RatFunc::t().div(&RatFunc::x()).unwrap(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn change_basis_layout() {
        let c = change_basis_matrix(1, 2);
        let as_ints: Vec<Vec<i64>> = c
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_integer().try_into().unwrap()).collect())
            .collect();
        assert_eq!(as_ints, vec![vec![1, 1, 1], vec![0, 2, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn lemma_and_binomial_agree_at_orders_zero_and_one() {
        let m = DiffModule::from_rows(vec![vec![rf("t/x")]]).unwrap();
        for i in 0..=1 {
            assert_eq!(prolong(&m, i), prolong_lemma(&m, i));
        }
        assert_ne!(prolong(&m, 2), prolong_lemma(&m, 2));
    }

    #[test]
    fn conjugation_recovers_binomial_form() {
        let m = DiffModule::from_rows(vec![
            vec![rf("t/x"), rf("x")],
            vec![RatFunc::one(), rf("t")],
        ])
        .unwrap();
        for i in 0..=4 {
            let c = change_basis_matrix(2, i);
            let conj = conjugate_constant(&prolong_lemma(&m, i), &c).unwrap();
            assert_eq!(conj, prolong(&m, i), "order {i}");
        }
    }

    #[test]
    fn singular_change_of_basis_is_rejected() {
        let m = DiffModule::from_rows(vec![vec![rf("x")]]).unwrap();
        let zero = Matrix::zeros(1, 1);
        assert_eq!(conjugate_constant(&m, &zero), Err(ModuleError::Singular));
    }

    #[test]
    fn iterated_order_two_layout() {
        let m = DiffModule::from_rows(vec![vec![rf("t/x")]]).unwrap();
        let a = rf("t/x");
        let at = a.deriv(Var::T);
        let att = at.deriv(Var::T);
        let z = RatFunc::zero();
        let expected = Matrix::from_rows(vec![
            vec![a.clone(), z.clone(), z.clone(), z.clone()],
            vec![at.clone(), a.clone(), z.clone(), z.clone()],
            vec![at.clone(), z.clone(), a.clone(), z.clone()],
            vec![att, at.clone(), at, a],
        ])
        .unwrap();
        assert_eq!(iterate_f(&m, 2).matrix(), &expected);
    }

    #[test]
    fn prolonged_identity_is_identity() {
        let m = DiffModule::from_rows(vec![vec![rf("x"), rf("t")], vec![rf("t"), rf("x")]]).unwrap();
        let id = ModuleMorphism::identity(&m);
        let p = prolong_morphism(&id, 3);
        assert_eq!(p.matrix(), &Matrix::identity(8));
        assert!(is_morphism(p.matrix(), p.src(), p.dst()).unwrap());
    }
}
