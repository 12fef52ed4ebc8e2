//! Differential modules over K = Q(x, t).
//!
//! A module of dimension n is stored as the n×n matrix A of ∂_x in a fixed
//! ordered basis. On basis vectors ∂_x e_i = -Σ_j a_ji e_j, so a coordinate
//! vector a is horizontal (killed by ∂_x) iff ∂_x a = A a. Everything else
//! follows from that convention:
//!
//! * a K-linear map with matrix P is a morphism M → N iff
//!   ∂_x P = A_N P - P A_M,
//! * the dual has matrix -A^T,
//! * the tensor product has matrix A ⊗ I + I ⊗ B (Kronecker order),
//! * the direct sum is block-diagonal.

mod prolong;
mod structure;

use num_rational::BigRational;
use thiserror::Error;

use crate::matrix::{Matrix, RfMatrix};
use crate::ratfield::{RatFunc, Var};

pub use prolong::{
    change_basis_matrix, conjugate_constant, iterate_f, prolong, prolong_by, prolong_lemma,
    prolong_morphism, ProlongationKind,
};
pub use structure::{
    dual_swap_diagram, dual_swap_g, embedding_e, inclusion_i, product_rule_map, projection_phi,
    DualSwapDiagram,
};

/// Matrix with rational constant entries.
pub type ConstMatrix = Matrix<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module matrix must be square and nonempty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{labels} basis labels for a module of dimension {dim}")]
    LabelCount { labels: usize, dim: usize },
    #[error("change-of-basis matrix is singular")]
    Singular,
    #[error("matrix does not commute with the action of d/dx")]
    NotAMorphism,
    #[error("morphisms are not composable")]
    NotComposable,
}

/// A finite-dimensional ∂_x-module over Q(x, t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffModule {
    matrix: RfMatrix,
    labels: Option<Vec<String>>,
}

impl DiffModule {
    pub fn new(matrix: RfMatrix) -> Result<Self, ModuleError> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(ModuleError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(Self {
            matrix,
            labels: None,
        })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self, ModuleError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let m = Matrix::from_rows(rows).ok_or(ModuleError::NotSquare {
            rows: nrows,
            cols: ncols,
        })?;
        Self::new(m)
    }

    /// The one-dimensional module K with ∂_x acting as the derivation.
    pub fn trivial() -> Self {
        Self::new(Matrix::zeros(1, 1)).expect("1x1 is square")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ModuleError> {
        if labels.len() != self.dim() {
            return Err(ModuleError::LabelCount {
                labels: labels.len(),
                dim: self.dim(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RfMatrix {
        self.matrix
    }

    /// True when no entry depends on t.
    pub fn is_constant_in_t(&self) -> bool {
        self.matrix.entries().all(|(_, _, a)| a.deriv(Var::T).is_zero())
    }

    /// Same action, labels dropped; module equality then compares matrices.
    pub fn unlabeled(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            labels: None,
        }
    }
}

/// Tensor product with matrix `A ⊗ I_m + I_n ⊗ B`.
pub fn tensor(m: &DiffModule, n: &DiffModule) -> DiffModule {
    let a = m.matrix();
    let b = n.matrix();
    let mat = a
        .kron(&Matrix::identity(b.rows()))
        .add(&Matrix::identity(a.rows()).kron(b));
    DiffModule::new(mat).expect("square")
}

/// Direct sum with block-diagonal matrix.
pub fn dsum(m: &DiffModule, n: &DiffModule) -> DiffModule {
    DiffModule::new(m.matrix().direct_sum(n.matrix())).expect("square")
}

/// Dual module with matrix `-A^T`.
pub fn dual(m: &DiffModule) -> DiffModule {
    DiffModule::new(m.matrix().transpose().neg()).expect("square")
}

/// Checks `∂_x P = A_N P - P A_M` exactly.
pub fn is_morphism(p: &RfMatrix, m: &DiffModule, n: &DiffModule) -> Result<bool, ModuleError> {
    if p.shape() != (n.dim(), m.dim()) {
        return Err(ModuleError::ShapeMismatch {
            expected_rows: n.dim(),
            expected_cols: m.dim(),
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    let lhs = p.deriv(Var::X);
    let rhs = n.matrix().mul(p).sub(&p.mul(m.matrix()));
    Ok(lhs == rhs)
}

/// A K-linear map commuting with ∂_x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    src: DiffModule,
    dst: DiffModule,
    map: RfMatrix,
}

impl ModuleMorphism {
    /// Validates shape and the morphism condition.
    pub fn new(src: DiffModule, dst: DiffModule, map: RfMatrix) -> Result<Self, ModuleError> {
        if !is_morphism(&map, &src, &dst)? {
            return Err(ModuleError::NotAMorphism);
        }
        Ok(Self { src, dst, map })
    }

    /// Skips the morphism check; shape must still match. Used by
    /// constructors whose output is checked in tests.
    pub(crate) fn new_unchecked(src: DiffModule, dst: DiffModule, map: RfMatrix) -> Self {
        debug_assert_eq!(map.shape(), (dst.dim(), src.dim()));
        Self { src, dst, map }
    }

    pub fn identity(m: &DiffModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.dim()))
    }

    pub fn src(&self) -> &DiffModule {
        &self.src
    }

    pub fn dst(&self) -> &DiffModule {
        &self.dst
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.map
    }

    pub fn is_valid(&self) -> bool {
        is_morphism(&self.map, &self.src, &self.dst).unwrap_or(false)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMorphism) -> Result<ModuleMorphism, ModuleError> {
        if first.dst.matrix() != self.src.matrix() {
            return Err(ModuleError::NotComposable);
        }
        Ok(Self::new_unchecked(
            first.src.clone(),
            self.dst.clone(),
            self.map.mul(&first.map),
        ))
    }

    /// The transpose map `N* → M*`.
    pub fn dual(&self) -> ModuleMorphism {
        Self::new_unchecked(dual(&self.dst), dual(&self.src), self.map.transpose())
    }

    pub fn rank(&self) -> usize {
        self.map.rank()
    }
}

/// Embeds a constant rational matrix into Q(x, t).
pub fn const_to_rf(c: &ConstMatrix) -> RfMatrix {
    c.map(|v| RatFunc::from_rational(v.clone()))
}
