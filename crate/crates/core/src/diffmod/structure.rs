//! Structure maps between first prolongations, tensor products and duals.
//!
//! In a first prolongation the coordinate block 0 carries the derivative
//! part and block 1 the copy of M.

use num_rational::BigRational;

use super::{const_to_rf, dual, prolong, prolong_lemma, iterate_f, tensor, DiffModule, ModuleMorphism};
use crate::matrix::{Matrix, RfMatrix};
use crate::ratfield::RatFunc;

fn zero_identity_blocks(n: usize, layout: &[(usize, usize)], shape: (usize, usize)) -> RfMatrix {
    let mut m = Matrix::zeros(shape.0 * n, shape.1 * n);
    for &(r, c) in layout {
        m.set_block(r * n, c * n, &Matrix::identity(n));
    }
    m
}

/// `i: M → prolong(M, 1)`, matrix `[0; I]`.
pub fn inclusion_i(m: &DiffModule) -> ModuleMorphism {
    let map = zero_identity_blocks(m.dim(), &[(1, 0)], (2, 1));
    ModuleMorphism::new_unchecked(m.clone(), prolong(m, 1), map)
}

/// `φ: prolong(M, 1) → M`, matrix `[I, 0]`. Its kernel is the image of
/// [`inclusion_i`].
pub fn projection_phi(m: &DiffModule) -> ModuleMorphism {
    let map = zero_identity_blocks(m.dim(), &[(0, 0)], (1, 2));
    ModuleMorphism::new_unchecked(prolong(m, 1), m.clone(), map)
}

/// The product rule `prolong(M ⊗ N, 1) → prolong(M, 1) ⊗ prolong(N, 1)`:
/// `1 ⊗ (v ⊗ u) ↦ (1 ⊗ v) ⊗ (1 ⊗ u)` and
/// `∂ ⊗ (v ⊗ u) ↦ (∂ ⊗ v) ⊗ (1 ⊗ u) + (1 ⊗ v) ⊗ (∂ ⊗ u)`.
pub fn product_rule_map(m: &DiffModule, n: &DiffModule) -> ModuleMorphism {
    let (dm, dn) = (m.dim(), n.dim());
    let src_block = dm * dn;
    // index in prolong(M,1) ⊗ prolong(N,1) of (block_m, a) ⊗ (block_n, b)
    let dst = |block_m: usize, a: usize, block_n: usize, b: usize| {
        (block_m * dm + a) * (2 * dn) + (block_n * dn + b)
    };
    let mut map = Matrix::zeros(4 * dm * dn, 2 * dm * dn);
    for a in 0..dm {
        for b in 0..dn {
            let pair = a * dn + b;
            map.set(dst(0, a, 1, b), pair, RatFunc::one());
            map.set(dst(1, a, 0, b), pair, RatFunc::one());
            map.set(dst(1, a, 1, b), src_block + pair, RatFunc::one());
        }
    }
    let src = prolong(&tensor(m, n), 1);
    let target = tensor(&prolong(m, 1), &prolong(n, 1));
    ModuleMorphism::new_unchecked(src, target, map)
}

/// `g: prolong(M*, 1) → prolong(M, 1)*`, matrix `[[0, I], [I, 0]]`.
pub fn dual_swap_g(m: &DiffModule) -> ModuleMorphism {
    let map = zero_identity_blocks(m.dim(), &[(0, 1), (1, 0)], (2, 2));
    ModuleMorphism::new_unchecked(prolong(&dual(m), 1), dual(&prolong(m, 1)), map)
}

/// Outcome of checking the two triangles through [`dual_swap_g`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualSwapDiagram {
    pub g_is_morphism: bool,
    pub g_is_invertible: bool,
    /// `g ∘ i_{M*} = φ_M*`.
    pub inclusion_leg: bool,
    /// `i_M* ∘ g = φ_{M*}`.
    pub projection_leg: bool,
}

impl DualSwapDiagram {
    pub fn holds(&self) -> bool {
        self.g_is_morphism && self.g_is_invertible && self.inclusion_leg && self.projection_leg
    }
}

pub fn dual_swap_diagram(m: &DiffModule) -> DualSwapDiagram {
    let g = dual_swap_g(m);
    let dm = dual(m);
    let same = |lhs: Result<ModuleMorphism, _>, rhs: ModuleMorphism| {
        lhs.map(|l| l.matrix() == rhs.matrix() && l.dst().matrix() == rhs.dst().matrix())
            .unwrap_or(false)
    };
    DualSwapDiagram {
        g_is_morphism: g.is_valid(),
        g_is_invertible: g.matrix().inverse().is_some(),
        inclusion_leg: same(g.compose(&inclusion_i(&dm)), projection_phi(m).dual()),
        projection_leg: same(inclusion_i(m).dual().compose(&g), projection_phi(&dm)),
    }
}

/// `E: prolong_lemma(M, 2) → iterate_f(M, 2)`, splitting the middle
/// coordinate evenly between the two mixed blocks.
pub fn embedding_e(m: &DiffModule) -> ModuleMorphism {
    let n = m.dim();
    let half = BigRational::new(1.into(), 2.into());
    let mut scalar: Matrix<BigRational> = Matrix::zeros(4, 3);
    scalar.set(0, 0, BigRational::from_integer(1.into()));
    scalar.set(1, 1, half.clone());
    scalar.set(2, 1, half);
    scalar.set(3, 2, BigRational::from_integer(1.into()));
    let map = const_to_rf(&scalar.kron(&Matrix::identity(n)));
    ModuleMorphism::new_unchecked(prolong_lemma(m, 2), iterate_f(m, 2), map)
}
