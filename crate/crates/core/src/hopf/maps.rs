//! Comultiplication, counit and antipode as algebra homomorphisms defined
//! on generators, applied leg by leg to tensor elements.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{DVar, DiffFrac, Group, HopfError};
use crate::ratfield::binomial;

/// How the antipode acts on y_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeRule {
    /// Forced by `S ∘ ∂ = ∂ ∘ S`: Ga `S(y_j) = -y_j`, Gm `S(y_j) = ∂^j(1/y_0)`.
    Derived,
    /// Ga `S(y_j) = (-1)^{j+1} y_j`; same as `Derived` for Gm.
    PrintedSign,
}

/// An algebra map out of one tensor leg: images of y_0..=y_N and of 1/y_0,
/// all living in an algebra with `legs` legs.
#[derive(Clone, Debug)]
pub(crate) struct LegMap {
    images: Vec<DiffFrac>,
    inv_y0: Option<DiffFrac>,
    legs: usize,
}

impl LegMap {
    pub(crate) fn identity(group: Group, order: u32) -> Self {
        let images = (0..=order)
            .map(|j| DiffFrac::y(group, order, j).expect("j within order"))
            .collect();
        Self {
            images,
            inv_y0: DiffFrac::inv_y0(group, order, 1, 0).ok(),
            legs: 1,
        }
    }

    pub(crate) fn delta(group: Group, order: u32) -> Self {
        let u = |j| DiffFrac::var(group, order, 2, 0, j).expect("j within order");
        let v = |j| DiffFrac::var(group, order, 2, 1, j).expect("j within order");
        let images = (0..=order)
            .map(|j| match group {
                Group::Ga => u(j).add(&v(j)),
                // Δ(y_j) = ∂^j(u_0 v_0) = Σ_l C(j, l) u_l v_{j-l}
                Group::Gm => (0..=j).fold(DiffFrac::zero(group, order, 2), |acc, l| {
                    let c = BigRational::from_integer(binomial(j as usize, l as usize).into());
                    acc.add(&u(l).mul(&v(j - l)).scale(&c))
                }),
            })
            .collect();
        let inv_y0 = match group {
            Group::Ga => None,
            Group::Gm => {
                let iu = DiffFrac::inv_y0(group, order, 2, 0).expect("Gm");
                let iv = DiffFrac::inv_y0(group, order, 2, 1).expect("Gm");
                Some(iu.mul(&iv))
            }
        };
        Self {
            images,
            inv_y0,
            legs: 2,
        }
    }

    pub(crate) fn antipode(group: Group, order: u32, rule: AntipodeRule) -> Self {
        let images = match group {
            Group::Ga => (0..=order)
                .map(|j| {
                    let y = DiffFrac::y(group, order, j).expect("j within order");
                    let positive = rule == AntipodeRule::PrintedSign && j % 2 == 1;
                    if positive {
                        y
                    } else {
                        y.neg()
                    }
                })
                .collect(),
            Group::Gm => {
                let mut images = Vec::with_capacity(order as usize + 1);
                let mut current = DiffFrac::inv_y0(group, order, 1, 0).expect("Gm");
                for j in 0..=order {
                    if j > 0 {
                        current = current.derive().expect("indices stay within j");
                    }
                    images.push(current.clone());
                }
                images
            }
        };
        let inv_y0 = (group == Group::Gm).then(|| DiffFrac::y(group, order, 0).expect("y_0"));
        Self {
            images,
            inv_y0,
            legs: 1,
        }
    }

    pub(crate) fn counit(group: Group, order: u32) -> Self {
        let images = (0..=order)
            .map(|j| {
                let value = if j == 0 && group == Group::Gm { 1 } else { 0 };
                DiffFrac::from_int(group, order, 0, value)
            })
            .collect();
        let inv_y0 = (group == Group::Gm).then(|| DiffFrac::one(group, order, 0));
        Self {
            images,
            inv_y0,
            legs: 0,
        }
    }

    pub(crate) fn legs(&self) -> usize {
        self.legs
    }
}

/// Moves every leg of `f` up by `offset` inside an algebra of `target_legs`.
fn embed(f: &DiffFrac, offset: usize, target_legs: usize) -> DiffFrac {
    let mut den = vec![0; target_legs];
    den[offset..offset + f.legs].copy_from_slice(&f.den);
    let num: BTreeMap<_, _> = f
        .num
        .iter()
        .map(|(m, c)| {
            let m = m
                .iter()
                .map(|&(v, e)| {
                    (
                        DVar {
                            leg: v.leg + offset,
                            index: v.index,
                        },
                        e,
                    )
                })
                .collect();
            (m, c.clone())
        })
        .collect();
    DiffFrac {
        group: f.group,
        order: f.order,
        legs: target_legs,
        num,
        den,
    }
}

/// Applies `⊗_leg maps[leg]`, placing the image of source leg `leg` at
/// target leg offset `placement[leg].1`. Overlapping placements multiply,
/// which is how the multiplication map is expressed.
pub(crate) fn apply(
    e: &DiffFrac,
    placement: &[(&LegMap, usize)],
    target_legs: usize,
) -> Result<DiffFrac, HopfError> {
    if e.legs != placement.len() {
        return Err(HopfError::LegMismatch {
            expected: placement.len(),
            found: e.legs,
        });
    }
    let images: Vec<Vec<DiffFrac>> = placement
        .iter()
        .map(|(map, off)| map.images.iter().map(|f| embed(f, *off, target_legs)).collect())
        .collect();
    let mut result = DiffFrac::zero(e.group, e.order, target_legs);
    for (m, c) in &e.num {
        let mut term = DiffFrac::constant(e.group, e.order, target_legs, c.clone());
        for &(v, exp) in m {
            let img = images[v.leg].get(v.index as usize).ok_or(HopfError::OrderOverflow {
                index: v.index,
                order: placement[v.leg].0.images.len() as u32 - 1,
            })?;
            term = term.mul(&img.pow(exp));
        }
        result = result.add(&term);
    }
    for (leg, &k) in e.den.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let (map, off) = placement[leg];
        let inv = map.inv_y0.as_ref().ok_or(HopfError::NotInvertible)?;
        result = result.mul(&embed(inv, off, target_legs).pow(k));
    }
    Ok(result.with_order(e.order))
}

fn expect_single_leg(e: &DiffFrac) -> Result<(), HopfError> {
    if e.legs != 1 {
        return Err(HopfError::LegMismatch {
            expected: 1,
            found: e.legs,
        });
    }
    Ok(())
}

/// Comultiplication `A → A ⊗ A`; y_j of the two legs print as u_j and v_j.
pub fn h_delta(e: &DiffFrac) -> Result<DiffFrac, HopfError> {
    expect_single_leg(e)?;
    let delta = LegMap::delta(e.group, e.order);
    apply(e, &[(&delta, 0)], 2)
}

/// Antipode with the derived generator rule.
pub fn h_antipode(e: &DiffFrac) -> Result<DiffFrac, HopfError> {
    h_antipode_with(e, AntipodeRule::Derived)
}

pub fn h_antipode_with(e: &DiffFrac, rule: AntipodeRule) -> Result<DiffFrac, HopfError> {
    expect_single_leg(e)?;
    let s = LegMap::antipode(e.group, e.order, rule);
    apply(e, &[(&s, 0)], 1)
}

/// Counit, evaluation at the group identity.
pub fn h_counit(e: &DiffFrac) -> Result<BigRational, HopfError> {
    expect_single_leg(e)?;
    let eps = LegMap::counit(e.group, e.order);
    let value = apply(e, &[(&eps, 0)], 0)?;
    Ok(value.as_constant().unwrap_or_else(BigRational::zero))
}

/// Reduction modulo the differential ideal [∂y]: y_j ↦ 0 for j ≥ 1 in
/// every leg.
pub fn reduce_mod_dy(e: &DiffFrac) -> DiffFrac {
    let num = e
        .num
        .iter()
        .filter(|(m, _)| m.iter().all(|(v, _)| v.index == 0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    DiffFrac {
        num,
        ..e.clone()
    }
    .canonicalize()
}

/// `y_0 y_2 - y_1^2`, the numerator of `∂(y_1 / y_0)`; its vanishing cuts
/// out the subgroup of Gm on which `∂y / y` is constant.
pub fn subgroup_defining_poly() -> DiffFrac {
    let order = 2;
    let y1 = DiffFrac::y(Group::Gm, order, 1).expect("order 2");
    let inv = DiffFrac::inv_y0(Group::Gm, order, 1, 0).expect("Gm");
    y1.mul(&inv).derive().expect("order 2 leaves headroom").numerator()
}
