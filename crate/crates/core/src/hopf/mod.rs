//! Truncated differential Hopf algebras of Ga and Gm.
//!
//! Elements of k{y} and k{y, 1/y} (and their tensor powers) are stored as
//! `num / Π_leg y_0^k` where `num` is a polynomial in the derivative
//! variables y_j of each tensor leg. The base field is Q with the zero
//! derivation, and derivative indices are truncated at an order bound N.

mod axioms;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use axioms::{
    check_axioms, check_axioms_with, Axiom, AxiomReport, AxiomResult, PrintedAntipodeNote,
    Witness,
};
pub use maps::{
    h_antipode, h_antipode_with, h_counit, h_delta, reduce_mod_dy, subgroup_defining_poly,
    AntipodeRule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// Additive group, coordinate ring k{y}.
    Ga,
    /// Multiplicative group, coordinate ring k{y, 1/y}.
    Gm,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ga => "Ga",
            Self::Gm => "Gm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("derivative index {index} exceeds the order bound {order}")]
    OrderOverflow { index: u32, order: u32 },
    #[error("y_0 is not invertible in the coordinate ring of Ga")]
    NotInvertible,
    #[error("expected an element with {expected} tensor legs, got {found}")]
    LegMismatch { expected: usize, found: usize },
}

/// The variable y_j (`index` = j) of tensor leg `leg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DVar {
    pub leg: usize,
    pub index: u32,
}

/// Sorted exponent list without zero exponents.
type DMono = Vec<(DVar, u32)>;

fn mono_mul(a: &DMono, b: &DMono) -> DMono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn exponent_of(m: &DMono, v: DVar) -> u32 {
    m.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
}

/// Multiplies `m` by `v^delta`, or divides when `delta` is negative.
fn mono_shift(m: &DMono, v: DVar, delta: i64) -> DMono {
    let mut out: DMono = m.clone();
    match out.iter().position(|(w, _)| *w == v) {
        Some(p) => {
            let e = i64::from(out[p].1) + delta;
            debug_assert!(e >= 0);
            if e == 0 {
                out.remove(p);
            } else {
                out[p].1 = e as u32;
            }
        }
        None => {
            debug_assert!(delta >= 0);
            if delta > 0 {
                let p = out.partition_point(|(w, _)| *w < v);
                out.insert(p, (v, delta as u32));
            }
        }
    }
    out
}

/// An element `num / Π_leg y_{leg,0}^den[leg]` over `legs` tensor legs.
///
/// Canonical: y_0 of a leg never divides the numerator while that leg has a
/// positive denominator power, and Ga elements have no denominator.
/// Equality ignores the order bound.
#[derive(Clone)]
pub struct DiffFrac {
    group: Group,
    order: u32,
    legs: usize,
    num: BTreeMap<DMono, BigRational>,
    den: Vec<u32>,
}

impl PartialEq for DiffFrac {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.legs == other.legs
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for DiffFrac {}

/// An element of k{y} or k{y, 1/y}.
pub type DPolyFrac = DiffFrac;
/// An element of the tensor square.
pub type DTensorFrac = DiffFrac;

impl DiffFrac {
    pub fn zero(group: Group, order: u32, legs: usize) -> Self {
        Self {
            group,
            order,
            legs,
            num: BTreeMap::new(),
            den: vec![0; legs],
        }
    }

    pub fn constant(group: Group, order: u32, legs: usize, c: BigRational) -> Self {
        let mut out = Self::zero(group, order, legs);
        if !c.is_zero() {
            out.num.insert(Vec::new(), c);
        }
        out
    }

    pub fn one(group: Group, order: u32, legs: usize) -> Self {
        Self::constant(group, order, legs, BigRational::one())
    }

    pub fn from_int(group: Group, order: u32, legs: usize, c: i64) -> Self {
        Self::constant(group, order, legs, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable y_j of tensor leg `leg`.
    pub fn var(group: Group, order: u32, legs: usize, leg: usize, j: u32) -> Result<Self, HopfError> {
        if j > order {
            return Err(HopfError::OrderOverflow { index: j, order });
        }
        assert!(leg < legs, "leg {leg} out of range for {legs} legs");
        let mut out = Self::zero(group, order, legs);
        out.num.insert(vec![(DVar { leg, index: j }, 1)], BigRational::one());
        Ok(out)
    }

    /// y_j in the single-leg algebra.
    pub fn y(group: Group, order: u32, j: u32) -> Result<Self, HopfError> {
        Self::var(group, order, 1, 0, j)
    }

    /// 1 / y_0 of leg `leg`; only exists for Gm.
    pub fn inv_y0(group: Group, order: u32, legs: usize, leg: usize) -> Result<Self, HopfError> {
        if group == Group::Ga {
            return Err(HopfError::NotInvertible);
        }
        let mut out = Self::one(group, order, legs);
        out.den[leg] = 1;
        Ok(out)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Power of y_0 in the denominator of each leg.
    pub fn den_powers(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.iter().any(|&k| k > 0) {
            return None;
        }
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => self.num.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// The numerator as a fraction with trivial denominator.
    pub fn numerator(&self) -> Self {
        Self {
            den: vec![0; self.legs],
            ..self.clone()
        }
    }

    /// Largest derivative index that occurs, if any variable occurs.
    pub fn max_index(&self) -> Option<u32> {
        let in_num = self.num.keys().flat_map(|m| m.iter().map(|(v, _)| v.index)).max();
        let in_den = self.den.iter().any(|&k| k > 0).then_some(0);
        in_num.max(in_den)
    }

    fn same_shape(&self, other: &Self) -> u32 {
        assert_eq!(self.group, other.group, "mixing groups");
        assert_eq!(self.legs, other.legs, "mixing tensor legs");
        self.order.max(other.order)
    }

    fn canonicalize(mut self) -> Self {
        if self.num.is_empty() {
            self.den.iter_mut().for_each(|k| *k = 0);
            return self;
        }
        for leg in 0..self.legs {
            if self.den[leg] == 0 {
                continue;
            }
            let y0 = DVar { leg, index: 0 };
            let common = self
                .num
                .keys()
                .map(|m| exponent_of(m, y0))
                .min()
                .unwrap_or(0)
                .min(self.den[leg]);
            if common > 0 {
                self.num = std::mem::take(&mut self.num)
                    .into_iter()
                    .map(|(m, c)| (mono_shift(&m, y0, -i64::from(common)), c))
                    .collect();
                self.den[leg] -= common;
            }
        }
        self
    }

    fn add_term(num: &mut BTreeMap<DMono, BigRational>, m: DMono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match num.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    num.remove(&m);
                }
            }
            None => {
                num.insert(m, c);
            }
        }
    }

    /// Numerator rewritten over the larger denominator `den`.
    fn lifted_num(&self, den: &[u32]) -> BTreeMap<DMono, BigRational> {
        self.num
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                for (leg, (wide, own)) in den.iter().zip(&self.den).enumerate() {
                    let extra = wide - own;
                    if extra > 0 {
                        m = mono_shift(&m, DVar { leg, index: 0 }, i64::from(extra));
                    }
                }
                (m, c.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.same_shape(other);
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let mut num = self.lifted_num(&den);
        for (m, c) in other.lifted_num(&den) {
            Self::add_term(&mut num, m, c);
        }
        Self {
            group: self.group,
            order,
            legs: self.legs,
            num,
            den,
        }
        .canonicalize()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.group, self.order, self.legs);
        }
        Self {
            num: self.num.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.same_shape(other);
        let mut num = BTreeMap::new();
        for (m1, c1) in &self.num {
            for (m2, c2) in &other.num {
                Self::add_term(&mut num, mono_mul(m1, m2), c1 * c2);
            }
        }
        Self {
            group: self.group,
            order,
            legs: self.legs,
            num,
            den: self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect(),
        }
        .canonicalize()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.group, self.order, self.legs), |acc, _| acc.mul(self))
    }

    /// The derivation: ∂y_j = y_{j+1} in every leg, extended by Leibniz and
    /// the quotient rule.
    pub fn derive(&self) -> Result<Self, HopfError> {
        let mut dnum = BTreeMap::new();
        for (m, c) in &self.num {
            for &(v, e) in m {
                let next = DVar {
                    leg: v.leg,
                    index: v.index + 1,
                };
                if next.index > self.order {
                    return Err(HopfError::OrderOverflow {
                        index: next.index,
                        order: self.order,
                    });
                }
                let lowered = mono_shift(m, v, -1);
                let raised = mono_shift(&lowered, next, 1);
                Self::add_term(&mut dnum, raised, c * BigRational::from_integer(e.into()));
            }
        }
        let mut out = Self {
            num: dnum,
            ..self.clone()
        }
        .canonicalize();
        // -k y_1 num / (D y_0) for each leg with denominator power k
        for leg in 0..self.legs {
            let k = self.den[leg];
            if k == 0 {
                continue;
            }
            if self.order < 1 {
                return Err(HopfError::OrderOverflow {
                    index: 1,
                    order: self.order,
                });
            }
            let mut term = self.mul(&Self::var(self.group, self.order, self.legs, leg, 1)?);
            term.den[leg] += 1;
            let term = term
                .canonicalize()
                .scale(&BigRational::from_integer((-i64::from(k)).into()));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// k-fold derivative.
    pub fn derive_n(&self, k: u32) -> Result<Self, HopfError> {
        (0..k).try_fold(self.clone(), |e, _| e.derive())
    }

    /// Same element with a different order bound.
    pub fn with_order(&self, order: u32) -> Self {
        Self {
            order,
            ..self.clone()
        }
    }

    fn leg_name(&self, leg: usize) -> &'static str {
        match (self.legs, leg) {
            (1, _) => "y",
            (_, 0) => "u",
            (_, 1) => "v",
            (_, 2) => "w",
            _ => "z",
        }
    }

    fn fmt_mono(&self, m: &DMono) -> String {
        m.iter()
            .map(|&(v, e)| {
                let name = self.leg_name(v.leg);
                if e == 1 {
                    format!("{name}_{}", v.index)
                } else {
                    format!("{name}_{}^{e}", v.index)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for DiffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        if self.num.is_empty() {
            num.push('0');
        }
        for (k, (m, c)) in self.num.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                num.push_str(if neg { " - " } else { " + " });
            } else if neg {
                num.push('-');
            }
            let abs = c.abs();
            let mono = self.fmt_mono(m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => num.push('1'),
                (true, false) => num.push_str(&mono),
                (false, true) => num.push_str(&abs.to_string()),
                (false, false) => num.push_str(&format!("{abs}*{mono}")),
            }
        }
        let den: Vec<String> = (0..self.legs)
            .filter(|&leg| self.den[leg] > 0)
            .map(|leg| {
                let name = self.leg_name(leg);
                match self.den[leg] {
                    1 => format!("{name}_0"),
                    k => format!("{name}_0^{k}"),
                }
            })
            .collect();
        if den.is_empty() {
            return f.write_str(&num);
        }
        if self.num.len() > 1 {
            num = format!("({num})");
        }
        if den.len() == 1 {
            write!(f, "{num}/{}", den[0])
        } else {
            write!(f, "{num}/({})", den.join("*"))
        }
    }
}

impl fmt::Debug for DiffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffFrac[{} N={} legs={}]({self})", self.group, self.order, self.legs)
    }
}
