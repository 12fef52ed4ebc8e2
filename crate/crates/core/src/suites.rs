//! Named property suites over lists of modules, with failure witnesses.

use serde::Serialize;

use crate::diffmod::{
    change_basis_matrix, conjugate_constant, dual_swap_diagram, embedding_e, inclusion_i,
    is_morphism, product_rule_map, projection_phi, prolong, prolong_lemma, DiffModule,
    ModuleMorphism,
};
use crate::expr::ModuleDoc;
use crate::random::{random_module, seeded, PolyShape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub detail: String,
    pub module: ModuleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` seeded random modules of dimension `n` with polynomial entries
/// of total degree at most 2.
pub fn random_modules(seed: u64, count: usize, n: usize) -> Vec<DiffModule> {
    let mut rng = seeded(seed);
    let shape = PolyShape::default();
    (0..count).map(|_| random_module(&mut rng, n, &shape)).collect()
}

fn run<T>(
    suite: &str,
    items: &[T],
    module_of: impl Fn(&T) -> &DiffModule,
    check: impl Fn(&T) -> Result<(), String>,
) -> SuiteReport {
    let failures = items
        .iter()
        .enumerate()
        .filter_map(|(case, item)| {
            check(item).err().map(|detail| CaseFailure {
                case,
                detail,
                module: ModuleDoc::from_module(module_of(item), None),
            })
        })
        .collect();
    SuiteReport {
        suite: suite.to_string(),
        cases: items.len(),
        failures,
    }
}

fn require_morphism(name: &str, f: &ModuleMorphism) -> Result<(), String> {
    match is_morphism(f.matrix(), f.src(), f.dst()) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{name} does not commute with d/dx")),
        Err(e) => Err(format!("{name}: {e}")),
    }
}

/// Conjugating the lemma form by the change of basis gives the binomial
/// form, for every order `0..=max_order`.
pub fn check_conjugation(m: &DiffModule, max_order: usize) -> Result<(), String> {
    for i in 0..=max_order {
        let c = change_basis_matrix(m.dim(), i);
        let conj = conjugate_constant(&prolong_lemma(m, i), &c).map_err(|e| e.to_string())?;
        if conj.matrix() != prolong(m, i).matrix() {
            return Err(format!("conjugated lemma form differs from prolong at order {i}"));
        }
    }
    Ok(())
}

pub fn check_embedding(m: &DiffModule) -> Result<(), String> {
    let e = embedding_e(m);
    require_morphism("E", &e)?;
    let rank = e.rank();
    if rank != 3 * m.dim() {
        return Err(format!("rank(E) = {rank}, expected {}", 3 * m.dim()));
    }
    Ok(())
}

pub fn check_exactness(m: &DiffModule) -> Result<(), String> {
    let i = inclusion_i(m);
    let phi = projection_phi(m);
    require_morphism("i", &i)?;
    require_morphism("phi", &phi)?;
    let composite = phi.compose(&i).map_err(|e| e.to_string())?;
    if !composite.matrix().is_zero() {
        return Err("phi o i is not zero".into());
    }
    let n = m.dim();
    let (ri, rphi) = (i.rank(), phi.rank());
    if ri != n || rphi != n || ri + rphi != prolong(m, 1).dim() {
        return Err(format!("rank(i) = {ri}, rank(phi) = {rphi}, n = {n}"));
    }
    Ok(())
}

pub fn check_product_rule(m: &DiffModule, n: &DiffModule) -> Result<(), String> {
    let f = product_rule_map(m, n);
    require_morphism("product rule map", &f)?;
    let rank = f.rank();
    if rank != f.src().dim() {
        return Err(format!("rank = {rank}, expected {}", f.src().dim()));
    }
    Ok(())
}

pub fn check_dual_swap(m: &DiffModule) -> Result<(), String> {
    let d = dual_swap_diagram(m);
    if d.holds() {
        Ok(())
    } else {
        Err(format!("{d:?}"))
    }
}

pub fn conjugation_suite(mods: &[DiffModule], max_order: usize) -> SuiteReport {
    run("conjugation", mods, |m| m, |m| check_conjugation(m, max_order))
}

pub fn embedding_suite(mods: &[DiffModule]) -> SuiteReport {
    run("embedding", mods, |m| m, check_embedding)
}

pub fn exactness_suite(mods: &[DiffModule]) -> SuiteReport {
    run("exactness", mods, |m| m, check_exactness)
}

/// Pairs consecutive modules `(mods[k], mods[k+1])`, wrapping around; a
/// single module is paired with itself.
pub fn product_rule_suite(mods: &[DiffModule]) -> SuiteReport {
    let pairs: Vec<(DiffModule, DiffModule)> = (0..mods.len())
        .map(|k| (mods[k].clone(), mods[(k + 1) % mods.len()].clone()))
        .collect();
    run("product-rule", &pairs, |(m, _)| m, |(m, n)| check_product_rule(m, n))
}

pub fn dual_swap_suite(mods: &[DiffModule]) -> SuiteReport {
    run("dual-swap", mods, |m| m, check_dual_swap)
}
