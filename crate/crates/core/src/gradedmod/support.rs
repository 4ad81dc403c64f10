//! Deciding tameness through supports.
//!
//! A finitely generated module lies in the Serre subcategory generated by
//! the shifts of `R/I_P`, `P ∈ T`, exactly when its support lies in the union
//! of the varieties `V(I_P)`.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::exactalg::{intersection, is_unit_ideal, radical_member, saturation, GradedPoly};
use crate::partition::Partition;

use super::{annihilator, PresentedModule};

/// `Ann(M)`, the intersection of the annihilators of the generators.
pub fn annihilator_ideal(m: &PresentedModule) -> Result<Vec<GradedPoly>> {
    let ideals = (0..m.rank())
        .map(|i| annihilator(m, &m.generator(i)))
        .collect::<Result<Vec<_>>>()?;
    if ideals.is_empty() {
        return Ok(vec![GradedPoly::integer(m.ring().nvars(), 1)]);
    }
    intersection(m.ring(), &ideals)
}

/// The partitions of `tame` not strictly coarser than another member,
/// without duplicates. Finer partitions have larger varieties.
pub fn finest_partitions(tame: &[Partition]) -> Vec<Partition> {
    let distinct: BTreeSet<&Partition> = tame.iter().collect();
    distinct
        .iter()
        .filter(|p| !distinct.iter().any(|q| q != *p && q.refines(p)))
        .map(|p| (*p).clone())
        .collect()
}

fn check_ground(m: &PresentedModule, tame: &[Partition]) -> Result<()> {
    let vars: BTreeSet<&str> = m.ring().vars().iter().map(String::as_str).collect();
    for p in tame {
        let names = p.ground();
        let ground: BTreeSet<&str> = names.iter().map(String::as_str).collect();
        if ground != vars {
            return Err(invalid!("partition {p} is not a partition of the module's edges"));
        }
    }
    Ok(())
}

/// Whether `Supp(M) ⊆ ⋃_{P ∈ T} V(I_P)`.
///
/// Only the finest members of `tame` matter. The variety of `J = Ann(M)` is
/// peeled one component at a time: `V(J : I^∞)` is the closure of
/// `V(J) ∖ V(I)`, so the containment holds iff the iterated saturation
/// reaches the unit ideal.
pub fn is_tame_support(m: &PresentedModule, tame: &[Partition]) -> Result<bool> {
    check_ground(m, tame)?;
    if m.is_zero() {
        return Ok(true);
    }
    let finest = finest_partitions(tame);
    if finest.is_empty() {
        return Ok(false);
    }
    let ring = m.ring();
    let gens: Vec<Vec<GradedPoly>> = finest.iter().map(|p| p.ideal_generators(ring)).collect::<Result<_>>()?;
    if gens.iter().any(Vec::is_empty) {
        return Ok(true);
    }
    let ann = annihilator_ideal(m)?;
    for g in &gens {
        let mut inside = true;
        for f in g {
            if !radical_member(ring, f, &ann)? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(true);
        }
    }
    let mut j = ann;
    for g in &gens {
        let parts = g
            .iter()
            .map(|f| saturation(ring, &j, f))
            .collect::<Result<Vec<_>>>()?;
        j = intersection(ring, &parts)?;
        if is_unit_ideal(ring, &j)? {
            return Ok(true);
        }
    }
    is_unit_ideal(ring, &j)
}

/// The literal product criterion: every product `g₁⋯g_k`, one generator of
/// `I_P` per `P ∈ T`, lies in `rad(Ann M)`. Refuses to enumerate more than
/// `cap` products.
pub fn tame_support_by_products(m: &PresentedModule, tame: &[Partition], cap: u64) -> Result<bool> {
    check_ground(m, tame)?;
    let ring = m.ring();
    let gens: Vec<Vec<GradedPoly>> = tame.iter().map(|p| p.ideal_generators(ring)).collect::<Result<_>>()?;
    if gens.iter().any(Vec::is_empty) {
        return Ok(true);
    }
    let count = gens
        .iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g.len() as u64))
        .filter(|c| *c <= cap)
        .ok_or_else(|| crate::Error::Resource(format!("more than {cap} generator products")))?;
    let ann = annihilator_ideal(m)?;
    let one = GradedPoly::integer(ring.nvars(), 1);
    let mut idx = vec![0usize; gens.len()];
    for _ in 0..count {
        let product = idx
            .iter()
            .zip(&gens)
            .fold(one.clone(), |acc, (&i, g)| &acc * &g[i]);
        if !radical_member(ring, &product, &ann)? {
            return Ok(false);
        }
        for (k, g) in gens.iter().enumerate() {
            idx[k] += 1;
            if idx[k] < g.len() {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(true)
}
