//! The contraction functor `F₀(M) = M/(e − e')` and its derived functor
//! `F₁(M)`, the `(e − e')`-torsion submodule, together with induced maps and
//! the connecting map of the six-term sequence.
//!
//! Both functors land in modules over the base ring (the split ring without
//! `e'`); the substitution `e' ↦ e` realizes the change of scalars.

use crate::error::{structural, Result};
use crate::exactalg::{EdgeRing, FreeElement, GradedPoly, Lifter};

use super::{image, same_submodule, submodule, ModuleMap, PresentedModule, Submodule};

/// The ring map `R[e, e', …] → R[e, …]`, `e' ↦ e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    split: EdgeRing,
    base: EdgeRing,
    e: usize,
    e_prime: usize,
    /// For each split variable, its index in the base ring.
    target: Vec<usize>,
}

impl Contraction {
    pub fn new(split: &EdgeRing, e: &str, e_prime: &str) -> Result<Self> {
        let ie = split.require(e)?;
        let ip = split.require(e_prime)?;
        if ie == ip {
            return Err(structural!("contracting {e} onto itself"));
        }
        let base = split.without(e_prime)?;
        let target = split
            .vars()
            .iter()
            .map(|v| {
                let name = if v == e_prime { e } else { v.as_str() };
                base.require(name)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Contraction { split: split.clone(), base, e: ie, e_prime: ip, target })
    }

    pub fn split_ring(&self) -> &EdgeRing {
        &self.split
    }

    pub fn base_ring(&self) -> &EdgeRing {
        &self.base
    }

    pub fn e(&self) -> &str {
        &self.split.vars()[self.e]
    }

    pub fn e_prime(&self) -> &str {
        &self.split.vars()[self.e_prime]
    }

    /// `e − e'`.
    pub fn delta(&self) -> GradedPoly {
        let n = self.split.nvars();
        &GradedPoly::var(n, self.e) - &GradedPoly::var(n, self.e_prime)
    }

    pub fn contract_poly(&self, p: &GradedPoly) -> GradedPoly {
        let m = self.base.nvars();
        p.map_monomials(|exps| {
            let mut out = vec![0; m];
            for (i, k) in exps.iter().enumerate() {
                out[self.target[i]] += k;
            }
            out
        })
    }

    pub fn contract(&self, x: &FreeElement) -> FreeElement {
        x.map_polys(|p| self.contract_poly(p))
    }

    fn check_module(&self, m: &PresentedModule) -> Result<()> {
        if m.ring() != &self.split {
            return Err(structural!(
                "module ring {:?} is not the split ring {:?}",
                m.ring().vars(),
                self.split.vars()
            ));
        }
        Ok(())
    }

    /// `F₀(M)`; the canonical zero module when the result vanishes.
    pub fn f0(&self, m: &PresentedModule) -> Result<PresentedModule> {
        self.check_module(m)?;
        let relations = m.reduced_relations().0.iter().map(|r| self.contract(r)).collect();
        Ok(PresentedModule::new(self.base.clone(), m.gen_weights().to_vec(), relations)?.canonical())
    }

    /// The torsion submodule of `M` with the data needed for induced maps.
    pub fn torsion(&self, m: &PresentedModule) -> Result<Torsion> {
        self.check_module(m)?;
        let mult = ModuleMap::multiplication(m, &self.delta())?;
        let pre: Vec<FreeElement> = mult.kernel_preimage()?.into_iter().map(|(x, _)| x).collect();
        let sub = submodule(m, &pre)?;
        let relations = sub.module.relations().iter().map(|r| self.contract(r)).collect();
        let module = PresentedModule::new(self.base.clone(), sub.module.gen_weights().to_vec(), relations)?;
        Ok(Torsion { module, sub })
    }

    /// `F₁(M)`.
    pub fn f1(&self, m: &PresentedModule) -> Result<PresentedModule> {
        Ok(self.torsion(m)?.module)
    }

    /// `F₀(φ)`.
    pub fn induced_map_f0(&self, phi: &ModuleMap) -> Result<ModuleMap> {
        if !phi.is_well_defined() {
            return Err(structural!("induced map of an ill-defined map"));
        }
        let src = self.f0(phi.source())?;
        let tgt = self.f0(phi.target())?;
        let columns = if src.is_canonical_zero() {
            Vec::new()
        } else if tgt.is_canonical_zero() {
            vec![FreeElement::zero(0); src.rank()]
        } else {
            phi.columns().iter().map(|c| self.contract(c)).collect()
        };
        ModuleMap::new(src, tgt, columns)
    }

    /// `F₁(φ)`.
    pub fn induced_map_f1(&self, phi: &ModuleMap) -> Result<ModuleMap> {
        if !phi.is_well_defined() {
            return Err(structural!("induced map of an ill-defined map"));
        }
        let ts = self.torsion(phi.source())?;
        let tt = self.torsion(phi.target())?;
        self.induced_between(phi, &ts, &tt)
    }

    pub(crate) fn induced_between(&self, phi: &ModuleMap, ts: &Torsion, tt: &Torsion) -> Result<ModuleMap> {
        let columns = ts
            .generators()
            .iter()
            .map(|g| {
                let y = phi.apply(g);
                tt.sub
                    .express(&y)
                    .map(|c| self.contract(&c))
                    .ok_or_else(|| structural!("torsion element mapped outside the torsion submodule"))
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new(ts.module.clone(), tt.module.clone(), columns)
    }

    /// The connecting map `F₁(C) → F₀(B)(−1)` of `0 → B → A → C → 0`.
    ///
    /// A torsion class `t` of `C` lifts to `a ∈ A`; then `(e − e')·a` comes
    /// from `B`, and its class in `F₀(B)` is the image of `t`.
    pub fn connecting_map(&self, inc: &ModuleMap, proj: &ModuleMap) -> Result<ModuleMap> {
        let tc = self.torsion(proj.target())?;
        self.connecting_from(inc, proj, &tc)
    }

    pub(crate) fn connecting_from(&self, inc: &ModuleMap, proj: &ModuleMap, tc: &Torsion) -> Result<ModuleMap> {
        let a = proj.source();
        let fb = self.f0(inc.source())?;
        let target = fb.shift(-1);
        let lift_proj = map_lifter(proj)?;
        let lift_inc = map_lifter(inc)?;
        let delta = self.delta();
        let columns = tc
            .generators()
            .iter()
            .map(|t| {
                let pre = lift_proj
                    .lift(t)
                    .ok_or_else(|| structural!("projection is not surjective"))?
                    .slice(0..a.rank());
                let x = pre.scale(&delta);
                let b = lift_inc
                    .lift(&x)
                    .ok_or_else(|| structural!("sequence is not exact in the middle"))?
                    .slice(0..inc.source().rank());
                Ok(if fb.is_canonical_zero() { FreeElement::zero(0) } else { self.contract(&b) })
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMap::new(tc.module.clone(), target, columns)
    }
}

fn map_lifter(phi: &ModuleMap) -> Result<Lifter> {
    let t = phi.target();
    let mut gens = phi.columns().to_vec();
    let (rels, rel_weights) = t.reduced_relations();
    gens.extend(rels);
    let mut weights = phi.source().gen_weights().to_vec();
    weights.extend(rel_weights);
    Lifter::new(&t.free_module(), &gens, &weights)
}

/// `ker(e − e')` on `M`, both as a submodule of `M` over the split ring and
/// as `F₁(M)` over the base ring (same generators, contracted relations).
#[derive(Clone, Debug)]
pub struct Torsion {
    pub module: PresentedModule,
    pub sub: Submodule,
}

impl Torsion {
    /// Generators as vectors of `M`'s free module.
    pub fn generators(&self) -> &[FreeElement] {
        self.sub.inclusion.columns()
    }

    /// Coordinates of a torsion element of `M` in the generators of `F₁(M)`.
    pub fn express(&self, c: &Contraction, y: &FreeElement) -> Option<FreeElement> {
        self.sub.express(y).map(|v| c.contract(&v))
    }
}

pub fn f0(m: &PresentedModule, e: &str, e_prime: &str) -> Result<PresentedModule> {
    Contraction::new(m.ring(), e, e_prime)?.f0(m)
}

pub fn f1(m: &PresentedModule, e: &str, e_prime: &str) -> Result<PresentedModule> {
    Contraction::new(m.ring(), e, e_prime)?.f1(m)
}

pub fn torsion(m: &PresentedModule, e: &str, e_prime: &str) -> Result<Torsion> {
    Contraction::new(m.ring(), e, e_prime)?.torsion(m)
}

pub fn induced_map_f0(phi: &ModuleMap, e: &str, e_prime: &str) -> Result<ModuleMap> {
    Contraction::new(phi.ring(), e, e_prime)?.induced_map_f0(phi)
}

pub fn induced_map_f1(phi: &ModuleMap, e: &str, e_prime: &str) -> Result<ModuleMap> {
    Contraction::new(phi.ring(), e, e_prime)?.induced_map_f1(phi)
}

pub fn connecting_map(inc: &ModuleMap, proj: &ModuleMap, e: &str, e_prime: &str) -> Result<ModuleMap> {
    Contraction::new(inc.ring(), e, e_prime)?.connecting_map(inc, proj)
}

/// Exactness verdict at one spot of the six-term sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub position: &'static str,
    pub submodules_equal: bool,
    pub hilbert_equal: bool,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.submodules_equal && self.hilbert_equal
    }
}

/// `0 → F₁B → F₁A → F₁C → F₀B → F₀A → F₀C → 0` for a short exact sequence
/// `0 → B → A → C → 0` over the split ring.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub f1_inc: ModuleMap,
    pub f1_proj: ModuleMap,
    pub connecting: ModuleMap,
    pub f0_inc: ModuleMap,
    pub f0_proj: ModuleMap,
}

impl LongExactSequence {
    pub fn new(c: &Contraction, inc: &ModuleMap, proj: &ModuleMap) -> Result<Self> {
        let tb = c.torsion(inc.source())?;
        let ta = c.torsion(inc.target())?;
        let tc = c.torsion(proj.target())?;
        Ok(LongExactSequence {
            f1_inc: c.induced_between(inc, &tb, &ta)?,
            f1_proj: c.induced_between(proj, &ta, &tc)?,
            connecting: c.connecting_from(inc, proj, &tc)?,
            f0_inc: c.induced_map_f0(inc)?,
            f0_proj: c.induced_map_f0(proj)?,
        })
    }

    /// Checks the six spots; Hilbert functions of image and kernel are
    /// compared on weights `lo..=hi`.
    pub fn check(&self, lo: i64, hi: i64) -> Result<Vec<ExactnessReport>> {
        let mut out = Vec::with_capacity(6);

        let (k, _) = super::kernel(&self.f1_inc)?;
        out.push(ExactnessReport {
            position: "F1(B)",
            submodules_equal: k.is_zero(),
            hilbert_equal: (lo..=hi).all(|w| k.hilbert_function(w) == 0),
        });
        out.push(middle("F1(A)", &self.f1_inc, &self.f1_proj, lo, hi)?);
        let conn = self
            .connecting
            .with_modules(self.connecting.source().shift(1), self.f0_inc.source().clone())?;
        out.push(middle("F1(C)", &self.f1_proj, &self.connecting, lo, hi)?);
        out.push(middle("F0(B)", &conn, &self.f0_inc, lo, hi)?);
        out.push(middle("F0(A)", &self.f0_inc, &self.f0_proj, lo, hi)?);
        let (ck, _) = super::cokernel(&self.f0_proj)?;
        out.push(ExactnessReport {
            position: "F0(C)",
            submodules_equal: ck.is_zero(),
            hilbert_equal: (lo..=hi).all(|w| ck.hilbert_function(w) == 0),
        });
        Ok(out)
    }
}

/// Exactness of `X --f--> Y --g--> Z` at `Y`.
fn middle(position: &'static str, f: &ModuleMap, g: &ModuleMap, lo: i64, hi: i64) -> Result<ExactnessReport> {
    let y = g.source();
    let pre: Vec<FreeElement> = g.kernel_preimage()?.into_iter().map(|(x, _)| x).collect();
    let submodules_equal = same_submodule(y, f.columns(), &pre)?;
    let im = image(f)?;
    let ker = submodule(y, &pre)?;
    let hilbert_equal =
        (lo..=hi).all(|w| im.module.hilbert_function(w) == ker.module.hilbert_function(w));
    Ok(ExactnessReport { position, submodules_equal, hilbert_equal })
}
