//! Carrying certificates over the split ring to certificates for `F₀` and
//! `F₁` of their roots over the base ring.
//!
//! Each call handles one node and recurses on certificates whose pair
//! `(degree, type level)` is lexicographically smaller; the recorded trace
//! makes that measure checkable.

use crate::error::{structural, Result};
use crate::gradedmod::{
    cyclic_submodule, image, kernel, pullback, split_extension, Contraction, ModuleMap, PresentedModule,
};
use crate::graphsplit::TamenessPredicate;

use super::certificate::{verify, CertNode, Certificate};

/// One recursive call: the measure of the caller (absent for the outermost
/// call) and of the callee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub caller: Option<(u8, usize)>,
    pub callee: (u8, usize),
}

impl TraceStep {
    pub fn decreases(&self) -> bool {
        self.caller.is_none_or(|c| self.callee < c)
    }
}

#[derive(Clone, Debug)]
pub struct Transformed {
    pub certificate: Certificate,
    pub trace: Vec<TraceStep>,
}

/// Transforms a certificate over the split ring into a certificate for
/// `F_degree` of its root over the base ring.
///
/// `c` is verified under `pred_split` first; an unverifiable input is
/// returned as that verification error.
pub fn transform(
    c: &Certificate,
    e: &str,
    e_prime: &str,
    degree: u8,
    pred_split: &dyn TamenessPredicate,
) -> Result<Transformed> {
    if degree > 1 {
        return Err(structural!("derived degree {degree} is not 0 or 1"));
    }
    verify(c, pred_split)?;
    let contraction = Contraction::new(c.ring(), e, e_prime)?;
    let mut t = Transformer { c: contraction, trace: Vec::new() };
    let certificate = t.run(c, degree, None)?;
    Ok(Transformed { certificate, trace: t.trace })
}

/// [`transform`], then verification of the output under `pred_base`.
pub fn transform_verified(
    c: &Certificate,
    e: &str,
    e_prime: &str,
    degree: u8,
    pred_split: &dyn TamenessPredicate,
    pred_base: &dyn TamenessPredicate,
) -> Result<Transformed> {
    let out = transform(c, e, e_prime, degree, pred_split)?;
    verify(&out.certificate, pred_base)?;
    Ok(out)
}

struct Transformer {
    c: Contraction,
    trace: Vec<TraceStep>,
}

impl Transformer {
    fn functor(&self, m: &PresentedModule, i: u8) -> Result<PresentedModule> {
        if i == 0 {
            self.c.f0(m)
        } else {
            self.c.f1(m)
        }
    }

    fn induced(&self, phi: &ModuleMap, i: u8) -> Result<ModuleMap> {
        if i == 0 {
            self.c.induced_map_f0(phi)
        } else {
            self.c.induced_map_f1(phi)
        }
    }

    fn zero(&self) -> Certificate {
        Certificate::zero(self.c.base_ring().clone())
    }

    fn run(&mut self, cert: &Certificate, i: u8, caller: Option<(u8, usize)>) -> Result<Certificate> {
        let me = (i, cert.type_level());
        self.trace.push(TraceStep { caller, callee: me });
        let target = self.functor(cert.root(), i)?;
        if target.is_canonical_zero() {
            return Ok(self.zero());
        }
        let out = match cert.node() {
            CertNode::Zero => return Ok(self.zero()),
            CertNode::Gen { partition, shift } => {
                if i == 1 && !partition.related(self.c.e(), self.c.e_prime())? {
                    return Ok(self.zero());
                }
                let merged = partition.merge_edges(self.c.e(), self.c.e_prime())?;
                Certificate::gen_with_root(merged, *shift, target.clone())?
            }
            CertNode::Quot { parent, witness } => self.quot_rule(parent, witness, i, me)?,
            CertNode::Ext { left, right, inclusion, projection } => {
                self.ext_rule(left, right, inclusion, projection, i, me)?
            }
            CertNode::Sub { parent, witness } => self.sub_rule(parent, witness, i, me)?,
        };
        out.with_root(target)
    }

    /// `root = parent.root / ker π`.
    fn quot_rule(&mut self, parent: &Certificate, pi: &ModuleMap, i: u8, me: (u8, usize)) -> Result<Certificate> {
        if i == 0 {
            let from = self.run(parent, 0, Some(me))?;
            let f0pi = self.c.induced_map_f0(pi)?;
            return Certificate::quot(from, f0pi);
        }
        // 0 → K → B → A → 0 gives F₁B → F₁A → F₀K(−1): F₁A is an extension
        // of the image of ∂ by the image of F₁π.
        let (_, k_inc) = kernel(pi)?;
        let f1pi = self.c.induced_map_f1(pi)?;
        let left_img = image(&f1pi)?;
        let left = Certificate::quot(self.run(parent, 1, Some(me))?, left_img.corestriction)?;

        let delta = self.c.connecting_map(&k_inc, pi)?;
        let right_img = image(&delta)?;
        let k_cert = Certificate::sub(parent.clone(), k_inc)?;
        let f0k = self.run(&k_cert, 0, Some(me))?.shift(-1);
        let right = Certificate::sub(f0k, right_img.inclusion)?;

        Certificate::ext(left, right, left_img.inclusion, right_img.corestriction)
    }

    fn ext_rule(
        &mut self,
        left: &Certificate,
        right: &Certificate,
        inc: &ModuleMap,
        proj: &ModuleMap,
        i: u8,
        me: (u8, usize),
    ) -> Result<Certificate> {
        if i == 0 {
            let f0inc = self.c.induced_map_f0(inc)?;
            let img = image(&f0inc)?;
            let l = Certificate::quot(self.run(left, 0, Some(me))?, img.corestriction)?;
            let r = self.run(right, 0, Some(me))?;
            let f0proj = self.c.induced_map_f0(proj)?;
            return Certificate::ext(l, r, img.inclusion, f0proj);
        }
        let f1inc = self.c.induced_map_f1(inc)?;
        let f1proj = self.c.induced_map_f1(proj)?;
        let img = image(&f1proj)?;
        let l = self.run(left, 1, Some(me))?;
        let r = Certificate::sub(self.run(right, 1, Some(me))?, img.inclusion)?;
        Certificate::ext(l, r, f1inc, img.corestriction)
    }

    /// `root = S ⊆ parent.root` via `iota`.
    fn sub_rule(&mut self, parent: &Certificate, iota: &ModuleMap, i: u8, me: (u8, usize)) -> Result<Certificate> {
        match parent.node() {
            CertNode::Zero => Ok(self.zero()),
            CertNode::Sub { parent: grand, witness } => {
                let composite = iota.then(witness)?;
                let c = Certificate::sub(grand.as_ref().clone(), composite)?;
                self.run(&c, i, Some(me))
            }
            CertNode::Quot { parent: grand, witness: pi } => {
                // S ×_A B is a subobject of B mapping onto S.
                let pb = pullback(iota, pi)?;
                let sub = Certificate::sub(grand.as_ref().clone(), pb.to_second)?;
                self.quot_rule(&sub, &pb.to_first, i, me)
            }
            CertNode::Ext { left, right, inclusion, projection } => {
                // 0 → S ∩ B → S → image(S → C) → 0
                let pb = pullback(inclusion, iota)?;
                let to_c = iota.then(projection)?;
                let img = image(&to_c)?;
                let l = Certificate::sub(left.as_ref().clone(), pb.to_first)?;
                let r = Certificate::sub(right.as_ref().clone(), img.inclusion)?;
                self.ext_rule(&l, &r, &pb.to_second, &img.corestriction, i, me)
            }
            CertNode::Gen { partition, .. } => {
                if i == 1 {
                    let from = self.run(parent, 1, Some(me))?;
                    let f1iota = self.induced(iota, 1)?;
                    return Certificate::sub(from, f1iota);
                }
                self.cyclic_cover(parent, partition, iota, me)
            }
        }
    }

    /// `F₀(S)` for `S ⊆ Q[P](s)`: each generator spans a shifted copy of
    /// `Q[P]`, and `⊕ F₀(R·x_j) ↠ F₀(S)`.
    fn cyclic_cover(
        &mut self,
        parent: &Certificate,
        partition: &crate::partition::Partition,
        iota: &ModuleMap,
        me: (u8, usize),
    ) -> Result<Certificate> {
        let ambient = parent.root();
        let s = iota.source();
        let mut pieces: Vec<Certificate> = Vec::new();
        let mut sum = PresentedModule::zero(s.ring().clone());
        let mut sigma_cols = Vec::new();
        for (j, x) in iota.columns().iter().enumerate() {
            if ambient.is_zero_element(x) {
                continue;
            }
            let cyc = cyclic_submodule(ambient, x)?;
            let gen = Certificate::gen_with_root(partition.clone(), cyc.shift, cyc.module.clone())?;
            pieces.push(self.run(&gen, 0, Some(me))?);
            sum = sum.direct_sum(&cyc.module)?;
            sigma_cols.push(s.generator(j));
        }
        let sigma = ModuleMap::new(sum, s.clone(), sigma_cols)?;
        let f0sigma = self.c.induced_map_f0(&sigma)?;

        let mut pieces = pieces.into_iter();
        let mut acc = pieces.next().ok_or_else(|| structural!("nonzero submodule without generators"))?;
        for next in pieces {
            let (_, inc, proj) = split_extension(acc.root(), next.root())?;
            acc = Certificate::ext(acc, next, inc, proj)?;
        }
        if !acc.root().same_presentation(f0sigma.source()) {
            return Err(structural!("cyclic cover does not present F0 of the direct sum"));
        }
        let f0sigma = f0sigma.with_modules(acc.root().clone(), f0sigma.target().clone())?;
        Certificate::quot(acc, f0sigma)
    }
}
