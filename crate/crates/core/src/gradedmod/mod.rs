//! Finitely presented graded modules and weight-preserving maps between them.
//!
//! A [`PresentedModule`] is `F / N` where `F` is the graded free module with
//! basis weights `gen_weights` and `N` is spanned by homogeneous `relations`.
//! Elements are represented by vectors of `F`; a [`ModuleMap`] stores the
//! image of each generator as a vector of the target's free module. Maps
//! always preserve weight, so a map raising weight by `d` is modelled with a
//! target shifted by `-d`.
//!
//! Shifting by `s` adds `s` to every generator weight.

mod functor;
mod support;

use std::sync::{Arc, OnceLock};

use crate::error::{structural, Result};
use crate::exactalg::{
    ideal_basis, EdgeRing, FreeElement, FreeModule, GradedPoly, GroebnerBasis, Lifter,
};

pub use functor::{
    connecting_map, f0, f1, induced_map_f0, induced_map_f1, torsion, Contraction, ExactnessReport,
    LongExactSequence, Torsion,
};
pub use support::{annihilator_ideal, finest_partitions, is_tame_support, tame_support_by_products};

/// Default number of weights past the top generator weight used when
/// comparing Hilbert functions.
pub const DEFAULT_WEIGHT_MARGIN: i64 = 5;

#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: EdgeRing,
    gen_weights: Vec<i64>,
    relations: Vec<FreeElement>,
    basis: OnceLock<Arc<GroebnerBasis>>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gen_weights == other.gen_weights && self.relations == other.relations
    }
}

impl Eq for PresentedModule {}

impl PresentedModule {
    /// Zero relations are dropped; every other relation must be homogeneous.
    pub fn new(ring: EdgeRing, gen_weights: Vec<i64>, relations: Vec<FreeElement>) -> Result<Self> {
        let free = FreeModule::new(ring.clone(), gen_weights.clone());
        let mut kept = Vec::with_capacity(relations.len());
        for r in relations {
            free.check(&r)?;
            if r.is_zero() {
                continue;
            }
            if r.weight(&gen_weights).is_none() {
                return Err(structural!("inhomogeneous relation {}", r.display(&ring)));
            }
            kept.push(r);
        }
        Ok(PresentedModule { ring, gen_weights, relations: kept, basis: OnceLock::new() })
    }

    pub fn free(ring: EdgeRing, gen_weights: Vec<i64>) -> Self {
        PresentedModule { ring, gen_weights, relations: Vec::new(), basis: OnceLock::new() }
    }

    /// The canonical zero module: no generators.
    pub fn zero(ring: EdgeRing) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn ring(&self) -> &EdgeRing {
        &self.ring
    }

    pub fn gen_weights(&self) -> &[i64] {
        &self.gen_weights
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.gen_weights.len()
    }

    pub fn free_module(&self) -> FreeModule {
        FreeModule::new(self.ring.clone(), self.gen_weights.clone())
    }

    /// Reduced Gröbner basis of the relation submodule (computed once).
    pub fn relation_basis(&self) -> &GroebnerBasis {
        self.basis.get_or_init(|| {
            Arc::new(
                self.free_module()
                    .groebner(&self.relations)
                    .expect("relations checked at construction"),
            )
        })
    }

    /// The reduced Gröbner basis of the relations with its weights. Unlike
    /// [`PresentedModule::relations`] it depends only on the relation
    /// submodule, so constructions built from it do too.
    pub fn reduced_relations(&self) -> (Vec<FreeElement>, Vec<i64>) {
        let rels = self.relation_basis().elements();
        let weights = rels
            .iter()
            .map(|r| r.weight(&self.gen_weights).expect("relations are homogeneous"))
            .collect();
        (rels, weights)
    }

    pub fn relation_weights(&self) -> Vec<i64> {
        self.relations
            .iter()
            .map(|r| r.weight(&self.gen_weights).expect("relations are homogeneous"))
            .collect()
    }

    pub fn shift(&self, s: i64) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            gen_weights: self.gen_weights.iter().map(|w| w + s).collect(),
            relations: self.relations.clone(),
            basis: OnceLock::new(),
        }
    }

    pub fn is_canonical_zero(&self) -> bool {
        self.gen_weights.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.relation_basis().is_everything()
    }

    /// The canonical zero module if `self` is zero, else `self`.
    pub fn canonical(self) -> PresentedModule {
        if !self.is_canonical_zero() && self.is_zero() {
            PresentedModule::zero(self.ring)
        } else {
            self
        }
    }

    /// Checks that `x` lies in the free module and is homogeneous; returns
    /// its weight (`None` for zero).
    pub fn check_element(&self, x: &FreeElement) -> Result<Option<i64>> {
        self.free_module().check(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        x.weight(&self.gen_weights)
            .map(Some)
            .ok_or_else(|| structural!("inhomogeneous element {}", x.display(&self.ring)))
    }

    /// Whether the class of `x` vanishes.
    pub fn is_zero_element(&self, x: &FreeElement) -> bool {
        self.relation_basis().contains(x)
    }

    pub fn reduce(&self, x: &FreeElement) -> FreeElement {
        self.relation_basis().normal_form(x)
    }

    /// Same ring, same generator weights, same relation submodule.
    pub fn same_presentation(&self, other: &PresentedModule) -> bool {
        self == other
            || (self.ring == other.ring
                && self.gen_weights == other.gen_weights
                && self.relation_basis() == other.relation_basis())
    }

    /// Dimension of the weight-`w` component.
    pub fn hilbert_function(&self, w: i64) -> u64 {
        let gb = self.relation_basis();
        self.gen_weights
            .iter()
            .enumerate()
            .map(|(i, gw)| gb.standard_monomial_count(i, w - gw))
            .sum()
    }

    /// Hilbert function on `lo..=hi`.
    pub fn hilbert_table(&self, lo: i64, hi: i64) -> Vec<(i64, u64)> {
        (lo..=hi).map(|w| (w, self.hilbert_function(w))).collect()
    }

    /// Default comparison bound: top generator weight plus [`DEFAULT_WEIGHT_MARGIN`].
    pub fn default_weight_bound(&self) -> i64 {
        self.gen_weights.iter().copied().max().unwrap_or(0) + DEFAULT_WEIGHT_MARGIN
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if self.ring != other.ring {
            return Err(structural!("direct sum of modules over different rings"));
        }
        let (a, b) = (self.rank(), other.rank());
        let mut weights = self.gen_weights.clone();
        weights.extend_from_slice(&other.gen_weights);
        let relations = self
            .relations
            .iter()
            .map(|r| r.embed(0, a + b))
            .chain(other.relations.iter().map(|r| r.embed(a, a + b)))
            .collect();
        PresentedModule::new(self.ring.clone(), weights, relations)
    }

    /// `1 · e_i`.
    pub fn generator(&self, i: usize) -> FreeElement {
        FreeElement::basis(self.rank(), i, self.ring.nvars())
    }

    pub fn display(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| r.display(&self.ring)).collect();
        format!("<gens {:?} | {}>", self.gen_weights, rels.join(", "))
    }

    fn set_basis(&self, gb: GroebnerBasis) {
        let _ = self.basis.set(Arc::new(gb));
    }
}

/// Weight-preserving homomorphism; `columns[j]` is the image of generator `j`
/// of the source, as a vector of the target's free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    columns: Vec<FreeElement>,
}

impl ModuleMap {
    /// Checks shapes and homogeneity; well-definedness is checked separately
    /// by [`ModuleMap::is_well_defined`].
    pub fn new(source: PresentedModule, target: PresentedModule, columns: Vec<FreeElement>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(structural!("map between modules over different rings"));
        }
        if columns.len() != source.rank() {
            return Err(structural!("{} columns for a source with {} generators", columns.len(), source.rank()));
        }
        for (j, col) in columns.iter().enumerate() {
            if let Some(w) = target.check_element(col)? {
                if w != source.gen_weights[j] {
                    return Err(structural!(
                        "column {j} has weight {w}, its generator has weight {}",
                        source.gen_weights[j]
                    ));
                }
            }
        }
        Ok(ModuleMap { source, target, columns })
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let columns = (0..m.rank()).map(|i| m.generator(i)).collect();
        ModuleMap { source: m.clone(), target: m.clone(), columns }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        let columns = vec![FreeElement::zero(target.rank()); source.rank()];
        ModuleMap { source: source.clone(), target: target.clone(), columns }
    }

    /// Multiplication by a homogeneous `r` of weight `d`, as a map `M → M(−d)`.
    pub fn multiplication(m: &PresentedModule, r: &GradedPoly) -> Result<Self> {
        let d = r.weight().map(i64::from).unwrap_or(0);
        let target = m.shift(-d);
        let columns = (0..m.rank()).map(|i| m.generator(i).scale(r)).collect();
        ModuleMap::new(m.clone(), target, columns)
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn columns(&self) -> &[FreeElement] {
        &self.columns
    }

    pub fn ring(&self) -> &EdgeRing {
        &self.source.ring
    }

    /// Image of a vector of the source's free module.
    pub fn apply(&self, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.target.rank());
        for (c, col) in x.comps().iter().zip(&self.columns) {
            if !c.is_zero() {
                out = &out + &col.scale(c);
            }
        }
        out
    }

    /// Every source relation maps into the target's relations.
    pub fn is_well_defined(&self) -> bool {
        self.source
            .relations
            .iter()
            .all(|r| self.target.is_zero_element(&self.apply(r)))
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ModuleMap) -> Result<ModuleMap> {
        if !self.target.same_presentation(&after.source) {
            return Err(structural!("composing maps with mismatched middle modules"));
        }
        let columns = self.columns.iter().map(|c| after.apply(c)).collect();
        ModuleMap::new(self.source.clone(), after.target.clone(), columns)
    }

    pub fn shift(&self, s: i64) -> ModuleMap {
        ModuleMap { source: self.source.shift(s), target: self.target.shift(s), columns: self.columns.clone() }
    }

    /// Replaces source and target by modules with identical presentations.
    pub fn with_modules(&self, source: PresentedModule, target: PresentedModule) -> Result<ModuleMap> {
        ModuleMap::new(source, target, self.columns.clone())
    }

    pub fn is_zero_map(&self) -> bool {
        self.columns.iter().all(|c| self.target.is_zero_element(c))
    }

    /// Vectors of the source's free module generating the preimage of the
    /// target relations, with their weights. The kernel is their span.
    pub fn kernel_preimage(&self) -> Result<Vec<(FreeElement, i64)>> {
        let k = self.columns.len();
        let mut gens = self.columns.clone();
        let (rels, rel_weights) = self.target.reduced_relations();
        gens.extend(rels);
        let mut weights = self.source.gen_weights.clone();
        weights.extend(rel_weights);
        let lifter = Lifter::new(&self.target.free_module(), &gens, &weights)?;
        let src = self.source.free_module();
        Ok(lifter
            .syzygies()
            .into_iter()
            .map(|s| s.slice(0..k))
            .filter(|s| !s.is_zero())
            .map(|s| {
                let w = s.weight(src.weights()).expect("syzygies of homogeneous vectors are homogeneous");
                (s, w)
            })
            .collect())
    }

    pub fn is_mono(&self) -> Result<bool> {
        Ok(self
            .kernel_preimage()?
            .iter()
            .all(|(x, _)| self.source.is_zero_element(x)))
    }

    pub fn is_epi(&self) -> Result<bool> {
        let mut gens = self.columns.clone();
        gens.extend(self.target.reduced_relations().0);
        Ok(self.target.free_module().groebner(&gens)?.is_everything())
    }

    /// A preimage of `y` (a vector of the target's free module), if any.
    pub fn lift(&self, y: &FreeElement) -> Result<Option<FreeElement>> {
        Ok(self.lifter()?.lift(y).map(|c| c.slice(0..self.columns.len())))
    }

    fn lifter(&self) -> Result<Lifter> {
        let mut gens = self.columns.clone();
        let (rels, rel_weights) = self.target.reduced_relations();
        gens.extend(rels);
        let mut weights = self.source.gen_weights.clone();
        weights.extend(rel_weights);
        Lifter::new(&self.target.free_module(), &gens, &weights)
    }
}

/// A submodule `S ⊆ M` presented on a minimal subset of the given generators.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: PresentedModule,
    pub inclusion: ModuleMap,
    lifter: Lifter,
}

impl Submodule {
    /// Coordinates of `y` (a vector of the ambient free module) in the
    /// generators of the submodule, or `None` if the class of `y` is not in it.
    pub fn express(&self, y: &FreeElement) -> Option<FreeElement> {
        self.lifter.lift(y).map(|c| c.slice(0..self.module.rank()))
    }
}

/// The submodule of `m` generated by the classes of homogeneous `elements`.
///
/// Generators are taken greedily in order of weight, skipping any already in
/// the span of earlier ones, so the resulting generating set is minimal.
pub fn submodule(m: &PresentedModule, elements: &[FreeElement]) -> Result<Submodule> {
    let mut candidates: Vec<(FreeElement, i64)> = Vec::new();
    for x in elements {
        if let Some(w) = m.check_element(x)? {
            let r = m.reduce(x);
            if !r.is_zero() {
                candidates.push((r, w));
            }
        }
    }
    candidates.sort_by_key(|(_, w)| *w);
    let free = m.free_module();
    let mut kept: Vec<FreeElement> = Vec::new();
    let mut kept_weights: Vec<i64> = Vec::new();
    for (x, w) in candidates {
        let in_span = if kept.is_empty() {
            m.is_zero_element(&x)
        } else {
            let mut gens = kept.clone();
            gens.extend(m.reduced_relations().0);
            free.groebner(&gens)?.contains(&x)
        };
        if !in_span {
            kept.push(x);
            kept_weights.push(w);
        }
    }
    let k = kept.len();
    let mut gens = kept.clone();
    let (rels, rel_weights) = m.reduced_relations();
    gens.extend(rels);
    let mut weights = kept_weights.clone();
    weights.extend(rel_weights);
    let lifter = Lifter::new(&free, &gens, &weights)?;
    let rels: Vec<FreeElement> = lifter
        .syzygies()
        .into_iter()
        .map(|s| s.slice(0..k))
        .filter(|s| !s.is_zero())
        .collect();
    let sub_free = FreeModule::new(m.ring.clone(), kept_weights.clone());
    let gb = sub_free.groebner(&rels)?;
    let module = PresentedModule::new(m.ring.clone(), kept_weights, gb.elements())?;
    module.set_basis(gb);
    let inclusion = ModuleMap::new(module.clone(), m.clone(), kept)?;
    Ok(Submodule { module, inclusion, lifter })
}

/// Whether `a` and `b` span the same submodule of `m`.
pub fn same_submodule(m: &PresentedModule, a: &[FreeElement], b: &[FreeElement]) -> Result<bool> {
    let free = m.free_module();
    let span = |xs: &[FreeElement]| -> Result<GroebnerBasis> {
        let mut gens = xs.to_vec();
        gens.extend(m.reduced_relations().0);
        free.groebner(&gens)
    };
    Ok(span(a)? == span(b)?)
}

/// Kernel of `phi` with its inclusion into the source.
pub fn kernel(phi: &ModuleMap) -> Result<(PresentedModule, ModuleMap)> {
    let pre: Vec<FreeElement> = phi.kernel_preimage()?.into_iter().map(|(x, _)| x).collect();
    let sub = submodule(&phi.source, &pre)?;
    Ok((sub.module, sub.inclusion))
}

/// Cokernel of `phi` with the canonical projection from the target.
pub fn cokernel(phi: &ModuleMap) -> Result<(PresentedModule, ModuleMap)> {
    let t = &phi.target;
    let mut relations = t.reduced_relations().0;
    relations.extend(phi.columns.iter().filter(|c| !c.is_zero()).cloned());
    let coker = PresentedModule::new(t.ring.clone(), t.gen_weights.clone(), relations)?.canonical();
    let columns = if coker.is_canonical_zero() {
        vec![FreeElement::zero(0); t.rank()]
    } else {
        (0..t.rank()).map(|i| t.generator(i)).collect()
    };
    let proj = ModuleMap::new(t.clone(), coker.clone(), columns)?;
    Ok((coker, proj))
}

/// Image of a map: the submodule, its inclusion, and the corestriction.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: PresentedModule,
    pub inclusion: ModuleMap,
    pub corestriction: ModuleMap,
}

pub fn image(phi: &ModuleMap) -> Result<Image> {
    let sub = submodule(&phi.target, &phi.columns)?;
    let columns = phi
        .columns
        .iter()
        .map(|c| {
            sub.express(c)
                .ok_or_else(|| structural!("column outside its own image"))
        })
        .collect::<Result<Vec<_>>>()?;
    let corestriction = ModuleMap::new(phi.source.clone(), sub.module.clone(), columns)?;
    Ok(Image { module: sub.module, inclusion: sub.inclusion, corestriction })
}

/// Pullback of `f: S → A` and `g: B → A`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: PresentedModule,
    pub to_first: ModuleMap,
    pub to_second: ModuleMap,
}

pub fn pullback(f: &ModuleMap, g: &ModuleMap) -> Result<Pullback> {
    if !f.target.same_presentation(&g.target) {
        return Err(structural!("pullback of maps with different targets"));
    }
    let (s, b) = (f.source.rank(), g.source.rank());
    let sum = f.source.direct_sum(&g.source)?;
    let mut columns = f.columns.clone();
    columns.extend(g.columns.iter().map(|c| -c));
    let diff = ModuleMap::new(sum, f.target.clone(), columns)?;
    let (p, incl) = kernel(&diff)?;
    let to_first = ModuleMap::new(
        p.clone(),
        f.source.clone(),
        incl.columns.iter().map(|c| c.slice(0..s)).collect(),
    )?;
    let to_second = ModuleMap::new(
        p.clone(),
        g.source.clone(),
        incl.columns.iter().map(|c| c.slice(s..s + b)).collect(),
    )?;
    Ok(Pullback { module: p, to_first, to_second })
}

/// Generators of `{r : r·m = 0 in M}`, as a reduced Gröbner basis.
pub fn annihilator(m: &PresentedModule, x: &FreeElement) -> Result<Vec<GradedPoly>> {
    let w = m.check_element(x)?.unwrap_or(0);
    let mut gens = vec![x.clone()];
    let (rels, rel_weights) = m.reduced_relations();
    gens.extend(rels);
    let mut weights = vec![w];
    weights.extend(rel_weights);
    let lifter = Lifter::new(&m.free_module(), &gens, &weights)?;
    let ideal: Vec<GradedPoly> = lifter
        .syzygies()
        .into_iter()
        .map(|s| s.comps()[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    ideal_basis(&m.ring, &ideal)
}

/// `R·x ≅ (R / Ann x)(shift)` with its inclusion into `M`.
#[derive(Clone, Debug)]
pub struct Cyclic {
    pub module: PresentedModule,
    pub inclusion: ModuleMap,
    /// Weight of the generator.
    pub shift: i64,
}

pub fn cyclic_submodule(m: &PresentedModule, x: &FreeElement) -> Result<Cyclic> {
    let Some(w) = m.check_element(x)? else {
        let zero = PresentedModule::zero(m.ring.clone());
        return Ok(Cyclic { inclusion: ModuleMap::zero(&zero, m), module: zero, shift: 0 });
    };
    if m.is_zero_element(x) {
        let zero = PresentedModule::zero(m.ring.clone());
        return Ok(Cyclic { inclusion: ModuleMap::zero(&zero, m), module: zero, shift: w });
    }
    let ann = annihilator(m, x)?;
    let module = PresentedModule::new(
        m.ring.clone(),
        vec![w],
        ann.into_iter().map(|p| FreeElement::new(vec![p])).collect(),
    )?;
    let inclusion = ModuleMap::new(module.clone(), m.clone(), vec![x.clone()])?;
    Ok(Cyclic { module, inclusion, shift: w })
}

/// A finite cyclic cover `⊕ R·x_i ↠ S` of the submodule generated by the `x_i`.
#[derive(Clone, Debug)]
pub struct CyclicCover {
    pub pieces: Vec<Cyclic>,
    /// The direct sum of the pieces, in order.
    pub sum: PresentedModule,
    pub submodule: Submodule,
    pub surjection: ModuleMap,
}

/// Cyclic cover of the submodule spanned by `elements`; elements whose class
/// vanishes are skipped.
pub fn submodule_generators(m: &PresentedModule, elements: &[FreeElement]) -> Result<CyclicCover> {
    let mut pieces = Vec::new();
    let mut used = Vec::new();
    for x in elements {
        if m.check_element(x)?.is_some() && !m.is_zero_element(x) {
            pieces.push(cyclic_submodule(m, x)?);
            used.push(x.clone());
        }
    }
    let submodule = submodule(m, &used)?;
    let mut sum = PresentedModule::zero(m.ring.clone());
    for piece in &pieces {
        sum = sum.direct_sum(&piece.module)?;
    }
    let columns = used
        .iter()
        .map(|x| {
            submodule
                .express(x)
                .ok_or_else(|| structural!("generator outside its own span"))
        })
        .collect::<Result<Vec<_>>>()?;
    let surjection = ModuleMap::new(sum.clone(), submodule.module.clone(), columns)?;
    Ok(CyclicCover { pieces, sum, submodule, surjection })
}

/// `left ⊕ right` with the inclusion of `left` and the projection onto `right`.
pub fn split_extension(left: &PresentedModule, right: &PresentedModule) -> Result<(PresentedModule, ModuleMap, ModuleMap)> {
    let sum = left.direct_sum(right)?;
    let (a, b) = (left.rank(), right.rank());
    let nv = left.ring.nvars();
    let inc = ModuleMap::new(
        left.clone(),
        sum.clone(),
        (0..a).map(|i| FreeElement::basis(a + b, i, nv)).collect(),
    )?;
    let proj = ModuleMap::new(
        sum.clone(),
        right.clone(),
        (0..a)
            .map(|_| FreeElement::zero(b))
            .chain((0..b).map(|i| FreeElement::basis(b, i, nv)))
            .collect(),
    )?;
    Ok((sum, inc, proj))
}

#[cfg(test)]
mod tests;
