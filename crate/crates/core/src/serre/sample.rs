//! Seeded random certificates and the property harness.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{monomials_of_degree, FreeElement, GradedPoly, Rational};
use crate::gradedmod::{cokernel, is_tame_support, split_extension, submodule, Contraction, ModuleMap, PresentedModule};
use crate::graphsplit::{check_merge_closure, tame_partitions, EdgeGraph, SplitResult, TamenessPredicate};
use crate::partition::Partition;

use super::certificate::{verify, Certificate};
use super::transform::transform;

/// Largest type level the sampler produces.
pub const MAX_LEVEL: usize = 3;
/// Largest weight of a witness entry relative to its generator.
pub const MAX_ENTRY_WEIGHT: u32 = 2;

/// A per-sample RNG derived from the master seed and the sample index.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random certificates over one split graph.
pub struct Sampler<'a> {
    ring: crate::exactalg::EdgeRing,
    tame: &'a [Partition],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Any,
    Sub,
    Quot,
    Ext,
}

impl<'a> Sampler<'a> {
    /// `tame` must be the nonempty list of tame partitions of the split graph.
    pub fn new(split: &SplitResult, tame: &'a [Partition]) -> Self {
        Sampler { ring: split.split_graph.ring(), tame }
    }

    pub fn certificate<R: Rng>(&self, rng: &mut R, level: usize, shape: Shape) -> Result<Certificate> {
        if level == 0 {
            return Ok(self.generator(rng));
        }
        let shape = match shape {
            Shape::Any => *[Shape::Sub, Shape::Quot, Shape::Ext].choose(rng).unwrap(),
            s => s,
        };
        match shape {
            Shape::Sub => {
                let parent = self.certificate(rng, level - 1, Shape::Any)?;
                let elems = self.random_elements(rng, parent.root());
                let sub = submodule(parent.root(), &elems)?;
                Certificate::sub(parent, sub.inclusion)
            }
            Shape::Quot => {
                let parent = self.certificate(rng, level - 1, Shape::Any)?;
                let elems = self.random_elements(rng, parent.root());
                let weights = elems
                    .iter()
                    .map(|x| parent.root().check_element(x).map(|w| w.unwrap_or(0)))
                    .collect::<Result<Vec<_>>>()?;
                let free = PresentedModule::free(self.ring.clone(), weights);
                let phi = ModuleMap::new(free, parent.root().clone(), elems)?;
                let (_, proj) = cokernel(&phi)?;
                Certificate::quot(parent, proj)
            }
            Shape::Ext | Shape::Any => {
                let deep = self.certificate(rng, level - 1, Shape::Any)?;
                let other_level = rng.gen_range(0..level);
                let other = self.certificate(rng, other_level, Shape::Any)?;
                let (left, right) = if rng.gen_bool(0.5) { (deep, other) } else { (other, deep) };
                self.extension(rng, left, right)
            }
        }
    }

    fn generator<R: Rng>(&self, rng: &mut R) -> Certificate {
        let p = self.tame.choose(rng).expect("at least one tame partition").clone();
        Certificate::gen(p, rng.gen_range(0..=1))
    }

    /// A nonzero homogeneous element whose entries have weight at most
    /// [`MAX_ENTRY_WEIGHT`] over their generators, or zero when `m` has no
    /// generators.
    pub fn random_element<R: Rng>(&self, rng: &mut R, m: &PresentedModule) -> FreeElement {
        let n = self.ring.nvars();
        if m.rank() == 0 {
            return FreeElement::zero(0);
        }
        for _ in 0..8 {
            let base = *m.gen_weights().choose(rng).unwrap();
            let w = base + rng.gen_range(0..=MAX_ENTRY_WEIGHT as i64);
            let comps = m
                .gen_weights()
                .iter()
                .map(|gw| {
                    let d = w - gw;
                    if d < 0 || d > MAX_ENTRY_WEIGHT as i64 || rng.gen_bool(0.4) {
                        return GradedPoly::zero();
                    }
                    random_form(rng, n, d as u32)
                })
                .collect();
            let x = FreeElement::new(comps);
            if !m.is_zero_element(&x) {
                return x;
            }
        }
        m.generator(rng.gen_range(0..m.rank()))
    }

    fn random_elements<R: Rng>(&self, rng: &mut R, m: &PresentedModule) -> Vec<FreeElement> {
        let k = rng.gen_range(1..=2);
        (0..k).map(|_| self.random_element(rng, m)).filter(|x| !x.is_zero()).collect()
    }

    /// An extension of `right` by `left`: relations of `right` are twisted by
    /// random elements of `left`'s free module when that keeps `left`
    /// injective, otherwise the direct sum.
    fn extension<R: Rng>(&self, rng: &mut R, left: Certificate, right: Certificate) -> Result<Certificate> {
        let (l, r) = (left.root(), right.root());
        let (a, b) = (l.rank(), r.rank());
        if a > 0 && b > 0 && rng.gen_bool(0.6) {
            let (rrels, rweights) = r.reduced_relations();
            let mut relations: Vec<FreeElement> = l.relations().iter().map(|x| x.embed(0, a + b)).collect();
            for (rel, w) in rrels.iter().zip(&rweights) {
                let twist = self.form_of_weight(rng, l, *w);
                let mut comps = twist.into_comps();
                comps.extend(rel.comps().iter().cloned());
                relations.push(FreeElement::new(comps));
            }
            let mut weights = l.gen_weights().to_vec();
            weights.extend_from_slice(r.gen_weights());
            let middle = PresentedModule::new(self.ring.clone(), weights, relations)?;
            let nv = self.ring.nvars();
            let inc = ModuleMap::new(
                l.clone(),
                middle.clone(),
                (0..a).map(|i| FreeElement::basis(a + b, i, nv)).collect(),
            )?;
            let proj = ModuleMap::new(
                middle,
                r.clone(),
                (0..a)
                    .map(|_| FreeElement::zero(b))
                    .chain((0..b).map(|i| FreeElement::basis(b, i, nv)))
                    .collect(),
            )?;
            if inc.is_mono()? {
                return Certificate::ext(left, right, inc, proj);
            }
        }
        let (_, inc, proj) = split_extension(l, r)?;
        Certificate::ext(left, right, inc, proj)
    }

    /// A random element of `m`'s free module of weight `w` (possibly zero).
    fn form_of_weight<R: Rng>(&self, rng: &mut R, m: &PresentedModule, w: i64) -> FreeElement {
        let n = self.ring.nvars();
        FreeElement::new(
            m.gen_weights()
                .iter()
                .map(|gw| {
                    let d = w - gw;
                    if d < 0 || d > MAX_ENTRY_WEIGHT as i64 || rng.gen_bool(0.5) {
                        GradedPoly::zero()
                    } else {
                        random_form(rng, n, d as u32)
                    }
                })
                .collect(),
        )
    }
}

/// A random homogeneous polynomial of degree `d` with 1 to 2 terms and
/// small integer coefficients.
fn random_form<R: Rng>(rng: &mut R, nvars: usize, d: u32) -> GradedPoly {
    let monos = monomials_of_degree(nvars, d);
    let terms = rng.gen_range(1..=2);
    let mut p = GradedPoly::zero();
    for _ in 0..terms {
        let m = monos.choose(rng).unwrap().clone();
        let mut c = rng.gen_range(-2i64..=2);
        if c == 0 {
            c = 1;
        }
        p = &p + &GradedPoly::from_terms([(m, Rational::from_integer(c.into()))]);
    }
    if p.is_zero() {
        GradedPoly::from_terms([(monos[0].clone(), Rational::from_integer(1.into()))])
    } else {
        p
    }
}

/// The four closure properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Object,
    Quotient,
    Subobject,
    Extension,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::Object, Property::Quotient, Property::Subobject, Property::Extension];

    pub fn tag(self) -> &'static str {
        match self {
            Property::Object => "O",
            Property::Quotient => "Q",
            Property::Subobject => "S",
            Property::Extension => "E",
        }
    }

    fn shape(self) -> Shape {
        match self {
            Property::Object => Shape::Any,
            Property::Quotient => Shape::Quot,
            Property::Subobject => Shape::Sub,
            Property::Extension => Shape::Ext,
        }
    }
}

/// Verdict for one sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub index: u64,
    pub property: Property,
    pub degree: u8,
    pub sample: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}({})\t{}\t{}",
            self.index,
            self.property.tag(),
            self.degree,
            if self.passed { "pass" } else { "FAIL" },
            self.sample
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\t{c}")?;
        }
        Ok(())
    }
}

/// Harness output: merge-closure status plus one report per sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessReport {
    pub merge_closure: Option<(Partition, Partition)>,
    pub reports: Vec<PropertyReport>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.merge_closure.is_none() && self.reports.iter().all(|r| r.passed)
    }
}

pub struct HarnessConfig<'a> {
    pub pred_split: &'a dyn TamenessPredicate,
    pub pred_base: &'a dyn TamenessPredicate,
    pub split: &'a SplitResult,
    pub samples: u64,
    pub seed: u64,
    pub jobs: usize,
}

/// Samples certificates for each property clause and degree, applies the
/// functor to their roots and checks tameness of the result by support.
pub fn harness(cfg: &HarnessConfig<'_>) -> Result<HarnessReport> {
    if cfg.samples == 0 {
        return Ok(HarnessReport { merge_closure: None, reports: Vec::new() });
    }
    let merge = check_merge_closure(cfg.pred_split, cfg.pred_base, cfg.split, None)?;
    let tame_split = tame_partitions(cfg.pred_split, &cfg.split.split_graph)?;
    let tame_base = tame_partitions(cfg.pred_base, &cfg.split.base_graph)?;
    if tame_split.is_empty() {
        return Err(Error::Validation(format!(
            "{} admits no partition of the split graph",
            cfg.pred_split.describe()
        )));
    }
    let sampler = Sampler::new(cfg.split, &tame_split);
    let contraction = Contraction::new(&cfg.split.split_graph.ring(), &cfg.split.e, &cfg.split.e_prime)?;
    let run = |index: u64| -> Result<PropertyReport> {
        let mut rng = sample_rng(cfg.seed, index);
        let property = Property::ALL[(index / 2 % 4) as usize];
        let degree = (index % 2) as u8;
        let level = match property {
            Property::Object => rng.gen_range(0..=MAX_LEVEL),
            _ => rng.gen_range(1..=MAX_LEVEL),
        };
        let cert = sampler.certificate(&mut rng, level, property.shape())?;
        let root = cert.root();
        let image = if degree == 0 { contraction.f0(root)? } else { contraction.f1(root)? };
        let passed = is_tame_support(&image, &tame_base)?;
        Ok(PropertyReport {
            index,
            property,
            degree,
            sample: format!("level {} {cert}", cert.type_level()),
            passed,
            counterexample: (!passed).then(|| format!("F{degree} = {}", image.display())),
        })
    };
    let reports = in_pool(cfg.jobs, || (0..cfg.samples).into_par_iter().map(run).collect::<Result<Vec<_>>>())??;
    Ok(HarnessReport { merge_closure: merge.counterexample, reports })
}

/// Runs `f` on a rayon pool with `jobs` workers (the global pool when 0).
pub fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Outcome of transforming one random certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignEntry {
    pub index: u64,
    pub predicate: String,
    pub edges: usize,
    pub level: usize,
    pub certificate: String,
    /// The input verified and its root passed the support test.
    pub input_tame: bool,
    /// Per degree: output verified, root matched `F_i`, output support-tame,
    /// trace decreased.
    pub degrees: [DegreeOutcome; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeOutcome {
    pub verified: bool,
    pub root_matches: bool,
    pub support_tame: bool,
    pub trace_decreasing: bool,
    pub error: Option<String>,
}

impl DegreeOutcome {
    pub fn ok(&self) -> bool {
        self.verified && self.root_matches && self.support_tame && self.trace_decreasing
    }
}

impl CampaignEntry {
    pub fn ok(&self) -> bool {
        self.input_tame && self.degrees.iter().all(DegreeOutcome::ok)
    }
}

impl fmt::Display for CampaignEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{} edges\tlevel {}\tinput {}",
            self.index,
            self.predicate,
            self.edges,
            self.level,
            if self.input_tame { "tame" } else { "NOT TAME" }
        )?;
        for (i, d) in self.degrees.iter().enumerate() {
            write!(
                f,
                "\tF{i}: verified={} root={} tame={} trace={}",
                d.verified, d.root_matches, d.support_tame, d.trace_decreasing
            )?;
            if let Some(e) = &d.error {
                write!(f, " error={e}")?;
            }
        }
        write!(f, "\t{}", self.certificate)
    }
}

/// Transforms one random certificate (split graphs of 2 to `max_edges`
/// edges, levels up to [`MAX_LEVEL`]) in both degrees and checks every
/// claim made about the outputs.
pub fn campaign_entry(pred: &dyn TamenessPredicate, max_edges: usize, seed: u64, index: u64) -> Result<CampaignEntry> {
    let mut rng = sample_rng(seed, index);
    let edges = rng.gen_range(2..=max_edges.max(2));
    let base = EdgeGraph::standard(edges - 1);
    let split = crate::graphsplit::split_edge(&base, "e")?;
    let tame_split = tame_partitions(pred, &split.split_graph)?;
    let tame_base = tame_partitions(pred, &base)?;
    let sampler = Sampler::new(&split, &tame_split);
    let level = rng.gen_range(0..=MAX_LEVEL);
    let cert = sampler.certificate(&mut rng, level, Shape::Any)?;
    let contraction = Contraction::new(cert.ring(), &split.e, &split.e_prime)?;

    let input_tame = verify(&cert, pred).is_ok() && is_tame_support(cert.root(), &tame_split)?;
    let mut degrees: [DegreeOutcome; 2] = Default::default();
    for (i, outcome) in degrees.iter_mut().enumerate() {
        let i = i as u8;
        match transform(&cert, &split.e, &split.e_prime, i, pred) {
            Ok(t) => {
                let out = &t.certificate;
                outcome.verified = verify(out, pred).is_ok();
                let expected = if i == 0 { contraction.f0(cert.root())? } else { contraction.f1(cert.root())? };
                outcome.root_matches = out.root().same_presentation(&expected);
                outcome.support_tame = is_tame_support(out.root(), &tame_base)?;
                outcome.trace_decreasing = t.trace.iter().all(|s| s.decreases());
            }
            Err(e) => outcome.error = Some(e.to_string()),
        }
    }
    Ok(CampaignEntry {
        index,
        predicate: pred.describe(),
        edges,
        level: cert.type_level(),
        certificate: cert.to_string(),
        input_tame,
        degrees,
    })
}

/// [`campaign_entry`] for indices `0..count`, in index order regardless of
/// the number of workers.
pub fn campaign(
    pred: &dyn TamenessPredicate,
    max_edges: usize,
    count: u64,
    seed: u64,
    jobs: usize,
) -> Result<Vec<CampaignEntry>> {
    in_pool(jobs, || {
        (0..count)
            .into_par_iter()
            .map(|i| campaign_entry(pred, max_edges, seed, i))
            .collect::<Result<Vec<_>>>()
    })?
}
