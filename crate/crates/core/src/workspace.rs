//! Resolved workspaces and the commands shared by the binary and the C
//! bindings.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exactalg::EdgeRing;
use crate::format::{
    element_from_dto, module_to_dto, partition_from_ref, predicate_from_dto, CertDto, CertRef, Encoder, ModuleDto,
    WorkspaceFile,
};
use crate::gradedmod::{Contraction, ModuleMap, PresentedModule};
use crate::graphsplit::{split_edge, EdgeGraph, Predicate, SplitResult};
use crate::partition::{partition_module, Partition};
use crate::serre::{harness, transform_verified, verify, Certificate, HarnessConfig, HarnessReport};

/// Environment variable holding the default Hilbert table bound.
pub const WEIGHT_BOUND_ENV: &str = "TAMEMOD_WEIGHT_BOUND";

/// A workspace with every id resolved.
///
/// Values live over the split graph's ring when `split` is set and over the
/// graph's own ring otherwise.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub graph: EdgeGraph,
    pub split: Option<SplitResult>,
    pub ring: EdgeRing,
    pub predicate: Predicate,
    pub partitions: BTreeMap<String, Partition>,
    pub modules: BTreeMap<String, PresentedModule>,
    pub maps: BTreeMap<String, ModuleMap>,
    pub certificates: BTreeMap<String, Certificate>,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self> {
        Self::resolve(&WorkspaceFile::parse(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn resolve(file: &WorkspaceFile) -> Result<Self> {
        let graph = EdgeGraph::new(file.graph.iter().cloned()).map_err(|e| e.context("graph"))?;
        let split = match &file.split {
            Some(e) => Some(split_edge(&graph, e).map_err(|err| err.context("split"))?),
            None => None,
        };
        let ring = split.as_ref().map_or_else(|| graph.ring(), |s| s.split_graph.ring());
        let predicate = file.predicate.as_ref().map_or(Predicate::Always, predicate_from_dto);

        let mut partitions = BTreeMap::new();
        for (id, blocks) in &file.partitions {
            let p = Partition::from_blocks(blocks.clone()).map_err(|e| e.context(format!("partition `{id}`")))?;
            check_ground(&p, &ring).map_err(|e| e.context(format!("partition `{id}`")))?;
            partitions.insert(id.clone(), p);
        }

        let mut modules = BTreeMap::new();
        for (id, dto) in &file.modules {
            let m = module_from_dto(dto, &ring, &partitions).map_err(|e| e.context(format!("module `{id}`")))?;
            modules.insert(id.clone(), m);
        }

        let mut maps = BTreeMap::new();
        for (id, dto) in &file.maps {
            let ctx = |e: Error| e.context(format!("map `{id}`"));
            let source = lookup(&modules, &dto.source, "module").map_err(ctx)?;
            let target = lookup(&modules, &dto.target, "module").map_err(ctx)?;
            let columns = dto.columns.iter().map(|c| element_from_dto(c, &ring)).collect::<Result<_>>().map_err(ctx)?;
            maps.insert(id.clone(), ModuleMap::new(source.clone(), target.clone(), columns).map_err(ctx)?);
        }

        let mut ws = Workspace {
            graph,
            split,
            ring,
            predicate,
            partitions,
            modules,
            maps,
            certificates: BTreeMap::new(),
        };
        let mut resolving = BTreeSet::new();
        for id in file.certificates.keys() {
            ws.certificate_by_id(file, id, &mut resolving)?;
        }
        Ok(ws)
    }

    fn certificate_by_id(&mut self, file: &WorkspaceFile, id: &str, resolving: &mut BTreeSet<String>) -> Result<Certificate> {
        if let Some(c) = self.certificates.get(id) {
            return Ok(c.clone());
        }
        let node = file.certificates.get(id).ok_or_else(|| invalid!("unknown certificate id `{id}`"))?;
        if !resolving.insert(id.to_string()) {
            return Err(invalid!("certificate `{id}` refers to itself"));
        }
        let c = self.certificate(file, node, resolving).map_err(|e| e.context(format!("certificate `{id}`")))?;
        resolving.remove(id);
        self.certificates.insert(id.to_string(), c.clone());
        Ok(c)
    }

    fn certificate(&mut self, file: &WorkspaceFile, r: &CertRef, resolving: &mut BTreeSet<String>) -> Result<Certificate> {
        let dto = match r {
            CertRef::Ref { id } => return self.certificate_by_id(file, id, resolving),
            CertRef::Node(dto) => dto.as_ref(),
        };
        let (c, root) = match dto {
            CertDto::Zero => (Certificate::zero(self.ring.clone()), None),
            CertDto::Gen { partition, shift, root } => {
                let p = partition_from_ref(partition, &self.partitions)?;
                check_ground(&p, &self.ring)?;
                (Certificate::gen(p, *shift), root.as_ref())
            }
            CertDto::Sub { parent, witness, root } => {
                let parent = self.certificate(file, parent, resolving)?;
                (Certificate::sub(parent, self.map(witness)?)?, root.as_ref())
            }
            CertDto::Quot { parent, witness, root } => {
                let parent = self.certificate(file, parent, resolving)?;
                (Certificate::quot(parent, self.map(witness)?)?, root.as_ref())
            }
            CertDto::Ext { left, right, inclusion, projection, root } => {
                let left = self.certificate(file, left, resolving)?;
                let right = self.certificate(file, right, resolving)?;
                (Certificate::ext(left, right, self.map(inclusion)?, self.map(projection)?)?, root.as_ref())
            }
        };
        match root {
            Some(id) => c.with_root(self.module(id)?.clone()),
            None => Ok(c),
        }
    }

    pub fn module(&self, id: &str) -> Result<&PresentedModule> {
        lookup(&self.modules, id, "module")
    }

    pub fn map(&self, id: &str) -> Result<ModuleMap> {
        lookup(&self.maps, id, "map").cloned()
    }

    pub fn cert(&self, id: &str) -> Result<&Certificate> {
        lookup(&self.certificates, id, "certificate")
    }

    fn split(&self) -> Result<&SplitResult> {
        self.split.as_ref().ok_or_else(|| invalid!("the workspace names no edge to split"))
    }

    fn contraction(&self) -> Result<Contraction> {
        let s = self.split()?;
        Contraction::new(&self.ring, &s.e, &s.e_prime)
    }

    /// `F_degree` of a module, with its Hilbert table through `weight_bound`
    /// (by default the largest generator weight plus five).
    pub fn functor(&self, module: &str, degree: u8, weight_bound: Option<i64>) -> Result<FunctorOutput> {
        let m = self.module(module)?;
        let c = self.contraction()?;
        let out = match degree {
            0 => c.f0(m),
            1 => c.f1(m),
            d => return Err(invalid!("degree must be 0 or 1, got {d}")),
        }
        .map_err(|e| e.context(format!("module `{module}`")))?;
        let hi = weight_bound.unwrap_or_else(|| out.default_weight_bound().max(m.default_weight_bound()));
        let lo = out.gen_weights().iter().copied().min().unwrap_or(0).min(hi);
        Ok(FunctorOutput {
            graph: self.split()?.base_graph.edges().to_vec(),
            source: module.to_string(),
            degree,
            module: module_to_dto(&out),
            hilbert: out.hilbert_table(lo, hi),
        })
    }

    pub fn verify(&self, cert: &str) -> Result<()> {
        verify(self.cert(cert)?, &self.predicate)
    }

    pub fn level(&self, cert: &str) -> Result<usize> {
        Ok(self.cert(cert)?.type_level())
    }

    /// Transforms a certificate, re-verifies the output over the base
    /// graph, and returns it as a new workspace holding the certificate
    /// under `{cert}.f{degree}`.
    pub fn transform(&self, cert: &str, degree: u8) -> Result<(Certificate, WorkspaceFile)> {
        let s = self.split()?;
        let out = transform_verified(self.cert(cert)?, &s.e, &s.e_prime, degree, &self.predicate, &self.predicate)?;
        let mut enc = Encoder::new(s.base_graph.edges().to_vec(), "");
        enc.add_certificate(&format!("{cert}.f{degree}"), &out.certificate);
        Ok((out.certificate, enc.finish(None, Some(&self.predicate))))
    }

    /// Serializes every value back into the workspace format. Partitions and
    /// certificates are written inline; modules and maps keep their ids, and
    /// values only reachable from certificates get ids starting with `_`.
    pub fn to_file(&self) -> WorkspaceFile {
        let mut enc = Encoder::new(self.graph.edges().to_vec(), "_");
        for (id, m) in &self.modules {
            enc.add_module(id, m);
        }
        for (id, f) in &self.maps {
            enc.add_map(id, f);
        }
        for (id, c) in &self.certificates {
            enc.add_certificate(id, c);
        }
        let mut file = enc.finish(self.split.as_ref().map(|s| s.e.clone()), Some(&self.predicate));
        file.partitions = self.partitions.iter().map(|(id, p)| (id.clone(), p.blocks().to_vec())).collect();
        file
    }
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, id: &str, what: &str) -> Result<&'a T> {
    table.get(id).ok_or_else(|| invalid!("unknown {what} id `{id}`"))
}

fn check_ground(p: &Partition, ring: &EdgeRing) -> Result<()> {
    let mut vars = ring.vars().to_vec();
    vars.sort();
    if p.ground() != vars {
        return Err(invalid!("partition {p} does not cover the edges {}", vars.join(",")));
    }
    Ok(())
}

fn module_from_dto(dto: &ModuleDto, ring: &EdgeRing, partitions: &BTreeMap<String, Partition>) -> Result<PresentedModule> {
    match dto {
        ModuleDto::Presented { weights, relations } => {
            let relations = relations.iter().map(|r| element_from_dto(r, ring)).collect::<Result<_>>()?;
            PresentedModule::new(ring.clone(), weights.clone(), relations)
        }
        ModuleDto::Partition { partition, shift } => {
            let p = partition_from_ref(partition, partitions)?;
            check_ground(&p, ring)?;
            Ok(partition_module(&p).shift(*shift))
        }
    }
}

/// Output of the functor command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorOutput {
    pub graph: Vec<String>,
    pub source: String,
    pub degree: u8,
    pub module: ModuleDto,
    pub hilbert: Vec<(i64, u64)>,
}

impl FunctorOutput {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("functor output serializes");
        s.push('\n');
        s
    }
}

/// Options of the harness command. `edges` counts the edges of the split
/// graph, which is the standard graph on `edges − 1` edges split at `e`.
#[derive(Clone, Debug)]
pub struct HarnessOptions {
    pub edges: usize,
    pub pred_split: Predicate,
    pub pred_base: Predicate,
    pub samples: u64,
    pub seed: u64,
    pub jobs: usize,
}

pub fn run_harness(opts: &HarnessOptions) -> Result<HarnessReport> {
    if opts.edges < 2 {
        return Err(invalid!("the split graph needs at least 2 edges, got {}", opts.edges));
    }
    let split = split_edge(&EdgeGraph::standard(opts.edges - 1), "e")?;
    harness(&HarnessConfig {
        pred_split: &opts.pred_split,
        pred_base: &opts.pred_base,
        split: &split,
        samples: opts.samples,
        seed: opts.seed,
        jobs: opts.jobs,
    })
}

#[derive(Serialize)]
struct HarnessJson<'a> {
    edges: usize,
    pred_split: String,
    pred_base: String,
    samples: u64,
    seed: u64,
    passed: bool,
    merge_closure: Option<MergeJson>,
    summary: BTreeMap<String, Tally>,
    reports: Vec<ReportJson<'a>>,
}

#[derive(Serialize)]
struct MergeJson {
    partition: String,
    merged: String,
}

#[derive(Serialize, Default)]
struct Tally {
    pass: u64,
    fail: u64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    index: u64,
    property: &'static str,
    degree: u8,
    passed: bool,
    sample: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a str>,
}

/// The machine-readable harness summary. Contains no timing or worker
/// information, so equal inputs give byte-identical output.
pub fn harness_json(opts: &HarnessOptions, report: &HarnessReport) -> String {
    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    for r in &report.reports {
        let t = summary.entry(format!("{}({})", r.property.tag(), r.degree)).or_default();
        if r.passed {
            t.pass += 1;
        } else {
            t.fail += 1;
        }
    }
    let doc = HarnessJson {
        edges: opts.edges,
        pred_split: opts.pred_split.to_string(),
        pred_base: opts.pred_base.to_string(),
        samples: opts.samples,
        seed: opts.seed,
        passed: report.passed(),
        merge_closure: report
            .merge_closure
            .as_ref()
            .map(|(p, m)| MergeJson { partition: p.to_string(), merged: m.to_string() }),
        summary,
        reports: report
            .reports
            .iter()
            .map(|r| ReportJson {
                index: r.index,
                property: r.property.tag(),
                degree: r.degree,
                passed: r.passed,
                sample: &r.sample,
                counterexample: r.counterexample.as_deref(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("harness report serializes");
    s.push('\n');
    s
}

/// Reads the default weight bound from [`WEIGHT_BOUND_ENV`].
pub fn weight_bound_from_env() -> Result<Option<i64>> {
    match std::env::var(WEIGHT_BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| invalid!("{WEIGHT_BOUND_ENV} must be an integer, got `{v}`")),
        Err(_) => Ok(None),
    }
}
