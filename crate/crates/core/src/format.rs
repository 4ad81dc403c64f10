//! The JSON workspace format.
//!
//! A workspace names a graph, optionally an edge to split, a predicate, and
//! collections of partitions, modules, maps and certificates keyed by id.
//! Polynomials are term lists `[{"c": "num/den", "m": {edge: exponent}}]`;
//! module elements are lists of polynomials, one per generator. Modules and
//! maps are referenced by id; certificates are nested nodes tagged by
//! `"kind"` and may refer to other certificates with `{"ref": id}`.
//!
//! ```json
//! {
//!   "graph": ["a", "e"],
//!   "split": "e",
//!   "predicate": {"name": "max-blocks", "k": 2},
//!   "partitions": {"P": [["e", "e'"], ["a"]]},
//!   "modules": {"M": {"partition": "P", "shift": 0}},
//!   "certificates": {"c": {"kind": "gen", "partition": "P", "shift": 0}}
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactalg::{format_rational, parse_rational, EdgeRing, FreeElement, GradedPoly, Monomial};
use crate::gradedmod::{ModuleMap, PresentedModule};
use crate::graphsplit::Predicate;
use crate::partition::Partition;
use crate::serre::{CertNode, Certificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub c: String,
    pub m: BTreeMap<String, u32>,
}

pub type PolyDto = Vec<Term>;
pub type ElementDto = Vec<PolyDto>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PredicateDto {
    Always,
    MaxBlocks { k: usize },
    Coblocked { edges: Vec<String> },
    DiscreteOnly,
    SingleBlock,
}

/// A partition given by id or inline as its list of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartitionRef {
    Id(String),
    Blocks(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleDto {
    Presented {
        weights: Vec<i64>,
        #[serde(default)]
        relations: Vec<ElementDto>,
    },
    Partition {
        partition: PartitionRef,
        #[serde(default)]
        shift: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDto {
    pub source: String,
    pub target: String,
    pub columns: Vec<ElementDto>,
}

/// A certificate node, or a reference to a certificate listed elsewhere in
/// the workspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertRef {
    Ref {
        #[serde(rename = "ref")]
        id: String,
    },
    Node(Box<CertDto>),
}

/// `root` names a module presenting the node's module when it is not the
/// one determined by the node's data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CertDto {
    Zero,
    Gen {
        partition: PartitionRef,
        #[serde(default)]
        shift: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        root: Option<String>,
    },
    Sub {
        parent: CertRef,
        witness: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        root: Option<String>,
    },
    Quot {
        parent: CertRef,
        witness: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        root: Option<String>,
    },
    Ext {
        left: CertRef,
        right: CertRef,
        inclusion: String,
        projection: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        root: Option<String>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub graph: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicate: Option<PredicateDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub partitions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, CertRef>,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid!("malformed workspace: {e}"))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("workspace serializes");
        s.push('\n');
        s
    }
}

pub fn poly_to_dto(p: &GradedPoly, ring: &EdgeRing) -> PolyDto {
    p.sorted_terms()
        .into_iter()
        .map(|(m, c)| Term {
            c: format_rational(c),
            m: m.exps()
                .iter()
                .zip(ring.vars())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| (v.clone(), *e))
                .collect(),
        })
        .collect()
}

pub fn poly_from_dto(dto: &PolyDto, ring: &EdgeRing) -> Result<GradedPoly> {
    let mut terms = Vec::with_capacity(dto.len());
    for t in dto {
        let mut exps = vec![0u32; ring.nvars()];
        for (v, e) in &t.m {
            exps[ring.require(v)?] += e;
        }
        terms.push((Monomial::new(exps), parse_rational(&t.c)?));
    }
    Ok(GradedPoly::from_terms(terms))
}

pub fn element_to_dto(x: &FreeElement, ring: &EdgeRing) -> ElementDto {
    x.comps().iter().map(|p| poly_to_dto(p, ring)).collect()
}

pub fn element_from_dto(dto: &ElementDto, ring: &EdgeRing) -> Result<FreeElement> {
    Ok(FreeElement::new(dto.iter().map(|p| poly_from_dto(p, ring)).collect::<Result<_>>()?))
}

pub fn module_to_dto(m: &PresentedModule) -> ModuleDto {
    ModuleDto::Presented {
        weights: m.gen_weights().to_vec(),
        relations: m.relations().iter().map(|r| element_to_dto(r, m.ring())).collect(),
    }
}

pub fn predicate_to_dto(p: &Predicate) -> PredicateDto {
    match p {
        Predicate::Always => PredicateDto::Always,
        Predicate::MaxBlocks(k) => PredicateDto::MaxBlocks { k: *k },
        Predicate::Coblocked(edges) => PredicateDto::Coblocked { edges: edges.clone() },
        Predicate::DiscreteOnly => PredicateDto::DiscreteOnly,
        Predicate::SingleBlock => PredicateDto::SingleBlock,
    }
}

pub fn predicate_from_dto(dto: &PredicateDto) -> Predicate {
    match dto {
        PredicateDto::Always => Predicate::Always,
        PredicateDto::MaxBlocks { k } => Predicate::MaxBlocks(*k),
        PredicateDto::Coblocked { edges } => Predicate::Coblocked(edges.clone()),
        PredicateDto::DiscreteOnly => Predicate::DiscreteOnly,
        PredicateDto::SingleBlock => Predicate::SingleBlock,
    }
}

/// Collects the modules and maps a certificate refers to, assigning ids
/// `{prefix}m0, {prefix}m1, …` and `{prefix}f0, …` in first-use order.
/// Literally equal modules and maps share an id.
pub struct Encoder {
    prefix: String,
    modules: Vec<(PresentedModule, String)>,
    maps: Vec<(ModuleMap, String)>,
    file: WorkspaceFile,
}

impl Encoder {
    pub fn new(graph: Vec<String>, prefix: &str) -> Self {
        Encoder {
            prefix: prefix.to_string(),
            modules: Vec::new(),
            maps: Vec::new(),
            file: WorkspaceFile { graph, ..Default::default() },
        }
    }

    pub fn module(&mut self, m: &PresentedModule) -> String {
        if let Some((_, id)) = self.modules.iter().find(|(x, _)| x == m) {
            return id.clone();
        }
        let id = format!("{}m{}", self.prefix, self.modules.len());
        self.add_module(&id, m);
        id
    }

    pub fn map(&mut self, f: &ModuleMap) -> String {
        if let Some((_, id)) = self.maps.iter().find(|(x, _)| x == f) {
            return id.clone();
        }
        let id = format!("{}f{}", self.prefix, self.maps.len());
        self.add_map(&id, f);
        id
    }

    pub fn certificate(&mut self, c: &Certificate) -> CertDto {
        match c.node() {
            CertNode::Zero => CertDto::Zero,
            CertNode::Gen { partition, shift } => {
                let plain = Certificate::gen(partition.clone(), *shift);
                let root = (plain.root() != c.root()).then(|| self.module(c.root()));
                CertDto::Gen { partition: PartitionRef::Blocks(partition.blocks().to_vec()), shift: *shift, root }
            }
            CertNode::Sub { parent, witness } => {
                let parent = CertRef::Node(Box::new(self.certificate(parent)));
                let root = (witness.source() != c.root()).then(|| self.module(c.root()));
                CertDto::Sub { parent, witness: self.map(witness), root }
            }
            CertNode::Quot { parent, witness } => {
                let parent = CertRef::Node(Box::new(self.certificate(parent)));
                let root = (witness.target() != c.root()).then(|| self.module(c.root()));
                CertDto::Quot { parent, witness: self.map(witness), root }
            }
            CertNode::Ext { left, right, inclusion, projection } => {
                let left = CertRef::Node(Box::new(self.certificate(left)));
                let right = CertRef::Node(Box::new(self.certificate(right)));
                let root = (inclusion.target() != c.root()).then(|| self.module(c.root()));
                CertDto::Ext { left, right, inclusion: self.map(inclusion), projection: self.map(projection), root }
            }
        }
    }

    pub fn add_certificate(&mut self, id: &str, c: &Certificate) {
        let dto = self.certificate(c);
        self.file.certificates.insert(id.to_string(), CertRef::Node(Box::new(dto)));
    }

    /// Registers `m` under `id`; later references to an equal module use it.
    pub fn add_module(&mut self, id: &str, m: &PresentedModule) {
        self.modules.push((m.clone(), id.to_string()));
        self.file.modules.insert(id.to_string(), module_to_dto(m));
    }

    /// Registers `f` under `id`; its modules must be registered or are added.
    pub fn add_map(&mut self, id: &str, f: &ModuleMap) {
        let source = self.module(f.source());
        let target = self.module(f.target());
        let ring = f.ring();
        let columns = f.columns().iter().map(|c| element_to_dto(c, ring)).collect();
        self.file.maps.insert(id.to_string(), MapDto { source, target, columns });
        self.maps.push((f.clone(), id.to_string()));
    }

    pub fn finish(mut self, split: Option<String>, predicate: Option<&Predicate>) -> WorkspaceFile {
        self.file.split = split;
        self.file.predicate = predicate.map(predicate_to_dto);
        self.file
    }
}

pub fn partition_from_ref(r: &PartitionRef, named: &BTreeMap<String, Partition>) -> Result<Partition> {
    match r {
        PartitionRef::Id(id) => named.get(id).cloned().ok_or_else(|| invalid!("unknown partition id `{id}`")),
        PartitionRef::Blocks(blocks) => Partition::from_blocks(blocks.clone()),
    }
}
