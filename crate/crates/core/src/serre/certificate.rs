use std::fmt;
use std::sync::Arc;

use crate::error::{structural, Error, Result};
use crate::exactalg::EdgeRing;
use crate::gradedmod::{same_submodule, ModuleMap, PresentedModule};
use crate::graphsplit::TamenessPredicate;
use crate::partition::{partition_module, Partition};

/// A derivation of tameness for its root module.
///
/// Every node stores the module it certifies; witnesses are explicit maps
/// between that module and the roots of the children.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    root: PresentedModule,
    node: CertNode,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertNode {
    /// The zero module.
    Zero,
    /// `Q[P]` shifted by `shift`.
    Gen { partition: Partition, shift: i64 },
    /// `witness: root ↪ parent.root`.
    Sub { parent: Arc<Certificate>, witness: ModuleMap },
    /// `witness: parent.root ↠ root`.
    Quot { parent: Arc<Certificate>, witness: ModuleMap },
    /// `0 → left.root --inclusion--> root --projection--> right.root → 0`.
    Ext {
        left: Arc<Certificate>,
        right: Arc<Certificate>,
        inclusion: ModuleMap,
        projection: ModuleMap,
    },
}

impl CertNode {
    pub fn kind(&self) -> &'static str {
        match self {
            CertNode::Zero => "zero",
            CertNode::Gen { .. } => "gen",
            CertNode::Sub { .. } => "sub",
            CertNode::Quot { .. } => "quot",
            CertNode::Ext { .. } => "ext",
        }
    }
}

fn expect_same(what: &str, a: &PresentedModule, b: &PresentedModule) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(structural!("{what}: modules over different rings"));
    }
    if !a.same_presentation(b) {
        return Err(structural!("{what}: modules differ ({} vs {})", a.display(), b.display()));
    }
    Ok(())
}

impl Certificate {
    pub fn zero(ring: EdgeRing) -> Self {
        Certificate { root: PresentedModule::zero(ring), node: CertNode::Zero }
    }

    pub fn gen(partition: Partition, shift: i64) -> Self {
        let root = partition_module(&partition).shift(shift);
        Certificate { root, node: CertNode::Gen { partition, shift } }
    }

    /// A generator node whose root is `root`, which must present `Q[P](shift)`.
    pub fn gen_with_root(partition: Partition, shift: i64, root: PresentedModule) -> Result<Self> {
        let c = Self::gen(partition, shift);
        expect_same("generator root", &root, &c.root)?;
        Ok(Certificate { root, node: c.node })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(parent: Certificate, witness: ModuleMap) -> Result<Self> {
        expect_same("subobject witness target", witness.target(), &parent.root)?;
        let root = witness.source().clone();
        Ok(Certificate { root, node: CertNode::Sub { parent: Arc::new(parent), witness } })
    }

    pub fn quot(parent: Certificate, witness: ModuleMap) -> Result<Self> {
        expect_same("quotient witness source", witness.source(), &parent.root)?;
        let root = witness.target().clone();
        Ok(Certificate { root, node: CertNode::Quot { parent: Arc::new(parent), witness } })
    }

    pub fn ext(left: Certificate, right: Certificate, inclusion: ModuleMap, projection: ModuleMap) -> Result<Self> {
        expect_same("extension inclusion source", inclusion.source(), &left.root)?;
        expect_same("extension projection target", projection.target(), &right.root)?;
        expect_same("extension middle", inclusion.target(), projection.source())?;
        let root = inclusion.target().clone();
        Ok(Certificate {
            root,
            node: CertNode::Ext { left: Arc::new(left), right: Arc::new(right), inclusion, projection },
        })
    }

    pub fn root(&self) -> &PresentedModule {
        &self.root
    }

    pub fn node(&self) -> &CertNode {
        &self.node
    }

    pub fn ring(&self) -> &EdgeRing {
        self.root.ring()
    }

    /// Replaces the root by a module with the same presentation.
    pub fn with_root(mut self, root: PresentedModule) -> Result<Self> {
        expect_same("replacement root", &root, &self.root)?;
        self.root = root;
        Ok(self)
    }

    pub fn type_level(&self) -> usize {
        match &self.node {
            CertNode::Zero | CertNode::Gen { .. } => 0,
            CertNode::Sub { parent, .. } | CertNode::Quot { parent, .. } => 1 + parent.type_level(),
            CertNode::Ext { left, right, .. } => 1 + left.type_level().max(right.type_level()),
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.node {
            CertNode::Zero | CertNode::Gen { .. } => 1,
            CertNode::Sub { parent, .. } | CertNode::Quot { parent, .. } => 1 + parent.node_count(),
            CertNode::Ext { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    /// Every module in the tree shifted by `s`.
    pub fn shift(&self, s: i64) -> Certificate {
        let root = self.root.shift(s);
        let node = match &self.node {
            CertNode::Zero => CertNode::Zero,
            CertNode::Gen { partition, shift } => CertNode::Gen { partition: partition.clone(), shift: shift + s },
            CertNode::Sub { parent, witness } => {
                CertNode::Sub { parent: Arc::new(parent.shift(s)), witness: witness.shift(s) }
            }
            CertNode::Quot { parent, witness } => {
                CertNode::Quot { parent: Arc::new(parent.shift(s)), witness: witness.shift(s) }
            }
            CertNode::Ext { left, right, inclusion, projection } => CertNode::Ext {
                left: Arc::new(left.shift(s)),
                right: Arc::new(right.shift(s)),
                inclusion: inclusion.shift(s),
                projection: projection.shift(s),
            },
        };
        Certificate { root, node }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            CertNode::Zero => write!(f, "Zero"),
            CertNode::Gen { partition, shift } => write!(f, "Gen({partition}, {shift})"),
            CertNode::Sub { parent, .. } => write!(f, "Sub({parent})"),
            CertNode::Quot { parent, .. } => write!(f, "Quot({parent})"),
            CertNode::Ext { left, right, .. } => write!(f, "Ext({left}, {right})"),
        }
    }
}

/// The certificate of the zero module over `ring`.
pub fn zero_certificate(ring: EdgeRing) -> Certificate {
    Certificate::zero(ring)
}

pub fn type_level(c: &Certificate) -> usize {
    c.type_level()
}

pub fn shift_certificate(c: &Certificate, s: i64) -> Certificate {
    c.shift(s)
}

fn reject(path: &str, reason: impl Into<String>) -> Error {
    Error::Rejected { path: path.to_string(), reason: reason.into() }
}

/// Checks every node of `c`.
///
/// A node that fails its check yields [`Error::Rejected`] carrying the path
/// of the first failing node (`root`, `root.parent`, `root.left`, …);
/// inconsistent shapes yield [`Error::Structural`].
pub fn verify(c: &Certificate, pred: &dyn TamenessPredicate) -> Result<()> {
    verify_at(c, pred, "root")
}

fn verify_at(c: &Certificate, pred: &dyn TamenessPredicate, path: &str) -> Result<()> {
    match &c.node {
        CertNode::Zero => {
            if !c.root.is_zero() {
                return Err(reject(path, "zero node with a nonzero module"));
            }
        }
        CertNode::Gen { partition, shift } => {
            let vars = c.root.ring().vars();
            let mut ground = partition.ground();
            let mut sorted = vars.to_vec();
            ground.sort();
            sorted.sort();
            if ground != sorted {
                return Err(structural!("{path}: partition {partition} does not cover the ring variables"));
            }
            if !pred.is_tame(partition) {
                return Err(reject(path, format!("partition {partition} is not tame under {}", pred.describe())));
            }
            let expected = partition_module(partition).shift(*shift);
            let expected = if expected.ring() == c.root.ring() {
                expected
            } else {
                rebuild_over(partition, *shift, c.root.ring())?
            };
            if !c.root.same_presentation(&expected) {
                return Err(reject(path, "module is not the partition module"));
            }
        }
        CertNode::Sub { parent, witness } => {
            expect_same(path, witness.source(), &c.root)?;
            expect_same(path, witness.target(), &parent.root)?;
            if !witness.is_well_defined() {
                return Err(reject(path, "witness is not well defined"));
            }
            if !witness.is_mono()? {
                return Err(reject(path, "witness is not injective"));
            }
            verify_at(parent, pred, &format!("{path}.parent"))?;
        }
        CertNode::Quot { parent, witness } => {
            expect_same(path, witness.source(), &parent.root)?;
            expect_same(path, witness.target(), &c.root)?;
            if !witness.is_well_defined() {
                return Err(reject(path, "witness is not well defined"));
            }
            if !witness.is_epi()? {
                return Err(reject(path, "witness is not surjective"));
            }
            verify_at(parent, pred, &format!("{path}.parent"))?;
        }
        CertNode::Ext { left, right, inclusion, projection } => {
            expect_same(path, inclusion.source(), &left.root)?;
            expect_same(path, inclusion.target(), &c.root)?;
            expect_same(path, projection.source(), &c.root)?;
            expect_same(path, projection.target(), &right.root)?;
            if !inclusion.is_well_defined() || !projection.is_well_defined() {
                return Err(reject(path, "witness is not well defined"));
            }
            if !inclusion.is_mono()? {
                return Err(reject(path, "inclusion is not injective"));
            }
            if !projection.is_epi()? {
                return Err(reject(path, "projection is not surjective"));
            }
            let kernel: Vec<_> = projection.kernel_preimage()?.into_iter().map(|(x, _)| x).collect();
            if !same_submodule(&c.root, inclusion.columns(), &kernel)? {
                return Err(reject(path, "image of the inclusion is not the kernel of the projection"));
            }
            verify_at(left, pred, &format!("{path}.left"))?;
            verify_at(right, pred, &format!("{path}.right"))?;
        }
    }
    Ok(())
}

/// `Q[P](shift)` over a ring whose variables are the ground set in any order.
fn rebuild_over(partition: &Partition, shift: i64, ring: &EdgeRing) -> Result<PresentedModule> {
    let relations = partition
        .ideal_generators(ring)?
        .into_iter()
        .map(|g| crate::exactalg::FreeElement::new(vec![g]))
        .collect();
    PresentedModule::new(ring.clone(), vec![shift], relations)
}
