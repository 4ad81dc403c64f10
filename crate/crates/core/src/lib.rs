//! Exact computations with graded modules over polynomial rings whose
//! variables are the edges of a graph.
//!
//! The crate provides
//!
//! * [`exactalg`]: rational polynomials graded by total degree, Gröbner bases
//!   of submodules of free modules, syzygies and radical membership;
//! * [`partition`]: set partitions of edge sets, their ideals and modules;
//! * [`graphsplit`]: edge splitting and pluggable tameness predicates;
//! * [`gradedmod`]: finitely presented graded modules, the contraction
//!   functor `M ↦ M/(e − e')`, its torsion functor and the support test;
//! * [`serre`]: tameness certificates, their verification, and the
//!   transformer carrying certificates over the split graph to certificates
//!   for both functors over the original graph;
//! * [`format`] and [`workspace`]: the JSON workspace format driven by the
//!   `tamemod` binary and the C bindings.
//!
//! All coefficients are exact rationals. Integer inputs are embedded, so
//! tameness is decided after extending scalars to the rationals.

pub mod error;
pub mod exactalg;
pub mod format;
pub mod gradedmod;
pub mod graphsplit;
pub mod partition;
pub mod serre;
pub mod workspace;

pub use error::{Error, Result};
pub use exactalg::{EdgeRing, FreeElement, FreeModule, GradedPoly, Monomial, Rational};
pub use gradedmod::{ModuleMap, PresentedModule};
pub use graphsplit::{EdgeGraph, Predicate, SplitResult, TamenessPredicate};
pub use partition::Partition;
pub use serre::{Certificate, CertNode};
