//! Graphs as edge sets, the split `Γ → Γ_v`, and tameness predicates.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::exactalg::EdgeRing;
use crate::partition::{all_partitions, bell_number, partitions_iter, Partition};

/// Largest number of partitions [`tame_partitions`] enumerates by default.
pub const DEFAULT_PARTITION_CAP: u128 = 200_000;

/// A graph, seen only through its edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeGraph {
    edges: Vec<String>,
}

impl EdgeGraph {
    pub fn new<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in edges {
            let e = e.into();
            if e.is_empty() {
                return Err(invalid!("empty edge name"));
            }
            if !seen.insert(e.clone()) {
                return Err(invalid!("edge `{e}` listed twice"));
            }
            out.push(e);
        }
        out.sort();
        Ok(EdgeGraph { edges: out })
    }

    /// `n` edges named `e, a, b, c, d, f, …`.
    pub fn standard(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n);
        if n > 0 {
            edges.push("e".to_string());
        }
        let mut names = ('a'..='z').filter(|c| *c != 'e').map(String::from);
        while edges.len() < n {
            edges.push(names.next().unwrap_or_else(|| format!("x{}", edges.len())));
        }
        edges.sort();
        EdgeGraph { edges }
    }

    /// Sorted edge names.
    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: &str) -> bool {
        self.edges.binary_search_by(|e| e.as_str().cmp(edge)).is_ok()
    }

    /// One variable per edge, in sorted order.
    pub fn ring(&self) -> EdgeRing {
        EdgeRing::new(self.edges.iter().cloned()).expect("edge names are distinct")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub base_graph: EdgeGraph,
    pub split_graph: EdgeGraph,
    pub e: String,
    pub e_prime: String,
}

/// The name given to the new half of a split edge.
pub fn prime_name(edge: &str) -> String {
    format!("{edge}'")
}

/// Replaces `target` by the pair `target`, `target'`.
pub fn split_edge(g: &EdgeGraph, target: &str) -> Result<SplitResult> {
    if !g.contains(target) {
        return Err(invalid!("cannot split `{target}`: not an edge"));
    }
    let e_prime = prime_name(target);
    if g.contains(&e_prime) {
        return Err(invalid!("cannot split `{target}`: `{e_prime}` is already an edge"));
    }
    let split_graph = EdgeGraph::new(g.edges.iter().cloned().chain(std::iter::once(e_prime.clone())))?;
    Ok(SplitResult { base_graph: g.clone(), split_graph, e: target.to_string(), e_prime })
}

/// A decision procedure for tameness of partitions of one graph's edges.
pub trait TamenessPredicate: Send + Sync {
    fn is_tame(&self, p: &Partition) -> bool;

    fn describe(&self) -> String;
}

/// The shipped predicates.
///
/// `DiscreteOnly` and `SingleBlock` are mainly useful as deliberately
/// mismatched partners when testing merge closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    Always,
    MaxBlocks(usize),
    /// The listed edges present in the ground set share one block.
    Coblocked(Vec<String>),
    DiscreteOnly,
    SingleBlock,
}

impl TamenessPredicate for Predicate {
    fn is_tame(&self, p: &Partition) -> bool {
        match self {
            Predicate::Always => true,
            Predicate::MaxBlocks(k) => p.num_blocks() <= *k,
            Predicate::Coblocked(names) => {
                let mut blocks = names.iter().filter_map(|x| p.block_of(x));
                match blocks.next() {
                    Some(first) => blocks.all(|b| b == first),
                    None => true,
                }
            }
            Predicate::DiscreteOnly => p.blocks().iter().all(|b| b.len() == 1),
            Predicate::SingleBlock => p.num_blocks() <= 1,
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl Predicate {
    /// Parses `always`, `max-blocks:K`, `coblocked:a,b,…`, `discrete-only`
    /// and `single-block`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        match (name, arg) {
            ("always", None) => Ok(Predicate::Always),
            ("discrete-only", None) => Ok(Predicate::DiscreteOnly),
            ("single-block", None) => Ok(Predicate::SingleBlock),
            ("max-blocks", Some(k)) => k
                .parse()
                .map(Predicate::MaxBlocks)
                .map_err(|_| invalid!("max-blocks needs a nonnegative integer, got `{k}`")),
            ("coblocked", Some(list)) => {
                let names: Vec<String> = list
                    .split(',')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(String::from)
                    .collect();
                Ok(Predicate::Coblocked(names))
            }
            _ => Err(invalid!("unknown predicate `{s}`")),
        }
    }

    pub fn shipped() -> Vec<Predicate> {
        vec![
            Predicate::Always,
            Predicate::MaxBlocks(1),
            Predicate::MaxBlocks(2),
            Predicate::MaxBlocks(3),
            Predicate::Coblocked(vec!["a".into(), "b".into()]),
            Predicate::Coblocked(vec!["e".into(), "a".into()]),
            Predicate::DiscreteOnly,
            Predicate::SingleBlock,
        ]
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Always => write!(f, "always"),
            Predicate::MaxBlocks(k) => write!(f, "max-blocks:{k}"),
            Predicate::Coblocked(names) => write!(f, "coblocked:{}", names.join(",")),
            Predicate::DiscreteOnly => write!(f, "discrete-only"),
            Predicate::SingleBlock => write!(f, "single-block"),
        }
    }
}

/// All partitions of `g`'s edges accepted by `pred`, refusing to enumerate
/// more than `cap` partitions.
pub fn tame_partitions_capped(pred: &dyn TamenessPredicate, g: &EdgeGraph, cap: u128) -> Result<Vec<Partition>> {
    let total = bell_number(g.len());
    if total > cap {
        return Err(Error::Resource(format!(
            "{} edges have {total} partitions, above the cap of {cap}",
            g.len()
        )));
    }
    Ok(all_partitions(g.edges()).into_iter().filter(|p| pred.is_tame(p)).collect())
}

pub fn tame_partitions(pred: &dyn TamenessPredicate, g: &EdgeGraph) -> Result<Vec<Partition>> {
    tame_partitions_capped(pred, g, DEFAULT_PARTITION_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeClosureReport {
    pub checked: usize,
    /// A tame partition of the split graph whose merge is not tame.
    pub counterexample: Option<(Partition, Partition)>,
}

impl MergeClosureReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks the merge-closure axiom on the first `sample_limit` partitions of
/// the split graph, or on all of them when `None` and their number is within
/// [`DEFAULT_PARTITION_CAP`].
pub fn check_merge_closure(
    pred_split: &dyn TamenessPredicate,
    pred_base: &dyn TamenessPredicate,
    s: &SplitResult,
    sample_limit: Option<usize>,
) -> Result<MergeClosureReport> {
    let limit = match sample_limit {
        Some(k) => k,
        None => {
            let total = bell_number(s.split_graph.len());
            if total > DEFAULT_PARTITION_CAP {
                return Err(Error::Resource(format!(
                    "{} edges have {total} partitions, above the cap of {DEFAULT_PARTITION_CAP}",
                    s.split_graph.len()
                )));
            }
            total as usize
        }
    };
    let mut checked = 0;
    for p in partitions_iter(s.split_graph.edges()).take(limit) {
        checked += 1;
        if !pred_split.is_tame(&p) {
            continue;
        }
        let merged = p.merge_edges(&s.e, &s.e_prime)?;
        if !pred_base.is_tame(&merged) {
            return Ok(MergeClosureReport { checked, counterexample: Some((p, merged)) });
        }
    }
    Ok(MergeClosureReport { checked, counterexample: None })
}
