//! Set partitions of edge sets, the block merge along a split edge, and the
//! associated ideals `I_P` and modules `R/I_P`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{invalid, Result};
use crate::exactalg::{EdgeRing, FreeElement, GradedPoly};
use crate::gradedmod::PresentedModule;

/// A set of nonempty, pairwise disjoint blocks covering a ground set.
///
/// Stored canonically: each block sorted, blocks ordered by their least
/// element, so structural equality is equality of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<String>>,
}

impl Partition {
    /// Validates `blocks` against `ground`.
    pub fn new<G, S>(ground: G, blocks: Vec<Vec<String>>) -> Result<Self>
    where
        G: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ground: BTreeSet<String> = ground.into_iter().map(Into::into).collect();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(invalid!("empty block"));
            }
            for x in block {
                if !ground.contains(x) {
                    return Err(invalid!("`{x}` is not in the ground set"));
                }
                if !seen.insert(x) {
                    return Err(invalid!("`{x}` appears in two blocks"));
                }
            }
        }
        if let Some(missing) = ground.iter().find(|x| !seen.contains(x.as_str())) {
            return Err(invalid!("`{missing}` is not covered by any block"));
        }
        Ok(Self::canonical(blocks))
    }

    /// Partition of the union of `blocks`.
    pub fn from_blocks(blocks: Vec<Vec<String>>) -> Result<Self> {
        let ground: Vec<String> = blocks.iter().flatten().cloned().collect();
        Self::new(ground, blocks)
    }

    pub fn discrete<S: AsRef<str>>(ground: &[S]) -> Self {
        Self::canonical(ground.iter().map(|x| vec![x.as_ref().to_string()]).collect())
    }

    pub fn single_block<S: AsRef<str>>(ground: &[S]) -> Self {
        if ground.is_empty() {
            return Self::canonical(vec![]);
        }
        Self::canonical(vec![ground.iter().map(|x| x.as_ref().to_string()).collect()])
    }

    fn canonical(mut blocks: Vec<Vec<String>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort();
            b.dedup();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Ground set, sorted.
    pub fn ground(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.blocks.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.block_of(x).is_some()
    }

    pub fn block_of(&self, x: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.iter().any(|y| y == x))
    }

    fn require(&self, x: &str) -> Result<usize> {
        self.block_of(x).ok_or_else(|| invalid!("unknown edge `{x}`"))
    }

    /// `x ∼_P y`.
    pub fn related(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.require(x)? == self.require(y)?)
    }

    /// Unions the blocks of `e` and `e_prime`, then deletes `e_prime`, giving
    /// a partition of the edge set in which the two edges are one edge `e`.
    pub fn merge_edges(&self, e: &str, e_prime: &str) -> Result<Partition> {
        if e == e_prime {
            return Err(invalid!("cannot merge `{e}` with itself"));
        }
        let be = self.require(e)?;
        let bp = self.require(e_prime)?;
        let mut blocks: Vec<Vec<String>> = Vec::with_capacity(self.blocks.len());
        for (i, block) in self.blocks.iter().enumerate() {
            if i == bp && bp != be {
                continue;
            }
            let mut b = block.clone();
            if i == be && bp != be {
                b.extend(self.blocks[bp].iter().cloned());
            }
            b.retain(|x| x != e_prime);
            blocks.push(b);
        }
        Ok(Self::canonical(blocks))
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            other
                .block_of(&b[0])
                .map(|k| b.iter().all(|x| other.blocks[k].contains(x)))
                .unwrap_or(false)
        })
    }

    /// Polynomial ring on the ground set, variables sorted by name.
    pub fn ring(&self) -> EdgeRing {
        EdgeRing::new(self.ground()).expect("ground set has distinct names")
    }

    /// Generators `x − y` for consecutive elements of each sorted block.
    pub fn ideal_generators(&self, ring: &EdgeRing) -> Result<Vec<GradedPoly>> {
        let mut out = Vec::new();
        for block in &self.blocks {
            for pair in block.windows(2) {
                out.push(&ring.var(&pair[0])? - &ring.var(&pair[1])?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| format!("{{{}}}", b.join(","))).collect();
        write!(f, "[{}]", blocks.join(","))
    }
}

pub fn make_partition<G, S>(ground: G, blocks: Vec<Vec<String>>) -> Result<Partition>
where
    G: IntoIterator<Item = S>,
    S: Into<String>,
{
    Partition::new(ground, blocks)
}

/// Kernel of `Q[X] → Q[P]`, over the partition's own ring.
pub fn partition_ideal(p: &Partition) -> Vec<GradedPoly> {
    p.ideal_generators(&p.ring()).expect("ring built from the ground set")
}

/// `Q[P]` as a cyclic module: one generator in weight 0, relations `I_P`.
pub fn partition_module(p: &Partition) -> PresentedModule {
    let ring = p.ring();
    let relations = partition_ideal(p).into_iter().map(|g| FreeElement::new(vec![g])).collect();
    PresentedModule::new(ring, vec![0], relations).expect("partition relations are homogeneous")
}

/// All partitions of `ground`, in a fixed order (restricted growth strings).
pub fn all_partitions<S: AsRef<str>>(ground: &[S]) -> Vec<Partition> {
    partitions_iter(ground).collect()
}

/// [`all_partitions`] without materializing the list.
pub fn partitions_iter<S: AsRef<str>>(ground: &[S]) -> impl Iterator<Item = Partition> {
    let ground: Vec<String> = ground.iter().map(|x| x.as_ref().to_string()).collect();
    let mut labels = Some(vec![0usize; ground.len()]);
    std::iter::from_fn(move || {
        let current = labels.take()?;
        let mut blocks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (x, &l) in ground.iter().zip(&current) {
            blocks.entry(l).or_default().push(x.clone());
        }
        labels = next_growth_string(current);
        Some(Partition::canonical(blocks.into_values().collect()))
    })
}

fn next_growth_string(mut labels: Vec<usize>) -> Option<Vec<usize>> {
    for i in (1..labels.len()).rev() {
        let max_prefix = labels[..i].iter().copied().max().unwrap_or(0);
        if labels[i] <= max_prefix {
            labels[i] += 1;
            for l in labels.iter_mut().skip(i + 1) {
                *l = 0;
            }
            return Some(labels);
        }
    }
    None
}

/// Bell numbers `B(0..=n)`, used for enumeration caps.
pub fn bell_number(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}
