//! Term-level machinery behind the public polynomial types: the module
//! monomial order, sorted term vectors, reduction and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use super::Rational;

/// Per-position data needed to order module terms.
///
/// Positions with a larger `block` dominate every position with a smaller
/// one; inside a block terms compare by total weight, then degree, then
/// reverse lexicographically, and finally by position (lower index wins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Layout {
    pub nvars: usize,
    pub weights: Vec<i64>,
    pub blocks: Vec<u32>,
}

impl Layout {
    pub fn uniform(nvars: usize, weights: Vec<i64>) -> Self {
        let blocks = vec![0; weights.len()];
        Layout { nvars, weights, blocks }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn term(&self, pos: usize, exps: &[u32]) -> Term {
        debug_assert_eq!(exps.len(), self.nvars);
        let degree: u32 = exps.iter().sum();
        Term {
            block: self.blocks[pos],
            weight: self.weights[pos] + degree as i64,
            degree,
            exps: exps.into(),
            pos: pos as u32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub block: u32,
    pub weight: i64,
    pub degree: u32,
    pub exps: Box<[u32]>,
    pub pos: u32,
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.block
            .cmp(&other.block)
            .then(self.weight.cmp(&other.weight))
            .then(self.degree.cmp(&other.degree))
            .then_with(|| {
                for k in (0..self.exps.len()).rev() {
                    match other.exps[k].cmp(&self.exps[k]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then(other.pos.cmp(&self.pos))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Term {
    pub fn mul(&self, m: &[u32]) -> Term {
        let add: u32 = m.iter().sum();
        Term {
            block: self.block,
            weight: self.weight + add as i64,
            degree: self.degree + add,
            exps: self.exps.iter().zip(m).map(|(a, b)| a + b).collect(),
            pos: self.pos,
        }
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.pos == other.pos && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn cofactor(&self, other: &Term) -> Vec<u32> {
        self.exps.iter().zip(other.exps.iter()).map(|(a, b)| b - a).collect()
    }

    pub fn lcm(&self, other: &Term) -> Term {
        let exps: Box<[u32]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree: u32 = exps.iter().sum();
        Term {
            block: self.block,
            weight: self.weight - self.degree as i64 + degree as i64,
            degree,
            exps,
            pos: self.pos,
        }
    }

    pub fn coprime(&self, other: &Term) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Terms sorted strictly descending, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub(crate) struct Vector(pub Vec<(Term, Rational)>);

impl Vector {
    pub fn from_map(map: BTreeMap<Term, Rational>) -> Vector {
        Vector(map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> &(Term, Rational) {
        &self.0[0]
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.0.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, d) in self.0.iter_mut() {
                    *d *= &inv;
                }
            }
        }
    }

    pub fn mul_term(&self, m: &[u32], c: &Rational) -> Vector {
        Vector(self.0.iter().map(|(t, d)| (t.mul(m), d * c)).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Greater => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other.0[j].0.clone(), -&other.0[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.0[i].1 - &other.0[j].1;
                    if !c.is_zero() {
                        out.push((self.0[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(other.0[j..].iter().map(|(t, c)| (t.clone(), -c)));
        Vector(out)
    }
}

/// Reduces `v` modulo `basis` (whose elements must be monic).
///
/// With `full == false` only the leading term is made irreducible.
pub(crate) fn reduce(v: &Vector, basis: &[Vector], full: bool) -> Vector {
    if basis.is_empty() {
        return v.clone();
    }
    let mut work: BTreeMap<Term, Rational> = v.0.iter().cloned().collect();
    let mut rem: Vec<(Term, Rational)> = Vec::new();
    while let Some((t, c)) = work.pop_last() {
        match basis.iter().find(|g| g.lead().0.divides(&t)) {
            Some(g) => {
                let q = g.lead().0.cofactor(&t);
                for (s, d) in &g.0[1..] {
                    let st = s.mul(&q);
                    let val = &c * d;
                    match work.entry(st) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= val;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-val);
                        }
                    }
                }
            }
            None => {
                rem.push((t, c));
                if !full {
                    rem.extend(std::mem::take(&mut work).into_iter().rev());
                    break;
                }
            }
        }
    }
    Vector(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// When `stop_on_unit` is set and a rank-one computation produces a
/// constant, the unit ideal basis is returned immediately.
pub(crate) fn groebner(layout: &Layout, gens: Vec<Vector>, stop_on_unit: bool) -> Vec<Vector> {
    let single_position = layout.rank() == 1;
    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |mut v: Vector, basis: &mut Vec<Vector>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| -> bool {
        v.make_monic();
        let n = basis.len();
        let lead = v.lead().0.clone();
        let unit = lead.degree == 0 && single_position;
        for (i, g) in basis.iter().enumerate() {
            let gl = &g.lead().0;
            if gl.pos == lead.pos {
                pairs.push(Pair { i, j: n, lcm: gl.lcm(&lead) });
                pending.insert((i, n));
            }
        }
        basis.push(v);
        unit
    };

    for g in gens {
        let r = reduce(&g, &basis, true);
        if !r.is_zero() && push(r, &mut basis, &mut pairs, &mut pending) && stop_on_unit {
            return vec![basis.pop().unwrap()];
        }
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].lcm.cmp(&pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j))))
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(idx);
        pending.remove(&(i, j));

        let (li, lj) = (&basis[i].lead().0, &basis[j].lead().0);
        if single_position && li.coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let one = Rational::one();
        let si = basis[i].mul_term(&li.cofactor(&lcm), &one);
        let sj = basis[j].mul_term(&lj.cofactor(&lcm), &one);
        let s = reduce(&si.sub(&sj), &basis, true);
        if !s.is_zero() && push(s, &mut basis, &mut pairs, &mut pending) && stop_on_unit {
            return vec![basis.pop().unwrap()];
        }
    }
    interreduce(basis)
}

/// Minimalizes and tail-reduces a Gröbner basis; output sorted by leading
/// term, descending.
pub(crate) fn interreduce(basis: Vec<Vector>) -> Vec<Vector> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|g| {
            !(0..basis.len()).any(|h| {
                h != g
                    && basis[h].lead().0.divides(&basis[g].lead().0)
                    && (basis[h].lead().0 != basis[g].lead().0 || h < g)
            })
        })
        .collect();
    let minimal: Vec<Vector> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
    let mut out: Vec<Vector> = (0..minimal.len())
        .map(|g| {
            let others: Vec<Vector> = minimal
                .iter()
                .enumerate()
                .filter(|(h, _)| *h != g)
                .map(|(_, v)| v.clone())
                .collect();
            let lead = minimal[g].0[0].clone();
            let tail = Vector(minimal[g].0[1..].to_vec());
            let mut v = Vector(vec![lead]);
            v.0.extend(reduce(&tail, &others, true).0);
            v.make_monic();
            v
        })
        .collect();
    out.sort_by(|a, b| b.lead().0.cmp(&a.lead().0));
    out
}
