//! Exact rational polynomial arithmetic on edge variables.
//!
//! Every variable has weight one, so the weight of a monomial is its total
//! degree. Elements of free modules carry no weights of their own; the
//! ambient [`FreeModule`] assigns a weight to each basis vector and the
//! weight of `x^a · e_i` is `|a| + weight(e_i)`.
//!
//! Gröbner bases use a weight-graded reverse lexicographic order on
//! monomials (first ring variable largest), extended to modules by breaking
//! ties on the position, lower index first.

mod engine;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, structural, Result};
use engine::{Layout, Vector};

pub type Rational = BigRational;

/// Polynomial ring over the rationals with one variable per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRing {
    vars: Arc<[String]>,
}

impl EdgeRing {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(invalid!("empty variable name"));
            }
            if vars[..i].contains(v) {
                return Err(invalid!("duplicate variable `{v}`"));
            }
        }
        Ok(EdgeRing { vars: vars.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| invalid!("unknown edge `{name}` (ring has {:?})", self.vars))
    }

    /// The variable named `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<GradedPoly> {
        Ok(GradedPoly::var(self.nvars(), self.require(name)?))
    }

    /// Same ring with one variable deleted.
    pub fn without(&self, name: &str) -> Result<EdgeRing> {
        self.require(name)?;
        EdgeRing::new(self.vars.iter().filter(|v| *v != name).cloned())
    }

    /// Same ring with one extra variable appended last.
    pub fn with_extra(&self, name: &str) -> Result<EdgeRing> {
        EdgeRing::new(self.vars.iter().cloned().chain(std::iter::once(name.to_string())))
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn grevlex_key(&self) -> (u32, Vec<std::cmp::Reverse<u32>>) {
        (self.degree(), self.0.iter().rev().map(|&e| std::cmp::Reverse(e)).collect())
    }
}

/// All monomials of the given degree in `nvars` variables, in no particular order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, degree: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(degree);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for d in 0..=degree {
            prefix.push(d);
            rec(prefix, left - 1, degree - d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(&mut Vec::new(), nvars, degree, &mut out);
    out
}

/// Polynomial with exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms([(Monomial::one(nvars), c)])
    }

    pub fn integer(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::from_terms([(Monomial(e), Rational::one())])
    }

    /// Sums coefficients of repeated monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        GradedPoly { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.0.grevlex_key()));
        v
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.0.len())
    }

    /// Common weight of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn weight(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GradedPoly {
        GradedPoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    /// Applies a map on exponent vectors (which must be injective on the
    /// support or else coefficients are summed).
    pub fn map_monomials(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> GradedPoly {
        GradedPoly::from_terms(self.terms.iter().map(|(m, c)| (Monomial(f(&m.0)), c.clone())))
    }

    /// Appends `k` variables with exponent zero.
    pub fn extend_vars(&self, k: usize) -> GradedPoly {
        self.map_monomials(|e| e.iter().copied().chain(std::iter::repeat_n(0, k)).collect())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Renders with the variable names of `ring`.
    pub fn display(&self, ring: &EdgeRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, e)| {
                    let name = ring.vars().get(k).map(String::as_str).unwrap_or("?");
                    if *e == 1 { name.to_string() } else { format!("{name}^{e}") }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(m, c)| (m.clone(), c.clone())))
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(m, c)| rhs.terms.iter().map(move |(n, d)| (m.mul(n), c * d))),
        )
    }
}

/// Element of a free module: one polynomial per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    comps: Vec<GradedPoly>,
}

impl FreeElement {
    pub fn new(comps: Vec<GradedPoly>) -> Self {
        FreeElement { comps }
    }

    pub fn zero(rank: usize) -> Self {
        FreeElement { comps: vec![GradedPoly::zero(); rank] }
    }

    /// `c · e_index`.
    pub fn basis(rank: usize, index: usize, nvars: usize) -> Self {
        let mut v = Self::zero(rank);
        v.comps[index] = GradedPoly::integer(nvars, 1);
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[GradedPoly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<GradedPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GradedPoly::is_zero)
    }

    /// Weight with respect to the basis weights `gen_weights`; `None` when
    /// zero or inhomogeneous.
    pub fn weight(&self, gen_weights: &[i64]) -> Option<i64> {
        let mut w = None;
        for (p, gw) in self.comps.iter().zip(gen_weights) {
            for (m, _) in p.terms() {
                let t = m.degree() as i64 + gw;
                match w {
                    None => w = Some(t),
                    Some(x) if x != t => return None,
                    _ => {}
                }
            }
        }
        w
    }

    pub fn is_homogeneous(&self, gen_weights: &[i64]) -> bool {
        self.is_zero() || self.weight(gen_weights).is_some()
    }

    pub fn scale(&self, r: &GradedPoly) -> FreeElement {
        FreeElement { comps: self.comps.iter().map(|p| p * r).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> FreeElement {
        FreeElement { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn map_polys(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> FreeElement {
        FreeElement { comps: self.comps.iter().map(f).collect() }
    }

    /// Places this element at `offset` inside a free module of rank `total`.
    pub fn embed(&self, offset: usize, total: usize) -> FreeElement {
        let mut comps = vec![GradedPoly::zero(); total];
        comps[offset..offset + self.rank()].clone_from_slice(&self.comps);
        FreeElement { comps }
    }

    /// Components `range` as an element of a smaller free module.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeElement {
        FreeElement { comps: self.comps[range].to_vec() }
    }

    pub fn display(&self, ring: &EdgeRing) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.display(ring)).collect();
        format!("({})", parts.join(", "))
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        FreeElement { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        FreeElement { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement { comps: self.comps.iter().map(|a| -a).collect() }
    }
}

/// Graded free module `⊕ R(-w_i)`: basis vector `i` sits in weight `w_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: EdgeRing,
    weights: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: EdgeRing, weights: Vec<i64>) -> Self {
        FreeModule { ring, weights }
    }

    pub fn ring(&self) -> &EdgeRing {
        &self.ring
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn check(&self, x: &FreeElement) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(structural!("element of rank {} in a free module of rank {}", x.rank(), self.rank()));
        }
        for p in &x.comps {
            if let Some(n) = p.nvars() {
                if n != self.ring.nvars() {
                    return Err(structural!("polynomial in {n} variables over a ring with {}", self.ring.nvars()));
                }
            }
        }
        Ok(())
    }

    fn layout(&self) -> Layout {
        Layout::uniform(self.ring.nvars(), self.weights.clone())
    }

    pub fn groebner(&self, gens: &[FreeElement]) -> Result<GroebnerBasis> {
        for g in gens {
            self.check(g)?;
        }
        let layout = self.layout();
        let vecs = gens.iter().map(|g| to_vector(g, &layout, 0)).collect();
        let elems = engine::groebner(&layout, vecs, false);
        Ok(GroebnerBasis { module: self.clone(), layout, elems })
    }

    /// Generators of the module of relations among `gens`, as elements of the
    /// free module with basis weights `gen_weights` (one per generator).
    pub fn syzygies_weighted(&self, gens: &[FreeElement], gen_weights: &[i64]) -> Result<Vec<FreeElement>> {
        Ok(Lifter::new(self, gens, gen_weights)?.syzygies())
    }

    /// Like [`FreeModule::syzygies_weighted`], taking each generator's own weight
    /// (zero generators get weight 0).
    pub fn syzygies(&self, gens: &[FreeElement]) -> Result<Vec<FreeElement>> {
        let weights = self.element_weights(gens)?;
        self.syzygies_weighted(gens, &weights)
    }

    pub fn element_weights(&self, gens: &[FreeElement]) -> Result<Vec<i64>> {
        gens.iter()
            .map(|g| {
                if g.is_zero() {
                    Ok(0)
                } else {
                    g.weight(&self.weights).ok_or_else(|| structural!("inhomogeneous generator {}", g.display(&self.ring)))
                }
            })
            .collect()
    }
}

fn to_vector(x: &FreeElement, layout: &Layout, offset: usize) -> Vector {
    let mut map = BTreeMap::new();
    for (i, p) in x.comps.iter().enumerate() {
        for (m, c) in p.terms() {
            map.insert(layout.term(offset + i, &m.0), c.clone());
        }
    }
    Vector::from_map(map)
}

fn from_vector(v: &Vector, range: std::ops::Range<usize>) -> FreeElement {
    let mut comps: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); range.len()];
    for (t, c) in &v.0 {
        let p = t.pos as usize;
        if range.contains(&p) {
            comps[p - range.start].push((Monomial(t.exps.to_vec()), c.clone()));
        }
    }
    FreeElement { comps: comps.into_iter().map(GradedPoly::from_terms).collect() }
}

/// A reduced Gröbner basis of a submodule of a free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    module: FreeModule,
    layout: Layout,
    elems: Vec<Vector>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.elems == other.elems
    }
}

impl GroebnerBasis {
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<FreeElement> {
        self.elems.iter().map(|v| from_vector(v, 0..self.module.rank())).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &FreeElement) -> FreeElement {
        let v = to_vector(f, &self.layout, 0);
        from_vector(&engine::reduce(&v, &self.elems, true), 0..self.module.rank())
    }

    pub fn contains(&self, f: &FreeElement) -> bool {
        let v = to_vector(f, &self.layout, 0);
        engine::reduce(&v, &self.elems, true).is_zero()
    }

    /// True iff the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.module.rank()).all(|i| {
            self.elems
                .iter()
                .any(|g| g.lead().0.pos as usize == i && g.lead().0.degree == 0)
        })
    }

    /// Leading monomials of basis elements with leading term at position `pos`.
    pub fn leading_monomials(&self, pos: usize) -> Vec<Monomial> {
        self.elems
            .iter()
            .filter(|g| g.lead().0.pos as usize == pos)
            .map(|g| Monomial(g.lead().0.exps.to_vec()))
            .collect()
    }

    /// Number of monomials `m` of the given degree with `m · e_pos` not
    /// divisible by any leading term.
    pub fn standard_monomial_count(&self, pos: usize, degree: i64) -> u64 {
        if degree < 0 {
            return 0;
        }
        let leads = self.leading_monomials(pos);
        monomials_of_degree(self.module.ring.nvars(), degree as u32)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count() as u64
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` inside the
/// free module with basis weights `weights`.
pub fn groebner(ring: &EdgeRing, weights: &[i64], gens: &[FreeElement]) -> Result<Vec<FreeElement>> {
    Ok(FreeModule::new(ring.clone(), weights.to_vec()).groebner(gens)?.elements())
}

pub fn normal_form(f: &FreeElement, gb: &GroebnerBasis) -> FreeElement {
    gb.normal_form(f)
}

/// Generators of the relation module among homogeneous `gens`.
pub fn syzygies(ring: &EdgeRing, weights: &[i64], gens: &[FreeElement]) -> Result<Vec<FreeElement>> {
    FreeModule::new(ring.clone(), weights.to_vec()).syzygies(gens)
}

/// Gröbner basis of `{(g_j, e_j)}` in `F ⊕ R^m` under an order eliminating
/// `F`. Its elements without an `F` part generate the syzygies of the
/// `g_j`, and reducing `(y, 0)` expresses `y` in terms of the `g_j`.
#[derive(Clone, Debug)]
pub struct Lifter {
    module: FreeModule,
    gen_weights: Vec<i64>,
    layout: Layout,
    basis: Vec<Vector>,
}

impl Lifter {
    pub fn new(module: &FreeModule, gens: &[FreeElement], gen_weights: &[i64]) -> Result<Self> {
        if gens.len() != gen_weights.len() {
            return Err(structural!("{} generators but {} weights", gens.len(), gen_weights.len()));
        }
        for (g, w) in gens.iter().zip(gen_weights) {
            module.check(g)?;
            if let Some(gw) = g.weight(module.weights()) {
                if gw != *w {
                    return Err(structural!("generator of weight {gw} declared with weight {w}"));
                }
            } else if !g.is_zero() {
                return Err(structural!("inhomogeneous generator {}", g.display(module.ring())));
            }
        }
        let rank = module.rank();
        let mut weights = module.weights().to_vec();
        weights.extend_from_slice(gen_weights);
        let mut blocks = vec![1; rank];
        blocks.extend(std::iter::repeat_n(0, gens.len()));
        let layout = Layout { nvars: module.ring().nvars(), weights, blocks };
        let one = Monomial::one(layout.nvars);
        let vecs = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut v = to_vector(g, &layout, 0);
                v.0.push((layout.term(rank + j, &one.0), Rational::one()));
                v
            })
            .collect();
        let basis = engine::groebner(&layout, vecs, false);
        Ok(Lifter { module: module.clone(), gen_weights: gen_weights.to_vec(), layout, basis })
    }

    pub fn num_gens(&self) -> usize {
        self.gen_weights.len()
    }

    pub fn gen_weights(&self) -> &[i64] {
        &self.gen_weights
    }

    pub fn syzygies(&self) -> Vec<FreeElement> {
        let rank = self.module.rank();
        self.basis
            .iter()
            .filter(|v| v.lead().0.pos as usize >= rank)
            .map(|v| from_vector(v, rank..rank + self.num_gens()))
            .collect()
    }

    /// Coefficients `c` with `y = Σ c_j g_j`, or `None` if `y` is not in the span.
    pub fn lift(&self, y: &FreeElement) -> Option<FreeElement> {
        let rank = self.module.rank();
        let v = to_vector(y, &self.layout, 0);
        let r = engine::reduce(&v, &self.basis, true);
        if r.0.iter().any(|(t, _)| (t.pos as usize) < rank) {
            return None;
        }
        Some(-&from_vector(&r, rank..rank + self.num_gens()))
    }
}

/// Ideal membership test `f ∈ rad(ideal)` via the auxiliary variable trick:
/// `f` is in the radical iff `1 ∈ ideal + (1 − t·f)`.
pub fn radical_member(ring: &EdgeRing, f: &GradedPoly, ideal: &[GradedPoly]) -> Result<bool> {
    let n = ring.nvars();
    for p in ideal.iter().chain(std::iter::once(f)) {
        if let Some(k) = p.nvars() {
            if k != n {
                return Err(structural!("polynomial in {k} variables over a ring with {n}"));
            }
        }
    }
    let layout = Layout::uniform(n + 1, vec![0]);
    let t = GradedPoly::var(n + 1, n);
    let rabinowitsch = &GradedPoly::integer(n + 1, 1) - &(&t * &f.extend_vars(1));
    let gens: Vec<Vector> = ideal
        .iter()
        .map(|p| p.extend_vars(1))
        .chain(std::iter::once(rabinowitsch))
        .map(|p| to_vector(&FreeElement::new(vec![p]), &layout, 0))
        .collect();
    let basis = engine::groebner(&layout, gens, true);
    Ok(basis.iter().any(|g| g.lead().0.degree == 0))
}

fn ideal_module(ring: &EdgeRing) -> FreeModule {
    FreeModule::new(ring.clone(), vec![0])
}

fn as_elements(ideal: &[GradedPoly]) -> Vec<FreeElement> {
    ideal.iter().map(|p| FreeElement::new(vec![p.clone()])).collect()
}

/// Reduced Gröbner basis of a homogeneous ideal.
pub fn ideal_basis(ring: &EdgeRing, ideal: &[GradedPoly]) -> Result<Vec<GradedPoly>> {
    let gb = ideal_module(ring).groebner(&as_elements(ideal))?;
    Ok(gb.elements().into_iter().map(|e| e.into_comps().remove(0)).collect())
}

/// `f ∈ ideal`.
pub fn ideal_contains(ring: &EdgeRing, ideal: &[GradedPoly], f: &GradedPoly) -> Result<bool> {
    let gb = ideal_module(ring).groebner(&as_elements(ideal))?;
    Ok(gb.contains(&FreeElement::new(vec![f.clone()])))
}

/// Equality of two ideals by mutual membership.
pub fn ideals_equal(ring: &EdgeRing, a: &[GradedPoly], b: &[GradedPoly]) -> Result<bool> {
    Ok(ideal_basis(ring, a)? == ideal_basis(ring, b)?)
}

pub fn is_unit_ideal(ring: &EdgeRing, ideal: &[GradedPoly]) -> Result<bool> {
    let gb = ideal_module(ring).groebner(&as_elements(ideal))?;
    Ok(gb.is_everything())
}

/// `ideal : f = {r : r·f ∈ ideal}` for homogeneous inputs.
pub fn colon(ring: &EdgeRing, ideal: &[GradedPoly], f: &GradedPoly) -> Result<Vec<GradedPoly>> {
    let mut gens = vec![FreeElement::new(vec![f.clone()])];
    gens.extend(as_elements(ideal));
    let syz = ideal_module(ring).syzygies(&gens)?;
    let out: Vec<GradedPoly> = syz.into_iter().map(|s| s.into_comps().remove(0)).filter(|p| !p.is_zero()).collect();
    ideal_basis(ring, &out)
}

/// `ideal : f^∞`, by iterating the colon until it stabilizes.
pub fn saturation(ring: &EdgeRing, ideal: &[GradedPoly], f: &GradedPoly) -> Result<Vec<GradedPoly>> {
    let mut current = ideal_basis(ring, ideal)?;
    loop {
        let next = colon(ring, &current, f)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Intersection of homogeneous ideals.
pub fn intersection(ring: &EdgeRing, ideals: &[Vec<GradedPoly>]) -> Result<Vec<GradedPoly>> {
    let Some((first, rest)) = ideals.split_first() else {
        return Ok(vec![GradedPoly::integer(ring.nvars(), 1)]);
    };
    let mut acc = ideal_basis(ring, first)?;
    for other in rest {
        let other = ideal_basis(ring, other)?;
        let mut gens = as_elements(&acc);
        gens.extend(as_elements(&other));
        let syz = ideal_module(ring).syzygies(&gens)?;
        let k = acc.len();
        let meet: Vec<GradedPoly> = syz
            .iter()
            .map(|s| {
                let mut sum = GradedPoly::zero();
                for (c, g) in s.comps()[..k].iter().zip(&acc) {
                    sum = &sum + &(c * g);
                }
                sum
            })
            .filter(|p| !p.is_zero())
            .collect();
        acc = ideal_basis(ring, &meet)?;
    }
    Ok(acc)
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| invalid!("bad rational `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| invalid!("bad rational `{s}`"))?;
    if d.is_zero() {
        return Err(invalid!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"num/den"` in lowest terms.
pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests;
