use super::*;
use crate::exactalg::{ideals_equal, Rational};
use crate::partition::{partition_ideal, partition_module, Partition};
use proptest::prelude::*;

fn s(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn part(blocks: &[&[&str]]) -> Partition {
    Partition::from_blocks(blocks.iter().map(|b| s(b)).collect()).unwrap()
}

fn ring(vars: &[&str]) -> EdgeRing {
    EdgeRing::new(vars.iter().copied()).unwrap()
}

fn el(polys: Vec<GradedPoly>) -> FreeElement {
    FreeElement::new(polys)
}

fn var(r: &EdgeRing, x: &str) -> GradedPoly {
    r.var(x).unwrap()
}

fn hilbert_agree(a: &PresentedModule, b: &PresentedModule, upto: i64) -> bool {
    (0..=upto).all(|w| a.hilbert_function(w) == b.hilbert_function(w))
}

/// `Q[x]/(x²)`.
fn dual_numbers() -> PresentedModule {
    let r = ring(&["x"]);
    let x = var(&r, "x");
    PresentedModule::new(r, vec![0], vec![el(vec![&x * &x])]).unwrap()
}

#[test]
fn f0_of_free_module() {
    let r = ring(&["a", "e", "e'"]);
    let m = PresentedModule::free(r, vec![0]);
    let out = f0(&m, "e", "e'").unwrap();
    assert_eq!(out.ring().vars(), ["a", "e"]);
    assert_eq!(out.gen_weights(), [0]);
    assert!(out.relations().is_empty());
}

#[test]
fn f0_merges_partition_blocks() {
    let p = part(&[&["e"], &["e'"], &["a"]]);
    let out = f0(&partition_module(&p), "e", "e'").unwrap();
    assert!(out.same_presentation(&partition_module(&part(&[&["e"], &["a"]]))));

    let p = part(&[&["e", "a"], &["e'"]]);
    let out = f0(&partition_module(&p), "e", "e'").unwrap();
    let expected = partition_module(&part(&[&["e", "a"]]));
    assert!(out.same_presentation(&expected));
    assert!(hilbert_agree(&out, &expected, 5));
}

#[test]
fn f1_case_formula() {
    let related = part(&[&["e", "e'"], &["a"]]);
    let out = f1(&partition_module(&related), "e", "e'").unwrap();
    assert!(!out.is_zero());
    let expected = partition_module(&part(&[&["e"], &["a"]]));
    assert!(hilbert_agree(&out, &expected, 6));

    let unrelated = part(&[&["e"], &["e'"], &["a"]]);
    assert!(f1(&partition_module(&unrelated), "e", "e'").unwrap().is_canonical_zero());

    let free = PresentedModule::free(ring(&["a", "e", "e'"]), vec![0, 2]);
    assert!(f1(&free, "e", "e'").unwrap().is_canonical_zero());
}

#[test]
fn f1_reports_missing_variables() {
    let m = PresentedModule::free(ring(&["a", "e"]), vec![0]);
    assert!(matches!(f1(&m, "e", "e'"), Err(crate::Error::Validation(_))));
    assert!(f0(&m, "b", "e").is_err());
}

#[test]
fn induced_maps_of_identity_and_delta() {
    let p = part(&[&["e", "e'"], &["a"]]);
    let m = partition_module(&p);
    let id = ModuleMap::identity(&m);
    let f0id = induced_map_f0(&id, "e", "e'").unwrap();
    assert_eq!(f0id, ModuleMap::identity(&f0(&m, "e", "e'").unwrap()));
    let f1id = induced_map_f1(&id, "e", "e'").unwrap();
    assert_eq!(f1id, ModuleMap::identity(&f1(&m, "e", "e'").unwrap()));

    let free = PresentedModule::free(ring(&["a", "e", "e'"]), vec![0, 1]);
    let c = Contraction::new(free.ring(), "e", "e'").unwrap();
    let mult = ModuleMap::multiplication(&free, &c.delta()).unwrap();
    assert!(c.induced_map_f0(&mult).unwrap().is_zero_map());
}

#[test]
fn induced_f1_of_torsion_inclusion_is_iso() {
    let r = ring(&["a", "e", "e'"]);
    let p = part(&[&["e", "e'", "a"]]);
    let m = partition_module(&p).direct_sum(&PresentedModule::free(r, vec![1])).unwrap();
    let c = Contraction::new(m.ring(), "e", "e'").unwrap();
    let t = c.torsion(&m).unwrap();
    let phi = c.induced_map_f1(&t.sub.inclusion).unwrap();
    assert!(phi.is_mono().unwrap());
    assert!(phi.is_epi().unwrap());
    assert!(phi.target().same_presentation(&c.f1(&m).unwrap()));
}

#[test]
fn induced_maps_are_functorial() {
    let r = ring(&["a", "e", "e'"]);
    let (e, ep, a) = (var(&r, "e"), var(&r, "e'"), var(&r, "a"));
    let m = PresentedModule::new(r.clone(), vec![0], vec![el(vec![&e - &ep])]).unwrap();
    // M --·a--> M(-1) --·e--> M(-2)
    let f = ModuleMap::multiplication(&m, &a).unwrap();
    let g = ModuleMap::multiplication(f.target(), &e).unwrap();
    let gf = f.then(&g).unwrap();
    let c = Contraction::new(&r, "e", "e'").unwrap();
    for fi in [Contraction::induced_map_f0, Contraction::induced_map_f1] {
        let lhs = fi(&c, &gf).unwrap();
        let rhs = fi(&c, &f).unwrap().then(&fi(&c, &g).unwrap()).unwrap();
        assert!(lhs.source().same_presentation(rhs.source()));
        for (x, y) in lhs.columns().iter().zip(rhs.columns()) {
            assert!(lhs.target().is_zero_element(&(x - y)));
        }
    }
}

#[test]
fn kernel_cokernel_image_examples() {
    let r = ring(&["x", "y"]);
    let m = PresentedModule::free(r.clone(), vec![0]);
    let (k, _) = kernel(&ModuleMap::identity(&m)).unwrap();
    assert!(k.is_zero());

    let rx = ring(&["x"]);
    let x = var(&rx, "x");
    let fx = PresentedModule::free(rx.clone(), vec![0]);
    let mult = ModuleMap::multiplication(&fx, &x).unwrap();
    let (ck, _) = cokernel(&mult).unwrap();
    let expected = PresentedModule::new(rx, vec![-1], vec![el(vec![x.clone()])]).unwrap();
    assert!(ck.same_presentation(&expected));

    // Q[x,y](-1) --·(x − y)--> Q[x,y] --> Q[x,y]/(x − y): kernel of the
    // composite is generated by the weight-1 generator itself.
    let d = &var(&r, "x") - &var(&r, "y");
    let q = PresentedModule::new(r.clone(), vec![0], vec![el(vec![d.clone()])]).unwrap();
    let src = PresentedModule::free(r.clone(), vec![1]);
    let comp = ModuleMap::new(src, q, vec![el(vec![d.clone()])]).unwrap();
    let (k, inc) = kernel(&comp).unwrap();
    assert_eq!(k.gen_weights(), [1]);
    assert!(k.relations().is_empty());
    let im = image(&inc).unwrap();
    assert_eq!(im.module.rank(), 1);
}

#[test]
fn image_factors_the_map() {
    let r = ring(&["x", "y"]);
    let (x, y) = (var(&r, "x"), var(&r, "y"));
    let a = PresentedModule::free(r.clone(), vec![1, 1, 2]);
    let b = PresentedModule::free(r.clone(), vec![0]);
    let phi = ModuleMap::new(a, b, vec![el(vec![x.clone()]), el(vec![y.clone()]), el(vec![&x * &y])]).unwrap();
    let im = image(&phi).unwrap();
    assert_eq!(im.module.gen_weights(), [1, 1]);
    assert!(im.corestriction.is_epi().unwrap());
    assert!(im.inclusion.is_mono().unwrap());
    let composite = im.corestriction.then(&im.inclusion).unwrap();
    for (u, v) in composite.columns().iter().zip(phi.columns()) {
        assert!(phi.target().is_zero_element(&(u - v)));
    }
}

#[test]
fn pullback_examples() {
    let r = ring(&["x"]);
    let x = var(&r, "x");
    let a = PresentedModule::free(r.clone(), vec![0]);
    let s_mod = PresentedModule::free(r.clone(), vec![1]);
    let f = ModuleMap::new(s_mod.clone(), a.clone(), vec![el(vec![x.clone()])]).unwrap();
    let g = ModuleMap::multiplication(&a, &x).unwrap().shift(1);
    assert!(g.target().same_presentation(&a));

    let pb = pullback(&f, &g).unwrap();
    assert_eq!(pb.module.rank(), 1);
    assert!(pb.module.relations().is_empty());
    assert!(pb.to_first.is_epi().unwrap());
    assert!(pb.to_second.is_mono().unwrap());

    let pb = pullback(&ModuleMap::identity(&a), &g).unwrap();
    assert!(pb.to_second.is_mono().unwrap() && pb.to_second.is_epi().unwrap());
    let pb = pullback(&f, &ModuleMap::identity(&a)).unwrap();
    assert!(pb.to_first.is_mono().unwrap() && pb.to_first.is_epi().unwrap());
}

#[test]
fn annihilator_examples() {
    let r = ring(&["x", "y"]);
    let free = PresentedModule::free(r.clone(), vec![0]);
    assert!(annihilator(&free, &free.generator(0)).unwrap().is_empty());

    let dn = dual_numbers();
    let x = var(dn.ring(), "x");
    let ann = annihilator(&dn, &dn.generator(0)).unwrap();
    assert!(ideals_equal(dn.ring(), &ann, &[&x * &x]).unwrap());

    let p = part(&[&["a", "e", "e'"], &["b"]]);
    let m = partition_module(&p);
    let pr = m.ring().clone();
    let (va, vb) = (var(&pr, "a"), var(&pr, "b"));
    let elem = el(vec![&(&va * &vb) + &(&vb * &vb)]);
    let ann = annihilator(&m, &elem).unwrap();
    assert!(ideals_equal(&pr, &ann, &partition_ideal(&p)).unwrap());
}

#[test]
fn cyclic_submodule_examples() {
    let free = PresentedModule::free(ring(&["x", "y"]), vec![0]);
    let c = cyclic_submodule(&free, &free.generator(0)).unwrap();
    assert!(c.module.same_presentation(&free));

    let p = part(&[&["e", "e'"], &["a"]]);
    let m = partition_module(&p);
    let r = m.ring().clone();
    let elem = el(vec![&(&var(&r, "a") * &var(&r, "e")) - &(&var(&r, "a") * &var(&r, "a"))]);
    let c = cyclic_submodule(&m, &elem).unwrap();
    assert_eq!(c.shift, 2);
    assert!(c.module.same_presentation(&m.shift(2)));

    let dn = dual_numbers();
    let x = var(dn.ring(), "x");
    let c = cyclic_submodule(&dn, &el(vec![x.clone()])).unwrap();
    let expected = PresentedModule::new(dn.ring().clone(), vec![1], vec![el(vec![x])]).unwrap();
    assert!(c.module.same_presentation(&expected));

    let zero = cyclic_submodule(&dn, &FreeElement::zero(1)).unwrap();
    assert!(zero.module.is_canonical_zero());
}

#[test]
fn cyclic_covers() {
    let m = PresentedModule::free(ring(&["x", "y"]), vec![0, 3]);
    let cover = submodule_generators(&m, &[m.generator(0), m.generator(1)]).unwrap();
    assert_eq!(cover.pieces.len(), 2);
    assert!(cover.surjection.is_epi().unwrap());

    let r = ring(&["x", "y"]);
    let f = PresentedModule::free(r.clone(), vec![0]);
    let cover = submodule_generators(&f, &[el(vec![var(&r, "x")]), el(vec![var(&r, "y")])]).unwrap();
    assert_eq!(cover.pieces.len(), 2);
    for piece in &cover.pieces {
        assert!(piece.module.same_presentation(&f.shift(1)));
    }
    assert!(cover.surjection.is_epi().unwrap());
    assert!(!cover.surjection.is_mono().unwrap());

    let empty = submodule_generators(&f, &[]).unwrap();
    assert!(empty.pieces.is_empty());

    let inhomogeneous = el(vec![&var(&r, "x") + &GradedPoly::integer(2, 1)]);
    assert!(submodule_generators(&f, &[inhomogeneous]).is_err());
}

#[test]
fn hilbert_function_examples() {
    let free = PresentedModule::free(ring(&["x", "y"]), vec![0]);
    assert_eq!(free.hilbert_function(3), 4);
    let m = partition_module(&part(&[&["e", "e'"], &["a"]]));
    assert_eq!(m.hilbert_function(2), 3);
    let zero = PresentedModule::zero(ring(&["x"]));
    assert!((-2..6).all(|w| zero.hilbert_function(w) == 0));
}

#[test]
fn tame_support_examples() {
    let p = part(&[&["e", "e'"], &["a"]]);
    let m = partition_module(&p);
    assert!(is_tame_support(&m, std::slice::from_ref(&p)).unwrap());

    let r = m.ring().clone();
    assert!(is_tame_support(&PresentedModule::zero(r.clone()), &[]).unwrap());
    let free = PresentedModule::free(r, vec![0]);
    assert!(!is_tame_support(&free, &[]).unwrap());
    assert!(!is_tame_support(&free, std::slice::from_ref(&p)).unwrap());
    assert!(!tame_support_by_products(&free, std::slice::from_ref(&p), 100).unwrap());
}

#[test]
fn tame_support_union_of_components() {
    // Q[a,b,c] / ((a − b)(b − c)) is supported on V(a − b) ∪ V(b − c).
    let p1 = part(&[&["a", "b"], &["c"]]);
    let p2 = part(&[&["a"], &["b", "c"]]);
    let r = p1.ring();
    let f = &(&var(&r, "a") - &var(&r, "b")) * &(&var(&r, "b") - &var(&r, "c"));
    let m = PresentedModule::new(r, vec![0], vec![el(vec![f])]).unwrap();
    let both = [p1.clone(), p2.clone()];
    assert!(is_tame_support(&m, &both).unwrap());
    assert!(tame_support_by_products(&m, &both, 100).unwrap());
    assert!(!is_tame_support(&m, &[p1]).unwrap());
    assert!(!is_tame_support(&m, &[p2]).unwrap());
}

#[test]
fn product_route_cap_is_a_resource_error() {
    let ground = ["a", "b", "c", "d"];
    let ps = crate::partition::all_partitions(&ground);
    let m = PresentedModule::free(Partition::discrete(&ground).ring(), vec![0]);
    let coarse: Vec<Partition> = ps.into_iter().filter(|p| p.num_blocks() == 1).collect();
    let err = tame_support_by_products(&m, &vec![coarse[0].clone(); 8], 10).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn finest_partitions_drop_coarser_members() {
    let fine = part(&[&["a", "b"], &["c"]]);
    let coarse = part(&[&["a", "b", "c"]]);
    let other = part(&[&["a"], &["b", "c"]]);
    let out = finest_partitions(&[coarse, fine.clone(), other.clone(), fine.clone()]);
    assert_eq!(out.len(), 2);
    assert!(out.contains(&fine) && out.contains(&other));
}

/// A short exact sequence `0 → B → A → C → 0` from a submodule `B ⊆ A`.
fn ses(a: &PresentedModule, elems: &[FreeElement]) -> (ModuleMap, ModuleMap) {
    let sub = submodule(a, elems).unwrap();
    let (_, proj) = cokernel(&sub.inclusion).unwrap();
    (sub.inclusion, proj)
}

#[test]
fn six_term_sequence_is_exact() {
    let r = ring(&["a", "e", "e'"]);
    let (a, e, ep) = (var(&r, "a"), var(&r, "e"), var(&r, "e'"));
    let c = Contraction::new(&r, "e", "e'").unwrap();

    let free = PresentedModule::free(r.clone(), vec![0]);
    let delta = &e - &ep;
    for elems in [
        vec![el(vec![delta.clone()])],
        vec![el(vec![&delta * &a])],
        vec![el(vec![a.clone()])],
        vec![el(vec![a.clone()]), el(vec![delta.clone()])],
    ] {
        let (inc, proj) = ses(&free, &elems);
        let les = LongExactSequence::new(&c, &inc, &proj).unwrap();
        for report in les.check(0, 6).unwrap() {
            assert!(report.exact(), "{report:?} for {elems:?}");
        }
    }

    let m = partition_module(&part(&[&["a", "e"], &["e'"]]));
    let (inc, proj) = ses(&m, &[el(vec![ep.clone()])]);
    for report in LongExactSequence::new(&c, &inc, &proj).unwrap().check(0, 6).unwrap() {
        assert!(report.exact(), "{report:?}");
    }
}

#[test]
fn connecting_map_of_koszul_sequence() {
    // 0 → R(−1) --·δ--> R → R/δ → 0: F₁(R/δ) ≅ F₀(R(−1))(−1) via ∂.
    let r = ring(&["e", "e'"]);
    let c = Contraction::new(&r, "e", "e'").unwrap();
    let free = PresentedModule::free(r.clone(), vec![0]);
    let (inc, proj) = ses(&free, &[el(vec![c.delta()])]);
    let d = c.connecting_map(&inc, &proj).unwrap();
    assert!(d.is_mono().unwrap());
    assert!(d.is_epi().unwrap());
}

#[test]
fn torsion_is_killed_by_delta() {
    let p = part(&[&["e", "e'", "a"]]);
    let m = partition_module(&p).direct_sum(&partition_module(&part(&[&["e", "e'"], &["a"]])).shift(1)).unwrap();
    let c = Contraction::new(m.ring(), "e", "e'").unwrap();
    let t = c.torsion(&m).unwrap();
    for g in t.generators() {
        assert!(m.is_zero_element(&g.scale(&c.delta())));
    }
    assert_eq!(t.module.rank(), 2);
}

// --- randomized invariants ---------------------------------------------

fn split_ring() -> EdgeRing {
    ring(&["a", "b", "e", "e'"])
}

fn arb_homogeneous(degree: u32) -> impl Strategy<Value = GradedPoly> {
    let monos = crate::exactalg::monomials_of_degree(4, degree);
    prop::collection::vec((0..monos.len(), -2i64..3), 1..3).prop_map(move |ts| {
        GradedPoly::from_terms(ts.into_iter().map(|(i, c)| (monos[i].clone(), Rational::from_integer(c.into()))))
    })
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    let all = crate::partition::all_partitions(split_ring().vars());
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_is_additive_on_short_exact_sequences(
        p in arb_partition(),
        gens in prop::collection::vec(prop_oneof![arb_homogeneous(1), arb_homogeneous(2)], 1..3),
    ) {
        let a = partition_module(&p);
        let elems: Vec<FreeElement> = gens.into_iter().map(|g| el(vec![g])).collect();
        let (inc, proj) = ses(&a, &elems);
        for w in 0..5 {
            prop_assert_eq!(
                a.hilbert_function(w),
                inc.source().hilbert_function(w) + proj.target().hilbert_function(w)
            );
        }
    }

    #[test]
    fn six_term_exactness_on_partition_modules(
        p in arb_partition(),
        g in prop_oneof![arb_homogeneous(1), arb_homogeneous(2)],
    ) {
        let a = partition_module(&p);
        let (inc, proj) = ses(&a, &[el(vec![g])]);
        let c = Contraction::new(a.ring(), "e", "e'").unwrap();
        for report in LongExactSequence::new(&c, &inc, &proj).unwrap().check(0, 5).unwrap() {
            prop_assert!(report.exact(), "{:?}", report);
        }
    }

    #[test]
    fn f1_preserves_monomorphisms(p in arb_partition(), g in arb_homogeneous(1)) {
        let a = partition_module(&p);
        let sub = submodule(&a, &[el(vec![g])]).unwrap();
        let c = Contraction::new(a.ring(), "e", "e'").unwrap();
        prop_assert!(c.induced_map_f1(&sub.inclusion).unwrap().is_mono().unwrap());
    }

    #[test]
    fn f1_of_free_modules_vanishes(weights in prop::collection::vec(-2i64..3, 0..3)) {
        let free = PresentedModule::free(split_ring(), weights);
        prop_assert!(f1(&free, "e", "e'").unwrap().is_canonical_zero());
    }
}
