use super::*;
use proptest::prelude::*;

fn xy() -> EdgeRing {
    EdgeRing::new(["x", "y"]).unwrap()
}

fn p(ring: &EdgeRing, terms: &[(i64, &[u32])]) -> GradedPoly {
    GradedPoly::from_terms(terms.iter().map(|(c, e)| {
        assert_eq!(e.len(), ring.nvars());
        (Monomial::new(e.to_vec()), Rational::from_integer((*c).into()))
    }))
}

fn el(polys: Vec<GradedPoly>) -> FreeElement {
    FreeElement::new(polys)
}

fn ideal_gb(ring: &EdgeRing, gens: &[GradedPoly]) -> GroebnerBasis {
    FreeModule::new(ring.clone(), vec![0])
        .groebner(&gens.iter().map(|g| el(vec![g.clone()])).collect::<Vec<_>>())
        .unwrap()
}

#[test]
fn groebner_of_reduced_and_monomial_ideals() {
    let r = xy();
    let x_minus_y = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
    assert_eq!(groebner(&r, &[0], &[el(vec![x_minus_y.clone()])]).unwrap(), vec![el(vec![x_minus_y])]);

    let x = r.var("x").unwrap();
    let y = r.var("y").unwrap();
    let gb = groebner(&r, &[0], &[el(vec![y.clone()]), el(vec![x.clone()])]).unwrap();
    assert_eq!(gb, vec![el(vec![x]), el(vec![y])]);
}

#[test]
fn groebner_drops_redundant_generator() {
    let r = xy();
    let x_minus_y = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
    let sq = p(&r, &[(1, &[2, 0]), (-1, &[0, 2])]);
    let gb = ideal_gb(&r, &[sq.clone(), x_minus_y.clone()]);
    assert_eq!(gb.elements(), vec![el(vec![x_minus_y.clone()])]);
    // x² − y² = (x + y)(x − y)
    let x_plus_y = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
    assert_eq!(&x_plus_y * &x_minus_y, sq);
    assert!(gb.normal_form(&el(vec![sq])).is_zero());
}

#[test]
fn normal_form_examples() {
    let r = xy();
    let x_minus_y = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
    let gb = ideal_gb(&r, std::slice::from_ref(&x_minus_y));
    assert!(normal_form(&el(vec![x_minus_y]), &gb).is_zero());

    let x = r.var("x").unwrap();
    let y = r.var("y").unwrap();
    let gb_y = ideal_gb(&r, std::slice::from_ref(&y));
    assert_eq!(normal_form(&el(vec![x.clone()]), &gb_y), el(vec![x.clone()]));

    let x2 = &x * &x;
    let y2 = &y * &y;
    assert_eq!(normal_form(&el(vec![x2]), &gb), el(vec![y2]));
}

#[test]
fn syzygy_examples() {
    let rx = EdgeRing::new(["x"]).unwrap();
    let x = rx.var("x").unwrap();
    assert!(syzygies(&rx, &[0], &[el(vec![x])]).unwrap().is_empty());

    let r = xy();
    let x = r.var("x").unwrap();
    let y = r.var("y").unwrap();
    let syz = syzygies(&r, &[0], &[el(vec![x.clone()]), el(vec![y.clone()])]).unwrap();
    assert_eq!(syz.len(), 1);
    let koszul = el(vec![y.clone(), -&x]);
    let s = &syz[0];
    // unique up to a nonzero scalar
    let c = koszul.comps()[0].sorted_terms()[0].1 / s.comps()[0].sorted_terms()[0].1;
    assert_eq!(s.scale_rational(&c), koszul);
}

#[test]
fn syzygies_of_two_linear_forms() {
    let r = xy();
    let a = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
    let b = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
    let gens = [el(vec![a.clone()]), el(vec![b.clone()])];
    let syz = syzygies(&r, &[0], &gens).unwrap();
    assert!(!syz.is_empty());
    for s in &syz {
        let sum = &(&s.comps()[0] * &a) + &(&s.comps()[1] * &b);
        assert!(sum.is_zero());
    }
    // kernel of the 1×2 matrix [a b] is spanned by (b, −a)
    let expected = el(vec![b.clone(), -&a]);
    let syz_module = FreeModule::new(r.clone(), vec![1, 1]).groebner(&syz).unwrap();
    assert!(syz_module.contains(&expected));
    let spanned = FreeModule::new(r, vec![1, 1]).groebner(&[expected]).unwrap();
    assert!(syz.iter().all(|s| spanned.contains(s)));
}

#[test]
fn radical_membership_examples() {
    let r = xy();
    let x_minus_y = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
    let sq = &x_minus_y * &x_minus_y;
    assert!(radical_member(&r, &x_minus_y, &[sq]).unwrap());

    let x = r.var("x").unwrap();
    let y = r.var("y").unwrap();
    assert!(!radical_member(&r, &x, &[y]).unwrap());

    // x²(1 + x) vanishes at x = −1, where x does not: no power of x lies in
    // the ideal, while x(1 + x) squared does.
    let f = p(&r, &[(1, &[2, 0]), (1, &[3, 0])]);
    assert!(!radical_member(&r, &x, std::slice::from_ref(&f)).unwrap());
    let x_plus_x2 = p(&r, &[(1, &[1, 0]), (1, &[2, 0])]);
    assert!(radical_member(&r, &x_plus_x2, std::slice::from_ref(&f)).unwrap());
    assert!(ideal_contains(&r, &[f], &(&x_plus_x2 * &x_plus_x2)).unwrap());
}

#[test]
fn mixed_ambient_is_structural_error() {
    let r = xy();
    let x = r.var("x").unwrap();
    let err = groebner(&r, &[0], &[el(vec![x.clone()]), el(vec![x.clone(), x])]).unwrap_err();
    assert!(matches!(err, crate::Error::Structural(_)));
    let r3 = EdgeRing::new(["x", "y", "z"]).unwrap();
    let z = r3.var("z").unwrap();
    assert!(groebner(&r, &[0], &[el(vec![z])]).is_err());
}

#[test]
fn colon_saturation_and_intersection() {
    let r = xy();
    let x = r.var("x").unwrap();
    let y = r.var("y").unwrap();
    let x2y = &(&x * &x) * &y;
    // (x²y) : x = (xy),  (x²y) : x^∞ = (y)
    assert!(ideals_equal(&r, &colon(&r, std::slice::from_ref(&x2y), &x).unwrap(), &[&x * &y]).unwrap());
    assert!(ideals_equal(&r, &saturation(&r, &[x2y], &x).unwrap(), std::slice::from_ref(&y)).unwrap());
    // (x) ∩ (y) = (xy)
    let meet = intersection(&r, &[vec![x.clone()], vec![y.clone()]]).unwrap();
    assert!(ideals_equal(&r, &meet, &[&x * &y]).unwrap());
    assert!(is_unit_ideal(&r, &[GradedPoly::integer(2, 3)]).unwrap());
    assert!(!is_unit_ideal(&r, &[x]).unwrap());
}

#[test]
fn rational_strings() {
    let c = parse_rational("-6/4").unwrap();
    assert_eq!(format_rational(&c), "-3/2");
    assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

#[test]
fn hilbert_counts_standard_monomials() {
    let r = xy();
    let gb = FreeModule::new(r, vec![0]).groebner(&[]).unwrap();
    assert_eq!(gb.standard_monomial_count(0, 3), 4);
    assert_eq!(gb.standard_monomial_count(0, -1), 0);
}

// --- randomized invariants ---------------------------------------------

const NV: usize = 3;

fn arb_poly(max_terms: usize) -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, NV), -4i64..5, 1i64..3), 0..max_terms).prop_map(|ts| {
        GradedPoly::from_terms(
            ts.into_iter()
                .map(|(e, n, d)| (Monomial::new(e), Rational::new(n.into(), d.into()))),
        )
    })
}

fn arb_homogeneous(degree: u32) -> impl Strategy<Value = GradedPoly> {
    let monos = monomials_of_degree(NV, degree);
    prop::collection::vec((0..monos.len(), -3i64..4), 1..4).prop_map(move |ts| {
        GradedPoly::from_terms(
            ts.into_iter()
                .map(|(i, c)| (monos[i].clone(), Rational::from_integer(c.into()))),
        )
    })
}

fn ring3() -> EdgeRing {
    EdgeRing::new(["a", "b", "c"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_addition_cancels(a in arb_poly(6), b in arb_poly(6)) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(arb_homogeneous(2), 1..3), f in arb_poly(6)) {
        let gb = ideal_gb(&ring3(), &gens);
        let once = gb.normal_form(&el(vec![f]));
        prop_assert_eq!(gb.normal_form(&once), once);
    }

    #[test]
    fn normal_form_zero_iff_expressible(
        gens in prop::collection::vec(arb_homogeneous(1), 1..3),
        coeffs in prop::collection::vec(arb_homogeneous(1), 2),
        noise in arb_homogeneous(2),
        add_noise in any::<bool>(),
    ) {
        let r = ring3();
        let module = FreeModule::new(r.clone(), vec![0]);
        let elems: Vec<FreeElement> = gens.iter().map(|g| el(vec![g.clone()])).collect();
        let mut f = GradedPoly::zero();
        for (c, g) in coeffs.iter().zip(&gens) {
            f = &f + &(c * g);
        }
        if add_noise {
            f = &f + &noise;
        }
        let gb = module.groebner(&elems).unwrap();
        let weights = module.element_weights(&elems).unwrap();
        let lifter = Lifter::new(&module, &elems, &weights).unwrap();
        let nf_zero = gb.normal_form(&el(vec![f.clone()])).is_zero();
        let lifted = lifter.lift(&el(vec![f.clone()]));
        prop_assert_eq!(nf_zero, lifted.is_some());
        if let Some(c) = lifted {
            let mut sum = GradedPoly::zero();
            for (ci, g) in c.comps().iter().zip(&gens) {
                sum = &sum + &(ci * g);
            }
            prop_assert_eq!(sum, f);
        }
    }

    #[test]
    fn syzygies_vanish(gens in prop::collection::vec(prop_oneof![arb_homogeneous(1), arb_homogeneous(2)], 1..4)) {
        let r = ring3();
        let elems: Vec<FreeElement> = gens.iter().map(|g| el(vec![g.clone()])).collect();
        for s in syzygies(&r, &[0], &elems).unwrap() {
            let mut sum = GradedPoly::zero();
            for (c, g) in s.comps().iter().zip(&gens) {
                sum = &sum + &(c * g);
            }
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn groebner_ignores_generator_order(gens in prop::collection::vec(arb_homogeneous(2), 1..4)) {
        let r = ring3();
        let elems: Vec<FreeElement> = gens.iter().map(|g| el(vec![g.clone()])).collect();
        let mut rev = elems.clone();
        rev.reverse();
        prop_assert_eq!(groebner(&r, &[0], &elems).unwrap(), groebner(&r, &[0], &rev).unwrap());
    }
}
