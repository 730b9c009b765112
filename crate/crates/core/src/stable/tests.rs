use super::*;
use crate::rootsys::RootSystem;
use crate::symfield::parse_ratfunc;

fn par(name: &str, subset: &[usize]) -> Parabolic {
    Parabolic::new(RootSystem::named(name).unwrap(), subset).unwrap()
}

fn p(s: &str) -> Poly {
    parse_ratfunc(s).unwrap().into_poly().unwrap()
}

#[test]
fn a1_euler_classes() {
    let a1 = par("A1", &[]);
    assert_eq!(euler_tangent(&a1, 0), p("(-a1)*(a1-h)"));
    assert_eq!(euler_tangent(&a1, 1), p("a1*(-a1-h)"));
    assert_eq!(euler_normal_minus(&a1, 1, Chamber::Plus), p("-a1-h"));
    assert_eq!(euler_normal_minus(&a1, 0, Chamber::Plus), p("a1"));
    assert_eq!(euler_normal_minus(&a1, 0, Chamber::Minus), p("a1-h"));
    assert_eq!(epsilon(&a1, 1), p("-a1"));
}

#[test]
fn base_point_normal_class_is_signed_product() {
    let gr = par("A3", &[0, 2]);
    let value = euler_normal_minus(&gr, 0, Chamber::Plus);
    assert_eq!(value.at_zero(Var::H), epsilon(&gr, 0));
    assert_eq!(euler_tangent_factors(&gr, 0).len(), 8);
}

#[test]
fn a1_borel_restrictions() {
    let rs = RootSystem::named("A1").unwrap();
    let s = rs.weyl().simple(0);
    let e = ElemId::IDENTITY;
    assert_eq!(stab_plus_borel(&rs, e, e).unwrap(), p("a1"));
    assert_eq!(stab_plus_borel(&rs, s, e).unwrap(), p("-h"));
    assert_eq!(stab_plus_borel(&rs, s, s).unwrap(), p("-(a1+h)"));
    assert!(stab_plus_borel(&rs, e, s).unwrap().is_zero());
}

#[test]
fn identity_restriction_is_product_of_positive_roots() {
    let rs = RootSystem::named("B2").unwrap();
    let e = ElemId::IDENTITY;
    assert_eq!(
        stab_plus_borel(&rs, e, e).unwrap(),
        p("a1*a2*(a1+a2)*(a1+2*a2)")
    );
}

#[test]
fn parabolic_restriction_example() {
    let a2 = par("A2", &[1]);
    let basis = StableBasis::compute(&a2).unwrap();
    assert_eq!(*basis.plus().get(0, 0), p("a1*(a1+a2)"));
    for y in 0..3 {
        for w in 0..3 {
            if !a2.coset_leq(w, y) {
                assert!(basis.plus().get(y, w).is_zero());
            }
        }
    }
}

#[test]
fn trivial_parabolic_matches_borel() {
    let a2 = par("A2", &[]);
    let basis = StableBasis::compute(&a2).unwrap();
    let rs = a2.root_system();
    for y in 0..6 {
        for w in 0..6 {
            let b = stab_plus_borel(rs, a2.rep(y), a2.rep(w)).unwrap();
            assert_eq!(*basis.plus().get(y, w), b);
        }
    }
}

#[test]
fn a1_minus_table() {
    let a1 = par("A1", &[]);
    let basis = StableBasis::compute(&a1).unwrap();
    assert_eq!(*basis.minus().get(0, 0), p("a1-h"));
    assert!(basis.minus().get(1, 0).is_zero());
    assert_eq!(*basis.minus().get(1, 1), p("-a1"));
}

const CONFIGS: &[(&str, &[usize])] = &[
    ("A1", &[]),
    ("A2", &[]),
    ("A2", &[1]),
    ("A2", &[0]),
    ("B2", &[]),
    ("B2", &[0]),
    ("C2", &[1]),
    ("G2", &[]),
    ("A3", &[0, 2]),
    ("A3", &[1]),
];

#[test]
fn axioms_duality_and_truncations() {
    for &(name, sub) in CONFIGS {
        let pa = par(name, sub);
        let basis = StableBasis::compute(&pa).unwrap();
        assert!(
            verify_axioms(&pa, basis.plus()).is_empty(),
            "{name} {sub:?} plus"
        );
        assert!(
            verify_axioms(&pa, basis.minus()).is_empty(),
            "{name} {sub:?} minus"
        );
        assert!(
            check_duality(&pa, &basis).unwrap().is_empty(),
            "{name} {sub:?}"
        );
        assert!(
            check_diagonal_products(&pa, &basis).is_empty(),
            "{name} {sub:?}"
        );
        assert!(
            check_mod_hsq(&pa, &basis).unwrap().is_empty(),
            "{name} {sub:?}"
        );
    }
}

#[test]
fn fault_injection_is_flagged() {
    let a2 = par("A2", &[]);
    let basis = StableBasis::compute(&a2).unwrap();
    let mut t = basis.plus().clone();
    let bumped = t.get(3, 1) + &Poly::one();
    t.set(3, 1, bumped);
    assert_eq!(
        verify_axioms(&a2, &t),
        [Violation::HDivisibility { class: 3, point: 1 }]
    );
    let mut t = basis.plus().clone();
    t.set(1, 2, Poly::var(Var::H));
    assert_eq!(
        verify_axioms(&a2, &t),
        [Violation::Support { class: 1, point: 2 }]
    );
    let mut t = basis.minus().clone();
    t.set(2, 2, Poly::one());
    assert_eq!(verify_axioms(&a2, &t), [Violation::Diagonal { class: 2 }]);
}

#[test]
fn pairing_of_unit_with_itself() {
    let a1 = par("A1", &[]);
    let one = [Poly::one(), Poly::one()];
    let v = pairing(&a1, &one, &one).unwrap();
    assert_eq!(v, parse_ratfunc("-2/(a1^2-h^2)").unwrap());
    let swapped = v.substitute_linear(&[p("-a1")]);
    assert_eq!(swapped, v);
}

#[test]
fn mod_hsq_examples() {
    let a1 = par("A1", &[]);
    assert_eq!(
        mod_hsq_closed_form(&a1, Chamber::Plus, 1, 0).unwrap(),
        p("-h")
    );
    assert!(mod_hsq_closed_form(&a1, Chamber::Plus, 0, 1)
        .unwrap()
        .is_zero());
    assert_eq!(
        mod_hsq_closed_form(&a1, Chamber::Plus, 1, 1).unwrap(),
        p("-a1-h")
    );
}

#[test]
fn word_independence_rank_three() {
    for name in ["A3", "B3", "C3"] {
        let rs = RootSystem::named(name).unwrap();
        for y in rs.weyl().ids() {
            assert!(reduced_word_independence(&rs, y).unwrap(), "{name} {y:?}");
        }
    }
}

#[test]
fn cotangent_lemma_rank_two() {
    for name in ["A2", "B2", "G2"] {
        let rs = RootSystem::named(name).unwrap();
        for y in rs.weyl().ids() {
            for word in rs.weyl().reduced_words(y) {
                assert!(cotangent_lemma_holds(&rs, &word).unwrap());
            }
        }
        // non-reduced words, including braid relations equal to 1
        assert!(cotangent_lemma_holds(&rs, &[0, 0]).unwrap());
        assert!(cotangent_lemma_holds(&rs, &[0, 1, 1, 0, 1]).unwrap());
    }
    let g2 = RootSystem::named("G2").unwrap();
    assert!(cotangent_lemma_holds(&g2, &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap());
}
