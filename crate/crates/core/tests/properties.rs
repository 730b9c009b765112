use num_traits::Zero;
use proptest::prelude::*;

use quantstab_core::hecke::{demazure_lusztig, hecke_relation_holds};
use quantstab_core::rootsys::{ElemId, RootSystem, Weight};
use quantstab_core::stable::cotangent_lemma_holds;
use quantstab_core::symfield::{parse_ratfunc, rat, Monomial, Poly, RatFunc, Rational, Var};

const SLOTS: [Var; 4] = [Var::A(0), Var::A(1), Var::H, Var::Q(0)];

fn poly_in(vars: &'static [Var], max_exp: u16) -> impl Strategy<Value = Poly> {
    let term = (
        proptest::collection::vec(0..=max_exp, vars.len()),
        -4i64..=4,
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        Poly::from_terms(terms.into_iter().map(|(exps, c)| {
            let m = vars
                .iter()
                .zip(exps)
                .fold(Monomial::ONE, |m, (&v, e)| m.with_exponent(v, e));
            (m, rat(c, 1))
        }))
    })
}

fn nonzero(vars: &'static [Var], max_exp: u16) -> impl Strategy<Value = Poly> {
    poly_in(vars, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=5), SLOTS.len())
        .prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

fn at(pt: &[Rational]) -> impl Fn(Var) -> Rational + '_ {
    move |v| {
        let i = SLOTS.iter().position(|&s| s == v).unwrap();
        pt[i].clone()
    }
}

/// 64 by default; `PROPTEST_CASES` raises it for stress runs.
fn cases() -> u32 {
    std::env::var("PROPTEST_CASES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(cases()))]

    #[test]
    fn field_ops_commute_with_evaluation(
        a in poly_in(&SLOTS, 2),
        b in nonzero(&SLOTS, 2),
        c in poly_in(&SLOTS, 2),
        d in nonzero(&SLOTS, 2),
        pt in point(),
    ) {
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        let f = at(&pt);
        let (Some(xv), Some(yv)) = (x.eval(&f), y.eval(&f)) else { return Ok(()) };
        if let Some(v) = (&x + &y).eval(&f) {
            prop_assert_eq!(v, &xv + &yv);
        }
        if let Some(v) = (&x - &y).eval(&f) {
            prop_assert_eq!(v, &xv - &yv);
        }
        if let Some(v) = (&x * &y).eval(&f) {
            prop_assert_eq!(v, &xv * &yv);
        }
        if !yv.is_zero() {
            if let Some(v) = (&x / &y).eval(&f) {
                prop_assert_eq!(v, xv / yv);
            }
        }
    }

    #[test]
    fn normal_form_ignores_common_factors(
        a in poly_in(&SLOTS, 2),
        b in nonzero(&SLOTS, 2),
        k in nonzero(&SLOTS, 1),
        c in (-6i64..=6).prop_filter("nonzero", |c| *c != 0),
    ) {
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let y = RatFunc::new(&a * &k, &b * &k).unwrap().scale(&rat(c, 1)).scale(&rat(1, c));
        prop_assert_eq!(&x, &y);
        let again = RatFunc::new(x.numer().clone(), x.denom().clone()).unwrap();
        prop_assert_eq!(&x, &again);
    }

    #[test]
    fn canonical_string_round_trips(a in poly_in(&SLOTS, 3), b in nonzero(&SLOTS, 2)) {
        let x = RatFunc::new(a, b).unwrap();
        prop_assert_eq!(parse_ratfunc(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn weyl_action_is_a_left_action(
        name in prop::sample::select(vec!["A2", "B2", "G2"]),
        u in 0usize..12,
        w in 0usize..12,
        p in poly_in(&SLOTS, 2),
    ) {
        let rs = RootSystem::named(name).unwrap();
        let g = rs.weyl();
        let ids: Vec<ElemId> = g.ids().collect();
        let (u, w) = (ids[u % ids.len()], ids[w % ids.len()]);
        let lhs = rs.act_poly(g.mul(u, w), &p);
        prop_assert_eq!(lhs, rs.act_poly(u, &rs.act_poly(w, &p)));
        prop_assert_eq!(rs.act_poly(g.inverse(w), &rs.act_poly(w, &p)), p);
    }

    #[test]
    fn cotangent_lemma_random_rank_three(
        name in prop::sample::select(vec!["A3", "B3", "C3"]),
        word in proptest::collection::vec(0usize..3, 0..9),
    ) {
        let rs = RootSystem::named(name).unwrap();
        prop_assert!(cotangent_lemma_holds(&rs, &word).unwrap());
    }

    #[test]
    fn hecke_relation_random_inputs(
        name in prop::sample::select(vec!["A2", "B2", "G2"]),
        i in 0usize..2,
        lam in proptest::collection::vec(-3i64..=3, 2),
        f in poly_in(&SLOTS, 2),
    ) {
        let rs = RootSystem::named(name).unwrap();
        let lam = Weight::from_ints(&lam);
        prop_assert!(hecke_relation_holds(&rs, i, &lam, &f).unwrap());
    }

    #[test]
    fn demazure_lusztig_fixes_invariants(
        name in prop::sample::select(vec!["A2", "B2", "G2"]),
        i in 0usize..2,
        f in poly_in(&SLOTS, 2),
    ) {
        // symmetrizing under σ_i gives a σ̃_i-fixed polynomial
        let rs = RootSystem::named(name).unwrap();
        let sym = &f + &rs.act_poly(rs.weyl().simple(i), &f);
        prop_assert_eq!(demazure_lusztig(&rs, i, &sym).unwrap(), sym);
    }
}
