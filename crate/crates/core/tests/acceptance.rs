//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test writes a `criterion N: PASS|FAIL` line straight to stderr so the
//! verdicts show up even when libtest captures output.

use std::io::Write;

use quantstab_core::hecke::{
    bmo_operator, crosscheck_conjugation, hecke_relation_holds, invariant_basis, monomial_basis,
    pcon_operator, word_independence,
};
use quantstab_core::parabolic::Parabolic;
use quantstab_core::quantum::{
    annihilates_unit, c_p_constant, classical_matrix, classical_matrix_oracle, novikov_factor,
    purely_quantum_matrix, quantum_matrix, scalar_term, uncorrected_scalar,
};
use quantstab_core::rootsys::{Root, RootSystem, Weight};
use quantstab_core::stable::{
    check_diagonal_products, check_duality, check_mod_hsq, verify_axioms, StableBasis,
};
use quantstab_core::symfield::{parse_ratfunc, rat, RatFunc};

const CONFIGS: &[(&str, &[usize])] = &[
    ("A1", &[]),
    ("A2", &[]),
    ("A2", &[1]),
    ("A3", &[0, 2]),
    ("B2", &[]),
];

fn par(name: &str, subset: &[usize]) -> Parabolic {
    Parabolic::new(RootSystem::named(name).unwrap(), subset).unwrap()
}

fn weights(p: &Parabolic) -> Vec<Weight> {
    let rank = p.root_system().rank();
    p.outside()
        .iter()
        .map(|&i| Weight::fundamental(rank, i))
        .collect()
}

fn report(n: u32, what: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {n}: {verdict} ({what})");
    for f in failures {
        let _ = writeln!(err, "    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

#[test]
fn criterion_01_stable_axioms() {
    let mut bad = Vec::new();
    for &(name, subset) in CONFIGS {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        for table in [basis.plus(), basis.minus()] {
            let v = verify_axioms(&p, table);
            if !v.is_empty() {
                bad.push(format!(
                    "{name} {subset:?} {}: {v:?}",
                    table.chamber().name()
                ));
            }
        }
        let d = check_diagonal_products(&p, &basis);
        if !d.is_empty() {
            bad.push(format!("{name} {subset:?} diagonal products at {d:?}"));
        }
    }
    report(1, "support, normalization, h-divisibility", &bad);
}

#[test]
fn criterion_02_duality() {
    let mut bad = Vec::new();
    for &(name, subset) in CONFIGS {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        let pairs = check_duality(&p, &basis).unwrap();
        if !pairs.is_empty() {
            bad.push(format!("{name} {subset:?}: {pairs:?}"));
        }
    }
    report(2, "plus and signed minus bases are dual", &bad);
}

#[test]
fn criterion_03_mod_h_squared() {
    let mut bad = Vec::new();
    for &(name, subset) in CONFIGS {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        let entries = check_mod_hsq(&p, &basis).unwrap();
        if !entries.is_empty() {
            bad.push(format!("{name} {subset:?}: {entries:?}"));
        }
    }
    report(3, "closed form modulo h^2 in both chambers", &bad);
}

#[test]
fn criterion_04_classical_oracle() {
    let mut bad = Vec::new();
    for &(name, subset) in CONFIGS {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        for lam in weights(&p) {
            let m = classical_matrix(&p, &lam).unwrap();
            if m != classical_matrix_oracle(&p, &basis, &lam).unwrap() {
                bad.push(format!("{name} {subset:?} {lam}"));
            }
        }
    }
    report(4, "classical matrix equals localization", &bad);
}

#[test]
fn criterion_05_c_p_values() {
    // (type, label, subset, root, expected)
    type Case = (
        &'static str,
        &'static str,
        &'static [usize],
        &'static [i32],
        i64,
    );
    let cases: &[Case] = &[
        ("A3", "Gr(2,4)", &[0, 2], &[0, 1, 0], 2),
        ("A2", "Gr(1,3)", &[1], &[1, 0], 1),
        ("A3", "Gr(1,4)", &[1, 2], &[1, 0, 0], 1),
        ("A4", "Gr(2,5)", &[0, 2, 3], &[0, 1, 0, 0], 2),
        ("A2", "composition (2,1)", &[0], &[0, 1], 1),
    ];
    let mut bad = Vec::new();
    for &(name, label, subset, root, expect) in cases {
        let p = par(name, subset);
        let got = c_p_constant(&p, &Root::new(root.to_vec())).unwrap();
        if got != rat(expect, 1) {
            bad.push(format!("{label}: got {got}, expected {expect}"));
        }
    }
    report(5, "C_P constants", &bad);
}

#[test]
fn criterion_06_scalar_term() {
    let cases: &[(&str, &[usize], usize, &str)] = &[
        ("A3", &[0, 2], 1, "2*q2/(1-q2)"),
        ("A2", &[1], 0, "q1/(1-q1)"),
    ];
    let mut bad = Vec::new();
    for &(name, subset, i, expect) in cases {
        let p = par(name, subset);
        let rs = p.root_system();
        let lam = Weight::fundamental(rs.rank(), i);
        let s = scalar_term(&p, &lam).unwrap().into_value();
        if !s.is_free_of_roots() {
            bad.push(format!("{name} {subset:?}: {s} involves root variables"));
        }
        let mut classes = Vec::new();
        for class in p.degree_classes() {
            let k = class.roots[0];
            let c = c_p_constant(&p, rs.root(k)).unwrap();
            let pairing = rs.pairing_positive(&lam, k);
            classes.push(novikov_factor(&p, k).unwrap().scale(&(pairing * c)));
        }
        let decomposed = RatFunc::sum(&classes);
        if s != decomposed {
            bad.push(format!("{name} {subset:?}: {s} vs class sum {decomposed}"));
        }
        if s != parse_ratfunc(expect).unwrap() {
            bad.push(format!("{name} {subset:?}: {s} vs expected {expect}"));
        }
    }
    report(
        6,
        "scalar term is root-free and matches the class sum",
        &bad,
    );
}

#[test]
fn criterion_07_unit_and_commutativity() {
    let mut bad = Vec::new();
    for &(name, subset) in CONFIGS {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        let ws = weights(&p);
        for lam in &ws {
            let m = purely_quantum_matrix(&p, lam).unwrap();
            if !annihilates_unit(&p, &basis, &m).unwrap() {
                bad.push(format!("{name} {subset:?} {lam}: unit not annihilated"));
            }
        }
        let ops: Vec<_> = ws.iter().map(|l| quantum_matrix(&p, l).unwrap()).collect();
        for (a, x) in ops.iter().enumerate() {
            for y in &ops[a + 1..] {
                if !x.total().commutator(y.total()).is_zero() {
                    bad.push(format!(
                        "{name} {subset:?}: {} and {} do not commute",
                        x.weight(),
                        y.weight()
                    ));
                }
            }
        }
    }
    report(7, "unit annihilated, divisor operators commute", &bad);
}

#[test]
fn criterion_08_hecke_relations() {
    let mut bad = Vec::new();
    for name in ["A2", "B2"] {
        let rs = RootSystem::named(name).unwrap();
        let basis = monomial_basis(rs.rank(), 3);
        for f in &basis {
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let lam = Weight::fundamental(rs.rank(), j);
                    if !hecke_relation_holds(&rs, i, &lam, f).unwrap() {
                        bad.push(format!("{name} relation i={} {lam} on {f}", i + 1));
                    }
                }
            }
            for w in rs.weyl().ids() {
                if !word_independence(&rs, w, f).unwrap() {
                    bad.push(format!("{name} reduced words of {w:?} disagree on {f}"));
                }
            }
        }
    }
    report(8, "Hecke relation and reduced-word independence", &bad);
}

#[test]
fn criterion_09_conjugation() {
    let mut bad = Vec::new();
    for &(name, subset) in &CONFIGS[..4] {
        let p = par(name, subset);
        let basis = StableBasis::compute(&p).unwrap();
        for lam in weights(&p) {
            for f in invariant_basis(&p, 2) {
                if !crosscheck_conjugation(&p, &basis, &lam, &f).unwrap() {
                    bad.push(format!("{name} {subset:?} {lam} on {f}"));
                }
                if subset.is_empty()
                    && pcon_operator(&p, &lam, &f).unwrap()
                        != bmo_operator(p.root_system(), &lam, &f).unwrap()
                {
                    bad.push(format!("{name} Borel: pcon differs from bmo on {f}"));
                }
            }
        }
    }
    report(9, "conjugated operator matches the stable basis", &bad);
}

#[test]
fn criterion_10_uncorrected_scalar_differs() {
    let p = par("A3", &[0, 2]);
    let lam = Weight::fundamental(3, 1);
    let s = scalar_term(&p, &lam).unwrap().into_value();
    let plain = uncorrected_scalar(&p, &lam).unwrap();
    let mut bad = Vec::new();
    if s != parse_ratfunc("2*q2/(1-q2)").unwrap() {
        bad.push(format!("scalar {s}"));
    }
    if plain != parse_ratfunc("4*q2/(1-q2)").unwrap() {
        bad.push(format!("uncorrected {plain}"));
    }
    if s == plain {
        bad.push("scalars coincide".into());
    }
    report(10, "Gr(2,4) scalar differs from the uncorrected sum", &bad);
}
