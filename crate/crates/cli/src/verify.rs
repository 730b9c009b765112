//! The `verify` subcommand: every check the library offers for one
//! (type, parabolic) pair, grouped into numbered suites.

use quantstab_core::hecke::{
    apply_q_linear, bmo_operator, crosscheck_conjugation, hecke_relation_holds, invariant_basis,
    monomial_basis, pcon_operator, word_independence,
};
use quantstab_core::parabolic::Parabolic;
use quantstab_core::quantum::{
    annihilates_unit, classical_matrix, classical_matrix_oracle, minus_basis_check,
    purely_quantum_matrix, quantum_matrix, representative_independence, scalar_term,
    wp_antisymmetry_check,
};
use quantstab_core::rootsys::Weight;
use quantstab_core::stable::{
    check_diagonal_products, check_duality, check_mod_hsq, reduced_word_independence,
    verify_axioms, StableBasis,
};
use quantstab_core::Error as CoreError;
use serde_json::json;

use crate::config::JobConfig;
use crate::error::Result;
use crate::render::{align, Report};
use crate::tables;

pub struct Check {
    name: String,
    failure: Option<String>,
}

impl Check {
    fn new(
        name: impl Into<String>,
        outcome: std::result::Result<Option<String>, CoreError>,
    ) -> Check {
        let failure = match outcome {
            Ok(f) => f,
            Err(e) => Some(format!("error: {e}")),
        };
        Check {
            name: name.into(),
            failure,
        }
    }

    fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub struct Suite {
    pub code: i32,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(detail)
}

fn list_failures<T: std::fmt::Debug>(items: Vec<T>) -> Option<String> {
    expect(items.is_empty(), || format!("{items:?}"))
}

fn fundamental_weights(par: &Parabolic) -> Vec<Weight> {
    let rank = par.root_system().rank();
    par.outside()
        .iter()
        .map(|&i| Weight::fundamental(rank, i))
        .collect()
}

fn axioms(par: &Parabolic, basis: &StableBasis) -> Suite {
    let rs = par.root_system();
    let mut checks = vec![
        Check::new(
            "plus axioms",
            Ok(list_failures(verify_axioms(par, basis.plus()))),
        ),
        Check::new(
            "minus axioms",
            Ok(list_failures(verify_axioms(par, basis.minus()))),
        ),
        Check::new(
            "diagonal products",
            Ok(list_failures(check_diagonal_products(par, basis))),
        ),
        Check::new(
            "closed form mod h^2",
            check_mod_hsq(par, basis).map(list_failures),
        ),
        Check::new(
            "degree invariance under W_P",
            Ok(expect(par.degree_invariance_check(), String::new)),
        ),
    ];
    let words = rs
        .weyl()
        .ids()
        .map(|w| reduced_word_independence(rs, w).map(|ok| (w, ok)))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(|v| {
            list_failures(
                v.into_iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(w, _)| w)
                    .collect(),
            )
        });
    checks.push(Check::new("Borel rows independent of reduced word", words));
    Suite {
        code: 1,
        name: "axioms",
        checks,
    }
}

fn duality(par: &Parabolic, basis: &StableBasis) -> Suite {
    Suite {
        code: 2,
        name: "duality",
        checks: vec![Check::new(
            "plus and signed minus bases are dual",
            check_duality(par, basis).map(list_failures),
        )],
    }
}

fn classical(par: &Parabolic, basis: &StableBasis, weights: &[Weight]) -> Suite {
    let checks = weights
        .iter()
        .map(|lam| {
            let outcome = classical_matrix(par, lam).and_then(|m| {
                let oracle = classical_matrix_oracle(par, basis, lam)?;
                Ok(expect(m == oracle, || "matrices differ".into()))
            });
            Check::new(format!("classical matrix for {lam}"), outcome)
        })
        .collect();
    Suite {
        code: 3,
        name: "classical oracle",
        checks,
    }
}

fn quantum(par: &Parabolic, basis: &StableBasis, weights: &[Weight]) -> Suite {
    let mut checks = Vec::new();
    for lam in weights {
        checks.push(Check::new(
            format!("scalar term for {lam}"),
            scalar_term(par, lam).map(|_| None),
        ));
        checks.push(Check::new(
            format!("unit annihilated for {lam}"),
            purely_quantum_matrix(par, lam)
                .and_then(|m| annihilates_unit(par, basis, &m))
                .map(|ok| expect(ok, String::new)),
        ));
        checks.push(Check::new(
            format!("W_P antisymmetry for {lam}"),
            wp_antisymmetry_check(par, lam).map(|ok| expect(ok, String::new)),
        ));
        checks.push(Check::new(
            format!("coset element choice for {lam}"),
            representative_independence(par, lam).map(|ok| expect(ok, String::new)),
        ));
        checks.push(Check::new(
            format!("same formula in the minus basis for {lam}"),
            minus_basis_check(par, basis, lam).map(|ok| expect(ok, String::new)),
        ));
    }
    let ops = weights
        .iter()
        .map(|lam| quantum_matrix(par, lam))
        .collect::<std::result::Result<Vec<_>, _>>();
    let commute = ops.map(|ops| {
        let mut bad = Vec::new();
        for (i, a) in ops.iter().enumerate() {
            for b in &ops[i + 1..] {
                if !a.total().commutator(b.total()).is_zero() {
                    bad.push(format!("{} {}", a.weight(), b.weight()));
                }
            }
        }
        list_failures(bad)
    });
    checks.push(Check::new("divisor operators commute", commute));
    Suite {
        code: 4,
        name: "quantum properties",
        checks,
    }
}

fn hecke(par: &Parabolic, basis: &StableBasis, weights: &[Weight], degree: u32) -> Suite {
    let rs = par.root_system();
    let invariants = invariant_basis(par, degree);
    let monomials = monomial_basis(rs.rank(), degree);
    let mut checks = Vec::new();
    for lam in weights {
        let outcome = invariants
            .iter()
            .map(|f| crosscheck_conjugation(par, basis, lam, f).map(|ok| (f, ok)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(|v| {
                list_failures(
                    v.into_iter()
                        .filter(|(_, ok)| !ok)
                        .map(|(f, _)| f.to_string())
                        .collect(),
                )
            });
        checks.push(Check::new(
            format!("conjugation crosscheck for {lam}"),
            outcome,
        ));
        if par.subset().is_empty() {
            let outcome = monomials
                .iter()
                .map(|f| Ok((f, pcon_operator(par, lam, f)? == bmo_operator(rs, lam, f)?)))
                .collect::<std::result::Result<Vec<_>, CoreError>>()
                .map(|v| {
                    list_failures(
                        v.into_iter()
                            .filter(|(_, ok)| !ok)
                            .map(|(f, _)| f.to_string())
                            .collect(),
                    )
                });
            checks.push(Check::new(
                format!("conjugated operator equals bmo for {lam}"),
                outcome,
            ));
        }
    }
    let commute = (|| {
        let mut bad = Vec::new();
        for f in &invariants {
            for (i, a) in weights.iter().enumerate() {
                for b in &weights[i + 1..] {
                    let ab =
                        apply_q_linear(&pcon_operator(par, b, f)?, |g| pcon_operator(par, a, g))?;
                    let ba =
                        apply_q_linear(&pcon_operator(par, a, f)?, |g| pcon_operator(par, b, g))?;
                    if ab != ba {
                        bad.push(format!("{a} {b} on {f}"));
                    }
                }
            }
        }
        Ok(list_failures(bad))
    })();
    checks.push(Check::new("conjugated operators commute", commute));
    let relation = (|| {
        let mut bad = Vec::new();
        for f in &monomials {
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let lam = Weight::fundamental(rs.rank(), j);
                    if !hecke_relation_holds(rs, i, &lam, f)? {
                        bad.push(format!("s{} {lam} on {f}", i + 1));
                    }
                }
            }
        }
        Ok(list_failures(bad))
    })();
    checks.push(Check::new("Hecke relation", relation));
    let words = (|| {
        let mut bad = Vec::new();
        for w in rs.weyl().ids() {
            for f in &monomials {
                if !word_independence(rs, w, f)? {
                    bad.push(format!("{} on {f}", rs.weyl().element(w).word_string()));
                }
            }
        }
        Ok(list_failures(bad))
    })();
    checks.push(Check::new("reduced-word independence", words));
    Suite {
        code: 5,
        name: "hecke crosscheck",
        checks,
    }
}

/// All suites in order, and the exit code: 0, or the code of the first
/// failing suite.
pub fn run(cfg: &JobConfig) -> Result<(Report, i32)> {
    let par = cfg.parabolic()?;
    let basis = tables::load_or_compute(cfg, &par)?;
    let weights = fundamental_weights(&par);
    let degree = cfg.degree.unwrap_or(crate::config::DEFAULT_DEGREE);
    let suites = vec![
        axioms(&par, &basis),
        duality(&par, &basis),
        classical(&par, &basis, &weights),
        quantum(&par, &basis, &weights),
        hecke(&par, &basis, &weights, degree),
    ];
    let code = suites.iter().find(|s| !s.passed()).map_or(0, |s| s.code);
    Ok((report(&suites, code), code))
}

fn report(suites: &[Suite], code: i32) -> Report {
    let mut rows = Vec::new();
    let list: Vec<_> = suites
        .iter()
        .map(|s| {
            let checks: Vec<_> = s
                .checks
                .iter()
                .map(|c| {
                    rows.push(vec![
                        s.code.to_string(),
                        s.name.to_string(),
                        if c.passed() { "ok" } else { "FAIL" }.to_string(),
                        c.name.clone(),
                        c.failure.clone().unwrap_or_default(),
                    ]);
                    json!({ "name": c.name, "passed": c.passed(), "failure": c.failure })
                })
                .collect();
            json!({ "code": s.code, "name": s.name, "passed": s.passed(), "checks": checks })
        })
        .collect();
    Report {
        data: json!({ "passed": code == 0, "exit_code": code, "suites": list }),
        text: align(&rows),
    }
}
