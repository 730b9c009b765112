use alloc::vec::Vec;

use num_traits::One;

use super::{
    borel_row_for_word, dim_sign, euler_normal_minus, is_h_divisible, over_euler, Chamber,
    RestrictionTable, StableBasis,
};
use crate::parabolic::Parabolic;
use crate::rootsys::{ElemId, Root, RootSystem};
use crate::symfield::{poly_product, LinFrac, Poly, RatFunc, Rational, Var};
use crate::Error;

/// A failed stable-envelope axiom at `stab(class)|_point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Nonzero restriction outside the allowed Bruhat interval.
    Support { class: usize, point: usize },
    /// Diagonal entry differs from `±e(N_-)`.
    Diagonal { class: usize },
    /// Off-diagonal entry not divisible by `h`.
    HDivisibility { class: usize, point: usize },
}

/// Support, normalization and `h`-divisibility of a table.
///
/// Plus tables are supported on `point ≤ class`, minus tables on
/// `point ≥ class`.
pub fn verify_axioms(par: &Parabolic, table: &RestrictionTable) -> Vec<Violation> {
    let n = par.num_cosets();
    let mut out = Vec::new();
    for class in 0..n {
        for point in 0..n {
            let v = table.get(class, point);
            if class == point {
                if *v != euler_normal_minus(par, class, table.chamber()) {
                    out.push(Violation::Diagonal { class });
                }
                continue;
            }
            let allowed = match table.chamber() {
                Chamber::Plus => par.coset_leq(point, class),
                Chamber::Minus => par.coset_leq(class, point),
            };
            if !v.is_zero() && !allowed {
                out.push(Violation::Support { class, point });
            }
            if !is_h_divisible(v) {
                out.push(Violation::HDivisibility { class, point });
            }
        }
    }
    out
}

/// Pairs `(y, w)` where `(stab_+(ȳ), (-1)^m stab_-(w̄)) ≠ δ_{yw}`.
pub fn check_duality(par: &Parabolic, basis: &StableBasis) -> Result<Vec<(usize, usize)>, Error> {
    let n = par.num_cosets();
    let sign = dim_sign(par);
    let mut bad = Vec::new();
    for y in 0..n {
        let mut scaled = Vec::with_capacity(n);
        for z in 0..n {
            let p = basis.plus().get(y, z);
            scaled.push(if p.is_zero() {
                LinFrac::zero()
            } else {
                over_euler(par, p, z)?
            });
        }
        for w in 0..n {
            let terms: Vec<LinFrac> = (0..n)
                .filter(|&z| !scaled[z].is_zero() && !basis.minus().get(w, z).is_zero())
                .map(|z| {
                    scaled[z]
                        .clone()
                        .mul_poly(&basis.minus().get(w, z).scale(&sign))
                })
                .collect();
            let v = LinFrac::sum(&terms).into_ratfunc();
            let expect = if y == w {
                RatFunc::one()
            } else {
                RatFunc::zero()
            };
            if v != expect {
                bad.push((y, w));
            }
        }
    }
    Ok(bad)
}

/// Points where `stab_+(ȳ)|_ȳ · stab_-(ȳ)|_ȳ ≠ (-1)^m e(T_ȳ X)`.
pub fn check_diagonal_products(par: &Parabolic, basis: &StableBasis) -> Vec<usize> {
    let sign = dim_sign(par);
    (0..par.num_cosets())
        .filter(|&y| {
            let lhs = basis.plus().get(y, y) * basis.minus().get(y, y);
            lhs != basis.euler()[y].scale(&sign)
        })
        .collect()
}

/// Closed form of `stab(class)|_point` modulo `h^2`.
///
/// Off the diagonal, with `y` the minimal representative of `class` (plus)
/// or of `point` (minus), the sum runs over `β ∈ R^+` with `yβ < 0` and
/// `y σ_β` in the other coset:
/// `(-1)^{l(y)+1} h ∏_{R^+} α / (yβ ∏_{R_P^+} x α)` with `x = y σ_β` in the
/// plus chamber and `x = y` in the minus chamber. On the diagonal it is the
/// truncation of `±e(N_-)`.
pub fn mod_hsq_closed_form(
    par: &Parabolic,
    chamber: Chamber,
    class: usize,
    point: usize,
) -> Result<Poly, Error> {
    if class == point {
        return Ok(euler_normal_minus(par, class, chamber).truncate_in(Var::H, 1));
    }
    let rs = par.root_system();
    let g = rs.weyl();
    let (yc, other) = match chamber {
        Chamber::Plus => (class, point),
        Chamber::Minus => (point, class),
    };
    let y = par.rep(yc);
    let sign = if g.length(y) % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let h = Poly::var(Var::H);
    let mut acc = LinFrac::zero();
    for k in 0..rs.num_positive() {
        let yb = rs.act_positive(y, k);
        if !yb.is_negative() {
            continue;
        }
        let ys = g.mul(y, rs.reflection(k));
        if par.coset_of(ys) != other {
            continue;
        }
        let x = match chamber {
            Chamber::Plus => ys,
            Chamber::Minus => y,
        };
        let mut t = LinFrac::from_poly(h.scale(&sign)).div_linear(&yb.form())?;
        for &j in par.rp_plus() {
            t = t.div_linear(&rs.act_positive(x, j).form())?;
        }
        for a in rs.positive_roots() {
            t = t.mul_linear(&a.form());
        }
        acc.add_assign(&t);
    }
    acc.into_poly()
}

/// Entries where the closed form disagrees with the truncated table.
pub fn check_mod_hsq(
    par: &Parabolic,
    basis: &StableBasis,
) -> Result<Vec<(Chamber, usize, usize)>, Error> {
    let n = par.num_cosets();
    let mut bad = Vec::new();
    for chamber in [Chamber::Plus, Chamber::Minus] {
        let table = basis.table(chamber);
        for class in 0..n {
            for point in 0..n {
                let closed = mod_hsq_closed_form(par, chamber, class, point)?;
                if closed != table.get(class, point).truncate_in(Var::H, 1) {
                    bad.push((chamber, class, point));
                }
            }
        }
    }
    Ok(bad)
}

/// Whether the subword expansion of `y` agrees on its canonical word and
/// one other reduced word. Vacuously true with a single reduced word.
pub fn reduced_word_independence(rs: &RootSystem, y: ElemId) -> Result<bool, Error> {
    let Some(alt) = rs.weyl().alternative_reduced_word(y) else {
        return Ok(true);
    };
    let a = borel_row_for_word(rs, rs.weyl().word(y))?;
    let b = borel_row_for_word(rs, &alt)?;
    Ok(a == b)
}

/// For an arbitrary word `w = σ_{i_1}...σ_{i_k}`, checks
/// `∏_j (p_{j-1} α_{i_j} - h)/(p_j α_{i_j} - h) = ∏_{γ>0} (γ - h) / ∏_{γ>0} (wγ - h)`
/// with `p_j = σ_{i_1}...σ_{i_j}`.
pub fn cotangent_lemma_holds(rs: &RootSystem, word: &[usize]) -> Result<bool, Error> {
    let g = rs.weyl();
    let h = Poly::var(Var::H);
    let mut lhs = LinFrac::one();
    let mut prefix = ElemId::IDENTITY;
    for &i in word {
        let simple = Root::simple(rs.rank(), i);
        let before = rs.act_root(prefix, &simple).form();
        prefix = g.right_simple(prefix, i);
        let after = rs.act_root(prefix, &simple).form();
        lhs = lhs.mul_linear(&(&before - &h)).div_linear(&(&after - &h))?;
    }
    let w = g.from_word(word)?;
    for k in 0..rs.num_positive() {
        lhs = lhs.mul_linear(&(&rs.act_positive(w, k).form() - &h));
    }
    let rhs: Vec<Poly> = rs.positive_roots().iter().map(|a| &a.form() - &h).collect();
    Ok(match lhs.into_poly() {
        Ok(p) => p == poly_product(&rhs),
        Err(_) => false,
    })
}
