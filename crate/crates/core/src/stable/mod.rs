//! Stable-basis restrictions to torus-fixed points of `T*(G/P)`.
//!
//! Fixed points are indexed by cosets of `W/W_P` (positions in
//! [`Parabolic::representatives`]). Tables store `stab(class)|_point` as
//! polynomials in the root variables and `h`.

mod borel;
mod checks;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::parabolic::Parabolic;
use crate::rootsys::ElemId;
use crate::symfield::{poly_product, LinFrac, Poly, RatFunc, Rational, Var};
use crate::Error;

pub use borel::{borel_row, borel_row_for_word, stab_plus_borel};
pub use checks::{
    check_diagonal_products, check_duality, check_mod_hsq, cotangent_lemma_holds,
    mod_hsq_closed_form, reduced_word_independence, verify_axioms, Violation,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chamber {
    Plus,
    Minus,
}

impl Chamber {
    pub fn name(self) -> &'static str {
        match self {
            Chamber::Plus => "plus",
            Chamber::Minus => "minus",
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Square table `entries[class][point] = stab(class)|_point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTable {
    chamber: Chamber,
    entries: Vec<Vec<Poly>>,
}

impl RestrictionTable {
    pub fn new(chamber: Chamber, entries: Vec<Vec<Poly>>) -> Result<RestrictionTable, Error> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("restriction table is not square".into()));
        }
        Ok(RestrictionTable { chamber, entries })
    }

    pub fn chamber(&self) -> Chamber {
        self.chamber
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, class: usize, point: usize) -> &Poly {
        &self.entries[class][point]
    }

    pub fn set(&mut self, class: usize, point: usize, value: Poly) {
        self.entries[class][point] = value;
    }

    /// Restrictions of one class to every fixed point.
    pub fn class(&self, class: usize) -> &[Poly] {
        &self.entries[class]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }
}

/// Plus and minus tables of one parabolic, with tangent Euler classes.
#[derive(Clone, Debug)]
pub struct StableBasis {
    plus: RestrictionTable,
    minus: RestrictionTable,
    euler: Vec<Poly>,
}

impl StableBasis {
    pub fn compute(par: &Parabolic) -> Result<StableBasis, Error> {
        let plus = plus_table(par)?;
        let minus = minus_table(par, &plus)?;
        StableBasis::from_tables(par, plus, minus)
    }

    /// Wraps tables obtained elsewhere (a cache file, for instance).
    pub fn from_tables(
        par: &Parabolic,
        plus: RestrictionTable,
        minus: RestrictionTable,
    ) -> Result<StableBasis, Error> {
        let n = par.num_cosets();
        if plus.size() != n || minus.size() != n {
            return Err(Error::Domain(format!(
                "table size does not match the {n} fixed points"
            )));
        }
        if plus.chamber() != Chamber::Plus || minus.chamber() != Chamber::Minus {
            return Err(Error::Domain("tables given in the wrong chambers".into()));
        }
        let euler = (0..n).map(|c| euler_tangent(par, c)).collect();
        Ok(StableBasis { plus, minus, euler })
    }

    pub fn plus(&self) -> &RestrictionTable {
        &self.plus
    }

    pub fn minus(&self) -> &RestrictionTable {
        &self.minus
    }

    pub fn table(&self, chamber: Chamber) -> &RestrictionTable {
        match chamber {
            Chamber::Plus => &self.plus,
            Chamber::Minus => &self.minus,
        }
    }

    /// `e(T_z̄ X)` at every fixed point.
    pub fn euler(&self) -> &[Poly] {
        &self.euler
    }
}

fn h() -> Poly {
    Poly::var(Var::H)
}

/// Linear forms `yγ`, `γ ∈ R^+ \ R_P^+`, at the fixed point `c`.
fn moved_roots(par: &Parabolic, c: usize) -> Vec<(Poly, bool)> {
    let rs = par.root_system();
    let y = par.rep(c);
    par.complement()
        .iter()
        .map(|&k| {
            let r = rs.act_positive(y, k);
            (r.form(), r.is_positive())
        })
        .collect()
}

/// Factors `(-yγ)` and `(yγ - h)` of the tangent Euler class.
pub fn euler_tangent_factors(par: &Parabolic, c: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(2 * par.dim());
    for (f, _) in moved_roots(par, c) {
        out.push(-&f);
        out.push(&f - &h());
    }
    out
}

/// `e(T_ȳ X) = ∏ (-yγ)(yγ - h)` over `γ ∈ R^+ \ R_P^+`.
pub fn euler_tangent(par: &Parabolic, c: usize) -> Poly {
    poly_product(&euler_tangent_factors(par, c))
}

/// `ε_ȳ = ∏ yγ` over `γ ∈ R^+ \ R_P^+`.
pub fn epsilon(par: &Parabolic, c: usize) -> Poly {
    let forms: Vec<Poly> = moved_roots(par, c).into_iter().map(|(f, _)| f).collect();
    poly_product(&forms)
}

/// Sign and factors of `±e(N_{-,ȳ})`, the sign chosen so that `h = 0`
/// gives `ε_ȳ`.
pub fn normal_minus_factors(par: &Parabolic, c: usize, chamber: Chamber) -> (Rational, Vec<Poly>) {
    let mut negations = 0usize;
    let factors = moved_roots(par, c)
        .into_iter()
        .map(|(f, pos)| {
            let repelling = match chamber {
                Chamber::Plus => pos,
                Chamber::Minus => !pos,
            };
            if repelling {
                negations += 1;
                -&f
            } else {
                &f - &h()
            }
        })
        .collect();
    let sign = if negations.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    (sign, factors)
}

/// `±e(N_{-,ȳ})`: the diagonal entry of the stable basis in `chamber`.
pub fn euler_normal_minus(par: &Parabolic, c: usize, chamber: Chamber) -> Poly {
    let (sign, factors) = normal_minus_factors(par, c, chamber);
    poly_product(&factors).scale(&sign)
}

/// `∏_{α∈R_P^+} zα` as linear forms.
fn rp_images(par: &Parabolic, z: ElemId) -> Vec<Poly> {
    let rs = par.root_system();
    par.rp_plus()
        .iter()
        .map(|&k| rs.act_positive(z, k).form())
        .collect()
}

/// `stab_+(ȳ)|_w̄ = Σ_{z ∈ w̄} stab_+(y)|_z / ∏_{α∈R_P^+} zα` for all `w̄`.
pub fn plus_row(par: &Parabolic, class: usize) -> Result<Vec<Poly>, Error> {
    let y = par.rep(class);
    let row = borel_row(par.root_system(), y)?;
    let mut acc: Vec<LinFrac> = vec![LinFrac::zero(); par.num_cosets()];
    for (z, value) in row {
        let mut t = LinFrac::from_poly(value);
        for f in rp_images(par, z) {
            t = t.div_linear(&f)?;
        }
        acc[par.coset_of(z)].add_assign(&t);
    }
    acc.into_iter()
        .enumerate()
        .map(|(w, x)| {
            x.into_poly().map_err(|e| {
                Error::Consistency(format!(
                    "stab+({})|_{} is not polynomial: {e}",
                    par.coset_label(class),
                    par.coset_label(w)
                ))
            })
        })
        .collect()
}

pub fn plus_table(par: &Parabolic) -> Result<RestrictionTable, Error> {
    let entries = (0..par.num_cosets())
        .map(|c| plus_row(par, c))
        .collect::<Result<Vec<_>, _>>()?;
    RestrictionTable::new(Chamber::Plus, entries)
}

/// The minus table dual to `plus` under the localization pairing.
///
/// Solves `Σ_u M[z][u] (-1)^m N[w][u] / e_u = δ_{zw}` by forward
/// substitution, `M` being lower triangular in the (length, word) order.
pub fn minus_table(par: &Parabolic, plus: &RestrictionTable) -> Result<RestrictionTable, Error> {
    let n = par.num_cosets();
    let sign = if par.dim().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    for z in 0..n {
        for u in z + 1..n {
            if !plus.get(z, u).is_zero() {
                return Err(Error::Consistency(format!(
                    "plus table not triangular at ({}, {})",
                    par.coset_label(z),
                    par.coset_label(u)
                )));
            }
        }
    }
    let tangent: Vec<Vec<Poly>> = (0..n).map(|c| euler_tangent_factors(par, c)).collect();
    // e_z / M[z][z], a polynomial.
    let cofactor: Vec<Poly> = (0..n)
        .map(|z| {
            poly_product(&tangent[z])
                .div_exact(plus.get(z, z))
                .ok_or_else(|| {
                    Error::Consistency(format!(
                        "diagonal of stab+({}) does not divide the tangent Euler class",
                        par.coset_label(z)
                    ))
                })
        })
        .collect::<Result<_, _>>()?;
    let mut entries = vec![vec![Poly::zero(); n]; n];
    for w in 0..n {
        // x[u] = (-1)^m N[w][u] / e_u, reduced.
        let mut x: Vec<LinFrac> = vec![LinFrac::zero(); n];
        for z in w..n {
            let mut terms = Vec::with_capacity(z - w + 1);
            if z == w {
                terms.push(LinFrac::one());
            }
            for u in w..z {
                let m = plus.get(z, u);
                if m.is_zero() || x[u].is_zero() {
                    continue;
                }
                terms.push(x[u].clone().mul_poly(m).scale(&-Rational::one()));
            }
            let value = LinFrac::sum(&terms).mul_poly(&cofactor[z]).scale(&sign);
            let value = value.into_poly().map_err(|e| {
                Error::Consistency(format!(
                    "stab-({})|_{} is not polynomial: {e}",
                    par.coset_label(w),
                    par.coset_label(z)
                ))
            })?;
            let mut t = LinFrac::from_poly(value.scale(&sign));
            for f in &tangent[z] {
                t = t.div_linear(f)?;
            }
            x[z] = t.reduced();
            entries[w][z] = value;
        }
    }
    RestrictionTable::new(Chamber::Minus, entries)
}

/// Localization pairing `Σ_z̄ c1|_z̄ c2|_z̄ / e(T_z̄ X)`.
pub fn pairing(par: &Parabolic, c1: &[Poly], c2: &[Poly]) -> Result<RatFunc, Error> {
    let n = par.num_cosets();
    if c1.len() != n || c2.len() != n {
        return Err(Error::Domain(format!("classes must have {n} restrictions")));
    }
    let mut terms = Vec::new();
    for z in 0..n {
        if c1[z].is_zero() || c2[z].is_zero() {
            continue;
        }
        terms.push(over_euler(par, &c1[z], z)?.mul_poly(&c2[z]));
    }
    Ok(LinFrac::sum(&terms).into_ratfunc())
}

/// `p / e(T_z X)`, reduced.
pub(crate) fn over_euler(par: &Parabolic, p: &Poly, z: usize) -> Result<LinFrac, Error> {
    let mut t = LinFrac::from_poly(p.clone());
    for f in euler_tangent_factors(par, z) {
        t = t.div_linear(&f)?;
    }
    Ok(t.reduced())
}

/// Coordinates of the class with the given restrictions in the plus basis:
/// `c_w̄ = (γ, (-1)^m stab_-(w̄))`.
pub fn plus_coordinates(
    par: &Parabolic,
    basis: &StableBasis,
    restrictions: &[Poly],
) -> Result<Vec<RatFunc>, Error> {
    Ok(plus_coordinates_frac(par, basis, restrictions)?
        .into_iter()
        .map(LinFrac::into_ratfunc)
        .collect())
}

/// [`plus_coordinates`] with denominators kept as products of linear forms.
pub fn plus_coordinates_frac(
    par: &Parabolic,
    basis: &StableBasis,
    restrictions: &[Poly],
) -> Result<Vec<LinFrac>, Error> {
    let n = par.num_cosets();
    if restrictions.len() != n {
        return Err(Error::Domain(format!("classes must have {n} restrictions")));
    }
    let sign = dim_sign(par);
    (0..n)
        .map(|w| {
            let mut terms = Vec::new();
            for z in 0..n {
                let m = basis.minus().get(w, z);
                if m.is_zero() || restrictions[z].is_zero() {
                    continue;
                }
                terms.push(over_euler(par, &m.scale(&sign), z)?.mul_poly(&restrictions[z]));
            }
            Ok(LinFrac::sum(&terms).reduced())
        })
        .collect()
}

/// `(-1)^m` as a rational.
pub fn dim_sign(par: &Parabolic) -> Rational {
    if par.dim().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub(crate) fn is_h_divisible(p: &Poly) -> bool {
    p.at_zero(Var::H).is_zero()
}

#[cfg(test)]
mod tests;
