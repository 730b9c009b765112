//! Polynomial representation of the graded affine Hecke algebra and the
//! divisor operators acting on `(Sym t*)^{W_P}[h]`.
//!
//! Inputs are polynomials in the root variables and `h`; Novikov variables
//! may appear and are treated as scalars.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::parabolic::Parabolic;
use crate::quantum::{classical_matrix, novikov_factor, novikov_parts, scalar_term, Matrix};
use crate::rootsys::{ElemId, RootSystem, Weight};
use crate::stable::{plus_coordinates_frac, StableBasis};
use crate::symfield::{poly_product, LinFrac, Monomial, Poly, RatFunc, Rational, Var};
use crate::Error;

fn h() -> Poly {
    Poly::var(Var::H)
}

/// `σ̃_i f = (h f + (α_i - h) σ_i f) / α_i`.
pub fn demazure_lusztig(rs: &RootSystem, i: usize, f: &Poly) -> Result<Poly, Error> {
    if i >= rs.rank() {
        return Err(Error::Domain(format!("no simple root {}", i + 1)));
    }
    let a = Poly::var(Var::A(i));
    let s = rs.act_poly(rs.weyl().simple(i), f);
    let num = &(&h() * f) + &(&(&a - &h()) * &s);
    num.div_exact(&a).ok_or_else(|| {
        Error::NotPolynomial(format!(
            "σ̃_{}({f}) has numerator {num} not divisible by a{}",
            i + 1,
            i + 1
        ))
    })
}

/// Composition `σ̃_{i_1} ⋯ σ̃_{i_l} f`, rightmost letter first.
pub fn dl_word(rs: &RootSystem, word: &[usize], f: &Poly) -> Result<Poly, Error> {
    let mut cur = f.clone();
    for &i in word.iter().rev() {
        cur = demazure_lusztig(rs, i, &cur)?;
    }
    Ok(cur)
}

/// `σ̃_α` for the `k`-th positive root, along a reduced word of `σ_α`.
/// A second reduced word, when one exists, must give the same result.
pub fn nonsimple_dl(rs: &RootSystem, k: usize, f: &Poly) -> Result<Poly, Error> {
    let g = rs.weyl();
    let s = rs.reflection(k);
    let out = dl_word(rs, g.word(s), f)?;
    if let Some(alt) = g.alternative_reduced_word(s) {
        if dl_word(rs, &alt, f)? != out {
            return Err(Error::Consistency(format!(
                "σ̃ for {} depends on the reduced word",
                rs.root(k)
            )));
        }
    }
    Ok(out)
}

/// Whether every reduced word of `w` gives the same composition on `f`.
pub fn word_independence(rs: &RootSystem, w: ElemId, f: &Poly) -> Result<bool, Error> {
    let words = rs.weyl().reduced_words(w);
    let first = dl_word(rs, &words[0], f)?;
    for word in &words[1..] {
        if dl_word(rs, word, f)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `σ̃_i x_λ f - x_{σ_i λ} σ̃_i f = h (α_i^∨, λ) f`.
pub fn hecke_relation_holds(
    rs: &RootSystem,
    i: usize,
    lam: &Weight,
    f: &Poly,
) -> Result<bool, Error> {
    let x = rs.weight_form(lam);
    let sx = rs.weight_form(&rs.simple_reflect_weight(i, lam));
    let lhs = &demazure_lusztig(rs, i, &(&x * f))? - &(&sx * &demazure_lusztig(rs, i, f)?);
    let rhs = (&h() * f).scale(&lam.coords()[i]);
    Ok(lhs == rhs)
}

/// `q^{α^∨} / (1 - q^{α^∨})` for the `k`-th positive root.
fn coroot_factor(rs: &RootSystem, k: usize) -> Result<RatFunc, Error> {
    let mut m = Monomial::ONE;
    for (i, &d) in rs.coroot(k).iter().enumerate() {
        m = m.with_exponent(Var::Q(i), d as u16);
    }
    let q = Poly::monomial(m, Rational::one());
    RatFunc::new(q.clone(), &Poly::one() - &q)
}

/// `x_λ + h Σ_{α>0} (λ,α^∨) q^{α^∨}/(1-q^{α^∨}) (σ̃_α - 1)` applied to `f`.
pub fn bmo_operator(rs: &RootSystem, lam: &Weight, f: &Poly) -> Result<RatFunc, Error> {
    let mut terms = alloc::vec![RatFunc::from_poly(&rs.weight_form(lam) * f)];
    for k in 0..rs.num_positive() {
        let p = rs.pairing_positive(lam, k);
        if p.is_zero() {
            continue;
        }
        let diff = &nonsimple_dl(rs, k, f)? - f;
        terms.push(coroot_factor(rs, k)?.mul_poly(&(&h() * &diff).scale(&p)));
    }
    Ok(RatFunc::sum(&terms))
}

/// Whether `σ_i f = f` for every `i ∈ I`.
pub fn is_wp_invariant(par: &Parabolic, f: &RatFunc) -> bool {
    let rs = par.root_system();
    par.subset()
        .iter()
        .all(|&i| rs.act_ratfunc(rs.weyl().simple(i), f) == *f)
}

/// `∏_{β∈R_P^+} (β - h)`.
pub fn conjugating_factor(par: &Parabolic) -> Poly {
    let rs = par.root_system();
    let factors: Vec<Poly> = par
        .rp_plus()
        .iter()
        .map(|&k| &rs.root(k).form() - &h())
        .collect();
    poly_product(&factors)
}

/// `λf + h Σ_{α∈R^+\R_P^+} (λ,α^∨) q^{d(α)}/(1-q^{d(α)})
/// (σ̃_α(fΠ)/Π - ∏σ_αβ/∏β f)` with `Π = ∏_{β∈R_P^+}(β - h)`.
///
/// `σ̃_α(fΠ)` need not be divisible by `Π` root by root; the sum over each
/// degree class is, and that is asserted. The correction is the scalar term.
pub fn pcon_operator(par: &Parabolic, lam: &Weight, f: &Poly) -> Result<RatFunc, Error> {
    par.check_weight(lam)?;
    if !is_wp_invariant(par, &RatFunc::from_poly(f.clone())) {
        return Err(Error::Domain(format!("{f} is not W_P-invariant")));
    }
    let rs = par.root_system();
    let pi = conjugating_factor(par);
    let fpi = f * &pi;
    let scalar = scalar_term(par, lam)?;
    let mut terms = alloc::vec![
        RatFunc::from_poly(&rs.weight_form(lam) * f),
        -&(scalar.value().mul_poly(&(&h() * f))),
    ];
    for class in par.degree_classes() {
        let p = rs.pairing_positive(lam, class.roots[0]);
        if p.is_zero() {
            continue;
        }
        let mut sum = Poly::zero();
        for &k in &class.roots {
            sum += &nonsimple_dl(rs, k, &fpi)?;
        }
        let quotient = sum.div_exact(&pi).ok_or_else(|| {
            Error::Consistency(format!(
                "σ̃(fΠ) summed over the degree class {} is not divisible by Π",
                class.degree
            ))
        })?;
        terms.push(novikov_factor(par, class.roots[0])?.mul_poly(&(&h() * &quotient).scale(&p)));
    }
    let out = RatFunc::sum(&terms);
    if !is_wp_invariant(par, &out) {
        return Err(Error::Consistency(format!(
            "pcon output {out} is not W_P-invariant"
        )));
    }
    Ok(out)
}

/// Applies a polynomial operator, linear over the Novikov variables, to a
/// rational function whose denominator involves only Novikov variables.
pub fn apply_q_linear(
    f: &RatFunc,
    op: impl Fn(&Poly) -> Result<RatFunc, Error>,
) -> Result<RatFunc, Error> {
    let den = f.denom();
    if !den.is_free_of_roots() || den.contains_var(Var::H) {
        return Err(Error::Domain(format!(
            "{f} has a denominator outside the Novikov variables"
        )));
    }
    let image = op(f.numer())?;
    image.checked_div(&RatFunc::from_poly(den.clone()))
}

/// Restriction at the base point of `D_λ * γ`, computed through the quantum
/// matrix, where `γ|_w̄ = w(f)`.
///
/// The operator is applied piece by piece (classical part, scalar diagonal,
/// one rational matrix per degree class) and the Novikov factors are
/// attached at the end.
pub fn quantum_route_at_base(
    par: &Parabolic,
    basis: &StableBasis,
    lam: &Weight,
    f: &Poly,
) -> Result<RatFunc, Error> {
    let rs = par.root_system();
    let n = par.num_cosets();
    let restr: Vec<Poly> = (0..n).map(|z| rs.act_poly(par.rep(z), f)).collect();
    let coords = plus_coordinates_frac(par, basis, &restr)?;
    let base = par.coset_of(ElemId::IDENTITY);
    // Σ_y stab_+(ȳ)|_1̄ (M v)_y = Σ_k (Σ_y stab_+(ȳ)|_1̄ M_yk) v_k
    let at_base = |entry: &dyn Fn(usize, usize) -> Poly| -> Result<Poly, Error> {
        let mut terms = Vec::new();
        for k in 0..n {
            let mut r = Poly::zero();
            for y in 0..n {
                let b = basis.plus().get(y, base);
                if !b.is_zero() {
                    r += &(b * &entry(y, k));
                }
            }
            if !r.is_zero() {
                terms.push(coords[k].clone().mul_poly(&r));
            }
        }
        LinFrac::sum(&terms).into_poly()
    };
    if at_base(&|y, k| if y == k { Poly::one() } else { Poly::zero() })? != *f {
        return Err(Error::Consistency(format!(
            "coordinates of {f} do not restrict back"
        )));
    }
    let classical = classical_matrix(par, lam)?;
    let classical = at_base(&|y, k| classical.get(y, k).as_poly().cloned().unwrap_or_default())?;
    let parts = novikov_parts(par, lam)?;
    let minus_h = -h();
    let mut terms = alloc::vec![
        RatFunc::from_poly(classical),
        parts.scalar.value().mul_poly(&(&minus_h * f)),
    ];
    for (q, a) in &parts.parts {
        let piece = at_base(&|y, k| constant_entry(a, y, k))?;
        terms.push(q.mul_poly(&(&minus_h * &piece)));
    }
    Ok(RatFunc::sum(&terms))
}

fn constant_entry(m: &Matrix, row: usize, col: usize) -> Poly {
    m.get(row, col).as_poly().cloned().unwrap_or_default()
}

/// Whether the quantum matrix and the conjugated operator agree on `f`.
pub fn crosscheck_conjugation(
    par: &Parabolic,
    basis: &StableBasis,
    lam: &Weight,
    f: &Poly,
) -> Result<bool, Error> {
    Ok(quantum_route_at_base(par, basis, lam, f)? == pcon_operator(par, lam, f)?)
}

/// Monomials in the root variables of total degree at most `max_degree`.
pub fn monomial_basis(rank: usize, max_degree: u32) -> Vec<Poly> {
    let mut out = alloc::vec![Monomial::ONE];
    let mut layer = alloc::vec![Monomial::ONE];
    for _ in 0..max_degree {
        let mut next = BTreeSet::new();
        for m in &layer {
            for i in 0..rank {
                next.insert(m.mul(&Monomial::var(Var::A(i), 1)));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter()
        .map(|m| Poly::monomial(m, Rational::one()))
        .collect()
}

/// Distinct nonzero `W_P`-orbit sums of the monomials of degree at most
/// `max_degree`, normalized.
pub fn invariant_basis(par: &Parabolic, max_degree: u32) -> Vec<Poly> {
    let rs = par.root_system();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in monomial_basis(rs.rank(), max_degree) {
        let mut sum = Poly::zero();
        for &u in par.wp() {
            sum += &rs.act_poly(u, &m);
        }
        if sum.is_zero() {
            continue;
        }
        let sum = sum.normalized();
        if seen.insert(sum.clone()) {
            out.push(sum);
        }
    }
    out
}

#[cfg(test)]
mod tests;
