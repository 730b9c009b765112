//! Quantum multiplication by divisors `D_λ` in the plus stable basis.
//!
//! Matrices are indexed by fixed points in representative order; column
//! `ȳ` holds the coordinates of `D_λ * stab_+(ȳ)`.

mod matrix;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::parabolic::Parabolic;
use crate::rootsys::{ElemId, Root, Weight};
use crate::stable::{plus_coordinates, plus_coordinates_frac, StableBasis};
use crate::symfield::{poly_product, LinFrac, Poly, RatFunc, Rational, Var};
use crate::Error;

pub use matrix::Matrix;

fn h() -> Poly {
    Poly::var(Var::H)
}

/// Classical, purely quantum and total matrices of `D_λ *`.
#[derive(Clone, Debug)]
pub struct DivisorOperator {
    lam: Weight,
    classical: Matrix,
    purely_quantum: Matrix,
    total: Matrix,
}

impl DivisorOperator {
    pub fn weight(&self) -> &Weight {
        &self.lam
    }

    pub fn classical(&self) -> &Matrix {
        &self.classical
    }

    pub fn purely_quantum(&self) -> &Matrix {
        &self.purely_quantum
    }

    pub fn total(&self) -> &Matrix {
        &self.total
    }
}

/// The diagonal scalar `Σ (λ,α^∨) q^{d(α)}/(1-q^{d(α)}) ∏σ_αβ/∏β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarTerm {
    value: RatFunc,
}

impl ScalarTerm {
    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn into_value(self) -> RatFunc {
        self.value
    }
}

/// `q^{d(α)} / (1 - q^{d(α)})` for the `k`-th positive root.
pub fn novikov_factor(par: &Parabolic, k: usize) -> Result<RatFunc, Error> {
    let m = par.novikov_monomial(&par.degree_of(k)?);
    let q = Poly::monomial(m, Rational::one());
    RatFunc::new(q.clone(), &Poly::one() - &q)
}

/// `y(λ)` as a linear form, for `y` any element of the coset.
pub fn weight_at(par: &Parabolic, y: ElemId, lam: &Weight) -> Poly {
    let rs = par.root_system();
    rs.weight_form(&rs.act_weight(y, lam))
}

/// Numerator and denominator of `∏_{β∈R_P^+} σ_α β / ∏_{β∈R_P^+} β`.
fn rp_ratio(par: &Parabolic, k: usize) -> (Poly, Poly) {
    let rs = par.root_system();
    let s = rs.reflection(k);
    let num: Vec<Poly> = par
        .rp_plus()
        .iter()
        .map(|&j| rs.act_positive(s, j).form())
        .collect();
    let den: Vec<Poly> = par.rp_plus().iter().map(|&j| rs.root(j).form()).collect();
    (poly_product(&num), poly_product(&den))
}

/// `D_λ ∪ stab_+(ȳ) = y(λ) stab_+(ȳ) - h Σ_{α>0, yα<0} (λ,α^∨) stab_+(yσ_α)`.
pub fn classical_matrix(par: &Parabolic, lam: &Weight) -> Result<Matrix, Error> {
    par.check_weight(lam)?;
    let rs = par.root_system();
    let g = rs.weyl();
    let n = par.num_cosets();
    let mut m = Matrix::zeros(n);
    for c in 0..n {
        let y = par.rep(c);
        m.set(c, c, RatFunc::from_poly(weight_at(par, y, lam)));
        for k in rs.inversions(y) {
            let p = rs.pairing_positive(lam, k);
            if p.is_zero() {
                continue;
            }
            let row = par.coset_of(g.mul(y, rs.reflection(k)));
            m.add_at(row, c, &RatFunc::from_poly(h().scale(&-p)));
        }
    }
    Ok(m)
}

/// Classical matrix by localization: entry `(w̄, ȳ)` is
/// `(D_λ ∪ stab_+(ȳ), (-1)^m stab_-(w̄))` with `D_λ|_z̄ = z(λ)`.
pub fn classical_matrix_oracle(
    par: &Parabolic,
    basis: &StableBasis,
    lam: &Weight,
) -> Result<Matrix, Error> {
    par.check_weight(lam)?;
    let n = par.num_cosets();
    let values: Vec<Poly> = (0..n).map(|z| weight_at(par, par.rep(z), lam)).collect();
    let mut m = Matrix::zeros(n);
    for y in 0..n {
        let restr: Vec<Poly> = (0..n)
            .map(|z| &values[z] * basis.plus().get(y, z))
            .collect();
        for (w, v) in plus_coordinates(par, basis, &restr)?
            .into_iter()
            .enumerate()
        {
            m.set(w, y, v);
        }
    }
    Ok(m)
}

/// `C_P(α) = Σ_{α'∼α} ∏σ_{α'}β / ∏β`, the sum over roots of the same degree.
pub fn c_p_constant(par: &Parabolic, class_rep: &Root) -> Result<Rational, Error> {
    let rs = par.root_system();
    let k = rs
        .positive_index(class_rep)
        .ok_or_else(|| Error::Domain(format!("{class_rep} is not a positive root")))?;
    let d = par.degree_of(k)?;
    let mut terms = Vec::new();
    for &j in par.complement() {
        if par.degree_of(j)? != d {
            continue;
        }
        let (num, _) = rp_ratio(par, j);
        let mut t = LinFrac::from_poly(num);
        for &b in par.rp_plus() {
            t = t.div_linear(&rs.root(b).form())?;
        }
        terms.push(t);
    }
    let v = LinFrac::sum(&terms).into_ratfunc();
    v.constant_value()
        .ok_or_else(|| Error::Consistency(format!("C_P({class_rep}) = {v} is not a constant")))
}

/// The diagonal scalar, summed root by root and checked against the
/// decomposition over degree classes `Σ (λ,α^∨) q^d/(1-q^d) C_P(α)`.
pub fn scalar_term(par: &Parabolic, lam: &Weight) -> Result<ScalarTerm, Error> {
    par.check_weight(lam)?;
    let rs = par.root_system();
    let mut direct = Vec::new();
    for &k in par.complement() {
        let p = rs.pairing_positive(lam, k);
        if p.is_zero() {
            continue;
        }
        let (num, den) = rp_ratio(par, k);
        let ratio = RatFunc::new(num, den)?;
        direct.push(&novikov_factor(par, k)?.scale(&p) * &ratio);
    }
    let value = RatFunc::sum(&direct);
    if !value.is_free_of_roots() {
        return Err(Error::Consistency(format!(
            "scalar term {value} depends on the root variables"
        )));
    }
    let mut by_class = Vec::new();
    for class in par.degree_classes() {
        let k = class.roots[0];
        let p = rs.pairing_positive(lam, k);
        if p.is_zero() {
            continue;
        }
        let c = c_p_constant(par, rs.root(k))?;
        by_class.push(novikov_factor(par, k)?.scale(&(p * c)));
    }
    let decomposed = RatFunc::sum(&by_class);
    if decomposed != value {
        return Err(Error::Consistency(format!(
            "scalar term {value} differs from its class decomposition {decomposed}"
        )));
    }
    Ok(ScalarTerm { value })
}

/// `Σ (λ,α^∨) q^{d(α)}/(1-q^{d(α)})` without the `R_P` correction.
pub fn uncorrected_scalar(par: &Parabolic, lam: &Weight) -> Result<RatFunc, Error> {
    par.check_weight(lam)?;
    let rs = par.root_system();
    let mut terms = Vec::new();
    for &k in par.complement() {
        let p = rs.pairing_positive(lam, k);
        if !p.is_zero() {
            terms.push(novikov_factor(par, k)?.scale(&p));
        }
    }
    Ok(RatFunc::sum(&terms))
}

/// Column of the purely quantum operator for an arbitrary element `y` of
/// a coset, given the scalar term.
pub fn purely_quantum_column(
    par: &Parabolic,
    lam: &Weight,
    y: ElemId,
    scalar: &ScalarTerm,
) -> Result<Vec<RatFunc>, Error> {
    let rs = par.root_system();
    let g = rs.weyl();
    let n = par.num_cosets();
    let mut col = alloc::vec![RatFunc::zero(); n];
    let hq = RatFunc::from_poly(-h());
    for &k in par.complement() {
        let p = rs.pairing_positive(lam, k);
        if p.is_zero() {
            continue;
        }
        let row = par.coset_of(g.mul(y, rs.reflection(k)));
        let v = &novikov_factor(par, k)?.scale(&p) * &hq;
        col[row] = &col[row] + &v;
    }
    let own = par.coset_of(y);
    col[own] = &col[own] + &(&hq * scalar.value());
    Ok(col)
}

/// `D_λ *_q`, the part of the product carried by positive curve degrees.
pub fn purely_quantum_matrix(par: &Parabolic, lam: &Weight) -> Result<Matrix, Error> {
    let scalar = scalar_term(par, lam)?;
    let n = par.num_cosets();
    let mut m = Matrix::zeros(n);
    for c in 0..n {
        for (row, v) in purely_quantum_column(par, lam, par.rep(c), &scalar)?
            .into_iter()
            .enumerate()
        {
            m.set(row, c, v);
        }
    }
    Ok(m)
}

pub fn quantum_matrix(par: &Parabolic, lam: &Weight) -> Result<DivisorOperator, Error> {
    let classical = classical_matrix(par, lam)?;
    let purely_quantum = purely_quantum_matrix(par, lam)?;
    let total = classical.add(&purely_quantum);
    Ok(DivisorOperator {
        lam: lam.clone(),
        classical,
        purely_quantum,
        total,
    })
}

/// Plus-basis coordinates of the unit class, whose restrictions are all 1.
pub fn unit_coordinates(par: &Parabolic, basis: &StableBasis) -> Result<Vec<RatFunc>, Error> {
    let ones = alloc::vec![Poly::one(); par.num_cosets()];
    plus_coordinates(par, basis, &ones)
}

/// Whether `D_λ *_q 1 = 0`.
pub fn annihilates_unit(
    par: &Parabolic,
    basis: &StableBasis,
    purely_quantum: &Matrix,
) -> Result<bool, Error> {
    let unit = unit_coordinates(par, basis)?;
    Ok(purely_quantum.mul_vec(&unit).iter().all(RatFunc::is_zero))
}

/// `σ_γ` negates `Σ (λ,α^∨) q^{d(α)}/(1-q^{d(α)}) ∏σ_αβ` for every simple
/// `γ` in `I`.
pub fn wp_antisymmetry_check(par: &Parabolic, lam: &Weight) -> Result<bool, Error> {
    par.check_weight(lam)?;
    let rs = par.root_system();
    let mut terms = Vec::new();
    for &k in par.complement() {
        let p = rs.pairing_positive(lam, k);
        if p.is_zero() {
            continue;
        }
        let (num, _) = rp_ratio(par, k);
        terms.push(novikov_factor(par, k)?.scale(&p).mul_poly(&num));
    }
    let total = RatFunc::sum(&terms);
    let neg = -&total;
    Ok(par
        .subset()
        .iter()
        .all(|&i| rs.act_ratfunc(rs.weyl().simple(i), &total) == neg))
}

/// The purely quantum column does not depend on which element of the
/// coset is used.
pub fn representative_independence(par: &Parabolic, lam: &Weight) -> Result<bool, Error> {
    let scalar = scalar_term(par, lam)?;
    for c in 0..par.num_cosets() {
        let base = purely_quantum_column(par, lam, par.rep(c), &scalar)?;
        for u in par.coset_elements(c) {
            if purely_quantum_column(par, lam, u, &scalar)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `D_λ *_q = -h (S + Σ_d q^d/(1-q^d) A_d)` with `S` the scalar term and
/// `A_d` rational matrices, one per degree class.
#[derive(Clone, Debug)]
pub struct NovikovParts {
    pub scalar: ScalarTerm,
    /// `(q^d/(1-q^d), A_d)` in degree-class order.
    pub parts: Vec<(RatFunc, Matrix)>,
}

impl NovikovParts {
    pub fn assemble(&self) -> Matrix {
        let n = self.parts.first().map_or(0, |(_, a)| a.size());
        let mut out = Matrix::zeros(n);
        for (q, a) in &self.parts {
            out = out.add(&a.map(|e| e * q));
        }
        let minus_h = RatFunc::from_poly(-h());
        let diag = self.scalar.value();
        let mut m = out.map(|e| e * &minus_h);
        for i in 0..n {
            m.add_at(i, i, &(&minus_h * diag));
        }
        m
    }
}

pub fn novikov_parts(par: &Parabolic, lam: &Weight) -> Result<NovikovParts, Error> {
    let scalar = scalar_term(par, lam)?;
    let rs = par.root_system();
    let g = rs.weyl();
    let n = par.num_cosets();
    let mut parts = Vec::new();
    for class in par.degree_classes() {
        let mut a = Matrix::zeros(n);
        for c in 0..n {
            let y = par.rep(c);
            for &k in &class.roots {
                let p = rs.pairing_positive(lam, k);
                if !p.is_zero() {
                    let row = par.coset_of(g.mul(y, rs.reflection(k)));
                    a.add_at(row, c, &RatFunc::constant(p));
                }
            }
        }
        parts.push((novikov_factor(par, class.roots[0])?, a));
    }
    Ok(NovikovParts { scalar, parts })
}

/// Whether the purely quantum formula holds verbatim in the minus basis,
/// i.e. the operator commutes with the change of basis from minus to plus.
///
/// The factors `q^d/(1-q^d)` of distinct degrees are linearly independent
/// over the rational functions in `a`, `h`, so the check runs class by class.
pub fn minus_basis_check(
    par: &Parabolic,
    basis: &StableBasis,
    lam: &Weight,
) -> Result<bool, Error> {
    let n = par.num_cosets();
    // k[w][r]: coordinate of stab_+(r̄) in stab_-(w̄)
    let k: Vec<Vec<LinFrac>> = (0..n)
        .map(|w| plus_coordinates_frac(par, basis, basis.minus().class(w)))
        .collect::<Result<_, _>>()?;
    for (_, part) in novikov_parts(par, lam)?.parts {
        let a = |r: usize, c: usize| part.get(r, c).constant_value().unwrap_or_default();
        for r in 0..n {
            for w in 0..n {
                // (A K - K A)[r][w]
                let mut terms = Vec::new();
                for s in 0..n {
                    let x = a(r, s);
                    if !x.is_zero() {
                        terms.push(k[w][s].clone().scale(&x));
                    }
                    let y = a(s, w);
                    if !y.is_zero() {
                        terms.push(k[s][r].clone().scale(&-y));
                    }
                }
                if !LinFrac::sum(&terms).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
