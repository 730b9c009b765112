//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content / subresultant pseudo-remainder sequence: pick a
//! variable common to both inputs, split off the content (a gcd in one fewer
//! variable), and run a subresultant PRS on the primitive parts.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::{Var, NUM_VARS};
use super::poly::Poly;
use super::Rational;

/// Greatest common divisor, normalized to coprime integer coefficients with
/// a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let m = mf.gcd(&mg);
    let core = gcd_no_monomial(&f.div_monomial(&mf), &g.div_monomial(&mg));
    core.mul_monomial(&m)
}

/// Gcd of a list; stops early once the running gcd is a unit.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Poly {
    let mut acc = Poly::zero();
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn gcd_no_monomial(f: &Poly, g: &Poly) -> Poly {
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    let sf = f.support();
    let sg = g.support();
    if sf & sg == 0 {
        return Poly::one();
    }
    // Cheap exact-division checks catch the common "one divides the other"
    // case without running a PRS.
    if g.total_degree() <= f.total_degree() && g.num_terms() <= f.num_terms() {
        if f.div_exact(g).is_some() {
            return g.normalized();
        }
    } else if f.total_degree() <= g.total_degree() && g.div_exact(f).is_some() {
        return f.normalized();
    }

    // A variable present in only one input cannot occur in the gcd.
    let only = (sf ^ sg) & (sf | sg);
    if only != 0 {
        let slot = only.trailing_zeros() as usize;
        let v = Var::from_slot(slot);
        let (with, without) = if sf & (1 << slot) != 0 {
            (f, g)
        } else {
            (g, f)
        };
        let mut acc = without.normalized();
        for c in with.coefficients_in(v).iter().rev() {
            if c.is_zero() {
                continue;
            }
            acc = gcd(&acc, c);
            if acc.is_one() {
                break;
            }
        }
        return acc;
    }

    let v = pick_main_var(f, g, sf & sg);
    let cf = f.coefficients_in(v);
    let cg = g.coefficients_in(v);
    let cont_f = gcd_all(cf.iter());
    let cont_g = gcd_all(cg.iter());
    let content = gcd(&cont_f, &cont_g);

    let mut a = divide_coeffs(cf, &cont_f);
    let mut b = divide_coeffs(cg, &cont_g);
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    // The degree of the gcd in `v` is at most the degree of the gcd of the
    // images at a point where neither leading coefficient vanishes. Coprime
    // inputs exit here; otherwise a remainder reaching the bound is tried
    // as the answer before the sequence grows further.
    let bound = image_degree_bound(&a, &b);
    if bound == Some(0) {
        return content;
    }
    let (pa, pb) = (
        Poly::from_coefficients(v, &a),
        Poly::from_coefficients(v, &b),
    );
    let divides_both = |c: &[Poly]| {
        let c = Poly::from_coefficients(v, c);
        pa.div_exact(&c).is_some() && pb.div_exact(&c).is_some()
    };
    // Subresultant PRS: the known extraneous factor `g * h^delta` is divided
    // out exactly, so no content gcds are needed along the way.
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        if bound == Some(b.len() - 1) {
            let p = primitive_part(b.clone());
            if divides_both(&p) {
                b = p;
                break;
            }
        }
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            b = primitive_part(b);
            break;
        }
        if r.len() == 1 {
            return content;
        }
        let beta = &g * &h.pow(delta);
        a = b;
        b = divide_coeffs(r, &beta);
        g = a[a.len() - 1].clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant factor divides");
        }
    }
    let prim = Poly::from_coefficients(v, &b).normalized();
    (&prim * &content).normalized()
}

/// Degree of the univariate gcd after substituting small integers for every
/// variable but the main one, or `None` if no tried point keeps both leading
/// coefficients nonzero.
fn image_degree_bound(a: &[Poly], b: &[Poly]) -> Option<usize> {
    const SHIFTS: [i64; 3] = [0, 7, 20];
    for shift in SHIFTS {
        let point = |w: Var| Rational::from_integer(BigInt::from(3 + 2 * w.slot() as i64 + shift));
        let image = |cs: &[Poly]| -> Vec<Rational> { cs.iter().map(|c| c.eval(&point)).collect() };
        let (ia, ib) = (image(a), image(b));
        if ia.last().is_some_and(|c| !c.is_zero()) && ib.last().is_some_and(|c| !c.is_zero()) {
            return Some(univariate_gcd_degree(ia, ib));
        }
    }
    None
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let trim = |v: &mut Vec<Rational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a[a.len() - 1].clone() / b[b.len() - 1].clone();
            for (k, bc) in b.iter().enumerate() {
                let t = bc * &f;
                a[k + shift] -= t;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn pick_main_var(f: &Poly, g: &Poly, common: u32) -> Var {
    let mut best: Option<(u16, Var)> = None;
    for slot in 0..NUM_VARS {
        if common & (1 << slot) == 0 {
            continue;
        }
        let v = Var::from_slot(slot);
        let d = f.degree_in(v).max(g.degree_in(v));
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, v));
        }
    }
    best.expect("no common variable").1
}

fn divide_coeffs(cs: Vec<Poly>, by: &Poly) -> Vec<Poly> {
    if by.is_one() {
        return cs;
    }
    cs.into_iter()
        .map(|c| c.div_exact(by).expect("inexact coefficient division"))
        .collect()
}

fn primitive_part(cs: Vec<Poly>) -> Vec<Poly> {
    let cont = gcd_all(cs.iter());
    let mut out = divide_coeffs(cs, &cont);
    // Rescale so the numeric coefficients stay coprime integers.
    let scale = numeric_content(&out);
    let inv = scale.recip();
    for c in out.iter_mut() {
        *c = c.scale(&inv);
    }
    out
}

fn numeric_content(cs: &[Poly]) -> Rational {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for c in cs {
        for (_, k) in c.terms() {
            den_lcm = den_lcm.lcm(k.denom());
            num_gcd = num_gcd.gcd(k.numer());
        }
    }
    if num_gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(num_gcd, den_lcm)
}

/// Pseudo-remainder of `a` by `b` as polynomials in the main variable, with
/// trailing zero coefficients trimmed; an empty vector is zero.
fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            let t = bc * &lr;
            r[k + shift] -= &t;
        }
        trim(&mut r);
        debug_assert!(r.len() <= dr);
    }
    r
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::rat;

    fn a(i: usize) -> Poly {
        Poly::var(Var::A(i))
    }
    fn h() -> Poly {
        Poly::var(Var::H)
    }
    fn q(i: usize) -> Poly {
        Poly::var(Var::Q(i))
    }

    #[test]
    fn common_linear_factor() {
        let x = &a(0) - &h();
        let f = &x * &(&a(1) + &a(0));
        let g = &x * &(&a(1) - &h());
        // leading term of a1 - h is -h, so the normalized gcd is h - a1
        assert_eq!(gcd(&f, &g), -x);
    }

    #[test]
    fn coprime_inputs() {
        let f = &a(0) + &a(1);
        let g = &a(0) - &a(1);
        assert!(gcd(&f, &g).is_one());
        assert!(gcd(&(Poly::one() - q(0)), &a(0)).is_one());
    }

    #[test]
    fn repeated_and_monomial_factors() {
        let x = &a(0) + &h().scale(&rat(1, 2));
        let f = &(&x * &x) * &(&a(1) * &h());
        let g = &(&x * &x).pow(2) * &(&h() * &h());
        let expected = &(&x * &x).normalized() * &h();
        assert_eq!(gcd(&f, &g), expected);
    }

    #[test]
    fn novikov_denominators() {
        let one = Poly::one();
        let f = &one - &(&q(0) * &q(0));
        let g = &one - &q(0);
        assert_eq!(gcd(&f, &g), (&q(0) - &one));
        let f = &one - &q(0).pow(6);
        let g = &one - &q(0).pow(4);
        assert_eq!(gcd(&f, &g), (&(&q(0) * &q(0)) - &one));
    }

    #[test]
    fn coprime_inputs_with_high_degree_cofactors() {
        let f = &(&(&a(0).pow(3) * &a(1).pow(3)) * &(&h().pow(2) * &q(0)))
            + &(&(&q(0).pow(3) + &h().pow(3)) - &a(0).pow(2));
        let g = &(&(&a(0) * &a(1)) * &(&h() * &q(0))) + &(&(&a(0).pow(2) + &a(0)) + &Poly::one());
        assert!(gcd(&f, &g).is_one());
        let k = &(&a(1) * &q(0)) - &h();
        assert_eq!(gcd(&(&f * &k), &(&g * &k)), k.normalized());
    }

    #[test]
    fn shared_factor_in_four_variables() {
        // (a1 + 1)(h q1 - a2) times two coprime cofactors
        let k = &(&a(0) + &Poly::one()) * &(&(&h() * &q(0)) - &a(1));
        let f = &(&(&(&a(0) * &a(1)).pow(2) * &(&h() * &q(0).pow(2))) - &(&a(1) * &h()).pow(2))
            + &Poly::one();
        let g = &(&(&a(1) * &h().pow(2)) * &q(0)) - &(&(&a(0) * &a(1)) - &a(0).pow(2));
        assert_eq!(gcd(&(&f * &k), &(&g * &k)), k.normalized());
    }

    #[test]
    fn three_variable_product() {
        let l1 = &a(0) + &a(1);
        let l2 = &(&a(1) + &a(2)) - &h();
        let l3 = &a(2) - &a(0);
        let l4 = &a(0) + &h();
        let f = &(&l1 * &l2) * &l3;
        let g = &(&l2 * &l3) * &l4;
        assert_eq!(gcd(&f, &g), (&l2 * &l3).normalized());
    }
}
