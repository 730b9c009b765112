use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Var, NUM_VARS};
use super::Rational;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i] * a_{i+1}`.
    pub fn linear_in_roots(coeffs: &[Rational]) -> Poly {
        Poly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(Var::A(i), 1), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let cur = o.get_mut();
                if cur.is_integer() && c.is_integer() {
                    *cur = Rational::from_integer(cur.numer() + c.numer());
                } else {
                    *cur += c;
                }
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn small_int_terms(&self) -> Option<Vec<(Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if c.is_integer() {
                    c.numer().to_i64().map(|v| (*m, v))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value if this polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Bit mask (by slot) of the variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |acc, m| acc | m.support())
    }

    pub fn is_free_of_roots(&self) -> bool {
        (0..super::monomial::MAX_RANK).all(|i| !self.contains_var(Var::A(i)))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        if c.is_integer() && c.numer() == &BigInt::from(-1) {
            return -self;
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        if d.num_terms() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                terms.insert(dm.quotient_of(m), c / &dc);
            }
            return Some(Poly { terms });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        if let Some(q) = self.div_exact_small(d) {
            return q;
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = &rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Integer-coefficient division by a primitive divisor. By Gauss's lemma
    /// an exact quotient is then integral, so a non-divisible coefficient
    /// proves inexactness. `None` when not applicable or on overflow.
    fn div_exact_small(&self, d: &Poly) -> Option<Option<Poly>> {
        let dt = d.small_int_terms()?;
        if dt.iter().fold(0i64, |g, (_, c)| g.gcd(c)) != 1 {
            return None;
        }
        let mut rem: BTreeMap<Monomial, i128> = self
            .small_int_terms()?
            .into_iter()
            .map(|(m, c)| (m, i128::from(c)))
            .collect();
        let (dm, dc) = *dt.iter().max_by_key(|(m, _)| *m)?;
        let dc = i128::from(dc);
        let mut quot: Vec<(Monomial, i128)> = Vec::new();
        while let Some((&rm, &rc)) = rem.iter().next_back() {
            if !dm.divides(&rm) || rc % dc != 0 {
                return Some(None);
            }
            let qm = dm.quotient_of(&rm);
            let qc = rc / dc;
            for (m, c) in &dt {
                let key = m.mul(&qm);
                let t = i128::from(*c).checked_mul(qc)?;
                let e = rem.entry(key).or_insert(0);
                *e = e.checked_sub(t)?;
                if *e == 0 {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Some(Some(Poly {
            terms: quot
                .into_iter()
                .map(|(m, c)| (m, Rational::from_integer(BigInt::from(c))))
                .collect(),
        }))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    /// Divides by a monomial that is known to divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    debug_assert!(m.divides(k));
                    (m.quotient_of(k), c.clone())
                })
                .collect(),
        }
    }

    /// Writes `self = factor * primitive` with `primitive` having coprime
    /// integer coefficients and positive leading coefficient.
    pub fn primitive_split(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::one(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        let inv = factor.recip();
        (factor, self.scale(&inv))
    }

    /// Primitive integer normalization with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        self.primitive_split().1
    }

    pub fn eval(&self, point: &dyn Fn(Var) -> Rational) -> Rational {
        let mut vals: [Option<Rational>; NUM_VARS] = Default::default();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, &e) in m.slots().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = vals[slot].get_or_insert_with(|| point(Var::from_slot(slot)));
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Ring homomorphism sending each variable `v` to `images(v)`; `None`
    /// keeps the variable.
    pub fn substitute(&self, images: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: [Option<Option<Poly>>; NUM_VARS] = Default::default();
        let mut powers: BTreeMap<(usize, u16), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut t = Poly::constant(c.clone());
            for (slot, &e) in m.slots().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = Var::from_slot(slot);
                let img = cache[slot].get_or_insert_with(|| images(v));
                match img {
                    None => kept = kept.with_exponent(v, e),
                    Some(p) => {
                        let pw = powers.entry((slot, e)).or_insert_with(|| p.pow(e as u32));
                        t = &t * &*pw;
                    }
                }
            }
            out += &t.mul_monomial(&kept);
        }
        out
    }

    /// Coefficients with respect to `v`: `self = Σ_k coeffs[k] * v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = alloc::vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].terms.insert(m.with_exponent(v, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v, k as u16);
            for (m, x) in &c.terms {
                out.add_term(m.mul(&shift), x.clone());
            }
        }
        out
    }

    /// Keeps the terms whose degree in `v` is at most `max_deg`.
    pub fn truncate_in(&self, v: Var, max_deg: u16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) <= max_deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Sets `v = 0`.
    pub fn at_zero(&self, v: Var) -> Poly {
        self.truncate_in(v, 0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical encoding, terms in descending monomial order, e.g.
/// `(2/3)*a1^2*h - q1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let coeff = if a.is_integer() {
                alloc::format!("{}", a.numer())
            } else {
                alloc::format!("({}/{})", a.numer(), a.denom())
            };
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let (Some(a), Some(b)) = (self.small_int_terms(), rhs.small_int_terms()) {
            if let Some(p) = mul_small(&a, &b) {
                return p;
            }
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Product of integer polynomials with machine-word coefficients; `None` on
/// overflow.
fn mul_small(a: &[(Monomial, i64)], b: &[(Monomial, i64)]) -> Option<Poly> {
    let mut prods: Vec<(Monomial, i128)> = Vec::with_capacity(a.len() * b.len());
    for (m1, c1) in a {
        for (m2, c2) in b {
            prods.push((m1.mul(m2), i128::from(*c1) * i128::from(*c2)));
        }
    }
    prods.sort_unstable_by_key(|(m, _)| *m);
    let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(prods.len());
    let mut i = 0;
    while i < prods.len() {
        let m = prods[i].0;
        let mut c: i128 = 0;
        while i < prods.len() && prods[i].0 == m {
            c = c.checked_add(prods[i].1)?;
            i += 1;
        }
        if c != 0 {
            merged.push((m, Rational::from_integer(BigInt::from(c))));
        }
    }
    Some(Poly {
        terms: merged.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::rat;
    use alloc::string::ToString;

    fn a(i: usize) -> Poly {
        Poly::var(Var::A(i))
    }

    fn h() -> Poly {
        Poly::var(Var::H)
    }

    #[test]
    fn canonical_string() {
        let p = &(&a(0) * &a(0)) * &h();
        let p = p.scale(&rat(2, 3)) - Poly::var(Var::Q(0));
        assert_eq!(p.to_string(), "(2/3)*a1^2*h - q1");
        assert_eq!((-&a(1) + Poly::from_int(3)).to_string(), "-a2 + 3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::constant(rat(-1, 2)).to_string(), "-(1/2)");
    }

    #[test]
    fn exact_division() {
        let f = &(&a(0) - &h()) * &(&a(0) + &a(1));
        assert_eq!(f.div_exact(&(&a(0) - &h())), Some(&a(0) + &a(1)));
        assert_eq!(f.div_exact(&(&a(0) + &h())), None);
        assert_eq!(f.div_exact(&Poly::from_int(2)), Some(f.scale(&rat(1, 2))));
    }

    #[test]
    fn truncation_mod_h_squared() {
        let f = a(0) + &h() * &a(1) + &(&h() * &h()) * &a(0);
        assert_eq!(f.truncate_in(Var::H, 1), a(0) + &h() * &a(1));
    }

    #[test]
    fn primitive_split_normalizes_sign_and_content() {
        let f = (&a(0) * &Poly::constant(rat(-2, 3))) + Poly::constant(rat(4, 3));
        let (c, p) = f.primitive_split();
        assert_eq!(c, rat(-2, 3));
        assert_eq!(p, a(0) - Poly::from_int(2));
    }

    #[test]
    fn coefficient_round_trip() {
        let f = &(&a(0) + &h()).pow(3) * &a(1);
        let cs = f.coefficients_in(Var::H);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coefficients(Var::H, &cs), f);
    }
}
