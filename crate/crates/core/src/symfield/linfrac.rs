use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::Rational;
use crate::Error;

/// Fraction whose denominator is a product of linear forms.
///
/// Linear forms are irreducible, so reduction is trial division by each
/// factor and no polynomial gcd is ever needed. Denominator factors are kept
/// primitive with positive leading coefficient.
#[derive(Clone, Default)]
pub struct LinFrac {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

/// Splits a linear form into `scalar * normalized`.
fn split_linear(f: &Poly) -> Result<(Rational, Poly), Error> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.total_degree() > 1 || f.terms().any(|(m, _)| m.degree() != 1) {
        return Err(Error::Domain(format!("{f} is not a linear form")));
    }
    Ok(f.primitive_split())
}

impl LinFrac {
    pub fn zero() -> LinFrac {
        LinFrac::default()
    }

    pub fn one() -> LinFrac {
        LinFrac::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> LinFrac {
        LinFrac {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Poly, u32)> + '_ {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn den_degree(&self) -> u32 {
        self.den.values().sum()
    }

    /// Divides by a nonzero constant or a linear form.
    pub fn div_linear(mut self, f: &Poly) -> Result<LinFrac, Error> {
        if let Some(c) = f.constant_value() {
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            self.num = self.num.scale(&c.recip());
            return Ok(self);
        }
        let (c, g) = split_linear(f)?;
        self.num = self.num.scale(&c.recip());
        *self.den.entry(g).or_insert(0) += 1;
        Ok(self)
    }

    /// Multiplies by a linear form, cancelling against the denominator.
    pub fn mul_linear(mut self, f: &Poly) -> LinFrac {
        match split_linear(f) {
            Ok((c, g)) => {
                if let Some(e) = self.den.get_mut(&g) {
                    *e -= 1;
                    if *e == 0 {
                        self.den.remove(&g);
                    }
                    self.num = self.num.scale(&c);
                } else {
                    self.num = &self.num * f;
                }
                self
            }
            Err(_) => self.mul_poly(f),
        }
    }

    pub fn mul_poly(mut self, p: &Poly) -> LinFrac {
        if p.is_zero() {
            return LinFrac::zero();
        }
        self.num = &self.num * p;
        self
    }

    pub fn scale(mut self, c: &Rational) -> LinFrac {
        if c.is_zero() {
            return LinFrac::zero();
        }
        self.num = self.num.scale(c);
        self
    }

    pub fn mul(&self, other: &LinFrac) -> LinFrac {
        if self.is_zero() || other.is_zero() {
            return LinFrac::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        LinFrac {
            num: &self.num * &other.num,
            den,
        }
    }

    /// `self += other` over the least common denominator.
    pub fn add_assign(&mut self, other: &LinFrac) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let mut other_num = other.num.clone();
        for (f, &e) in &self.den {
            let oe = other.den.get(f).copied().unwrap_or(0);
            if e > oe {
                other_num = &other_num * &f.pow(e - oe);
            }
        }
        for (f, &oe) in &other.den {
            let e = self.den.get(f).copied().unwrap_or(0);
            if oe > e {
                self.num = &self.num * &f.pow(oe - e);
                self.den.insert(f.clone(), oe);
            }
        }
        self.num += &other_num;
        if self.num.is_zero() {
            self.den.clear();
        }
    }

    /// Sum over the least common denominator, computed once.
    pub fn sum(terms: &[LinFrac]) -> LinFrac {
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for t in terms.iter().filter(|t| !t.is_zero()) {
            for (f, &e) in &t.den {
                let slot = den.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut num = Poly::zero();
        for t in terms.iter().filter(|t| !t.is_zero()) {
            let mut p = t.num.clone();
            for (f, &e) in &den {
                let missing = e - t.den.get(f).copied().unwrap_or(0);
                for _ in 0..missing {
                    p = &p * f;
                }
            }
            num += &p;
        }
        if num.is_zero() {
            den.clear();
        }
        LinFrac { num, den }
    }

    pub fn sub_assign(&mut self, other: &LinFrac) {
        self.add_assign(&other.clone().scale(&-Rational::one()));
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: alloc::vec::Vec<Poly> = self.den.keys().cloned().collect();
        for f in factors {
            while let Some(&e) = self.den.get(&f) {
                let Some(q) = self.num.div_exact(&f) else {
                    break;
                };
                self.num = q;
                if e == 1 {
                    self.den.remove(&f);
                } else {
                    self.den.insert(f.clone(), e - 1);
                }
            }
        }
    }

    pub fn reduced(mut self) -> LinFrac {
        self.reduce();
        self
    }

    pub fn into_ratfunc(mut self) -> RatFunc {
        self.reduce();
        let mut den = Poly::one();
        for (f, e) in &self.den {
            den = &den * &f.pow(*e);
        }
        RatFunc::from_coprime(self.num, den)
    }

    /// The value as a polynomial, or `NotPolynomial` if a factor survives.
    pub fn into_poly(mut self) -> Result<Poly, Error> {
        self.reduce();
        if self.den.is_empty() {
            Ok(self.num)
        } else {
            Err(Error::NotPolynomial(format!("{self}")))
        }
    }
}

impl fmt::Display for LinFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (g, e)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for LinFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
