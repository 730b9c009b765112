use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::Var;
use super::poly::Poly;
use super::Rational;
use crate::Error;

/// Exact rational function `num / den` in canonical form.
///
/// `gcd(num, den) = 1` and `den` has coprime integer coefficients with a
/// positive leading coefficient, so derived equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Ok(RatFunc::normalize_den(num, den))
        } else {
            let n = num.div_exact(&g).expect("gcd divides numerator");
            let d = den.div_exact(&g).expect("gcd divides denominator");
            Ok(RatFunc::normalize_den(n, d))
        }
    }

    /// Builds from parts already known to be coprime, skipping the gcd.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalize_den(num, den)
    }

    fn normalize_den(num: Poly, den: Poly) -> RatFunc {
        if let Some(c) = den.constant_value() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let (c, den) = den.primitive_split();
        let num = if c.is_one() {
            num
        } else {
            num.scale(&c.recip())
        };
        RatFunc { num, den }
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> RatFunc {
        RatFunc::from_poly(Poly::from_int(c))
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn into_poly(self) -> Result<Poly, Error> {
        if self.is_poly() {
            Ok(self.num)
        } else {
            Err(Error::NotPolynomial(alloc::format!("{self}")))
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_free_of_roots(&self) -> bool {
        self.num.is_free_of_roots() && self.den.is_free_of_roots()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn recip(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, Error> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self * &RatFunc::from_poly(p.clone())
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Whether a polynomial is divisible by `h`.
    pub fn divisible_by_h(&self) -> Result<bool, Error> {
        let p = self.require_poly()?;
        Ok(p.at_zero(Var::H).is_zero())
    }

    /// Specialization `h = 0`.
    pub fn eval_h_zero(&self) -> Result<RatFunc, Error> {
        RatFunc::new(self.num.at_zero(Var::H), self.den.at_zero(Var::H))
    }

    /// Drops the terms of `h`-degree at least two.
    pub fn truncate_mod_h2(&self) -> Result<Poly, Error> {
        Ok(self.require_poly()?.truncate_in(Var::H, 1))
    }

    fn require_poly(&self) -> Result<&Poly, Error> {
        self.as_poly()
            .ok_or_else(|| Error::NotPolynomial(alloc::format!("{self}")))
    }

    /// Substitutes linear forms for the root variables; `images[i]` is the
    /// image of `a_{i+1}`. `h` and the Novikov variables are fixed.
    pub fn substitute_linear(&self, images: &[Poly]) -> RatFunc {
        let sub = |v: Var| match v {
            Var::A(i) => images.get(i).cloned(),
            _ => None,
        };
        let num = self.num.substitute(&sub);
        if self.den.is_one() {
            return RatFunc::from_poly(num);
        }
        let den = self.den.substitute(&sub);
        RatFunc::new(num, den).expect("linear substitution by an invertible map keeps den nonzero")
    }

    /// General substitution of variables by rational functions.
    pub fn substitute(&self, images: &dyn Fn(Var) -> Option<RatFunc>) -> Result<RatFunc, Error> {
        let eval = |p: &Poly| -> Result<RatFunc, Error> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut t = RatFunc::constant(c.clone());
                for (slot, &e) in m.slots().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let v = Var::from_slot(slot);
                    let img = images(v).unwrap_or_else(|| RatFunc::var(v));
                    t = &t * &img.pow(e as u32);
                }
                acc = &acc + &t;
            }
            Ok(acc)
        };
        let n = eval(&self.num)?;
        let d = eval(&self.den)?;
        n.checked_div(&d)
    }

    /// Value at a rational point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &dyn Fn(Var) -> Rational) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a RatFunc>>(items: I) -> RatFunc {
        let mut acc = RatFunc::zero();
        for x in items {
            acc = &acc + x;
        }
        acc
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num` alone for polynomials, otherwise `(num)/(den)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RatFunc::new(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc::normalize_den(num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc::normalize_den(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFunc::normalize_den(num, den);
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g2 = gcd(&num, &g);
        let (num, g) = if g2.is_one() {
            (num, g)
        } else {
            (num.div_exact(&g2).unwrap(), g.div_exact(&g2).unwrap())
        };
        let den = &(&d1 * &d2) * &g;
        RatFunc::normalize_den(num, den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RatFunc::normalize_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

/// Panics on division by zero, like integer division; see
/// [`RatFunc::checked_div`].
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Product of an iterator of rational functions.
pub fn product<'a, I: IntoIterator<Item = &'a RatFunc>>(items: I) -> RatFunc {
    let mut acc = RatFunc::one();
    for x in items {
        acc = &acc * x;
    }
    acc
}

/// Collects a vector of polynomials into a single product.
pub fn poly_product<'a, I: IntoIterator<Item = &'a Poly>>(items: I) -> Poly {
    let v: Vec<&Poly> = items.into_iter().collect();
    v.into_iter().fold(Poly::one(), |acc, p| &acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn a(i: usize) -> RatFunc {
        RatFunc::var(Var::A(i))
    }
    fn h() -> RatFunc {
        RatFunc::var(Var::H)
    }
    fn q() -> RatFunc {
        RatFunc::var(Var::Q(0))
    }

    #[test]
    fn cancels_common_factor() {
        let f = (&(&a(0) * &a(0)) - &(&h() * &h())) / (&a(0) - &h());
        assert_eq!(f, &a(0) + &h());
        assert!(f.is_poly());
    }

    #[test]
    fn self_quotient_is_one() {
        let f = (&a(0) + &h()) / (&a(1) - &q());
        assert_eq!(&f / &f, RatFunc::one());
    }

    #[test]
    fn novikov_series_sum() {
        let one = RatFunc::one();
        let d = &one - &q();
        let lhs = &(&q() / &d) + &(&(&q() * &q()) / &d);
        let rhs = (&q() * &(&one + &q())) / d;
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "(-q1^2 - q1)/(q1 - 1)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            a(0).checked_div(&RatFunc::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn h_predicates() {
        assert_eq!((&h() * &a(0)).divisible_by_h(), Ok(true));
        assert_eq!(a(0).divisible_by_h(), Ok(false));
        assert!((&a(0) / &h()).divisible_by_h().is_err());
        let f = &(&a(0) + &(&h() * &a(1))) + &(&(&h() * &h()) * &a(0));
        assert_eq!(
            f.truncate_mod_h2().unwrap(),
            (&a(0) + &(&h() * &a(1))).into_poly().unwrap()
        );
        let g = &a(0) / &(&a(1) + &h());
        assert_eq!(g.eval_h_zero().unwrap(), &a(0) / &a(1));
    }

    #[test]
    fn reflection_substitution() {
        // A2, s1: a1 -> -a1, a2 -> a1 + a2
        let images = [
            -Poly::var(Var::A(0)),
            Poly::var(Var::A(0)) + Poly::var(Var::A(1)),
        ];
        let f = &a(0) + &a(1);
        assert_eq!(f.substitute_linear(&images), a(1));
        let g = &(&a(0) * &h()) / &(&a(1) - &h());
        assert_eq!(g.substitute_linear(&images).substitute_linear(&images), g);
    }
}
