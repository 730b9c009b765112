//! Root systems and Weyl groups generated from a Cartan matrix.

mod cartan;
mod weyl;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

pub use cartan::CartanDatum;
pub use weyl::{parse_word, word_to_string, ElemId, WeylElement, WeylGroup};

use crate::symfield::{Poly, RatFunc, Rational, MAX_RANK};
use crate::Error;

/// Size limits applied while building a [`RootSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_rank: usize,
    pub max_positive_roots: usize,
    pub max_weyl_order: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_rank: MAX_RANK,
            max_positive_roots: 240,
            max_weyl_order: 100_000,
        }
    }
}

/// Element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coords: Vec<i32>,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Root {
        Root { coords }
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0) && self.coords.iter().any(|&c| c < 0)
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// The linear form `Σ c_i a_i`.
    pub fn form(&self) -> Poly {
        let cs: Vec<Rational> = self
            .coords
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Poly::linear_in_roots(&cs)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

/// Weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Weight {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Weight {
        Weight {
            coords: coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.coords[i] = Rational::one();
        w
    }

    /// Parses `1,0,2` or `1/2 0 1`.
    pub fn parse(src: &str) -> Result<Weight, Error> {
        let coords = src
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut it = s.splitn(2, '/');
                let n: i64 = it
                    .next()
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad weight entry '{s}'")))?;
                let d: i64 = match it.next() {
                    None => 1,
                    Some(p) => p
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad weight entry '{s}'")))?,
                };
                if d == 0 {
                    return Err(Error::Parse(format!("zero denominator in '{s}'")));
                }
                Ok(Rational::new(n.into(), d.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Positive roots, coroots and Weyl group of a finite root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanDatum,
    positive: Vec<Root>,
    coroots: Vec<Vec<i32>>,
    index: BTreeMap<Vec<i32>, usize>,
    inverse_cartan: Vec<Vec<Rational>>,
    weyl: WeylGroup,
    reflections: Vec<ElemId>,
}

impl RootSystem {
    pub fn new(cartan: CartanDatum) -> Result<RootSystem, Error> {
        RootSystem::with_bounds(cartan, Bounds::default())
    }

    pub fn named(name: &str) -> Result<RootSystem, Error> {
        RootSystem::new(CartanDatum::named(name)?)
    }

    pub fn with_bounds(cartan: CartanDatum, bounds: Bounds) -> Result<RootSystem, Error> {
        let r = cartan.rank();
        if r > bounds.max_rank.min(MAX_RANK) {
            return Err(Error::TooLarge(format!(
                "rank {r} exceeds the bound {}",
                bounds.max_rank.min(MAX_RANK)
            )));
        }
        let (positive, coroots) = positive_roots(&cartan, bounds.max_positive_roots)?;
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, a)| (a.coords.clone(), k))
            .collect();
        let inverse_cartan = invert(&cartan)?;
        let weyl = WeylGroup::enumerate(&cartan, bounds.max_weyl_order)?;
        let mut rs = RootSystem {
            cartan,
            positive,
            coroots,
            index,
            inverse_cartan,
            weyl,
            reflections: Vec::new(),
        };
        rs.reflections = (0..rs.positive.len())
            .map(|k| {
                let m = rs.reflection_matrix(k);
                rs.weyl.find_matrix(&m).expect("reflection lies in W")
            })
            .collect();
        if rs.weyl.length(rs.weyl.longest()) != rs.positive.len() {
            return Err(Error::Consistency("length of w0 differs from |R+|".into()));
        }
        Ok(rs)
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Positive roots sorted by height, simple roots first in index order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.positive[k]
    }

    /// Coroot of the `k`-th positive root in simple-coroot coordinates.
    pub fn coroot(&self, k: usize) -> &[i32] {
        &self.coroots[k]
    }

    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&Root::simple(self.rank(), i).coords]
    }

    pub fn positive_index(&self, v: &Root) -> Option<usize> {
        self.index.get(&v.coords).copied()
    }

    /// `(k, true)` if `v` is the `k`-th positive root, `(k, false)` if it is
    /// its negative.
    pub fn classify(&self, v: &Root) -> Option<(usize, bool)> {
        if let Some(k) = self.positive_index(v) {
            return Some((k, true));
        }
        self.positive_index(&v.neg()).map(|k| (k, false))
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.classify(v).is_some()
    }

    fn check_rank(&self, found: usize) -> Result<(), Error> {
        if found != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    /// `(λ, α^∨)` for an arbitrary root `α`.
    pub fn coroot_pairing(&self, lam: &Weight, alpha: &Root) -> Result<Rational, Error> {
        self.check_rank(lam.rank())?;
        self.check_rank(alpha.rank())?;
        let (k, pos) = self
            .classify(alpha)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        let v = self.pairing_positive(lam, k);
        Ok(if pos { v } else { -v })
    }

    /// `(λ, α_k^∨)` for the `k`-th positive root.
    pub fn pairing_positive(&self, lam: &Weight, k: usize) -> Rational {
        let mut acc = Rational::zero();
        for (c, &d) in lam.coords.iter().zip(&self.coroots[k]) {
            if d != 0 {
                acc += c * Rational::from_integer(d.into());
            }
        }
        acc
    }

    /// Simple-root coordinates of a weight.
    pub fn weight_to_root_coords(&self, lam: &Weight) -> Vec<Rational> {
        let r = self.rank();
        (0..r)
            .map(|k| {
                let mut acc = Rational::zero();
                for j in 0..r {
                    acc += &lam.coords[j] * &self.inverse_cartan[j][k];
                }
                acc
            })
            .collect()
    }

    /// The root-lattice vector `v` as a weight.
    pub fn root_to_weight(&self, v: &Root) -> Weight {
        let r = self.rank();
        Weight {
            coords: (0..r)
                .map(|j| {
                    let s: i64 = (0..r)
                        .map(|k| i64::from(v.coords[k]) * i64::from(self.cartan.entry(k, j)))
                        .sum();
                    Rational::from_integer(s.into())
                })
                .collect(),
        }
    }

    /// The weight as a linear form in the simple-root variables.
    pub fn weight_form(&self, lam: &Weight) -> Poly {
        Poly::linear_in_roots(&self.weight_to_root_coords(lam))
    }

    pub fn act_root(&self, w: ElemId, v: &Root) -> Root {
        Root::new(self.weyl.act(w, &v.coords))
    }

    pub fn act_positive(&self, w: ElemId, k: usize) -> Root {
        self.act_root(w, &self.positive[k])
    }

    pub fn act_weight(&self, w: ElemId, lam: &Weight) -> Weight {
        let mut cur = lam.clone();
        for &i in self.weyl.word(w).iter().rev() {
            cur = self.simple_reflect_weight(i, &cur);
        }
        cur
    }

    /// `s_i λ = λ - (λ, α_i^∨) α_i`.
    pub fn simple_reflect_weight(&self, i: usize, lam: &Weight) -> Weight {
        let c = lam.coords[i].clone();
        if c.is_zero() {
            return lam.clone();
        }
        let coords = lam
            .coords
            .iter()
            .enumerate()
            .map(|(j, x)| x - &c * Rational::from_integer(self.cartan.entry(i, j).into()))
            .collect();
        Weight { coords }
    }

    /// Reflection `σ_α` for the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> ElemId {
        self.reflections[k]
    }

    fn reflection_matrix(&self, k: usize) -> Vec<i32> {
        let r = self.rank();
        let a = &self.positive[k].coords;
        let d = &self.coroots[k];
        let mut m = vec![0; r * r];
        for j in 0..r {
            // <α_j, α^∨> = Σ_l d_l c_{j l}
            let p: i32 = (0..r).map(|l| d[l] * self.cartan.entry(j, l)).sum();
            for i in 0..r {
                m[i * r + j] = i32::from(i == j) - p * a[i];
            }
        }
        m
    }

    /// Positive roots sent to negative roots by `w`.
    pub fn inversions(&self, w: ElemId) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&k| self.act_positive(w, k).is_negative())
            .collect()
    }

    /// Images `w(α_j)` as linear forms, for substitution.
    pub fn images(&self, w: ElemId) -> Vec<Poly> {
        let r = self.rank();
        let m = self.weyl.element(w).matrix();
        (0..r)
            .map(|j| {
                let col: Vec<Rational> = (0..r)
                    .map(|i| Rational::from_integer(m[i * r + j].into()))
                    .collect();
                Poly::linear_in_roots(&col)
            })
            .collect()
    }

    /// Action on polynomials through `a_j ↦ w(α_j)`.
    pub fn act_poly(&self, w: ElemId, p: &Poly) -> Poly {
        if w == ElemId::IDENTITY {
            return p.clone();
        }
        let images = self.images(w);
        p.substitute(&|v| match v {
            crate::symfield::Var::A(i) => images.get(i).cloned(),
            _ => None,
        })
    }

    pub fn act_ratfunc(&self, w: ElemId, f: &RatFunc) -> RatFunc {
        if w == ElemId::IDENTITY {
            return f.clone();
        }
        f.substitute_linear(&self.images(w))
    }
}

/// Closure of the simple (root, coroot) pairs under simple reflections.
fn positive_roots(
    c: &CartanDatum,
    max_positive: usize,
) -> Result<(Vec<Root>, Vec<Vec<i32>>), Error> {
    let r = c.rank();
    let mut seen: BTreeMap<Vec<i32>, Vec<i32>> = BTreeMap::new();
    let mut queue: Vec<(Vec<i32>, Vec<i32>)> = Vec::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone(), e.clone());
        queue.push((e.clone(), e));
    }
    let too_big = || Error::NonFiniteType {
        max_positive_roots: max_positive,
    };
    while let Some((v, u)) = queue.pop() {
        for j in 0..r {
            let pv: i32 = (0..r).map(|k| v[k] * c.entry(k, j)).sum();
            let pu: i32 = (0..r).map(|k| u[k] * c.entry(j, k)).sum();
            let mut v2 = v.clone();
            v2[j] -= pv;
            let mut u2 = u.clone();
            u2[j] -= pu;
            let root = Root::new(v2.clone());
            if !root.is_positive() {
                if root.is_negative() {
                    continue;
                }
                return Err(too_big());
            }
            if let Some(prev) = seen.get(&v2) {
                if *prev != u2 {
                    return Err(Error::InvalidCartan("inconsistent coroots".into()));
                }
                continue;
            }
            if seen.len() >= max_positive || v2.iter().any(|x| x.abs() > 64) {
                return Err(too_big());
            }
            seen.insert(v2.clone(), u2.clone());
            queue.push((v2, u2));
        }
    }
    let mut roots: Vec<(Vec<i32>, Vec<i32>)> = seen.into_iter().collect();
    roots.sort_by(|(a, _), (b, _)| {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let coroots = roots.iter().map(|(_, u)| u.clone()).collect();
    let positive = roots.into_iter().map(|(v, _)| Root::new(v)).collect();
    Ok((positive, coroots))
}

fn invert(c: &CartanDatum) -> Result<Vec<Vec<Rational>>, Error> {
    let r = c.rank();
    let mut a: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = (0..r)
                .map(|j| Rational::from_integer(c.entry(i, j).into()))
                .collect();
            row.extend((0..r).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..r {
        let piv = (col..r)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::InvalidCartan("singular Cartan matrix".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..2 * r {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[r..].to_vec()).collect())
}
