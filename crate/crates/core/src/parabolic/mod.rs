//! Parabolic subgroups, minimal coset representatives and curve degrees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rootsys::{ElemId, Root, RootSystem, Weight};
use crate::symfield::{Monomial, Rational, Var};
use crate::Error;

/// Parses `1,3`, `empty` or an empty string into sorted 0-based indices.
pub fn parse_subset(src: &str, rank: usize) -> Result<Vec<usize>, Error> {
    let src = src.trim();
    if src.is_empty() || src.eq_ignore_ascii_case("empty") {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in src
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
    {
        let i: usize = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad simple-root index '{p}'")))?;
        if i == 0 || i > rank {
            return Err(Error::Parse(format!(
                "simple-root index {i} out of range 1..={rank}"
            )));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Exponents of `q^{d(α)}`, indexed by the simple roots outside `I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector {
    exps: Vec<u32>,
}

impl DegreeVector {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Roots of `R^+ \ R_P^+` sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub degree: DegreeVector,
    pub roots: Vec<usize>,
}

/// Root system together with a subset `I` of the simple roots.
#[derive(Clone, Debug)]
pub struct Parabolic {
    rs: RootSystem,
    subset: Vec<usize>,
    in_subset: Vec<bool>,
    outside: Vec<usize>,
    wp: Vec<ElemId>,
    rp_plus: Vec<usize>,
    complement: Vec<usize>,
    is_rp: Vec<bool>,
    reps: Vec<ElemId>,
    coset_of: Vec<usize>,
    degrees: BTreeMap<usize, DegreeVector>,
}

impl Parabolic {
    pub fn new(rs: RootSystem, subset: &[usize]) -> Result<Parabolic, Error> {
        let r = rs.rank();
        let mut in_subset = vec![false; r];
        for &i in subset {
            if i >= r {
                return Err(Error::Domain(format!("simple root {} out of range", i + 1)));
            }
            in_subset[i] = true;
        }
        let subset: Vec<usize> = (0..r).filter(|&i| in_subset[i]).collect();
        let outside: Vec<usize> = (0..r).filter(|&i| !in_subset[i]).collect();
        let g = rs.weyl();

        let wp: Vec<ElemId> = g
            .ids()
            .filter(|&w| g.word(w).iter().all(|&i| in_subset[i]))
            .collect();
        if !g.order().is_multiple_of(wp.len()) {
            return Err(Error::Consistency("|W_P| does not divide |W|".into()));
        }
        let is_rp: Vec<bool> = rs
            .positive_roots()
            .iter()
            .map(|a| a.support().all(|i| in_subset[i]))
            .collect();
        let rp_plus: Vec<usize> = (0..rs.num_positive()).filter(|&k| is_rp[k]).collect();
        let complement: Vec<usize> = (0..rs.num_positive()).filter(|&k| !is_rp[k]).collect();

        // Minimal representatives: no right descent in I.
        let reps: Vec<ElemId> = g
            .ids()
            .filter(|&w| subset.iter().all(|&i| !g.is_right_descent(w, i)))
            .collect();
        let mut coset_of = vec![usize::MAX; g.order()];
        for (c, &y) in reps.iter().enumerate() {
            for &v in &wp {
                let x = g.mul(y, v);
                if coset_of[x.0] != usize::MAX {
                    return Err(Error::Consistency("cosets overlap".into()));
                }
                coset_of[x.0] = c;
            }
        }
        if coset_of.contains(&usize::MAX) || reps.len() * wp.len() != g.order() {
            return Err(Error::Consistency("cosets do not cover W".into()));
        }

        let degrees = complement
            .iter()
            .map(|&k| {
                let d = rs.coroot(k);
                let exps = outside.iter().map(|&b| d[b] as u32).collect();
                (k, DegreeVector { exps })
            })
            .collect();

        Ok(Parabolic {
            rs,
            subset,
            in_subset,
            outside,
            wp,
            rp_plus,
            complement,
            is_rp,
            reps,
            coset_of,
            degrees,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `I` as sorted 0-based indices.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn in_subset(&self, i: usize) -> bool {
        self.in_subset[i]
    }

    /// `Δ \ I`, the indices carrying Novikov variables.
    pub fn outside(&self) -> &[usize] {
        &self.outside
    }

    pub fn wp(&self) -> &[ElemId] {
        &self.wp
    }

    pub fn rp_plus(&self) -> &[usize] {
        &self.rp_plus
    }

    /// `R^+ \ R_P^+` as positive-root indices.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn is_rp(&self, k: usize) -> bool {
        self.is_rp[k]
    }

    /// `m = |R^+ \ R_P^+|`.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Minimal coset representatives sorted by `(length, word)`.
    pub fn representatives(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, c: usize) -> ElemId {
        self.reps[c]
    }

    pub fn coset_of(&self, w: ElemId) -> usize {
        self.coset_of[w.0]
    }

    /// Canonical word of the minimal representative, e.g. `s2s1`.
    pub fn coset_label(&self, c: usize) -> alloc::string::String {
        self.rs.weyl().element(self.reps[c]).word_string()
    }

    pub fn find_coset(&self, label: &str) -> Result<usize, Error> {
        let word = crate::rootsys::parse_word(label, self.rs.rank())?;
        Ok(self.coset_of(self.rs.weyl().from_word(&word)?))
    }

    /// Elements of a coset.
    pub fn coset_elements(&self, c: usize) -> Vec<ElemId> {
        let g = self.rs.weyl();
        self.wp.iter().map(|&v| g.mul(self.reps[c], v)).collect()
    }

    /// Bruhat order on `W/W_P` through minimal representatives.
    pub fn coset_leq(&self, a: usize, b: usize) -> bool {
        self.rs.weyl().bruhat_leq(self.reps[a], self.reps[b])
    }

    /// `d(α)` for `α ∈ R^+ \ R_P^+`.
    pub fn degree(&self, alpha: &Root) -> Result<DegreeVector, Error> {
        let k = self
            .rs
            .positive_index(alpha)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a positive root")))?;
        self.degree_of(k)
    }

    pub fn degree_of(&self, k: usize) -> Result<DegreeVector, Error> {
        self.degrees
            .get(&k)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("{} lies in R_P^+", self.rs.root(k))))
    }

    /// `q^{d}` with `q_β` named after the simple root `β`.
    pub fn novikov_monomial(&self, d: &DegreeVector) -> Monomial {
        let mut m = Monomial::ONE;
        for (&b, &e) in self.outside.iter().zip(&d.exps) {
            m = m.with_exponent(Var::Q(b), e as u16);
        }
        m
    }

    /// Rejects weights with nonzero pairing against some `α^∨, α ∈ I`.
    pub fn check_weight(&self, lam: &Weight) -> Result<(), Error> {
        if lam.rank() != self.rs.rank() {
            return Err(Error::RankMismatch {
                expected: self.rs.rank(),
                found: lam.rank(),
            });
        }
        for &i in &self.subset {
            if !lam.coords()[i].is_zero() {
                return Err(Error::NotOrthogonal { simple_root: i + 1 });
            }
        }
        Ok(())
    }

    /// `(D_λ, d(α)) = -Σ_{β ∉ I} (ω_β, α^∨)(λ, β^∨)`, checked against `-(λ, α^∨)`.
    pub fn degree_pairing(&self, lam: &Weight, alpha: &Root) -> Result<Rational, Error> {
        self.check_weight(lam)?;
        let d = self.degree(alpha)?;
        let mut acc = Rational::zero();
        for (&b, &e) in self.outside.iter().zip(&d.exps) {
            acc -= &lam.coords()[b] * Rational::from_integer(e.into());
        }
        let direct = -self.rs.coroot_pairing(lam, alpha)?;
        if acc != direct {
            return Err(Error::Consistency(format!(
                "degree pairing {acc} differs from {direct}"
            )));
        }
        Ok(acc)
    }

    /// Partition of `R^+ \ R_P^+` by equal degree, blocks in root order.
    pub fn degree_classes(&self) -> Vec<DegreeClass> {
        let mut out: Vec<DegreeClass> = Vec::new();
        for &k in &self.complement {
            let d = &self.degrees[&k];
            match out.iter_mut().find(|c| &c.degree == d) {
                Some(c) => c.roots.push(k),
                None => out.push(DegreeClass {
                    degree: d.clone(),
                    roots: vec![k],
                }),
            }
        }
        out
    }

    /// `d(wα) = d(α)` for all `w ∈ W_P`; also confirms `wα ∉ R_P`.
    pub fn degree_invariance_check(&self) -> bool {
        self.wp.iter().all(|&w| {
            self.complement.iter().all(|&k| {
                let img = self.rs.act_positive(w, k);
                match self.rs.positive_index(&img) {
                    Some(j) => !self.is_rp[j] && self.degrees[&j] == self.degrees[&k],
                    None => false,
                }
            })
        })
    }

    /// Whether `α ↦ σ_α W_P` is injective on `R^+ \ R_P^+`.
    pub fn coset_reflection_injectivity_check(&self) -> bool {
        let mut seen = vec![false; self.num_cosets()];
        for &k in &self.complement {
            let c = self.coset_of(self.rs.reflection(k));
            if seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }
}
