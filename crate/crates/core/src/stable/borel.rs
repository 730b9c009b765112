use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::rootsys::{ElemId, Root, RootSystem};
use crate::symfield::{Poly, Var};
use crate::Error;

/// `stab_+(y)|_z` for every `z ≤ y`, from the canonical reduced word of `y`.
pub fn borel_row(rs: &RootSystem, y: ElemId) -> Result<Vec<(ElemId, Poly)>, Error> {
    Ok(borel_row_for_word(rs, rs.weyl().word(y))?
        .into_iter()
        .collect())
}

/// Linear forms appearing in the expansion: `γ`, `γ - h`, `-γ - h` for
/// positive roots `γ`, and `h`.
struct Forms {
    n: usize,
    polys: Vec<Poly>,
}

impl Forms {
    fn new(rs: &RootSystem) -> Forms {
        let h = Poly::var(Var::H);
        let n = rs.num_positive();
        let mut polys = Vec::with_capacity(3 * n + 1);
        for a in rs.positive_roots() {
            polys.push(a.form());
        }
        for a in rs.positive_roots() {
            polys.push(&a.form() - &h);
        }
        for a in rs.positive_roots() {
            polys.push(&(-&a.form()) - &h);
        }
        polys.push(h);
        Forms { n, polys }
    }

    fn h(&self) -> usize {
        3 * self.n
    }
}

/// `sign * ∏ forms[i]^exps[i]`, exponents possibly negative.
#[derive(Clone)]
struct Term {
    negative: bool,
    exps: Vec<i32>,
}

/// Subword expansion over an arbitrary reduced word.
///
/// Each subword `i_1 < ... < i_k` contributes
/// `(-1)^l ∏_j (β_j - h)/β_j · h^{l-k} / ∏ gaps · ∏_{α∈R^+} α` to the
/// restriction at its product, with `β_j = σ_{i_1}...σ_{i_j} α_{i_j}` and a
/// skipped letter `r` after `i_j` contributing `σ_{i_1}...σ_{i_j} α_r`.
pub fn borel_row_for_word(
    rs: &RootSystem,
    word: &[usize],
) -> Result<BTreeMap<ElemId, Poly>, Error> {
    let forms = Forms::new(rs);
    let mut start = Term {
        negative: word.len() % 2 == 1,
        exps: vec![0; forms.polys.len()],
    };
    for k in 0..forms.n {
        start.exps[k] = 1;
    }
    let mut leaves: BTreeMap<ElemId, Vec<Term>> = BTreeMap::new();
    expand(rs, &forms, word, 0, ElemId::IDENTITY, start, &mut leaves)?;
    let mut out = BTreeMap::new();
    for (z, terms) in leaves {
        let p = sum_terms(&forms, &terms).map_err(|e| {
            Error::Consistency(format!(
                "Borel restriction at {} is not polynomial: {e}",
                rs.weyl().element(z).word_string()
            ))
        })?;
        if !p.is_zero() {
            out.insert(z, p);
        }
    }
    Ok(out)
}

/// Index of `±γ` among the forms, with the sign.
fn root_factor(rs: &RootSystem, r: &Root) -> (usize, bool) {
    let (k, pos) = rs.classify(r).expect("Weyl image of a root is a root");
    (k, !pos)
}

fn expand(
    rs: &RootSystem,
    forms: &Forms,
    word: &[usize],
    pos: usize,
    prefix: ElemId,
    term: Term,
    leaves: &mut BTreeMap<ElemId, Vec<Term>>,
) -> Result<(), Error> {
    if pos == word.len() {
        leaves.entry(prefix).or_default().push(term);
        return Ok(());
    }
    let i = word[pos];
    let simple = Root::simple(rs.rank(), i);

    let (k, neg) = root_factor(rs, &rs.act_root(prefix, &simple));
    let mut skipped = term.clone();
    skipped.exps[forms.h()] += 1;
    skipped.exps[k] -= 1;
    skipped.negative ^= neg;
    expand(rs, forms, word, pos + 1, prefix, skipped, leaves)?;

    let next = rs.weyl().right_simple(prefix, i);
    let (k, neg) = root_factor(rs, &rs.act_root(next, &simple));
    let mut taken = term;
    taken.exps[k] -= 1;
    taken.negative ^= neg;
    // β - h with β = ±γ
    taken.exps[if neg { 2 * forms.n + k } else { forms.n + k }] += 1;
    expand(rs, forms, word, pos + 1, next, taken, leaves)
}

/// Sums factored terms: the common factor is pulled out before expanding.
fn sum_terms(forms: &Forms, terms: &[Term]) -> Result<Poly, Error> {
    let len = forms.polys.len();
    let common: Vec<i32> = (0..len)
        .map(|i| terms.iter().map(|t| t.exps[i]).min().unwrap_or(0))
        .collect();
    let mut powers: BTreeMap<(usize, i32), Poly> = BTreeMap::new();
    let mut sum = Poly::zero();
    for t in terms {
        let mut p = Poly::one();
        for i in 0..len {
            let e = t.exps[i] - common[i];
            if e > 0 {
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| forms.polys[i].pow(e as u32));
                p = &p * &*pw;
            }
        }
        if t.negative {
            sum -= &p;
        } else {
            sum += &p;
        }
    }
    if sum.is_zero() {
        return Ok(sum);
    }
    for (i, &e) in common.iter().enumerate() {
        if e > 0 {
            sum = &sum * &forms.polys[i].pow(e as u32);
        }
        for _ in e..0 {
            sum = sum.div_exact(&forms.polys[i]).ok_or_else(|| {
                Error::NotPolynomial(format!("denominator factor {}", forms.polys[i]))
            })?;
        }
    }
    Ok(sum)
}

/// Single entry `stab_+(y)|_w`; zero unless `w ≤ y`.
pub fn stab_plus_borel(rs: &RootSystem, y: ElemId, w: ElemId) -> Result<Poly, Error> {
    if !rs.weyl().bruhat_leq(w, y) {
        return Ok(Poly::zero());
    }
    let row = borel_row_for_word(rs, rs.weyl().word(y))?;
    Ok(row.get(&w).cloned().unwrap_or_else(Poly::zero))
}
