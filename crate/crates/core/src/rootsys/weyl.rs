use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cartan::CartanDatum;
use crate::Error;

/// Index of an element inside its [`WeylGroup`] enumeration.
///
/// Elements are numbered by `(length, reduced word)`, so the identity is
/// always `ElemId(0)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub usize);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

/// A Weyl group element: canonical reduced word, length and action matrix.
///
/// `matrix[i * rank + j]` is the coefficient of `α_i` in `w(α_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<i32>,
}

impl WeylElement {
    /// Simple-reflection indices (0-based), leftmost factor first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &[i32] {
        &self.matrix
    }

    /// Renders the word as `e` or `s1s2...` with 1-based indices.
    pub fn word_string(&self) -> alloc::string::String {
        word_to_string(&self.word)
    }
}

pub fn word_to_string(word: &[usize]) -> alloc::string::String {
    if word.is_empty() {
        return "e".into();
    }
    let mut s = alloc::string::String::new();
    for &i in word {
        s.push_str(&format!("s{}", i + 1));
    }
    s
}

/// Parses `e`, `s2s1`, `s2 s1` or `2,1` into 0-based indices.
pub fn parse_word(src: &str, rank: usize) -> Result<Vec<usize>, Error> {
    let src = src.trim();
    if src.is_empty() || src == "e" {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(format!("bad Weyl word '{src}'"));
    let mut out = Vec::new();
    let pieces: Vec<&str> = if src.contains('s') {
        src.split('s')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .collect()
    } else {
        src.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect()
    };
    for p in pieces {
        let i: usize = p.trim().parse().map_err(|_| bad())?;
        if i == 0 || i > rank {
            return Err(bad());
        }
        out.push(i - 1);
    }
    Ok(out)
}

/// Full enumeration of a finite Weyl group with multiplication tables for
/// the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    lookup: BTreeMap<Vec<i32>, usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    longest: usize,
}

impl WeylGroup {
    pub(crate) fn enumerate(cartan: &CartanDatum, max_order: usize) -> Result<WeylGroup, Error> {
        let r = cartan.rank();
        let mut id = vec![0i32; r * r];
        for i in 0..r {
            id[i * r + i] = 1;
        }
        // Breadth-first search over left multiplication; the distance from
        // the identity is the length.
        let mut mats: Vec<Vec<i32>> = vec![id.clone()];
        let mut lens: Vec<usize> = vec![0];
        let mut lookup: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
        lookup.insert(id, 0);
        let mut left: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < mats.len() {
            let mut row = Vec::with_capacity(r);
            for i in 0..r {
                let m = left_simple(cartan, i, &mats[head]);
                let idx = match lookup.get(&m) {
                    Some(&k) => k,
                    None => {
                        if mats.len() >= max_order {
                            return Err(Error::TooLarge(format!(
                                "Weyl group order exceeds the bound {max_order}"
                            )));
                        }
                        let k = mats.len();
                        lookup.insert(m.clone(), k);
                        mats.push(m);
                        lens.push(lens[head] + 1);
                        k
                    }
                };
                row.push(idx);
            }
            left.push(row);
            head += 1;
        }
        let n = mats.len();

        // Canonical words by removing the smallest left descent.
        let mut by_len: Vec<usize> = (0..n).collect();
        by_len.sort_by_key(|&k| lens[k]);
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        for &k in &by_len[1..] {
            let i = (0..r)
                .find(|&i| lens[left[k][i]] < lens[k])
                .expect("nonidentity element has a left descent");
            let mut w = vec![i];
            w.extend_from_slice(words[left[k][i]].as_ref().expect("shorter word known"));
            words[k] = Some(w);
        }
        let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.unwrap()).collect();

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| (lens[a], &words[a]).cmp(&(lens[b], &words[b])));
        let mut new_of = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }

        let mut elements = Vec::with_capacity(n);
        let mut lookup2 = BTreeMap::new();
        let mut left2 = Vec::with_capacity(n);
        for &old in &order {
            lookup2.insert(mats[old].clone(), elements.len());
            left2.push(left[old].iter().map(|&k| new_of[k]).collect::<Vec<_>>());
            elements.push(WeylElement {
                word: words[old].clone(),
                matrix: mats[old].clone(),
            });
        }

        let mut right = Vec::with_capacity(n);
        for e in &elements {
            let row = (0..r)
                .map(|i| lookup2[&right_simple(cartan, &e.matrix, i)])
                .collect::<Vec<_>>();
            right.push(row);
        }

        let mut inverse = vec![0; n];
        for (k, e) in elements.iter().enumerate() {
            // (s_{i1}...s_{ik})^{-1} = s_{ik}...s_{i1}
            let mut acc = 0;
            for &i in &e.word {
                acc = left2[acc][i];
            }
            inverse[k] = acc;
        }
        let longest = n - 1;
        Ok(WeylGroup {
            rank: r,
            elements,
            lookup: lookup2,
            left: left2,
            right,
            inverse,
            longest,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = ElemId> + DoubleEndedIterator {
        (0..self.elements.len()).map(ElemId)
    }

    pub fn element(&self, w: ElemId) -> &WeylElement {
        &self.elements[w.0]
    }

    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.elements[w.0].word
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w.0].word.len()
    }

    pub fn identity(&self) -> ElemId {
        ElemId::IDENTITY
    }

    pub fn longest(&self) -> ElemId {
        ElemId(self.longest)
    }

    pub fn simple(&self, i: usize) -> ElemId {
        ElemId(self.left[0][i])
    }

    /// `s_i * w`.
    pub fn left_simple(&self, i: usize, w: ElemId) -> ElemId {
        ElemId(self.left[w.0][i])
    }

    /// `w * s_i`.
    pub fn right_simple(&self, w: ElemId, i: usize) -> ElemId {
        ElemId(self.right[w.0][i])
    }

    pub fn mul(&self, u: ElemId, w: ElemId) -> ElemId {
        let mut acc = u.0;
        for &i in &self.elements[w.0].word {
            acc = self.right[acc][i];
        }
        ElemId(acc)
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        ElemId(self.inverse[w.0])
    }

    /// Product of simple reflections, leftmost first. Need not be reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId, Error> {
        let mut acc = 0;
        for &i in word {
            if i >= self.rank {
                return Err(Error::Domain(format!(
                    "simple reflection index {} out of range",
                    i + 1
                )));
            }
            acc = self.right[acc][i];
        }
        Ok(ElemId(acc))
    }

    pub fn find_matrix(&self, matrix: &[i32]) -> Option<ElemId> {
        self.lookup.get(matrix).map(|&k| ElemId(k))
    }

    pub fn is_left_descent(&self, i: usize, w: ElemId) -> bool {
        self.length(self.left_simple(i, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: ElemId, i: usize) -> bool {
        self.length(self.right_simple(w, i)) < self.length(w)
    }

    /// Action on root-lattice coordinates.
    pub fn act(&self, w: ElemId, v: &[i32]) -> Vec<i32> {
        let m = &self.elements[w.0].matrix;
        let r = self.rank;
        (0..r)
            .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
            .collect()
    }

    /// Bruhat order through descents: if `s w < w` then `u ≤ w` iff
    /// `min(u, s u) ≤ s w`.
    pub fn bruhat_leq(&self, u: ElemId, w: ElemId) -> bool {
        let (mut u, mut w) = (u, w);
        loop {
            let (lu, lw) = (self.length(u), self.length(w));
            if lu > lw {
                return false;
            }
            if lu == 0 {
                return true;
            }
            if lu == lw {
                return u == w;
            }
            let i = self.elements[w.0].word[0];
            let su = self.left_simple(i, u);
            if self.length(su) < lu {
                u = su;
            }
            w = self.left_simple(i, w);
        }
    }

    /// All elements below `w`, by the subword criterion on its canonical word.
    pub fn bruhat_ideal_subwords(&self, w: ElemId) -> Vec<bool> {
        let mut reach = vec![false; self.order()];
        reach[0] = true;
        let mut current = vec![0usize];
        for &i in &self.elements[w.0].word {
            let mut next = current.clone();
            for &x in &current {
                let y = self.right[x][i];
                if !reach[y] {
                    reach[y] = true;
                    next.push(y);
                }
            }
            current = next;
        }
        reach
    }

    /// Every reduced word of `w`, lexicographically sorted.
    pub fn reduced_words(&self, w: ElemId) -> Vec<Vec<usize>> {
        let mut memo: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        self.reduced_words_rec(w.0, &mut memo)
    }

    fn reduced_words_rec(
        &self,
        w: usize,
        memo: &mut BTreeMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in 0..self.rank {
            let s = self.left[w][i];
            if self.elements[s].word.len() < self.elements[w].word.len() {
                for tail in self.reduced_words_rec(s, memo) {
                    let mut word = vec![i];
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        memo.insert(w, out.clone());
        out
    }

    /// A reduced word of `w` other than the canonical one, if any.
    pub fn alternative_reduced_word(&self, w: ElemId) -> Option<Vec<usize>> {
        let canonical = self.word(w);
        // Greedy removal of the largest left descent usually differs.
        let mut word = Vec::new();
        let mut x = w;
        while x != ElemId::IDENTITY {
            let i = (0..self.rank)
                .rev()
                .find(|&i| self.is_left_descent(i, x))
                .expect("descent exists");
            word.push(i);
            x = self.left_simple(i, x);
        }
        if word != canonical {
            return Some(word);
        }
        self.reduced_words(w).into_iter().find(|v| v != canonical)
    }
}

fn left_simple(c: &CartanDatum, i: usize, m: &[i32]) -> Vec<i32> {
    let r = c.rank();
    let mut out = m.to_vec();
    for col in 0..r {
        let mut acc = m[i * r + col];
        for j in 0..r {
            acc -= c.entry(j, i) * m[j * r + col];
        }
        out[i * r + col] = acc;
    }
    out
}

fn right_simple(c: &CartanDatum, m: &[i32], i: usize) -> Vec<i32> {
    let r = c.rank();
    let mut out = m.to_vec();
    for row in 0..r {
        for col in 0..r {
            out[row * r + col] = m[row * r + col] - c.entry(col, i) * m[row * r + i];
        }
    }
    out
}
