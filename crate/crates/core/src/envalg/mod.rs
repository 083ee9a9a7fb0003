//! Enveloping algebra `U(g)`: PBW normal forms over the basis order of the
//! Lie algebra, commutators, and the symmetrization (Weyl ordering) map.
//!
//! A word is normal when its letters are non-decreasing in basis order.
//! Normalization rewrites the leftmost inverted adjacent pair,
//! `.. y x .. -> .. x y .. + .. [y, x] ..`, and memoizes the normal form of
//! every word it visits.

pub mod repr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebraSpec;
use crate::rational::{factorial, push_term, Rational};
use crate::symalg::{CommPoly, VarTable};
use crate::text::parse_sum;

pub use repr::{adjoint_matrices, defining_matrices, evaluate, Matrix};

/// Basis indices, left to right.
pub type Word = Vec<u8>;

/// Sparse noncommutative polynomial; every stored word is PBW-normal when
/// produced by an [`Envelope`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w, c.to_string()))).finish()
    }
}

pub fn is_normal(word: &[u8]) -> bool {
    word.windows(2).all(|p| p[0] <= p[1])
}

fn display_order(a: &Word, b: &Word) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(Word::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_normal(w))
    }

    pub fn homogeneous_part(&self, degree: usize) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() == degree).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn lower_part(&self, below: usize) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() < below).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    fn word_text(spec: &LieAlgebraSpec, w: &[u8]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let label = spec.operator_label(w[i] as usize);
            parts.push(if j - i == 1 { label } else { format!("{label}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    /// Canonical text: degree descending, then words lexicographically in
    /// basis order; coefficients as `p/q`.
    pub fn to_text(&self, spec: &LieAlgebraSpec) -> String {
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| display_order(a.0, b.0));
        let mut out = String::new();
        for (w, c) in entries {
            push_term(&mut out, c, &Self::word_text(spec, w));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Reads words as written; callers normalize through an [`Envelope`].
    pub fn parse_raw(text: &str, spec: &LieAlgebraSpec) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for term in parse_sum(text)? {
            let mut w = Word::new();
            for (label, k) in &term.factors {
                let i = spec.index_of(label).ok_or_else(|| Error::UnboundSymbol(label.clone()))?;
                if *k < 0 {
                    return Err(Error::Parse(format!("negative power of `{label}`")));
                }
                w.extend(std::iter::repeat_n(i as u8, *k as usize));
            }
            out.add_term(w, term.coeff);
        }
        Ok(out)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

/// Arithmetic context for `U(g)`: the algebra plus a memo of word normal
/// forms. The memo only caches; it never changes results.
pub struct Envelope {
    spec: Arc<LieAlgebraSpec>,
    table: Arc<VarTable>,
    memo: Mutex<HashMap<Word, Arc<NCPoly>>>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("algebra", &self.spec.name()).finish()
    }
}

impl Envelope {
    pub fn new(spec: Arc<LieAlgebraSpec>) -> Self {
        assert!(spec.dim() <= u8::MAX as usize, "basis too large for u8 words");
        let table = VarTable::lie(&spec);
        Envelope { spec, table, memo: Mutex::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    /// Variable table of the matching symmetric algebra.
    pub fn symmetric_table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn generator(&self, i: usize) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(vec![i as u8], Rational::one());
        p
    }

    pub fn generator_named(&self, label: &str) -> Result<NCPoly> {
        let i = self.spec.index_of(label).ok_or_else(|| Error::UnboundSymbol(label.into()))?;
        Ok(self.generator(i))
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly> {
        Ok(self.normalize(&NCPoly::parse_raw(text, &self.spec)?))
    }

    pub fn text(&self, p: &NCPoly) -> String {
        p.to_text(&self.spec)
    }

    /// PBW normal form of a single word.
    pub fn normalize_word(&self, word: &[u8]) -> Arc<NCPoly> {
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(word) {
            return hit.clone();
        }
        let result = match word.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let mut p = NCPoly::zero();
                p.add_term(word.to_vec(), Rational::one());
                p
            }
            Some(i) => {
                let (y, x) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut acc = (*self.normalize_word(&swapped)).clone();
                for (k, c) in self.spec.bracket(y as usize, x as usize) {
                    let mut w = Vec::with_capacity(word.len() - 1);
                    w.extend_from_slice(&word[..i]);
                    w.push(*k as u8);
                    w.extend_from_slice(&word[i + 2..]);
                    for (nw, nc) in self.normalize_word(&w).terms() {
                        acc.add_term(nw.clone(), nc * c);
                    }
                }
                acc
            }
        };
        let result = Arc::new(result);
        self.memo.lock().expect("memo poisoned").insert(word.to_vec(), result.clone());
        result
    }

    pub fn normalize(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            if is_normal(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                for (nw, nc) in self.normalize_word(w).terms() {
                    out.add_term(nw.clone(), nc * c);
                }
            }
        }
        out
    }

    /// Concatenation followed by PBW rewriting.
    pub fn multiply(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                let xy = x * y;
                for (nw, nc) in self.normalize_word(&w).terms() {
                    out.add_term(nw.clone(), nc * &xy);
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[&NCPoly]) -> NCPoly {
        factors.iter().fold(NCPoly::one(), |acc, f| self.multiply(&acc, f))
    }

    pub fn power(&self, a: &NCPoly, k: usize) -> NCPoly {
        (0..k).fold(NCPoly::one(), |acc, _| self.multiply(&acc, a))
    }

    /// `ab - ba` in normal form.
    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        &self.multiply(a, b) - &self.multiply(b, a)
    }

    /// Weyl ordering: each monomial `x_{j1}..x_{jp}` goes to the average of
    /// all orderings of `X_{j1}..X_{jp}`, then to normal form.
    pub fn symmetrize(&self, m: &CommPoly) -> Result<NCPoly> {
        let table = m.table();
        let map = table
            .vars()
            .iter()
            .map(|v| self.spec.index_of(&v.label).ok_or_else(|| Error::UnboundSymbol(v.label.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut out = NCPoly::zero();
        for (e, c) in m.terms() {
            let mut letters: Vec<u8> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k < 0 {
                    return Err(Error::Unsupported("symmetrize: negative exponent".into()));
                }
                letters.extend(std::iter::repeat_n(map[i] as u8, k as usize));
            }
            letters.sort_unstable();
            let mut acc = NCPoly::zero();
            let mut count = 0u64;
            loop {
                for (nw, nc) in self.normalize_word(&letters).terms() {
                    acc.add_term(nw.clone(), nc.clone());
                }
                count += 1;
                if !next_permutation(&mut letters) {
                    break;
                }
            }
            // averaging over distinct arrangements equals averaging over all p!
            let weight = c / Rational::from_integer(count.into());
            for (w, x) in acc.terms() {
                out.add_term(w.clone(), x * &weight);
            }
        }
        Ok(out)
    }

    /// Average of the products of `factors` over all orderings.
    pub fn sym_product(&self, factors: &[NCPoly]) -> Result<NCPoly> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        let mut order: Vec<usize> = (0..factors.len()).collect();
        let mut acc = NCPoly::zero();
        loop {
            let refs: Vec<&NCPoly> = order.iter().map(|&i| &factors[i]).collect();
            acc = &acc + &self.product(&refs);
            if !next_permutation(&mut order) {
                break;
            }
        }
        let n = Rational::from_integer(factorial(factors.len()));
        Ok(acc.scale(&(Rational::one() / n)))
    }

    /// Homogeneous component of the given degree read as a commutative
    /// polynomial (the principal symbol when `degree` is the top degree).
    pub fn symbol(&self, p: &NCPoly, degree: usize) -> CommPoly {
        let mut out = CommPoly::zero(&self.table);
        for (w, c) in p.terms() {
            if w.len() != degree {
                continue;
            }
            let mut e = vec![0; self.table.len()];
            for &l in w {
                e[l as usize] += 1;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn top_symbol(&self, p: &NCPoly) -> CommPoly {
        match p.degree() {
            Some(d) => self.symbol(p, d),
            None => CommPoly::zero(&self.table),
        }
    }

    /// Rewrites by repeatedly letting `pick` choose which inverted adjacent
    /// pair to rewrite (given the inversion positions of the chosen term).
    /// No memo; used to test confluence of the rewriting system.
    pub fn normalize_with<F>(&self, p: &NCPoly, mut pick: F) -> NCPoly
    where
        F: FnMut(&[usize]) -> usize,
    {
        let mut pending = p.clone();
        let mut done = NCPoly::zero();
        while let Some((w, c)) = pending.terms.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            pending.terms.remove(&w);
            let inversions: Vec<usize> =
                w.windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i).collect();
            if inversions.is_empty() {
                done.add_term(w, c);
                continue;
            }
            let i = inversions[pick(&inversions) % inversions.len()];
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            pending.add_term(swapped, c.clone());
            for (k, s) in self.spec.bracket(w[i] as usize, w[i + 1] as usize) {
                let mut nw = w[..i].to_vec();
                nw.push(*k as u8);
                nw.extend_from_slice(&w[i + 2..]);
                pending.add_term(nw, &c * s);
            }
        }
        done
    }
}

/// Lexicographic next permutation; false when wrapped to the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests;
