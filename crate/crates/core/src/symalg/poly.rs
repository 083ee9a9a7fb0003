use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebraSpec;
use crate::rational::{push_term, Rational};
use crate::text::parse_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarRole {
    /// Ordinary commuting symbol (Lie basis element, generator symbol).
    Plain,
    /// Canonical position `s_k` (0-based pair index).
    Position(usize),
    /// Canonical momentum `p_k`.
    Momentum(usize),
    /// Central constant: Poisson-commutes with everything.
    Central,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub label: String,
    /// Negative exponents allowed.
    pub laurent: bool,
    pub role: VarRole,
}

impl Variable {
    pub fn plain(label: impl Into<String>) -> Self {
        Variable { label: label.into(), laurent: false, role: VarRole::Plain }
    }
}

/// Ordered variable list shared by every polynomial of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    vars: Vec<Variable>,
}

impl VarTable {
    pub fn new(vars: Vec<Variable>) -> Arc<Self> {
        Arc::new(VarTable { vars })
    }

    pub fn plain<S: AsRef<str>>(labels: &[S]) -> Arc<Self> {
        Self::new(labels.iter().map(|l| Variable::plain(l.as_ref())).collect())
    }

    /// Variables of `S(g)`: the Lie basis labels in basis order.
    pub fn lie(spec: &LieAlgebraSpec) -> Arc<Self> {
        Self::plain(spec.labels())
    }

    /// Phase space `s_1..s_n` (Laurent), `p_1..p_n`, `a_1..a_n` (the central
    /// couplings), then any extra central parameters.
    pub fn phase_space(n: usize, parameters: &[&str]) -> Arc<Self> {
        let mut vars = Vec::with_capacity(3 * n + parameters.len());
        for k in 0..n {
            vars.push(Variable { label: format!("s{}", k + 1), laurent: true, role: VarRole::Position(k) });
        }
        for k in 0..n {
            vars.push(Variable { label: format!("p{}", k + 1), laurent: false, role: VarRole::Momentum(k) });
        }
        for k in 0..n {
            vars.push(Variable { label: format!("a{}", k + 1), laurent: false, role: VarRole::Central });
        }
        for p in parameters {
            vars.push(Variable { label: (*p).to_string(), laurent: false, role: VarRole::Central });
        }
        Self::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars[i]
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.label == label)
    }
}

pub type Exponents = Vec<i32>;

/// Display order on monomials: total degree descending, then exponent vectors
/// lexicographically descending (equivalently, sorted factor words ascending).
pub fn display_cmp(a: &Exponents, b: &Exponents) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Sparse commutative polynomial over exact rationals, Laurent in the
/// variables flagged so. Canonical: no zero coefficients are stored.
#[derive(Clone)]
pub struct CommPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for CommPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
    }
}

impl Eq for CommPoly {}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

impl CommPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        CommPoly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(table);
        p.add_term(vec![0; table.len()], c);
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn var(table: &Arc<VarTable>, i: usize) -> Self {
        let mut e = vec![0; table.len()];
        e[i] = 1;
        Self::monomial(table, e, Rational::one())
    }

    pub fn var_named(table: &Arc<VarTable>, label: &str) -> Result<Self> {
        let i = table.index_of(label).ok_or_else(|| Error::UnboundSymbol(label.into()))?;
        Ok(Self::var(table, i))
    }

    pub fn monomial(table: &Arc<VarTable>, exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(table);
        p.add_term(exps, c);
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn same_ring(&self, other: &CommPoly) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    fn assert_ring(&self, other: &CommPoly) {
        assert!(self.same_ring(other), "polynomials from different rings");
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        debug_assert_eq!(exps.len(), self.table.len());
        debug_assert!(exps.iter().zip(self.table.vars()).all(|(&e, v)| e >= 0 || v.laurent));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as i64).sum()).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as i64).sum()).min()
    }

    pub fn homogeneous_part(&self, degree: i64) -> CommPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>() == degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        CommPoly { table: self.table.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> CommPoly {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        CommPoly { table: self.table.clone(), terms }
    }

    pub fn mul_monomial(&self, exps: &Exponents, c: &Rational) -> CommPoly {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c)).collect();
        CommPoly { table: self.table.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut out = Self::one(&self.table);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> CommPoly {
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.add_term(d, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.table.len()];
        for e in self.terms.keys() {
            for (u, &x) in used.iter_mut().zip(e) {
                *u |= x != 0;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    /// Substitutes `images[i]` for variable `i`; images live in a common ring.
    /// Negative exponents are not supported here.
    pub fn substitute(&self, images: &[CommPoly], target: &Arc<VarTable>) -> CommPoly {
        assert_eq!(images.len(), self.table.len());
        let mut powers: Vec<Vec<CommPoly>> = vec![vec![CommPoly::one(target)]; images.len()];
        let mut out = CommPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = CommPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                assert!(k >= 0, "substitute: negative exponent");
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            out = &out + &term;
        }
        out
    }

    /// Re-expresses this polynomial in another table, mapping variables by
    /// label; fails if a used label is missing there.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<CommPoly> {
        let map: Vec<Option<usize>> = self.table.vars().iter().map(|v| target.index_of(&v.label)).collect();
        let mut out = CommPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    let j = map[i].ok_or_else(|| Error::UnboundSymbol(self.table.var(i).label.clone()))?;
                    ne[j] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn monomial_text(table: &VarTable, e: &Exponents) -> String {
        let mut parts = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(table.var(i).label.clone()),
                _ => parts.push(format!("{}^{}", table.var(i).label, x)),
            }
        }
        parts.join("*")
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| display_cmp(a.0, b.0));
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.sorted_terms() {
            push_term(&mut out, c, &Self::monomial_text(&self.table, e));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(text: &str, table: &Arc<VarTable>) -> Result<CommPoly> {
        let mut out = CommPoly::zero(table);
        for term in parse_sum(text)? {
            let mut e = vec![0; table.len()];
            for (label, k) in &term.factors {
                let i = table.index_of(label).ok_or_else(|| Error::UnboundSymbol(label.clone()))?;
                if *k < 0 && !table.var(i).laurent {
                    return Err(Error::Parse(format!("negative exponent on non-Laurent `{label}`")));
                }
                e[i] += k;
            }
            out.add_term(e, term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        self.assert_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        self.assert_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        self.assert_ring(rhs);
        let mut out = CommPoly::zero(&self.table);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CommPoly {
            type Output = CommPoly;
            fn $method(self, rhs: CommPoly) -> CommPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CommPoly> for CommPoly {
            type Output = CommPoly;
            fn $method(self, rhs: &CommPoly) -> CommPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn table() -> Arc<VarTable> {
        VarTable::plain(&["x", "y", "z"])
    }

    #[test]
    fn canonical_text() {
        let t = table();
        let p = CommPoly::parse("- 1/2*z + 2*x*y + x^2 + 3", &t).unwrap();
        assert_eq!(p.to_text(), "x^2 + 2*x*y - 1/2*z + 3");
        assert_eq!(CommPoly::zero(&t).to_text(), "0");
        assert_eq!(CommPoly::parse("x - x", &t).unwrap(), CommPoly::zero(&t));
    }

    #[test]
    fn laurent_exponents() {
        let t = VarTable::phase_space(2, &[]);
        let p = CommPoly::parse("a1^2*s1^-2*s2^2", &t).unwrap();
        assert_eq!(p.to_text(), "s1^-2*s2^2*a1^2");
        assert!(CommPoly::parse("p1^-1", &t).is_err());
        let d = p.derivative(0);
        assert_eq!(d.to_text(), "-2*s1^-3*s2^2*a1^2");
    }

    #[test]
    fn arithmetic_basics() {
        let t = table();
        let x = CommPoly::var(&t, 0);
        let y = CommPoly::var(&t, 1);
        let s = &x + &y;
        assert_eq!(s.pow(2).to_text(), "x^2 + 2*x*y + y^2");
        assert_eq!((&s - &s).to_text(), "0");
        assert_eq!(s.scale(&frac(1, 2)).to_text(), "1/2*x + 1/2*y");
        assert_eq!(s.pow(3).degree(), Some(3));
        let images = [CommPoly::constant(&t, int(2)), y.clone(), x.clone()];
        let q = CommPoly::parse("x*z^2", &t).unwrap();
        assert_eq!(q.substitute(&images, &t).to_text(), "2*x^2");
    }

    #[test]
    fn unknown_symbol() {
        assert_eq!(CommPoly::parse("w", &table()), Err(Error::UnboundSymbol("w".into())));
    }
}
