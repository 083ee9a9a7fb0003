//! Centralizers of a subalgebra in `S(g)` and `U(g)`, degree by degree.
//!
//! For the Cartan subalgebra `ad(h)` is diagonal, so the degree-`d` slice of
//! the centralizer is spanned by the weight-zero monomials. For a general
//! (linear) subalgebra the slice is computed as the joint kernel of the
//! bracket operators on the full monomial space.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::envalg::{Envelope, NCPoly, Word};
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebraSpec, WeightVector};
use crate::linalg::{solve_columns, RowEchelon, SparseRow};
use crate::rational::Rational;
use crate::symalg::{berezin_bracket, display_cmp, CommPoly, Exponents, VarTable};

#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasis {
    pub degree: usize,
    pub elements: Vec<CommPoly>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// All exponent vectors of total degree `degree` over `nvars` variables, in
/// display order.
pub fn monomials_of_degree(nvars: usize, degree: usize) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = (0..nvars)
        .combinations_with_replacement(degree)
        .map(|combo| {
            let mut e = vec![0; nvars];
            for i in combo {
                e[i] += 1;
            }
            e
        })
        .collect();
    out.sort_by(display_cmp);
    out
}

fn monomial_weight(spec: &LieAlgebraSpec, e: &Exponents) -> WeightVector {
    let mut w = WeightVector::zero(spec.cartan().len());
    for (i, &k) in e.iter().enumerate() {
        if k != 0 {
            w.add_scaled(spec.weight(i), k as i64);
        }
    }
    w
}

/// Weight-zero monomials of the given degree in `S(g)`.
pub fn weight_zero_basis(spec: &LieAlgebraSpec, degree: usize) -> GradedBasis {
    let table = VarTable::lie(spec);
    let elements = monomials_of_degree(spec.dim(), degree)
        .into_iter()
        .filter(|e| monomial_weight(spec, e).is_zero())
        .map(|e| CommPoly::monomial(&table, e, Rational::one()))
        .collect();
    GradedBasis { degree, elements }
}

fn coords(p: &CommPoly, index: &HashMap<Exponents, usize>) -> SparseRow {
    let mut row: SparseRow = p.terms().map(|(e, c)| (index[e], c.clone())).collect();
    row.sort_by_key(|(i, _)| *i);
    row
}

/// Joint kernel of `{x, ·}` for the (linear) `subalgebra` elements on the
/// degree-`degree` polynomials.
pub fn kernel_centralizer(spec: &LieAlgebraSpec, subalgebra: &[CommPoly], degree: usize) -> Result<GradedBasis> {
    let table = VarTable::lie(spec);
    let mut subs = Vec::with_capacity(subalgebra.len());
    for x in subalgebra {
        if x.terms().any(|(e, _)| e.iter().sum::<i32>() != 1) {
            return Err(Error::Unsupported(format!("subalgebra element `{x}` is not linear")));
        }
        subs.push(x.embed(&table)?);
    }
    let monos = monomials_of_degree(spec.dim(), degree);
    let index: HashMap<Exponents, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    // rows are (subalgebra element, target monomial); columns source monomials
    let mut rows: Vec<SparseRow> = vec![Vec::new(); subs.len() * monos.len()];
    for (col, e) in monos.iter().enumerate() {
        let m = CommPoly::monomial(&table, e.clone(), Rational::one());
        for (s, x) in subs.iter().enumerate() {
            let image = berezin_bracket(x, &m, spec)?;
            for (row, c) in coords(&image, &index) {
                rows[s * monos.len() + row].push((col, c));
            }
        }
    }
    let mut ech = RowEchelon::from_rows(monos.len(), rows.into_iter().filter(|r| !r.is_empty()));
    let elements = ech
        .kernel()
        .into_iter()
        .map(|v| {
            let mut p = CommPoly::zero(&table);
            for (i, c) in v.into_iter().enumerate() {
                p.add_term(monos[i].clone(), c);
            }
            primitive(&p)
        })
        .collect();
    Ok(GradedBasis { degree, elements })
}

/// Scales to integer coefficients without common factor, first term
/// (display order) positive.
pub fn primitive(p: &CommPoly) -> CommPoly {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return p.clone();
    }
    let lead_negative = p.sorted_terms().first().map(|(_, c)| c.is_negative()).unwrap_or(false);
    let mut scale = Rational::new(den, num);
    if lead_negative {
        scale = -scale;
    }
    p.scale(&scale)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    pub poly: CommPoly,
}

/// Generators of a commutative subalgebra together with the algebraic
/// relations found among them. Relations are polynomials over `symbols`,
/// one symbol per generator.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
    symbols: Arc<VarTable>,
    ambient: Arc<VarTable>,
    pub relations: Vec<CommPoly>,
}

impl GeneratorSet {
    pub fn new(ambient: Arc<VarTable>, generators: Vec<Generator>) -> Self {
        let labels: Vec<&str> = generators.iter().map(|g| g.label.as_str()).collect();
        let symbols = VarTable::plain(&labels);
        GeneratorSet { generators, symbols, ambient, relations: Vec::new() }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn symbols(&self) -> &Arc<VarTable> {
        &self.symbols
    }

    pub fn ambient(&self) -> &Arc<VarTable> {
        &self.ambient
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    /// Substitutes generator polynomials into a symbol polynomial.
    pub fn expand(&self, symbolic: &CommPoly) -> CommPoly {
        let images: Vec<CommPoly> = self.generators.iter().map(|g| g.poly.clone()).collect();
        symbolic.substitute(&images, &self.ambient)
    }

    pub fn get(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }
}

/// Exponent vectors over symbols with the given weights summing to `target`,
/// in display order.
pub fn weighted_monomials(weights: &[usize], target: usize) -> Vec<Exponents> {
    fn rec(weights: &[usize], i: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = if w == 0 { 0 } else { left / w };
        for k in 0..=max {
            cur[i] = k as i32;
            rec(weights, i + 1, left - k * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, target, &mut vec![0; weights.len()], &mut out);
    out.sort_by(display_cmp);
    out
}

/// Column preference used when expansions are not unique: monomials built
/// from earlier symbols come first, so products involving the last symbols
/// are the ones left out.
fn preference_key(e: &Exponents) -> Vec<usize> {
    let mut key: Vec<usize> = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        key.extend(std::iter::repeat_n(i, k.max(0) as usize));
    }
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

fn preference_cmp(weights: &[usize], a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let wdeg = |e: &Exponents| e.iter().zip(weights).map(|(&k, &w)| k as usize * w).sum::<usize>();
    wdeg(a).cmp(&wdeg(b)).then_with(|| preference_key(a).cmp(&preference_key(b)))
}

fn cycle_label(spec: &LieAlgebraSpec, e: &Exponents) -> Option<String> {
    // single factors that are Cartan generators keep their own label
    let factors: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
    if let [only] = factors.as_slice() {
        return Some(spec.label(*only).to_string());
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for &f in &factors {
        let l = spec.label(f);
        let digits: Vec<u32> = l.strip_prefix('e')?.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?;
        if digits.len() != 2 || digits[0] == digits[1] {
            return None;
        }
        edges.push((digits[0], digits[1]));
    }
    let start = edges.iter().map(|e| e.0).min()?;
    let mut path = vec![start];
    let mut used = vec![false; edges.len()];
    let mut at = start;
    for _ in 0..edges.len() {
        let k = (0..edges.len()).find(|&k| !used[k] && edges[k].0 == at)?;
        used[k] = true;
        at = edges[k].1;
        path.push(at);
    }
    if at != start {
        return None;
    }
    path.pop();
    let mut seen = path.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != path.len() {
        return None;
    }
    Some(format!("p{}", path.iter().map(|d| d.to_string()).collect::<String>()))
}

/// Minimal generating set of the Cartan centralizer in `S(g)` up to
/// `max_degree`: at each degree the weight-zero slice is reduced modulo
/// products of earlier generators and a monomial basis of the complement is
/// adjoined.
pub fn extract_generators(spec: &LieAlgebraSpec, max_degree: usize) -> GeneratorSet {
    let table = VarTable::lie(spec);
    let mut gens: Vec<Generator> = Vec::new();
    for d in 1..=max_degree {
        let slice = weight_zero_basis(spec, d);
        let index: HashMap<Exponents, usize> = slice
            .elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.terms().next().expect("monomial").0.clone(), i))
            .collect();
        let mut ech = RowEchelon::new(index.len());
        let current = GeneratorSet::new(table.clone(), gens.clone());
        for m in weighted_monomials(&current.degrees(), d) {
            let sym = CommPoly::monomial(current.symbols(), m, Rational::one());
            ech.insert(&coords(&current.expand(&sym), &index));
        }
        let mut fresh: Vec<Generator> = Vec::new();
        for m in &slice.elements {
            if ech.insert(&coords(m, &index)) {
                let e = m.terms().next().expect("monomial").0;
                let label = cycle_label(spec, e).unwrap_or_else(|| format!("g{}_{}", d, fresh.len() + 1));
                fresh.push(Generator { label, degree: d, poly: m.clone() });
            }
        }
        fresh.sort_by(|a, b| a.label.len().cmp(&b.label.len()).then_with(|| a.label.cmp(&b.label)));
        gens.extend(fresh);
    }
    GeneratorSet::new(table, gens)
}

/// Exact linear dependencies among products of generators, up to weighted
/// degree `degree_bound`, excluding consequences of lower-degree relations.
pub fn find_relations(gens: &GeneratorSet, degree_bound: usize) -> Vec<CommPoly> {
    let weights = gens.degrees();
    let symbols = gens.symbols().clone();
    let mut relations: Vec<(usize, CommPoly)> = Vec::new();
    for d in 1..=degree_bound {
        let monos = weighted_monomials(&weights, d);
        if monos.len() < 2 {
            continue;
        }
        let sym_index: HashMap<Exponents, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut amb_index: HashMap<Exponents, usize> = HashMap::new();
        let mut rows: Vec<SparseRow> = Vec::new();
        for (col, m) in monos.iter().enumerate() {
            let expanded = gens.expand(&CommPoly::monomial(&symbols, m.clone(), Rational::one()));
            for (e, c) in expanded.terms() {
                let next = amb_index.len();
                let row = *amb_index.entry(e.clone()).or_insert(next);
                if row == rows.len() {
                    rows.push(Vec::new());
                }
                rows[row].push((col, c.clone()));
            }
        }
        let kernel = RowEchelon::from_rows(monos.len(), rows).kernel();
        if kernel.is_empty() {
            continue;
        }
        let mut ideal = RowEchelon::new(monos.len());
        for (rd, r) in &relations {
            for m in weighted_monomials(&weights, d - rd) {
                let shifted = r.mul_monomial(&m, &Rational::one());
                ideal.insert(&coords(&shifted, &sym_index));
            }
        }
        for v in kernel {
            let row: SparseRow =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
            if ideal.insert(&row) {
                let mut p = CommPoly::zero(&symbols);
                for (i, c) in row {
                    p.add_term(monos[i].clone(), c);
                }
                relations.push((d, primitive(&p)));
            }
        }
    }
    relations.into_iter().map(|(_, r)| r).collect()
}

/// Writes `f` as a polynomial in the generator symbols. When the expansion
/// is not unique the solution avoids products of the latest symbols.
pub fn express_in_generators(f: &CommPoly, gens: &GeneratorSet) -> Result<CommPoly> {
    let f = f.embed(gens.ambient())?;
    let weights = gens.degrees();
    let symbols = gens.symbols();
    let Some(top) = f.degree() else {
        return Ok(CommPoly::zero(symbols));
    };
    if f.min_degree().unwrap_or(0) < 0 {
        return Err(Error::Inexpressible(format!("`{f}` has negative exponents")));
    }
    let mut candidates: Vec<Exponents> = (0..=top as usize).flat_map(|d| weighted_monomials(&weights, d)).collect();
    candidates.sort_by(|a, b| preference_cmp(&weights, a, b));
    let columns: Vec<CommPoly> =
        candidates.iter().map(|m| gens.expand(&CommPoly::monomial(symbols, m.clone(), Rational::one()))).collect();
    let solution = solve_by_coordinates(
        columns.iter().map(|c| c.terms().map(|(e, x)| (e.clone(), x.clone())).collect()).collect(),
        f.terms().map(|(e, x)| (e.clone(), x.clone())).collect(),
    )
    .ok_or_else(|| Error::Inexpressible(f.to_text()))?;
    let mut out = CommPoly::zero(symbols);
    for (m, c) in candidates.into_iter().zip(solution) {
        out.add_term(m, c);
    }
    Ok(out)
}

fn solve_by_coordinates<K: std::hash::Hash + Eq + Clone>(
    columns: Vec<Vec<(K, Rational)>>,
    target: Vec<(K, Rational)>,
) -> Option<Vec<Rational>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut intern = |k: &K| {
        let next = index.len();
        *index.entry(k.clone()).or_insert(next)
    };
    let cols: Vec<SparseRow> =
        columns.iter().map(|c| c.iter().map(|(k, x)| (intern(k), x.clone())).collect()).collect();
    let tgt: SparseRow = target.iter().map(|(k, x)| (intern(k), x.clone())).collect();
    solve_columns(index.len(), &cols, &tgt)
}

/// Generators of a subalgebra of `U(g)`; a symbol monomial stands for the
/// product of its generators taken in symbol order.
pub struct NcGeneratorSet {
    symbols: Arc<VarTable>,
    degrees: Vec<usize>,
    elements: Vec<NCPoly>,
}

impl NcGeneratorSet {
    pub fn new(labels: &[&str], degrees: Vec<usize>, elements: Vec<NCPoly>) -> Self {
        assert_eq!(labels.len(), elements.len());
        assert_eq!(labels.len(), degrees.len());
        NcGeneratorSet { symbols: VarTable::plain(labels), degrees, elements }
    }

    pub fn symbols(&self) -> &Arc<VarTable> {
        &self.symbols
    }

    pub fn element(&self, label: &str) -> Option<&NCPoly> {
        self.symbols.index_of(label).map(|i| &self.elements[i])
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Ordered product for one symbol monomial.
    pub fn evaluate_monomial(&self, env: &Envelope, e: &Exponents) -> NCPoly {
        let mut acc = NCPoly::one();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                acc = env.multiply(&acc, &self.elements[i]);
            }
        }
        acc
    }

    /// Evaluates a symbol polynomial with ordered products.
    pub fn evaluate(&self, env: &Envelope, p: &CommPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (e, c) in p.terms() {
            out = &out + &self.evaluate_monomial(env, e).scale(c);
        }
        out
    }

    /// Expresses `f` over ordered products of the generators whose symbols
    /// are listed in `allowed` (all when `None`), with weighted degree at most
    /// the degree of `f`.
    pub fn express(&self, env: &Envelope, f: &NCPoly, allowed: Option<&[&str]>) -> Result<CommPoly> {
        let Some(top) = f.degree() else {
            return Ok(CommPoly::zero(&self.symbols));
        };
        let mask: Vec<bool> = (0..self.symbols.len())
            .map(|i| allowed.is_none_or(|a| a.contains(&self.symbols.var(i).label.as_str())))
            .collect();
        let weights: Vec<usize> =
            self.degrees.iter().zip(&mask).map(|(&d, &ok)| if ok { d } else { top + 1 }).collect();
        let mut candidates: Vec<Exponents> = (0..=top)
            .flat_map(|d| weighted_monomials(&weights, d))
            .filter(|e| e.iter().zip(&mask).all(|(&k, &ok)| ok || k == 0))
            .collect();
        candidates.sort_by(|a, b| preference_cmp(&self.degrees, a, b));
        let columns: Vec<Vec<(Word, Rational)>> = candidates
            .iter()
            .map(|m| self.evaluate_monomial(env, m).terms().map(|(w, c)| (w.clone(), c.clone())).collect())
            .collect();
        let target: Vec<(Word, Rational)> = f.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let solution = solve_by_coordinates(columns, target).ok_or_else(|| Error::Inexpressible(env.text(f)))?;
        let mut out = CommPoly::zero(&self.symbols);
        for (m, c) in candidates.into_iter().zip(solution) {
            out.add_term(m, c);
        }
        Ok(out)
    }
}
