//! Lie algebra data: an ordered basis, sparse structure constants, a Cartan
//! subalgebra acting diagonally, and the weight table it induces.
//!
//! The built-in constructors realize `gl(n)` and `sl(n)` on the basis
//! `{e_ij : i != j} ∪ {h_1, .., h_{n-1}}` (plus `e_nn` for `gl(n)`), where
//! `h_i = e_ii - e_{i+1,i+1}`. Brackets are computed from matrix units and
//! decomposed back onto that basis, so every structure constant is rational.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::text::parse_sum;

/// Sparse linear combination of basis indices, sorted by index, no zeros.
pub type Combination = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(len: usize) -> Self {
        WeightVector(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn add_scaled(&mut self, other: &WeightVector, times: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * times;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    name: String,
    labels: Vec<String>,
    structure: Vec<Vec<Combination>>,
    cartan: Vec<usize>,
    weights: Vec<WeightVector>,
}

impl LieAlgebraSpec {
    /// Builds a spec from raw data, checking antisymmetry and diagonality of
    /// the Cartan action and precomputing weights.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<Vec<Combination>>,
        cartan: Vec<usize>,
    ) -> Result<Self> {
        let dim = labels.len();
        if structure.len() != dim || structure.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidAlgebra("structure table has wrong shape".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                let neg: Combination = structure[j][i].iter().map(|(k, c)| (*k, -c)).collect();
                if structure[i][j] != neg {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket [{}, {}] is not antisymmetric",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut weights = vec![WeightVector::zero(cartan.len()); dim];
        for (slot, &h) in cartan.iter().enumerate() {
            for x in 0..dim {
                let value = match structure[h][x].as_slice() {
                    [] => Rational::zero(),
                    [(k, c)] if *k == x => c.clone(),
                    _ => {
                        return Err(Error::InvalidAlgebra(format!(
                            "ad({}) is not diagonal on {}",
                            labels[h], labels[x]
                        )))
                    }
                };
                if !value.is_integer() {
                    return Err(Error::InvalidAlgebra(format!(
                        "non-integral weight of {} under {}",
                        labels[x], labels[h]
                    )));
                }
                weights[x].0[slot] = i64::try_from(value.to_integer())
                    .map_err(|_| Error::InvalidAlgebra("weight out of range".into()))?;
            }
        }
        Ok(LieAlgebraSpec { name: name.into(), labels, structure, cartan, weights })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Symbol used in the symmetric algebra (`e12`, `h1`).
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Symbol used in the enveloping algebra (`E12`, `H1`).
    pub fn operator_label(&self, i: usize) -> String {
        let mut chars = self.labels[i].chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    }

    /// Looks a label up in either its symbol or operator spelling.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .or_else(|| (0..self.dim()).find(|&i| self.operator_label(i) == label))
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Combination {
        &self.structure[i][j]
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn weight(&self, i: usize) -> &WeightVector {
        &self.weights[i]
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        self.cartan.contains(&i)
    }

    /// Bracket of two linear combinations.
    pub fn bracket_combinations(&self, a: &Combination, b: &Combination) -> Combination {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, c) in &self.structure[*i][*j] {
                    *acc.entry(*k).or_insert_with(Rational::zero) += x * y * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Returns a copy with one structure constant shifted; antisymmetry is
    /// kept so only the Jacobi identity can break.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: Rational) -> Self {
        let mut out = self.clone();
        let shift = |comb: &mut Combination, d: Rational| {
            let mut map: BTreeMap<usize, Rational> = comb.drain(..).collect();
            *map.entry(k).or_insert_with(Rational::zero) += d;
            *comb = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        };
        shift(&mut out.structure[i][j], delta.clone());
        shift(&mut out.structure[j][i], -delta);
        out
    }

    /// Parses the line-oriented definition format:
    ///
    /// ```text
    /// name: sl2
    /// basis: x y z
    /// cartan: x
    /// bracket x y = 2*y
    /// bracket x z = -2*z
    /// bracket y z = x
    /// ```
    pub fn from_definition(text: &str) -> Result<Self> {
        let mut name = String::from("custom");
        let mut labels: Option<Vec<String>> = None;
        let mut cartan_labels: Vec<String> = Vec::new();
        let mut brackets: Vec<(String, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::InvalidAlgebra(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("basis:") {
                labels = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("cartan:") {
                cartan_labels = rest.split_whitespace().map(str::to_string).collect();
            } else if let Some(rest) = line.strip_prefix("bracket") {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("missing `=`"))?;
                let ops: Vec<&str> = lhs.split_whitespace().collect();
                if ops.len() != 2 {
                    return Err(err("bracket needs exactly two operands"));
                }
                brackets.push((ops[0].to_string(), ops[1].to_string(), rhs.trim().to_string()));
            } else {
                return Err(err("unrecognized directive"));
            }
        }
        let labels = labels.ok_or_else(|| Error::InvalidAlgebra("missing `basis:` line".into()))?;
        let dim = labels.len();
        let find = |l: &str| labels.iter().position(|x| x == l).ok_or_else(|| Error::UnboundSymbol(l.to_string()));
        let mut table: Vec<Vec<Option<Combination>>> = vec![vec![None; dim]; dim];
        for (a, b, rhs) in &brackets {
            let (i, j) = (find(a)?, find(b)?);
            let mut comb: BTreeMap<usize, Rational> = BTreeMap::new();
            for term in parse_sum(rhs)? {
                match term.factors.as_slice() {
                    [(l, 1)] => *comb.entry(find(l)?).or_insert_with(Rational::zero) += term.coeff,
                    _ => return Err(Error::InvalidAlgebra(format!("bracket [{a}, {b}] must be linear in the basis"))),
                }
            }
            let comb: Combination = comb.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let neg: Combination = comb.iter().map(|(k, c)| (*k, -c)).collect();
            for (slot, value) in [((i, j), comb), ((j, i), neg)] {
                match &table[slot.0][slot.1] {
                    Some(existing) if *existing != value => {
                        return Err(Error::InvalidAlgebra(format!(
                            "conflicting definitions of [{}, {}]",
                            labels[slot.0], labels[slot.1]
                        )))
                    }
                    _ => table[slot.0][slot.1] = Some(value),
                }
            }
        }
        let structure = table.into_iter().map(|row| row.into_iter().map(Option::unwrap_or_default).collect()).collect();
        let cartan = cartan_labels.iter().map(|l| find(l)).collect::<Result<Vec<_>>>()?;
        LieAlgebraSpec::new(name, labels, structure, cartan)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidAlgebra(format!("{}: {e}", path.display())))?;
        Self::from_definition(&text)
    }

    pub fn fmt_combination(&self, comb: &Combination) -> String {
        let mut out = String::new();
        for (k, c) in comb {
            crate::rational::push_term(&mut out, c, &self.labels[*k]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "basis: {}", self.labels.join(" "))?;
        let cartan: Vec<&str> = self.cartan.iter().map(|&i| self.labels[i].as_str()).collect();
        writeln!(f, "cartan: {}", cartan.join(" "))?;
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let b = &self.structure[i][j];
                if !b.is_empty() {
                    writeln!(f, "bracket {} {} = {}", self.labels[i], self.labels[j], self.fmt_combination(b))?;
                }
            }
        }
        Ok(())
    }
}

/// True iff `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` on every basis triple.
pub fn check_jacobi(spec: &LieAlgebraSpec) -> bool {
    let dim = spec.dim();
    let unit = |i: usize| vec![(i, Rational::one())];
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = spec.bracket(b, c).clone();
                    for (k, v) in spec.bracket_combinations(&unit(a), &inner) {
                        *acc.entry(k).or_insert_with(Rational::zero) += v;
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    General,
    Special,
}

/// Basis element as a combination of matrix units `(row, col, coeff)`.
type MatrixUnits = Vec<(usize, usize, Rational)>;

struct MatrixBasis {
    labels: Vec<String>,
    units: Vec<MatrixUnits>,
    cartan: Vec<usize>,
    offdiag: BTreeMap<(usize, usize), usize>,
    /// Index of `h_i` for i in 0..n-1.
    h: Vec<usize>,
    /// Index of `e_nn` (gl only).
    enn: Option<usize>,
}

fn matrix_basis(n: usize, flavor: Flavor) -> MatrixBasis {
    let mut labels = Vec::new();
    let mut units: Vec<MatrixUnits> = Vec::new();
    let mut offdiag = BTreeMap::new();
    let mut push_off = |i: usize, j: usize, labels: &mut Vec<String>, units: &mut Vec<MatrixUnits>| {
        offdiag.insert((i, j), labels.len());
        labels.push(format!("e{}{}", i + 1, j + 1));
        units.push(vec![(i, j, Rational::one())]);
    };
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    for &(i, j) in upper.iter().rev() {
        push_off(i, j, &mut labels, &mut units);
    }
    for i in 0..n {
        for j in 0..i {
            push_off(i, j, &mut labels, &mut units);
        }
    }
    let mut h = Vec::new();
    for i in 0..n - 1 {
        h.push(labels.len());
        labels.push(format!("h{}", i + 1));
        units.push(vec![(i, i, Rational::one()), (i + 1, i + 1, -Rational::one())]);
    }
    let enn = (flavor == Flavor::General).then(|| {
        labels.push(format!("e{n}{n}"));
        units.push(vec![(n - 1, n - 1, Rational::one())]);
        labels.len() - 1
    });
    MatrixBasis { labels, units, cartan: h.clone(), offdiag, h, enn }
}

impl MatrixBasis {
    /// Writes an n×n matrix (sparse) in the basis; the diagonal `d` becomes
    /// `Σ x_m h_m (+ y e_nn)` with `x_m = d_1 + .. + d_m`.
    fn decompose(&self, n: usize, entries: &BTreeMap<(usize, usize), Rational>) -> Result<Combination> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut diag = vec![Rational::zero(); n];
        for (&(r, c), v) in entries {
            if r == c {
                diag[r] += v;
            } else {
                *out.entry(self.offdiag[&(r, c)]).or_insert_with(Rational::zero) += v;
            }
        }
        let mut partial = Rational::zero();
        for m in 0..n - 1 {
            partial += &diag[m];
            *out.entry(self.h[m]).or_insert_with(Rational::zero) += partial.clone();
        }
        partial += &diag[n - 1];
        match self.enn {
            Some(idx) => *out.entry(idx).or_insert_with(Rational::zero) += partial,
            None if !partial.is_zero() => {
                return Err(Error::InvalidAlgebra("trace leaves sl(n)".into()));
            }
            None => {}
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

fn build_matrix_algebra(n: usize, flavor: Flavor) -> Result<LieAlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if n > 9 {
        return Err(Error::Unsupported(format!("n = {n}: labels are single-digit indexed")));
    }
    let basis = matrix_basis(n, flavor);
    let dim = basis.labels.len();
    let mut structure = vec![vec![Combination::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut prod: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
            for (i, j, x) in &basis.units[a] {
                for (k, l, y) in &basis.units[b] {
                    if j == k {
                        *prod.entry((*i, *l)).or_insert_with(Rational::zero) += x * y;
                    }
                    if l == i {
                        *prod.entry((*k, *j)).or_insert_with(Rational::zero) -= x * y;
                    }
                }
            }
            structure[a][b] = basis.decompose(n, &prod)?;
        }
    }
    let name = match flavor {
        Flavor::General => format!("gl{n}"),
        Flavor::Special => format!("sl{n}"),
    };
    LieAlgebraSpec::new(name, basis.labels, structure, basis.cartan)
}

/// `gl(n)` with basis ordered as upper off-diagonals (reverse lexicographic),
/// lower off-diagonals (lexicographic), `h_1..h_{n-1}`, then `e_nn`.
pub fn make_gl(n: usize) -> Result<LieAlgebraSpec> {
    build_matrix_algebra(n, Flavor::General)
}

/// `sl(n)`: same ordering as [`make_gl`] with `e_nn` eliminated. For `n = 3`
/// this is `e23 e13 e12 e21 e31 e32 h1 h2`.
pub fn make_sl(n: usize) -> Result<LieAlgebraSpec> {
    build_matrix_algebra(n, Flavor::Special)
}

/// Named constructors used by the CLI: `sl2`, `sl3`, `sl4`, `gl3`, ...
pub fn by_name(name: &str) -> Result<LieAlgebraSpec> {
    let parse = |digits: &str| digits.parse::<usize>().map_err(|_| Error::Unsupported(name.into()));
    if let Some(d) = name.strip_prefix("sl") {
        make_sl(parse(d)?)
    } else if let Some(d) = name.strip_prefix("gl") {
        make_gl(parse(d)?)
    } else if let Some(path) = name.strip_prefix("file:") {
        LieAlgebraSpec::from_file(Path::new(path))
    } else {
        Err(Error::Unsupported(format!("unknown algebra `{name}`")))
    }
}

/// Cartan-traceless diagonal `e_ii` of `sl(n)` written over `h_1..h_{n-1}`:
/// `e_ii = Σ_{m<i} -(m/n) h_m + Σ_{m>=i} ((n-m)/n) h_m` (1-based).
pub fn sl_diagonal(n: usize, i: usize) -> Vec<Rational> {
    (1..n)
        .map(|m| {
            let num = if m < i { -(m as i64) } else { (n - m) as i64 };
            int(num) / int(n as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comb(spec: &LieAlgebraSpec, terms: &[(&str, i64)]) -> Combination {
        let mut v: Combination = terms.iter().map(|(l, c)| (spec.index_of(l).unwrap(), int(*c))).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    fn br<'a>(spec: &'a LieAlgebraSpec, a: &str, b: &str) -> &'a Combination {
        spec.bracket(spec.index_of(a).unwrap(), spec.index_of(b).unwrap())
    }

    #[test]
    fn gl3_brackets() {
        let gl3 = make_gl(3).unwrap();
        assert_eq!(gl3.dim(), 9);
        assert_eq!(br(&gl3, "e12", "e21"), &comb(&gl3, &[("h1", 1)]));
        assert!(br(&gl3, "e12", "e12").is_empty());
        assert_eq!(br(&gl3, "h1", "e12"), &comb(&gl3, &[("e12", 2)]));
        // e33 is the surviving diagonal generator
        assert_eq!(br(&gl3, "e33", "e13"), &comb(&gl3, &[("e13", -1)]));
    }

    #[test]
    fn sl3_brackets_and_order() {
        let sl3 = make_sl(3).unwrap();
        assert_eq!(sl3.dim(), 8);
        assert_eq!(sl3.labels(), ["e23", "e13", "e12", "e21", "e31", "e32", "h1", "h2"]);
        assert_eq!(br(&sl3, "e13", "e31"), &comb(&sl3, &[("h1", 1), ("h2", 1)]));
        assert_eq!(sl3.operator_label(6), "H1");
        assert_eq!(sl3.index_of("E21"), Some(3));
    }

    #[test]
    fn sl2_brackets() {
        let sl2 = make_sl(2).unwrap();
        assert_eq!(br(&sl2, "e12", "e21"), &comb(&sl2, &[("h1", 1)]));
        assert_eq!(br(&sl2, "h1", "e12"), &comb(&sl2, &[("e12", 2)]));
        assert_eq!(br(&sl2, "h1", "e21"), &comb(&sl2, &[("e21", -2)]));
    }

    #[test]
    fn invalid_dimension() {
        assert_eq!(make_gl(1), Err(Error::InvalidDimension(1)));
        assert_eq!(make_sl(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn weights_match_structure() {
        for spec in [make_sl(3).unwrap(), make_gl(3).unwrap(), make_sl(4).unwrap()] {
            for (slot, &h) in spec.cartan().iter().enumerate() {
                assert!(spec.weight(h).is_zero());
                for x in 0..spec.dim() {
                    let w = spec.weight(x).0[slot];
                    let expected: Combination = if w == 0 { vec![] } else { vec![(x, int(w))] };
                    assert_eq!(spec.bracket(h, x), &expected);
                }
            }
        }
    }

    #[test]
    fn jacobi_and_perturbation() {
        let sl3 = make_sl(3).unwrap();
        assert!(check_jacobi(&sl3));
        assert!(check_jacobi(&make_gl(3).unwrap()));
        let e12 = sl3.index_of("e12").unwrap();
        let e23 = sl3.index_of("e23").unwrap();
        let e13 = sl3.index_of("e13").unwrap();
        assert!(!check_jacobi(&sl3.perturbed(e12, e23, e13, int(1))));
    }

    #[test]
    fn definition_round_trip() {
        let sl3 = make_sl(3).unwrap();
        let parsed = LieAlgebraSpec::from_definition(&sl3.to_string()).unwrap();
        assert_eq!(parsed, sl3);
    }

    #[test]
    fn definition_errors() {
        assert!(matches!(LieAlgebraSpec::from_definition("basis: x y\nbracket x z = y"), Err(Error::UnboundSymbol(_))));
        assert!(LieAlgebraSpec::from_definition("bracket x y = x").is_err());
        // non-diagonal Cartan action
        let text = "basis: x y z\ncartan: x\nbracket x y = z\nbracket y z = x\nbracket z x = y";
        assert!(matches!(LieAlgebraSpec::from_definition(text), Err(Error::InvalidAlgebra(_))));
        assert!(LieAlgebraSpec::from_definition("basis: x y\nbracket x y = x\nbracket y x = y").is_err());
    }

    #[test]
    fn sl_diagonal_matches_c_i() {
        // e11 = (2 h1 + h2)/3 in sl(3)
        assert_eq!(sl_diagonal(3, 1), vec![crate::rational::frac(2, 3), crate::rational::frac(1, 3)]);
        assert_eq!(sl_diagonal(3, 3), vec![crate::rational::frac(-1, 3), crate::rational::frac(-2, 3)]);
    }
}
