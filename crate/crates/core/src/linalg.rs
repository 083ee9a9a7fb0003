//! Exact sparse linear algebra over the rationals.
//!
//! Rows are scaled to primitive integer vectors and eliminated fraction-free
//! (`r <- p*r - a*pivot`, then divide by the content), so no intermediate
//! rationals appear. Pivot columns are the leftmost possible ones, which makes
//! column order a preference order for solutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type SparseRow = Vec<(usize, Rational)>;
type IntRow = Vec<(usize, BigInt)>;

fn integerize(row: &SparseRow) -> IntRow {
    let mut den = BigInt::one();
    for (_, q) in row {
        den = den.lcm(q.denom());
    }
    let mut out: IntRow = row
        .iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(c, q)| (*c, (q * Rational::from_integer(den.clone())).to_integer()))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().map(|(_, v)| v.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a*r - b*s` on sorted sparse rows.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, s: &IntRow) -> IntRow {
    let mut out = IntRow::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let ci = r.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = s.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &s[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &s[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |x| x.0).ok().map(|k| &row[k].1)
}

/// Reduced row echelon form of a sparse matrix, built by incremental row
/// insertion.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    /// Rows sorted by pivot column; row `k` has its pivot at `pivots[k]`.
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
    reduced: bool,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, rows: Vec::new(), pivots: Vec::new(), reduced: true }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(&r);
        }
        e.reduce();
        e
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let mut r = integerize(row);
        while let Some((lead, val)) = r.first().cloned() {
            match self.pivots.binary_search(&lead) {
                Ok(k) => {
                    let p = &self.rows[k];
                    let pv = p[0].1.clone();
                    let g = pv.gcd(&val);
                    r = combine(&(&pv / &g), &r, &(&val / &g), p);
                    make_primitive(&mut r);
                }
                Err(pos) => {
                    self.pivots.insert(pos, lead);
                    self.rows.insert(pos, r);
                    self.reduced = false;
                    return true;
                }
            }
        }
        false
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut probe = self.clone();
        !probe.insert(row)
    }

    /// Clears every pivot column above its pivot.
    pub fn reduce(&mut self) {
        if self.reduced {
            return;
        }
        for k in (0..self.rows.len()).rev() {
            let col = self.pivots[k];
            let pv = self.rows[k][0].1.clone();
            for i in 0..k {
                if let Some(v) = entry(&self.rows[i], col).cloned() {
                    let g = pv.gcd(&v);
                    let r = combine(&(&pv / &g), &self.rows[i], &(&v / &g), &self.rows[k]);
                    self.rows[i] = r;
                    make_primitive(&mut self.rows[i]);
                }
            }
        }
        self.reduced = true;
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, with the free
    /// coordinate set to one.
    pub fn kernel(&mut self) -> Vec<Vec<Rational>> {
        self.reduce();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| self.pivots.binary_search(c).is_err()) {
            let mut x = vec![Rational::zero(); self.ncols];
            x[free] = Rational::one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if let Some(v) = entry(row, free) {
                    x[pc] = -Rational::new(v.clone(), row[0].1.clone());
                }
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = RowEchelon::new(ncols);
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}

/// Solves `Σ_j x_j columns[j] = target` over sparse column vectors. Among
/// all solutions returns the one supported on the leftmost independent
/// columns (free columns are zero). `None` if inconsistent.
pub fn solve_columns(nrows: usize, columns: &[SparseRow], target: &SparseRow) -> Option<Vec<Rational>> {
    let ncols = columns.len();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((j, v.clone()));
        }
    }
    for (i, v) in target {
        rows[*i].push((ncols, v.clone()));
    }
    let mut e = RowEchelon::new(ncols + 1);
    for r in rows.into_iter().filter(|r| !r.is_empty()) {
        e.insert(&r);
    }
    if e.pivots.contains(&ncols) {
        return None;
    }
    e.reduce();
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        if let Some(b) = entry(row, ncols) {
            x[pc] = Rational::new(b.clone(), row[0].1.clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn dense(rows: &[&[i64]]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, int(v))).collect())
            .collect()
    }

    fn apply(rows: &[SparseRow], x: &[Rational]) -> Vec<Rational> {
        rows.iter().map(|r| r.iter().fold(Rational::zero(), |acc, (c, v)| acc + v * &x[*c])).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let mut e = RowEchelon::from_rows(3, m.clone());
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(Zero::is_zero));
        assert_eq!(k[0], vec![int(-1), int(-1), int(1)]);
    }

    #[test]
    fn rational_entries() {
        let m = vec![vec![(0, frac(1, 2)), (1, frac(1, 3))], vec![(0, frac(3, 4)), (1, frac(1, 2))]];
        assert_eq!(rank(2, m), 1);
    }

    #[test]
    fn solve_prefers_left_columns() {
        // columns: c0 = (1,0), c1 = (1,0), c2 = (0,1); target (2,3)
        let cols = vec![vec![(0, int(1))], vec![(0, int(1))], vec![(1, int(1))]];
        let x = solve_columns(2, &cols, &vec![(0, int(2)), (1, int(3))]).unwrap();
        assert_eq!(x, vec![int(2), int(0), int(3)]);
        assert!(solve_columns(2, &cols[..2], &vec![(1, int(1))]).is_none());
    }

    #[test]
    fn contains_checks_span() {
        let e = RowEchelon::from_rows(3, dense(&[&[1, 1, 0], &[0, 1, 1]]));
        assert!(e.contains(&vec![(0, int(1)), (2, int(-1))]));
        assert!(!e.contains(&vec![(0, int(1))]));
    }
}
