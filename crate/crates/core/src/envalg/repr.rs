//! Finite-dimensional representations used to cross-check identities in
//! `U(g)` independently of the PBW machinery.

use num_traits::{One, Zero};

use crate::envalg::NCPoly;
use crate::error::{Error, Result};
use crate::liealg::LieAlgebraSpec;
use crate::rational::Rational;

/// Dense square matrix over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.n + c]
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rational) {
        self.data[r * self.n + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Matrix, c: &Rational) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &-Rational::one());
        out
    }
}

/// Defining representation of a `gl(n)`/`sl(n)` spec, read off the labels
/// `eij` (matrix unit) and `hi` (`E_ii - E_{i+1,i+1}`).
pub fn defining_matrices(spec: &LieAlgebraSpec) -> Result<Vec<Matrix>> {
    let parse = |label: &str| -> Option<(char, Vec<usize>)> {
        let mut chars = label.chars();
        let head = chars.next()?;
        let digits: Option<Vec<usize>> = chars.map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        Some((head, digits?))
    };
    let mut parsed = Vec::new();
    let mut n = 0;
    for label in spec.labels() {
        let (head, idx) = parse(label).ok_or_else(|| Error::Unsupported(format!("no matrix for `{label}`")))?;
        match (head, idx.as_slice()) {
            ('e', [i, j]) => n = n.max(*i).max(*j),
            ('h', [i]) => n = n.max(i + 1),
            _ => return Err(Error::Unsupported(format!("no matrix for `{label}`"))),
        }
        parsed.push((head, idx));
    }
    Ok(parsed
        .into_iter()
        .map(|(head, idx)| {
            let mut m = Matrix::zero(n);
            if head == 'e' {
                m.add_at(idx[0] - 1, idx[1] - 1, &Rational::one());
            } else {
                let i = idx[0] - 1;
                m.add_at(i, i, &Rational::one());
                m.add_at(i + 1, i + 1, &-Rational::one());
            }
            m
        })
        .collect())
}

/// Adjoint representation: `ad(x_a)` has entry `C_{a j}^k` at `(k, j)`.
pub fn adjoint_matrices(spec: &LieAlgebraSpec) -> Vec<Matrix> {
    let d = spec.dim();
    (0..d)
        .map(|a| {
            let mut m = Matrix::zero(d);
            for j in 0..d {
                for (k, c) in spec.bracket(a, j) {
                    m.add_at(*k, j, c);
                }
            }
            m
        })
        .collect()
}

/// Image of `p` under a representation given by one matrix per basis element.
pub fn evaluate(p: &NCPoly, mats: &[Matrix]) -> Matrix {
    let n = mats.first().map(Matrix::size).unwrap_or(0);
    let mut out = Matrix::zero(n);
    for (w, c) in p.terms() {
        let m = w.iter().fold(Matrix::identity(n), |acc, &l| acc.mul(&mats[l as usize]));
        out.add_scaled(&m, c);
    }
    out
}
