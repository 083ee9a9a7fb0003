use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, normal_form, MonomialOrder, OrderKind};
use crate::rational::{int, Rational};
use crate::symalg::{CommPoly, Exponents, VarRole, VarTable};

/// Polynomial ideal with a precomputed reduced Gröbner basis, used for
/// zero-testing Laurent polynomials on the variety it cuts out.
#[derive(Debug, Clone)]
pub struct ConstraintIdeal {
    generators: Vec<CommPoly>,
    order: MonomialOrder,
    basis: Vec<CommPoly>,
}

impl ConstraintIdeal {
    pub fn new(generators: Vec<CommPoly>, order: MonomialOrder) -> Result<Self> {
        for g in &generators {
            if g.terms().any(|(e, _)| e.iter().any(|&x| x < 0)) {
                return Err(Error::Unsupported(format!("ideal generator `{g}` has negative exponents")));
            }
        }
        let basis = groebner_basis(&generators, &order);
        Ok(ConstraintIdeal { generators, order, basis })
    }

    pub fn generators(&self) -> &[CommPoly] {
        &self.generators
    }

    pub fn basis(&self) -> &[CommPoly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Normal form of `D·f`, `D` the smallest monomial clearing every negative
    /// exponent. Zero iff `f` vanishes modulo the ideal (localized at the
    /// Laurent variables).
    pub fn reduce(&self, f: &CommPoly) -> CommPoly {
        let cleared = clear_denominators(f);
        let cleared = match self.basis.first() {
            Some(g) if !g.same_ring(&cleared) => {
                cleared.embed(g.table()).expect("reduce: polynomial outside the ideal's ring")
            }
            _ => cleared,
        };
        normal_form(&cleared, &self.basis, &self.order)
    }

    pub fn contains(&self, f: &CommPoly) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Multiplies by the minimal monomial making all exponents non-negative.
pub fn clear_denominators(f: &CommPoly) -> CommPoly {
    let n = f.table().len();
    let mut shift: Exponents = vec![0; n];
    for (e, _) in f.terms() {
        for (s, &x) in shift.iter_mut().zip(e) {
            *s = (*s).max(-x);
        }
    }
    if shift.iter().all(|&s| s == 0) {
        return f.clone();
    }
    f.mul_monomial(&shift, &Rational::from_integer(1.into()))
}

/// `(Σ s_k² - 1, Σ s_k p_k)` under degree-lex with `s_n, p_n` most
/// significant, so the leading terms are `s_n²` and `s_n p_n`.
pub fn sphere_ideal(table: &Arc<VarTable>) -> Result<ConstraintIdeal> {
    let mut positions: Vec<(usize, usize)> = Vec::new();
    for (i, v) in table.vars().iter().enumerate() {
        if let VarRole::Position(k) = v.role {
            positions.push((k, i));
        }
    }
    if positions.is_empty() {
        return Err(Error::Unsupported("sphere ideal needs position variables".into()));
    }
    positions.sort();
    let momentum = |k: usize| {
        table
            .vars()
            .iter()
            .position(|v| v.role == VarRole::Momentum(k))
            .ok_or_else(|| Error::Unsupported(format!("no momentum paired with position {k}")))
    };
    let mut radius = CommPoly::constant(table, int(-1));
    let mut radial = CommPoly::zero(table);
    let mut priority = Vec::new();
    for &(k, s) in positions.iter().rev() {
        let p = momentum(k)?;
        priority.push(s);
        priority.push(p);
        let sv = CommPoly::var(table, s);
        radius = &radius + &(&sv * &sv);
        radial = &radial + &(&sv * &CommPoly::var(table, p));
    }
    for i in 0..table.len() {
        if !priority.contains(&i) {
            priority.push(i);
        }
    }
    ConstraintIdeal::new(vec![radius, radial], MonomialOrder::new(OrderKind::DegLex, priority))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<VarTable>, ConstraintIdeal) {
        let t = VarTable::phase_space(3, &[]);
        let ideal = sphere_ideal(&t).unwrap();
        (t, ideal)
    }

    #[test]
    fn generators_reduce_to_zero() {
        let (t, ideal) = setup();
        let p = |s: &str| CommPoly::parse(s, &t).unwrap();
        assert!(ideal.contains(&p("s1^2 + s2^2 + s3^2 - 1")));
        assert!(ideal.contains(&p("s1*p1 + s2*p2 + s3*p3")));
        assert!(ideal.contains(&p("s1^-2*s1*p1 + s1^-2*s2*p2 + s1^-2*s3*p3")));
        for g in ideal.generators() {
            assert!(ideal.reduce(g).is_zero());
        }
    }

    #[test]
    fn basis_leading_terms() {
        let (t, ideal) = setup();
        assert!(ideal.basis().len() >= 2);
        let s3 = t.index_of("s3").unwrap();
        let p3 = t.index_of("p3").unwrap();
        let lms: Vec<Exponents> =
            ideal.basis().iter().map(|g| crate::groebner::leading_monomial(g, ideal.order()).unwrap()).collect();
        assert!(lms.iter().any(|e| e[s3] == 2 && e.iter().sum::<i32>() == 2));
        assert!(lms.iter().any(|e| e[s3] == 1 && e[p3] == 1 && e.iter().sum::<i32>() == 2));
    }

    #[test]
    fn nonmember_and_idempotence() {
        let (t, ideal) = setup();
        let f = CommPoly::parse("s1^2", &t).unwrap();
        let r = ideal.reduce(&f);
        assert!(!r.is_zero());
        assert_eq!(ideal.reduce(&r), r);
        let g = CommPoly::parse("s3^3*p1 + s2^-1*p3", &t).unwrap();
        let rg = ideal.reduce(&g);
        assert_eq!(ideal.reduce(&rg), rg);
    }
}
