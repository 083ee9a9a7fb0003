//! Small Buchberger completion over the rationals.
//!
//! Used for the two-generator sphere constraint ideal and for the low-degree
//! polynomial systems that pin down realization constants. Polynomials are
//! kept as term vectors sorted descending in the active monomial order.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::symalg::{CommPoly, Exponents, VarTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

/// Monomial order given by a kind and a variable priority list (most
/// significant variable first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Self {
        MonomialOrder { kind, priority }
    }

    pub fn cmp(&self, a: &Exponents, b: &Exponents) -> Ordering {
        let lex = || {
            for &v in &self.priority {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        let deg = |e: &Exponents| self.priority.iter().map(|&v| e[v] as i64).sum::<i64>();
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::DegLex => deg(a).cmp(&deg(b)).then_with(lex),
            OrderKind::DegRevLex => deg(a).cmp(&deg(b)).then_with(|| {
                for &v in self.priority.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

type Terms = Vec<(Exponents, Rational)>;

fn sorted_terms(p: &CommPoly, order: &MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn to_poly(table: &Arc<VarTable>, terms: Terms) -> CommPoly {
    let mut p = CommPoly::zero(table);
    for (e, c) in terms {
        p.add_term(e, c);
    }
    p
}

fn divides(a: &Exponents, b: &Exponents) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn make_monic(t: &mut Terms) {
    if let Some(lc) = t.first().map(|(_, c)| c.clone()) {
        if !lc.is_one() {
            for (_, c) in t.iter_mut() {
                *c /= &lc;
            }
        }
    }
}

/// `f - c * x^shift * g`, merging two descending term lists.
fn sub_multiple(f: &Terms, c: &Rational, shift: &Exponents, g: &Terms, order: &MonomialOrder) -> Terms {
    let shifted: Terms = g.iter().map(|(e, x)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), x * c)).collect();
    let mut out = Terms::with_capacity(f.len() + shifted.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < shifted.len() {
        let pick = if i == f.len() {
            Ordering::Less
        } else if j == shifted.len() {
            Ordering::Greater
        } else {
            order.cmp(&f[i].0, &shifted[j].0)
        };
        match pick {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let c = &f[i].1 - &shifted[j].1;
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by a list of monic divisors.
fn reduce_terms(f: &Terms, basis: &[Terms], order: &MonomialOrder) -> Terms {
    let mut rest = f.clone();
    let mut remainder = Terms::new();
    while let Some((lead, lc)) = rest.first().cloned() {
        let divisor = basis.iter().find(|g| divides(&g[0].0, &lead));
        match divisor {
            Some(g) => {
                let shift: Exponents = lead.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                rest = sub_multiple(&rest, &lc, &shift, g, order);
            }
            None => {
                remainder.push((lead, lc));
                rest.remove(0);
            }
        }
    }
    remainder
}

fn lcm(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn s_polynomial(f: &Terms, g: &Terms, order: &MonomialOrder) -> Terms {
    let l = lcm(&f[0].0, &g[0].0);
    let sf: Exponents = l.iter().zip(&f[0].0).map(|(a, b)| a - b).collect();
    let sg: Exponents = l.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
    let f_shifted = sub_multiple(&Terms::new(), &-Rational::one(), &sf, f, order);
    sub_multiple(&f_shifted, &Rational::one(), &sg, g, order)
}

/// Reduced Gröbner basis (monic, sorted by leading monomial ascending).
pub fn groebner_basis(generators: &[CommPoly], order: &MonomialOrder) -> Vec<CommPoly> {
    let Some(table) = generators.first().map(|g| g.table().clone()) else {
        return Vec::new();
    };
    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: Vec<Terms> = generators.iter().map(|g| sorted_terms(g, order)).filter(|t| !t.is_empty()).collect();
    // Process low-degree inputs first; keeps intermediate growth small.
    pending.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    loop {
        if let Some(mut p) = pending.pop() {
            p = reduce_terms(&p, &basis, order);
            if p.is_empty() {
                continue;
            }
            make_monic(&mut p);
            if p[0].0.iter().all(|&e| e == 0) {
                return vec![to_poly(&table, p)];
            }
            let idx = basis.len();
            basis.push(p);
            for j in 0..idx {
                pairs.push((j, idx));
            }
            continue;
        }
        let Some((i, j)) = pairs.pop() else { break };
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        // coprime leading monomials: S-polynomial reduces to zero
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        // chain criterion: some k with lm(k) | lcm and both (i,k),(j,k) handled
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k][0].0, &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_terms(&s, &basis, order);
        if !r.is_empty() {
            pending.push(r);
        }
    }
    interreduce(basis, order).into_iter().map(|t| to_poly(&table, t)).collect()
}

fn interreduce(mut basis: Vec<Terms>, order: &MonomialOrder) -> Vec<Terms> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Terms> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| divides(&m[0].0, &g[0].0)) {
            minimal.retain(|m| !divides(&g[0].0, &m[0].0));
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect();
        let head = minimal[i][0].clone();
        let tail: Terms = minimal[i][1..].to_vec();
        let mut t = vec![head];
        t.extend(reduce_terms(&tail, &others, order));
        make_monic(&mut t);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    reduced
}

/// Normal form of `f` modulo a Gröbner basis computed for the same order.
pub fn normal_form(f: &CommPoly, basis: &[CommPoly], order: &MonomialOrder) -> CommPoly {
    let gb: Vec<Terms> = basis.iter().map(|g| sorted_terms(g, order)).collect();
    to_poly(f.table(), reduce_terms(&sorted_terms(f, order), &gb, order))
}

pub fn leading_monomial(f: &CommPoly, order: &MonomialOrder) -> Option<Exponents> {
    f.terms().map(|(e, _)| e).max_by(|a, b| order.cmp(a, b)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex_xy() -> (Arc<VarTable>, MonomialOrder) {
        let t = VarTable::plain(&["x", "y"]);
        (t, MonomialOrder::new(OrderKind::Lex, vec![0, 1]))
    }

    #[test]
    fn textbook_example() {
        // x^2 - y, x*y - x  (lex x > y): basis {x^2 - y, x*y - x, y^2 - y}
        let (t, ord) = lex_xy();
        let f = CommPoly::parse("x^2 - y", &t).unwrap();
        let g = CommPoly::parse("x*y - x", &t).unwrap();
        let gb = groebner_basis(&[f, g], &ord);
        let texts: Vec<String> = gb.iter().map(|p| p.to_text()).collect();
        assert_eq!(texts, ["y^2 - y", "x*y - x", "x^2 - y"]);
    }

    #[test]
    fn inconsistent_system_gives_one() {
        let (t, ord) = lex_xy();
        let f = CommPoly::parse("x - 1", &t).unwrap();
        let g = CommPoly::parse("x - 2", &t).unwrap();
        let gb = groebner_basis(&[f, g], &ord);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_text(), "1");
    }

    #[test]
    fn normal_form_is_idempotent() {
        let (t, ord) = lex_xy();
        let gb = groebner_basis(&[CommPoly::parse("x^2 + y^2 - 1", &t).unwrap()], &ord);
        let f = CommPoly::parse("x^3 + x*y", &t).unwrap();
        let r = normal_form(&f, &gb, &ord);
        assert_eq!(normal_form(&r, &gb, &ord), r);
        assert_eq!(r.to_text(), "-x*y^2 + x*y + x");
    }

    #[test]
    fn orders() {
        let ord = MonomialOrder::new(OrderKind::DegRevLex, vec![0, 1, 2]);
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(ord.cmp(&vec![1, 0, 1], &vec![0, 2, 0]), Ordering::Less);
        let dl = MonomialOrder::new(OrderKind::DegLex, vec![0, 1, 2]);
        assert_eq!(dl.cmp(&vec![1, 0, 1], &vec![0, 2, 0]), Ordering::Greater);
    }
}
