use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebraSpec;
use crate::symalg::{CommPoly, VarRole};

/// Which Poisson structure a ring carries.
#[derive(Debug, Clone)]
pub enum PoissonRing {
    /// Lie-Poisson structure on `S(g)`.
    Berezin(Arc<LieAlgebraSpec>),
    /// Canonical pairing of `Position(k)` with `Momentum(k)` variables.
    Canonical,
}

pub fn poisson_bracket(ring: &PoissonRing, f: &CommPoly, g: &CommPoly) -> Result<CommPoly> {
    match ring {
        PoissonRing::Berezin(spec) => berezin_bracket(f, g, spec),
        PoissonRing::Canonical => Ok(canonical_bracket(f, g)),
    }
}

/// Maps table variables onto Lie basis indices, and basis indices back onto
/// table variables (needed to write the result `Σ C_ij^k x_k`).
fn lie_maps(f: &CommPoly, spec: &LieAlgebraSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let table = f.table();
    let to_basis = table
        .vars()
        .iter()
        .map(|v| spec.index_of(&v.label).ok_or_else(|| Error::UnboundSymbol(v.label.clone())))
        .collect::<Result<Vec<_>>>()?;
    let to_var = (0..spec.dim())
        .map(|k| table.index_of(spec.label(k)).ok_or_else(|| Error::UnboundSymbol(spec.label(k).to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok((to_basis, to_var))
}

/// `{f, g} = Σ C_ij^k x_k ∂f/∂x_i ∂g/∂x_j`.
pub fn berezin_bracket(f: &CommPoly, g: &CommPoly, spec: &LieAlgebraSpec) -> Result<CommPoly> {
    if !f.same_ring(g) {
        return Err(Error::IncompatibleRealization("operands from different rings".into()));
    }
    let (to_basis, to_var) = lie_maps(f, spec)?;
    let table = f.table();
    let mut out = CommPoly::zero(table);
    let fs = f.support();
    let gs = g.support();
    let dg: Vec<(usize, CommPoly)> = gs.iter().map(|&j| (j, g.derivative(j))).collect();
    for &i in &fs {
        let df = f.derivative(i);
        for (j, dgj) in &dg {
            let structure = spec.bracket(to_basis[i], to_basis[*j]);
            if structure.is_empty() {
                continue;
            }
            let prod = &df * dgj;
            for (k, c) in structure {
                let mut e = vec![0; table.len()];
                e[to_var[*k]] = 1;
                out = &out + &prod.mul_monomial(&e, c);
            }
        }
    }
    Ok(out)
}

/// `{f, g} = Σ_k ∂f/∂s_k ∂g/∂p_k - ∂f/∂p_k ∂g/∂s_k`; central variables drop out.
pub fn canonical_bracket(f: &CommPoly, g: &CommPoly) -> CommPoly {
    assert!(f.same_ring(g), "canonical_bracket: operands from different rings");
    let table = f.table();
    let mut out = CommPoly::zero(table);
    for (si, v) in table.vars().iter().enumerate() {
        let VarRole::Position(k) = v.role else { continue };
        let Some(pi) = table.vars().iter().position(|w| w.role == VarRole::Momentum(k)) else {
            continue;
        };
        let fs = f.derivative(si);
        let fp = f.derivative(pi);
        if !fs.is_zero() {
            out = &out + &(&fs * &g.derivative(pi));
        }
        if !fp.is_zero() {
            out = &out - &(&fp * &g.derivative(si));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::make_sl;
    use crate::rational::int;
    use crate::symalg::VarTable;

    #[test]
    fn berezin_on_linear_reproduces_structure() {
        let sl3 = make_sl(3).unwrap();
        let t = VarTable::lie(&sl3);
        for i in 0..sl3.dim() {
            for j in 0..sl3.dim() {
                let b = berezin_bracket(&CommPoly::var(&t, i), &CommPoly::var(&t, j), &sl3).unwrap();
                let mut expected = CommPoly::zero(&t);
                for (k, c) in sl3.bracket(i, j) {
                    expected = &expected + &CommPoly::var(&t, *k).scale(c);
                }
                assert_eq!(b, expected);
            }
        }
    }

    #[test]
    fn berezin_examples() {
        let sl3 = make_sl(3).unwrap();
        let t = VarTable::lie(&sl3);
        let p = |s: &str| CommPoly::parse(s, &t).unwrap();
        assert_eq!(berezin_bracket(&p("h1"), &p("e12"), &sl3).unwrap(), p("2*e12"));
        let f = p("e12*e21 + h1^2*e13*e31");
        assert!(berezin_bracket(&f, &f, &sl3).unwrap().is_zero());
        // {p12, p23} = e13 e32 e21 - e12 e23 e31
        let b = berezin_bracket(&p("e12*e21"), &p("e23*e32"), &sl3).unwrap();
        assert_eq!(b, p("e13*e32*e21 - e12*e23*e31"));
    }

    #[test]
    fn berezin_unbound_symbol() {
        let sl3 = make_sl(3).unwrap();
        let t = VarTable::plain(&["e12", "q"]);
        let err = berezin_bracket(&CommPoly::var(&t, 0), &CommPoly::var(&t, 1), &sl3).unwrap_err();
        assert_eq!(err, Error::UnboundSymbol("q".into()));
    }

    #[test]
    fn canonical_examples() {
        let t = VarTable::phase_space(3, &[]);
        let p = |s: &str| CommPoly::parse(s, &t).unwrap();
        assert_eq!(canonical_bracket(&p("s1"), &p("p1")), CommPoly::constant(&t, int(1)));
        assert!(canonical_bracket(&p("s1"), &p("p2")).is_zero());
        assert_eq!(canonical_bracket(&p("s1^2"), &p("p1")), p("2*s1"));
        let l = |i: usize, j: usize| p(&format!("s{i}*p{j} - s{j}*p{i}"));
        // with {s_i, p_j} = δ_ij the rotation generators close with a minus sign
        assert_eq!(canonical_bracket(&l(1, 2), &l(2, 3)), -l(1, 3));
        // Laurent exponents and central couplings
        assert_eq!(canonical_bracket(&p("a1^2*s1^-2"), &p("p1")), p("-2*a1^2*s1^-3"));
    }
}
