//! The classical higher-rank Racah algebra: relation families, closure
//! identities, verification of realizations, and the sphere model with its
//! constants solved from the relations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::commutant::primitive;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, MonomialOrder, OrderKind};
use crate::rational::{frac, int, Rational};
use crate::report::RelationReport;
use crate::symalg::{poisson_bracket, CommPoly, ConstraintIdeal, Exponents, PoissonRing, VarRole, VarTable};

/// Relation families; the `Closure*` ones are identities with zero right
/// side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `{P_ij, P_jk} = 2 F_ijk`
    PairPair,
    /// `{P_jk, F_ijk} = P_ik P_jk - P_jk P_ij + 2 P_ik C_j - 2 P_ij C_k`
    PairTriple,
    /// `{P_kl, F_ijk} = P_ik P_jl - P_il P_jk`
    PairTripleOuter,
    /// `{F_ijk, F_jkl} = F_jkl P_ij - F_ikl (P_jk + 2 C_j) - F_ijk P_jl`
    TripleTripleTwo,
    /// `{F_ijk, F_klm} = F_ilm P_jk - P_ik F_jlm`
    TripleTripleOne,
    Closure3,
    Closure4,
    Closure5,
    Closure6,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::PairPair,
        Family::PairTriple,
        Family::PairTripleOuter,
        Family::TripleTripleTwo,
        Family::TripleTripleOne,
        Family::Closure3,
        Family::Closure4,
        Family::Closure5,
        Family::Closure6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PairPair => "pp",
            Family::PairTriple => "pf",
            Family::PairTripleOuter => "pf-outer",
            Family::TripleTripleTwo => "ff-two",
            Family::TripleTripleOne => "ff-one",
            Family::Closure3 => "closure3",
            Family::Closure4 => "closure4",
            Family::Closure5 => "closure5",
            Family::Closure6 => "closure6",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Number of distinct indices an instance uses.
    pub fn arity(self) -> usize {
        match self {
            Family::PairPair | Family::PairTriple | Family::Closure3 => 3,
            Family::PairTripleOuter | Family::TripleTripleTwo | Family::Closure4 => 4,
            Family::TripleTripleOne | Family::Closure5 => 5,
            Family::Closure6 => 6,
        }
    }

    pub fn is_closure(self) -> bool {
        matches!(self, Family::Closure3 | Family::Closure4 | Family::Closure5 | Family::Closure6)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: Family,
    pub indices: Vec<usize>,
}

impl RelationInstance {
    pub fn id(&self) -> String {
        let idx = self.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        format!("{}({})", self.family.name(), idx)
    }
}

#[derive(Debug, Clone)]
pub struct RelationSet {
    pub n: usize,
    pub instances: Vec<RelationInstance>,
}

impl RelationSet {
    pub fn count(&self, family: Family) -> usize {
        self.instances.iter().filter(|r| r.family == family).count()
    }

    pub fn only(&self, families: &[Family]) -> RelationSet {
        RelationSet {
            n: self.n,
            instances: self.instances.iter().filter(|r| families.contains(&r.family)).cloned().collect(),
        }
    }
}

/// Ordered tuples of `k` distinct indices from `1..=n`, lexicographic.
pub fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Every instance whose arity fits `n`; closure identities on request.
pub fn build_relation_set(n: usize, include_closure: bool) -> Result<RelationSet> {
    if n < 3 {
        return Err(Error::Unsupported(format!("Racah relations need n >= 3, got {n}")));
    }
    let mut instances = Vec::new();
    for family in Family::ALL {
        if family.is_closure() && !include_closure {
            continue;
        }
        if family.arity() > n {
            continue;
        }
        for indices in distinct_tuples(n, family.arity()) {
            instances.push(RelationInstance { family, indices });
        }
    }
    Ok(RelationSet { n, instances })
}

/// A realization of the Racah generators in a Poisson ring. `P` is given on
/// ordered pairs; `F_ijk` is derived as `1/2 {P_ij, P_jk}`.
#[derive(Debug, Clone)]
pub struct RacahSymbols {
    pub n: usize,
    ring: PoissonRing,
    table: Arc<VarTable>,
    p: BTreeMap<(usize, usize), CommPoly>,
    c: Vec<CommPoly>,
    hamiltonian: Option<CommPoly>,
    /// Undetermined constants (central variables of the table) and the ones
    /// required to be nonzero.
    parameters: Vec<String>,
    nonzero: Vec<String>,
}

impl RacahSymbols {
    /// `p` must cover every ordered pair of distinct indices in `1..=n` and
    /// `c` every index; all elements must share one table.
    pub fn new(
        n: usize,
        ring: PoissonRing,
        p: BTreeMap<(usize, usize), CommPoly>,
        c: Vec<CommPoly>,
        hamiltonian: Option<CommPoly>,
    ) -> Result<Self> {
        let table = c
            .first()
            .map(|x| x.table().clone())
            .ok_or_else(|| Error::Unsupported("realization without central elements".into()))?;
        if c.len() != n {
            return Err(Error::Unsupported(format!("expected {n} central elements, got {}", c.len())));
        }
        for i in 1..=n {
            for j in 1..=n {
                if i != j && !p.contains_key(&(i, j)) {
                    return Err(Error::Unsupported(format!("missing P{i}{j}")));
                }
            }
        }
        let elements = p.values().chain(c.iter()).chain(hamiltonian.iter());
        for x in elements {
            if x.table() != &table {
                return Err(Error::IncompatibleRealization(format!("`{}` lives in a different ring", x.to_text())));
            }
        }
        Ok(RacahSymbols { n, ring, table, p, c, hamiltonian, parameters: Vec::new(), nonzero: Vec::new() })
    }

    pub fn with_parameters(mut self, parameters: &[&str], nonzero: &[&str]) -> Self {
        self.parameters = parameters.iter().map(|s| s.to_string()).collect();
        self.nonzero = nonzero.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn ring(&self) -> &PoissonRing {
        &self.ring
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn hamiltonian(&self) -> Option<&CommPoly> {
        self.hamiltonian.as_ref()
    }

    pub fn p(&self, i: usize, j: usize) -> &CommPoly {
        &self.p[&(i, j)]
    }

    pub fn c(&self, i: usize) -> &CommPoly {
        &self.c[i - 1]
    }

    pub fn bracket(&self, f: &CommPoly, g: &CommPoly) -> Result<CommPoly> {
        if !f.same_ring(g) {
            return Err(Error::IncompatibleRealization("operands from different rings".into()));
        }
        poisson_bracket(&self.ring, f, g)
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> Result<CommPoly> {
        Ok(self.bracket(self.p(i, j), self.p(j, k))?.scale(&frac(1, 2)))
    }

    /// Replaces the named parameters by values everywhere.
    pub fn specialize(&self, values: &[(String, Rational)]) -> RacahSymbols {
        let assign: Vec<(usize, Rational)> =
            values.iter().filter_map(|(l, v)| self.table.index_of(l).map(|i| (i, v.clone()))).collect();
        let sp = |f: &CommPoly| specialize(f, &assign);
        RacahSymbols {
            n: self.n,
            ring: self.ring.clone(),
            table: self.table.clone(),
            p: self.p.iter().map(|(k, v)| (*k, sp(v))).collect(),
            c: self.c.iter().map(sp).collect(),
            hamiltonian: self.hamiltonian.as_ref().map(sp),
            parameters: self.parameters.iter().filter(|l| !values.iter().any(|(x, _)| x == *l)).cloned().collect(),
            nonzero: self.nonzero.clone(),
        }
    }

    /// `lhs - rhs` of one relation instance, with display strings for both
    /// sides.
    pub fn residual(&self, rel: &RelationInstance) -> Result<(String, String, CommPoly)> {
        let ix = &rel.indices;
        let lbl = |p: char, idx: &[usize]| format!("{p}{}", idx.iter().map(|i| i.to_string()).collect::<String>());
        let pp = |a: usize, b: usize| self.p(a, b).clone();
        let cc = |a: usize| self.c(a).clone();
        let two = int(2);
        let four = int(4);
        Ok(match rel.family {
            Family::PairPair => {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                let lhs = self.bracket(&pp(i, j), &pp(j, k))?;
                let rhs = self.f(i, j, k)?.scale(&two);
                (format!("{{{},{}}}", lbl('P', &[i, j]), lbl('P', &[j, k])), format!("2*{}", lbl('F', ix)), &lhs - &rhs)
            }
            Family::PairTriple => {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                let lhs = self.bracket(&pp(j, k), &self.f(i, j, k)?)?;
                let rhs = &(&(&(&pp(i, k) * &pp(j, k)) - &(&pp(j, k) * &pp(i, j))) + &(&pp(i, k) * &cc(j)).scale(&two))
                    - &(&pp(i, j) * &cc(k)).scale(&two);
                let s = format!("P{i}{k}*P{j}{k} - P{j}{k}*P{i}{j} + 2*P{i}{k}*C{j} - 2*P{i}{j}*C{k}");
                (format!("{{P{j}{k},F{i}{j}{k}}}"), s, &lhs - &rhs)
            }
            Family::PairTripleOuter => {
                let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                let lhs = self.bracket(&pp(k, l), &self.f(i, j, k)?)?;
                let rhs = &(&pp(i, k) * &pp(j, l)) - &(&pp(i, l) * &pp(j, k));
                (format!("{{P{k}{l},F{i}{j}{k}}}"), format!("P{i}{k}*P{j}{l} - P{i}{l}*P{j}{k}"), &lhs - &rhs)
            }
            Family::TripleTripleTwo => {
                let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                let fjkl = self.f(j, k, l)?;
                let fikl = self.f(i, k, l)?;
                let fijk = self.f(i, j, k)?;
                let lhs = self.bracket(&fijk, &fjkl)?;
                let rhs = &(&(&fjkl * &pp(i, j)) - &(&fikl * &(&pp(j, k) + &cc(j).scale(&two)))) - &(&fijk * &pp(j, l));
                let s = format!("F{j}{k}{l}*P{i}{j} - F{i}{k}{l}*(P{j}{k} + 2*C{j}) - F{i}{j}{k}*P{j}{l}");
                (format!("{{F{i}{j}{k},F{j}{k}{l}}}"), s, &lhs - &rhs)
            }
            Family::TripleTripleOne => {
                let (i, j, k, l, m) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
                let lhs = self.bracket(&self.f(i, j, k)?, &self.f(k, l, m)?)?;
                let rhs = &(&self.f(i, l, m)? * &pp(j, k)) - &(&pp(i, k) * &self.f(j, l, m)?);
                (format!("{{F{i}{j}{k},F{k}{l}{m}}}"), format!("F{i}{l}{m}*P{j}{k} - P{i}{k}*F{j}{l}{m}"), &lhs - &rhs)
            }
            Family::Closure3 => {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                let f = self.f(i, j, k)?;
                let mut e = &f * &f;
                e = &e - &(&cc(i) * &(&pp(j, k) * &pp(j, k)));
                e = &e - &(&cc(j) * &(&pp(i, k) * &pp(i, k)));
                e = &e - &(&cc(k) * &(&pp(i, j) * &pp(i, j)));
                e = &e + &(&(&pp(i, j) * &pp(j, k)) * &pp(i, k));
                e = &e + &(&(&cc(i) * &cc(j)) * &cc(k)).scale(&four);
                let s = format!(
                    "F{i}{j}{k}^2 - C{i}*P{j}{k}^2 - C{j}*P{i}{k}^2 - C{k}*P{i}{j}^2 + P{i}{j}*P{j}{k}*P{i}{k} + 4*C{i}*C{j}*C{k}"
                );
                (s, "0".into(), e)
            }
            Family::Closure4 => {
                let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                let mut e = (&self.f(i, j, k)? * &self.f(j, k, l)?).scale(&two);
                e = &e - &(&pp(i, l) * &(&pp(j, k) * &pp(j, k)));
                e = &e + &(&(&pp(i, j) * &pp(j, k)) * &pp(k, l));
                e = &e + &(&(&pp(i, k) * &pp(j, k)) * &pp(j, l));
                e = &e - &(&(&cc(j) * &pp(i, k)) * &pp(k, l)).scale(&two);
                e = &e - &(&(&cc(k) * &pp(i, j)) * &pp(j, l)).scale(&two);
                e = &e + &(&(&cc(j) * &cc(k)) * &pp(i, l)).scale(&four);
                let s = format!(
                    "2*F{i}{j}{k}*F{j}{k}{l} - P{i}{l}*P{j}{k}^2 + P{i}{j}*P{j}{k}*P{k}{l} + P{i}{k}*P{j}{k}*P{j}{l} - 2*C{j}*P{i}{k}*P{k}{l} - 2*C{k}*P{i}{j}*P{j}{l} + 4*C{j}*C{k}*P{i}{l}"
                );
                (s, "0".into(), e)
            }
            Family::Closure5 => {
                let (i, j, k, l, m) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
                let mut e = (&self.f(i, j, k)? * &self.f(k, l, m)?).scale(&two);
                e = &e - &(&(&pp(i, l) * &pp(j, k)) * &pp(k, m));
                e = &e - &(&(&pp(i, k) * &pp(j, m)) * &pp(k, l));
                e = &e + &(&(&pp(i, m) * &pp(j, k)) * &pp(k, l));
                e = &e + &(&(&pp(i, k) * &pp(j, l)) * &pp(k, m));
                e = &e - &(&(&cc(k) * &pp(i, m)) * &pp(j, l)).scale(&two);
                e = &e + &(&(&cc(k) * &pp(i, l)) * &pp(j, m)).scale(&two);
                let s = format!(
                    "2*F{i}{j}{k}*F{k}{l}{m} - P{i}{l}*P{j}{k}*P{k}{m} - P{i}{k}*P{j}{m}*P{k}{l} + P{i}{m}*P{j}{k}*P{k}{l} + P{i}{k}*P{j}{l}*P{k}{m} - 2*C{k}*P{i}{m}*P{j}{l} + 2*C{k}*P{i}{l}*P{j}{m}"
                );
                (s, "0".into(), e)
            }
            Family::Closure6 => {
                let (i, j, k, l, m, r) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
                let mut e = (&self.f(i, j, k)? * &self.f(l, m, r)?).scale(&two);
                e = &e - &(&(&pp(i, l) * &pp(j, r)) * &pp(k, m));
                e = &e - &(&(&pp(i, r) * &pp(j, m)) * &pp(k, l));
                e = &e - &(&(&pp(k, r) * &pp(i, m)) * &pp(j, l));
                e = &e + &(&(&pp(i, m) * &pp(j, r)) * &pp(k, l));
                e = &e + &(&(&pp(i, r) * &pp(j, l)) * &pp(k, m));
                e = &e + &(&(&pp(i, l) * &pp(j, m)) * &pp(k, r));
                let s = format!(
                    "2*F{i}{j}{k}*F{l}{m}{r} - P{i}{l}*P{j}{r}*P{k}{m} - P{i}{r}*P{j}{m}*P{k}{l} - P{k}{r}*P{i}{m}*P{j}{l} + P{i}{m}*P{j}{r}*P{k}{l} + P{i}{r}*P{j}{l}*P{k}{m} + P{i}{l}*P{j}{m}*P{k}{r}"
                );
                (s, "0".into(), e)
            }
        })
    }

    /// `{H, P_ij}` for `i < j`, when a Hamiltonian is attached.
    pub fn symmetry_residuals(&self) -> Result<Vec<(String, Vec<usize>, CommPoly)>> {
        let Some(h) = &self.hamiltonian else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                out.push((format!("symmetry(H,P{i}{j})"), vec![i, j], self.bracket(h, self.p(i, j))?));
            }
        }
        Ok(out)
    }
}

/// Sets variable `i` to `v` for each pair, keeping the ring.
pub fn specialize(f: &CommPoly, assign: &[(usize, Rational)]) -> CommPoly {
    let mut out = CommPoly::zero(f.table());
    for (e, c) in f.terms() {
        let mut e = e.clone();
        let mut c = c.clone();
        for (i, v) in assign {
            let k = e[*i];
            if k != 0 {
                if v.is_zero() {
                    c = Rational::zero();
                } else {
                    c *= num_traits::pow::Pow::pow(v, k);
                }
                e[*i] = 0;
            }
        }
        out.add_term(e, c);
    }
    out
}

fn reduce(ideal: Option<&ConstraintIdeal>, f: &CommPoly) -> CommPoly {
    match ideal {
        Some(i) => i.reduce(f),
        None => f.clone(),
    }
}

/// Residual of every relation, reduced modulo `ideal` when given; with an
/// ideal the unreduced residual is reported as well.
pub fn verify_realization(
    sym: &RacahSymbols,
    rels: &RelationSet,
    ideal: Option<&ConstraintIdeal>,
) -> Result<Vec<RelationReport>> {
    if let Some(i) = ideal {
        if let Some(g) = i.basis().first() {
            if g.table() != sym.table() {
                return Err(Error::IncompatibleRealization("ideal and realization use different rings".into()));
            }
        }
    }
    rels.instances
        .par_iter()
        .map(|rel| {
            let (lhs, rhs, residual) = sym.residual(rel)?;
            let mut r = RelationReport::new(
                rel.id(),
                rel.family.name(),
                rel.indices.clone(),
                lhs,
                rhs,
                reduce(ideal, &residual).to_text(),
            );
            if ideal.is_some() {
                r.residual_unreduced = Some(residual.to_text());
            }
            Ok(r)
        })
        .collect()
}

/// Commutation of the attached Hamiltonian with every `P_ij`.
pub fn verify_symmetry(sym: &RacahSymbols, ideal: Option<&ConstraintIdeal>) -> Result<Vec<RelationReport>> {
    Ok(sym
        .symmetry_residuals()?
        .into_iter()
        .map(|(id, idx, res)| {
            let (i, j) = (idx[0], idx[1]);
            let mut r = RelationReport::new(
                id,
                "symmetry",
                idx,
                format!("{{H,P{i}{j}}}"),
                "0".into(),
                reduce(ideal, &res).to_text(),
            );
            if ideal.is_some() {
                r.residual_unreduced = Some(res.to_text());
            }
            r
        })
        .collect())
}

/// Constants of the sphere ansatz, in solving order.
pub const SPHERE_PARAMETERS: [&str; 8] = ["kappa", "A", "B", "U", "V", "W", "lambda", "mu"];

/// Which terms the sphere ansatz includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereAnsatz {
    pub rotation: bool,
}

impl Default for SphereAnsatz {
    fn default() -> Self {
        SphereAnsatz { rotation: true }
    }
}

/// Sphere model with undetermined constants:
/// `P_ij = kappa L_ij^2 + A a_i^2 s_j^2/s_i^2 + B a_j^2 s_i^2/s_j^2 + U a_i^2 + V a_j^2 + W`,
/// `C_i = lambda a_i^2 + mu`, `L_ij = s_i p_j - s_j p_i`, and Hamiltonian
/// `1/2 sum L_ij^2 + 1/2 sum a_k^2/s_k^2`.
pub fn sphere_realization(n: usize) -> Result<RacahSymbols> {
    sphere_realization_with(n, SphereAnsatz::default())
}

pub fn sphere_realization_with(n: usize, ansatz: SphereAnsatz) -> Result<RacahSymbols> {
    if n < 3 {
        return Err(Error::Unsupported(format!("sphere model needs n >= 3, got {n}")));
    }
    let table = VarTable::phase_space(n, &SPHERE_PARAMETERS);
    let v = |l: &str| CommPoly::var_named(&table, l).expect("phase-space label");
    let s = |i: usize| v(&format!("s{i}"));
    let p = |i: usize| v(&format!("p{i}"));
    let a2 = |i: usize| {
        let a = v(&format!("a{i}"));
        &a * &a
    };
    let ratio = |i: usize, j: usize| {
        // s_j^2 / s_i^2
        let mut e = vec![0; table.len()];
        e[table.index_of(&format!("s{j}")).expect("s")] = 2;
        e[table.index_of(&format!("s{i}")).expect("s")] = -2;
        CommPoly::monomial(&table, e, Rational::one())
    };
    let l = |i: usize, j: usize| &(&s(i) * &p(j)) - &(&s(j) * &p(i));
    let mut pmap = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let lij = l(i, j);
            let mut e = CommPoly::zero(&table);
            if ansatz.rotation {
                e = &e + &(&v("kappa") * &(&lij * &lij));
            }
            e = &e + &(&v("A") * &(&a2(i) * &ratio(i, j)));
            e = &e + &(&v("B") * &(&a2(j) * &ratio(j, i)));
            e = &e + &(&v("U") * &a2(i));
            e = &e + &(&v("V") * &a2(j));
            e = &e + &v("W");
            pmap.insert((i, j), e);
        }
    }
    let c = (1..=n).map(|i| &(&v("lambda") * &a2(i)) + &v("mu")).collect();
    let half = frac(1, 2);
    let mut h = CommPoly::zero(&table);
    for i in 1..=n {
        for j in i + 1..=n {
            let lij = l(i, j);
            h = &h + &(&lij * &lij).scale(&half);
        }
        let mut e = vec![0; table.len()];
        e[table.index_of(&format!("s{i}")).expect("s")] = -2;
        h = &h + &(&a2(i) * &CommPoly::monomial(&table, e, half.clone()));
    }
    let params: Vec<&str> = SPHERE_PARAMETERS.iter().copied().filter(|&x| ansatz.rotation || x != "kappa").collect();
    Ok(RacahSymbols::new(n, PoissonRing::Canonical, pmap, c, Some(h))?.with_parameters(&params, &["A"]))
}

/// Exact assignment of the undetermined constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub values: Vec<(String, Rational)>,
    /// Constants fixed by choice rather than by the equations.
    pub free: Vec<String>,
}

impl Solution {
    pub fn family_dim(&self) -> usize {
        self.free.len()
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.iter().find(|(l, _)| l == name).map(|(_, v)| v)
    }
}

const NONZERO_WITNESS: &str = "nonzero_witness";

struct ParameterSystem {
    table: Arc<VarTable>,
    /// For every ambient variable, its position among the unknowns.
    map: Vec<Option<usize>>,
}

impl ParameterSystem {
    fn new(sym: &RacahSymbols) -> Self {
        let mut labels: Vec<&str> = vec![NONZERO_WITNESS];
        labels.extend(sym.parameters.iter().map(|s| s.as_str()));
        let table = VarTable::plain(&labels);
        let map = sym.table.vars().iter().map(|v| table.index_of(&v.label)).collect();
        ParameterSystem { table, map }
    }

    /// Coefficients of `f` with respect to the non-parameter variables, as
    /// polynomials in the parameters.
    fn equations(&self, f: &CommPoly, out: &mut BTreeSet<String>, polys: &mut Vec<CommPoly>) {
        let mut groups: BTreeMap<Exponents, CommPoly> = BTreeMap::new();
        for (e, c) in f.terms() {
            let mut key = e.clone();
            let mut pe = vec![0; self.table.len()];
            for (i, slot) in self.map.iter().enumerate() {
                if let Some(j) = slot {
                    pe[*j] = e[i];
                    key[i] = 0;
                }
            }
            groups.entry(key).or_insert_with(|| CommPoly::zero(&self.table)).add_term(pe, c.clone());
        }
        for g in groups.into_values() {
            if g.is_zero() {
                continue;
            }
            let g = primitive(&g);
            if out.insert(g.to_text()) {
                polys.push(g);
            }
        }
    }
}

fn is_inconsistent(basis: &[CommPoly]) -> bool {
    basis.iter().any(|g| g.terms().all(|(e, _)| e.iter().all(|&x| x == 0)) && !g.is_zero())
}

/// Rational roots of a univariate polynomial (given by exponent -> coeff).
fn rational_roots(coeffs: &BTreeMap<i32, Rational>) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut den = BigInt::one();
    for c in coeffs.values() {
        den = den.lcm(c.denom());
    }
    let low = *coeffs.keys().next().unwrap_or(&0);
    let ints: BTreeMap<i32, BigInt> =
        coeffs.iter().map(|(k, c)| (k - low, (c * Rational::from_integer(den.clone())).to_integer())).collect();
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let top = *ints.keys().last().unwrap_or(&0);
    if top == 0 {
        return roots;
    }
    let a0 = ints[&0].abs();
    let an = ints[&top].abs();
    let divisors = |m: &BigInt| -> Vec<BigInt> {
        let mut d = Vec::new();
        let mut k = BigInt::one();
        while &k * &k <= *m {
            if (m % &k).is_zero() {
                d.push(k.clone());
                d.push(m / &k);
            }
            k += 1;
        }
        d
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1, -1] {
                let r = Rational::new(&p * sign, q.clone());
                let value: Rational = ints
                    .iter()
                    .map(|(k, c)| Rational::from_integer(c.clone()) * num_traits::pow::Pow::pow(&r, *k))
                    .sum();
                if value.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Solves the polynomial system making every residual vanish (modulo the
/// ideal), together with `P_ij = P_ji` and `{H, P_ij} = 0` when a
/// Hamiltonian is attached. Constants listed as nonzero are kept nonzero.
/// When a family of solutions exists the member with `mu = 0` (other free
/// constants 1) is returned.
pub fn solve_constants(sym: &RacahSymbols, rels: &RelationSet, ideal: &ConstraintIdeal) -> Result<Solution> {
    let system = ParameterSystem::new(sym);
    let mut seen = BTreeSet::new();
    let mut base: Vec<CommPoly> = Vec::new();
    let witness = CommPoly::var(&system.table, 0);
    for name in &sym.nonzero {
        if let Some(i) = system.table.index_of(name) {
            base.push(&(&witness * &CommPoly::var(&system.table, i)) - &CommPoly::one(&system.table));
        }
    }
    for i in 1..=sym.n {
        for j in i + 1..=sym.n {
            system.equations(&(sym.p(i, j) - sym.p(j, i)), &mut seen, &mut base);
        }
    }
    for (_, _, res) in sym.symmetry_residuals()? {
        system.equations(&ideal.reduce(&res), &mut seen, &mut base);
    }
    let per_relation: Vec<Result<Vec<CommPoly>>> = rels
        .instances
        .par_iter()
        .map(|rel| {
            let (_, _, res) = sym.residual(rel)?;
            let mut local_seen = BTreeSet::new();
            let mut eqs = Vec::new();
            system.equations(&ideal.reduce(&res), &mut local_seen, &mut eqs);
            Ok(eqs)
        })
        .collect();
    let per_relation = per_relation.into_iter().collect::<Result<Vec<_>>>()?;
    let mut all = base.clone();
    for eqs in &per_relation {
        for e in eqs {
            if seen.insert(e.to_text()) {
                all.push(e.clone());
            }
        }
    }
    let order = MonomialOrder::new(OrderKind::Lex, (0..system.table.len()).collect());
    let basis = groebner_basis(&all, &order);
    if is_inconsistent(&basis) {
        let mut offending: Vec<String> = rels
            .instances
            .iter()
            .zip(&per_relation)
            .filter(|(_, eqs)| {
                let mut sys = base.clone();
                sys.extend(eqs.iter().cloned());
                is_inconsistent(&groebner_basis(&sys, &order))
            })
            .map(|(r, _)| r.id())
            .collect();
        if offending.is_empty() {
            offending = rels.instances.iter().map(|r| r.id()).collect();
        }
        return Err(Error::NoRealization(offending));
    }
    let nvars = system.table.len();
    let mut assigned: Vec<Option<Rational>> = vec![None; nvars];
    let mut free = Vec::new();
    let mut current = basis;
    loop {
        let mut progress = false;
        for g in &current {
            let support = g.support();
            if support.len() != 1 {
                continue;
            }
            let x = support[0];
            if assigned[x].is_some() {
                continue;
            }
            let coeffs: BTreeMap<i32, Rational> = g.terms().map(|(e, c)| (e[x], c.clone())).collect();
            let roots = rational_roots(&coeffs);
            let Some(root) = roots.first() else {
                return Err(Error::NoRealization(vec![format!("no rational root for {}", g.to_text())]));
            };
            assigned[x] = Some(root.clone());
            progress = true;
            break;
        }
        if !progress {
            let Some(x) = (1..nvars).rev().find(|&x| assigned[x].is_none()) else {
                break;
            };
            let label = &system.table.var(x).label;
            let choice = if label == "mu" { Rational::zero() } else { Rational::one() };
            assigned[x] = Some(choice);
            free.push(label.clone());
        }
        let fixed: Vec<(usize, Rational)> =
            assigned.iter().enumerate().filter_map(|(i, v)| v.clone().map(|v| (i, v))).collect();
        let substituted: Vec<CommPoly> = all.iter().map(|g| specialize(g, &fixed)).collect();
        current = groebner_basis(&substituted, &order);
        if is_inconsistent(&current) {
            return Err(Error::NoRealization(vec![format!("choice for {} is inconsistent", free.join(", "))]));
        }
        if assigned.iter().all(|v| v.is_some()) {
            break;
        }
    }
    let values =
        (1..nvars).map(|i| (system.table.var(i).label.clone(), assigned[i].clone().expect("assigned"))).collect();
    Ok(Solution { values, free })
}

/// Position/momentum/central split of a phase-space table, for display.
pub fn describe_table(table: &VarTable) -> String {
    table
        .vars()
        .iter()
        .map(|v| match v.role {
            VarRole::Position(_) => format!("{}(position)", v.label),
            VarRole::Momentum(_) => format!("{}(momentum)", v.label),
            VarRole::Central => format!("{}(central)", v.label),
            VarRole::Plain => v.label.clone(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests;
