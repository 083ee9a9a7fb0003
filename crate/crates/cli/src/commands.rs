use std::sync::Arc;

use commutant::a3::{self, A3Quantum, MatrixModel};
use commutant::commutant::{extract_generators, find_relations, kernel_centralizer, weight_zero_basis};
use commutant::envalg::{adjoint_matrices, defining_matrices, Envelope, NCPoly};
use commutant::liealg::{by_name, check_jacobi, LieAlgebraSpec};
use commutant::racah::{self, build_relation_set, solve_constants, sphere_realization};
use commutant::rational::fmt_rational;
use commutant::report::RelationReport;
use commutant::symalg::{sphere_ideal, CommPoly, VarTable};
use commutant::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;
const COMMUTATIVE_ORDER: &str =
    "commutative: total degree descending, then exponent vector descending in variable order";
const PBW_ORDER: &str = "enveloping: non-decreasing words in basis order; degree descending, then words lexicographic";

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// Every engine identity verified.
    pub ok: bool,
    /// Every paper comparison matched.
    pub paper_ok: bool,
}

pub fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::InvalidDimension(_) | Error::Unsupported(_) | Error::Parse(_) | Error::InvalidAlgebra(_))
}

#[derive(Serialize)]
struct Summary {
    records: usize,
    verified: usize,
    failed: usize,
    paper_mismatches: usize,
}

fn summarize(records: &[RelationReport]) -> Summary {
    let verified = records.iter().filter(|r| r.verified()).count();
    Summary {
        records: records.len(),
        verified,
        failed: records.len() - verified,
        paper_mismatches: records.iter().filter(|r| !r.paper_matched()).count(),
    }
}

fn header(command: &str, basis: &[String], orders: &[&str]) -> String {
    let mut out = format!("# {command} (schema {SCHEMA})\n# basis: {}\n", basis.join(" "));
    for o in orders {
        out.push_str(&format!("# order: {o}\n"));
    }
    out
}

fn render_records(out: &mut String, records: &[RelationReport]) {
    for r in records {
        out.push_str(&r.to_text());
    }
    let s = summarize(records);
    out.push_str(&format!(
        "{} records: {} verified, {} failed, {} paper mismatches\n",
        s.records, s.verified, s.failed, s.paper_mismatches
    ));
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=2);
        let word = (0..len).map(|_| rng.gen_range(0..dim) as u8).collect();
        p.add_term(word, Rational::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    p
}

pub fn algebra(name: &str, seed: u64) -> Result<Outcome, Error> {
    let spec = Arc::new(by_name(name)?);
    let jacobi = check_jacobi(&spec);
    let env = Envelope::new(spec.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 20;
    let mut failures = 0;
    for _ in 0..samples {
        let a = env.normalize(&random_element(&mut rng, spec.dim()));
        let b = env.normalize(&random_element(&mut rng, spec.dim()));
        let c = env.normalize(&random_element(&mut rng, spec.dim()));
        let assoc = &env.multiply(&env.multiply(&a, &b), &c) - &env.multiply(&a, &env.multiply(&b, &c));
        let jac = &(&env.commutator(&a, &env.commutator(&b, &c)) + &env.commutator(&b, &env.commutator(&c, &a)))
            + &env.commutator(&c, &env.commutator(&a, &b));
        if !assoc.is_zero() || !jac.is_zero() {
            failures += 1;
        }
    }
    let basis = spec.labels().to_vec();
    let mut brackets = Vec::new();
    for i in 0..spec.dim() {
        for j in i + 1..spec.dim() {
            let c = spec.bracket(i, j);
            if !c.is_empty() {
                brackets.push(json!({"a": spec.label(i), "b": spec.label(j), "bracket": spec.fmt_combination(c)}));
            }
        }
    }
    let cartan: Vec<&str> = spec.cartan().iter().map(|&h| spec.label(h)).collect();
    let mut text = header("algebra", &basis, &[PBW_ORDER]);
    text.push_str(&spec.to_string());
    text.push_str(&format!("jacobi: {}\n", if jacobi { "ok" } else { "FAILED" }));
    text.push_str(&format!("random checks (seed {seed}): {samples} samples, {failures} failures\n"));
    let json = json!({
        "schema": SCHEMA,
        "command": "algebra",
        "algebra": spec.name(),
        "basis": basis,
        "monomial_order": PBW_ORDER,
        "cartan": cartan,
        "brackets": brackets,
        "jacobi": jacobi,
        "random_checks": {"seed": seed, "samples": samples, "failures": failures},
    });
    Ok(Outcome { text, json, ok: jacobi && failures == 0, paper_ok: true })
}

fn cartan_elements(spec: &LieAlgebraSpec) -> Vec<CommPoly> {
    let table = VarTable::lie(spec);
    spec.cartan().iter().map(|&h| CommPoly::var(&table, h)).collect()
}

pub fn commutant(name: &str, max_degree: usize, relation_degree: Option<usize>) -> Result<Outcome, Error> {
    if max_degree == 0 {
        return Err(Error::Unsupported("--max-degree must be at least 1".into()));
    }
    let spec = by_name(name)?;
    let cartan = cartan_elements(&spec);
    let slices: Vec<(usize, usize, usize)> = (1..=max_degree)
        .into_par_iter()
        .map(|d| {
            let w = weight_zero_basis(&spec, d).dim();
            let k = kernel_centralizer(&spec, &cartan, d).map(|b| b.dim());
            k.map(|k| (d, w, k))
        })
        .collect::<Result<_, _>>()?;
    let gens = extract_generators(&spec, max_degree);
    let bound = relation_degree.unwrap_or(2 * max_degree);
    let relations = find_relations(&gens, bound);
    let consistent = slices.iter().all(|(_, w, k)| w == k) && relations.iter().all(|r| gens.expand(r).is_zero());
    let basis = spec.labels().to_vec();
    let mut text = header("commutant", &basis, &[COMMUTATIVE_ORDER]);
    text.push_str(&format!("algebra: {}\n", spec.name()));
    for (d, w, k) in &slices {
        text.push_str(&format!("degree {d}: dimension {w} (kernel method {k})\n"));
    }
    text.push_str(&format!("generators ({}):\n", gens.len()));
    for g in gens.generators() {
        text.push_str(&format!("  {} [degree {}] = {}\n", g.label, g.degree, g.poly.to_text()));
    }
    text.push_str(&format!("relations up to weighted degree {bound} ({}):\n", relations.len()));
    for r in &relations {
        text.push_str(&format!("  {} = 0\n", r.to_text()));
    }
    let json = json!({
        "schema": SCHEMA,
        "command": "commutant",
        "algebra": spec.name(),
        "basis": basis,
        "monomial_order": COMMUTATIVE_ORDER,
        "dimensions": slices.iter().map(|(d, w, k)| json!({"degree": d, "dimension": w, "kernel_dimension": k})).collect::<Vec<_>>(),
        "generators": gens.generators().iter().map(|g| json!({"label": g.label, "degree": g.degree, "polynomial": g.poly.to_text()})).collect::<Vec<_>>(),
        "symbols": gens.generators().iter().map(|g| g.label.clone()).collect::<Vec<_>>(),
        "relation_degree": bound,
        "relations": relations.iter().map(|r| r.to_text()).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, json, ok: consistent, paper_ok: true })
}

#[derive(Serialize)]
struct MatrixCheck {
    id: String,
    representation: &'static str,
    zero: bool,
}

fn quantum_records(q: &A3Quantum) -> Result<(Vec<RelationReport>, Vec<MatrixCheck>), Error> {
    let spec = q.envelope().spec().clone();
    let model = MatrixModel::new(q.classical(), defining_matrices(&spec)?);
    let outcomes: Vec<_> = a3::quantum_relations()
        .par_iter()
        .map(|rel| q.quantum_bracket_with_correction(rel).map(|o| (rel.clone(), o)))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    let mut checks = Vec::new();
    for (rel, o) in outcomes {
        checks.push(MatrixCheck {
            id: rel.id.clone(),
            representation: "defining",
            zero: model.bracket_residual(&rel, &o.correction).is_zero(),
        });
        records.push(o.report);
    }
    Ok((records, checks))
}

fn constraint_records(q: &A3Quantum) -> Result<(Vec<RelationReport>, Vec<MatrixCheck>), Error> {
    let spec = q.envelope().spec().clone();
    let defining = MatrixModel::new(q.classical(), defining_matrices(&spec)?);
    let adjoint = MatrixModel::new(q.classical(), adjoint_matrices(&spec));
    let outcomes: Vec<_> = a3::permutations()
        .par_iter()
        .map(|&(i, j, k)| q.verify_quantum_constraint(i, j, k).map(|o| ((i, j, k), o)))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    let mut checks = Vec::new();
    for ((i, j, k), o) in outcomes {
        for (name, model) in [("defining", &defining), ("adjoint", &adjoint)] {
            checks.push(MatrixCheck {
                id: o.report.id.clone(),
                representation: name,
                zero: model.constraint_residual(i, j, k, &o.correction).is_zero(),
            });
        }
        records.push(o.report);
    }
    Ok((records, checks))
}

fn a3_outcome(
    command: &str,
    sections: Vec<(&str, Vec<RelationReport>)>,
    checks: Vec<MatrixCheck>,
    basis: Vec<String>,
) -> Outcome {
    let orders = [COMMUTATIVE_ORDER, PBW_ORDER];
    let mut text = header(command, &basis, &orders);
    text.push_str(&format!("# generator symbols: {}\n", a3::SYMBOLS.join(" ")));
    let mut all = Vec::new();
    let mut json_sections = serde_json::Map::new();
    for (name, records) in sections {
        text.push_str(&format!("== {name} ==\n"));
        render_records(&mut text, &records);
        json_sections.insert(name.to_string(), serde_json::to_value(&records).expect("serializable"));
        all.extend(records);
    }
    if !checks.is_empty() {
        let bad = checks.iter().filter(|c| !c.zero).count();
        text.push_str(&format!("matrix cross-checks: {} evaluated, {} nonzero\n", checks.len(), bad));
    }
    let summary = summarize(&all);
    let ok = summary.failed == 0 && checks.iter().all(|c| c.zero);
    let paper_ok = summary.paper_mismatches == 0;
    let json = json!({
        "schema": SCHEMA,
        "command": command,
        "algebra": "sl3",
        "basis": basis,
        "monomial_order": orders.join("; "),
        "generator_symbols": a3::SYMBOLS,
        "sections": json_sections,
        "matrix_checks": checks,
        "summary": summary,
    });
    Outcome { text, json, ok, paper_ok }
}

pub fn verify_a3(classical: bool, quantum: bool, constraint: bool) -> Result<Outcome, Error> {
    let mut sections = Vec::new();
    let mut checks = Vec::new();
    let c = a3::build_classical();
    let basis = c.spec().labels().to_vec();
    if classical {
        sections.push(("classical", a3::verify_classical(&c)));
    }
    if quantum || constraint {
        let q = a3::build_quantum()?;
        if quantum {
            sections.push(("generators", q.generator_reports()?));
            let (records, mc) = quantum_records(&q)?;
            sections.push(("quantum", records));
            checks.extend(mc);
            sections.push(("classical-limit", q.classical_limit_reports()));
        }
        if constraint {
            let (records, mc) = constraint_records(&q)?;
            sections.push(("constraint", records));
            checks.extend(mc);
        }
    }
    Ok(a3_outcome("verify-a3", sections, checks, basis))
}

pub fn corrections() -> Result<Outcome, Error> {
    let q = a3::build_quantum()?;
    let (mut records, mut checks) = quantum_records(&q)?;
    records.retain(|r| r.family != "central");
    checks.retain(|c| records.iter().any(|r| r.id == c.id));
    let (constraint, cc) = constraint_records(&q)?;
    records.extend(constraint);
    checks.extend(cc);
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &records {
        let cmp = r.paper_comparison.as_ref();
        text.push_str(&format!(
            "{}\n  engine: {}\n  paper:  {}\n  {}\n",
            r.id,
            r.correction.as_deref().unwrap_or("0"),
            r.paper_correction.as_deref().unwrap_or("-"),
            match cmp {
                Some(c) if c.matched => "matched".to_string(),
                Some(c) => format!("differs: {}", c.differences.join("; ")),
                None => "no printed form".to_string(),
            }
        ));
        rows.push(json!({
            "id": r.id,
            "status": r.status,
            "correction": r.correction,
            "paper_correction": r.paper_correction,
            "paper_comparison": r.paper_comparison,
        }));
    }
    let summary = summarize(&records);
    text.push_str(&format!(
        "{} relations: {} certified, {} paper mismatches\n",
        summary.records, summary.verified, summary.paper_mismatches
    ));
    let basis = q.envelope().spec().labels().to_vec();
    let head = header("corrections", &basis, &[PBW_ORDER]);
    let json = json!({
        "schema": SCHEMA,
        "command": "corrections",
        "algebra": "sl3",
        "basis": basis,
        "monomial_order": PBW_ORDER,
        "generator_symbols": a3::SYMBOLS,
        "corrections": rows,
        "matrix_checks": checks,
        "summary": summary,
    });
    let ok = summary.failed == 0 && checks.iter().all(|c| c.zero);
    Ok(Outcome { text: head + &text, json, ok, paper_ok: summary.paper_mismatches == 0 })
}

pub fn verify_racah(n: usize, closure: bool) -> Result<Outcome, Error> {
    let rels = build_relation_set(n, closure)?;
    // the ansatz is uniform in the indices, so the constants are solved once
    // on the rank-3 model
    let base = sphere_realization(3)?;
    let base_ideal = sphere_ideal(base.table())?;
    let solution = solve_constants(&base, &build_relation_set(3, closure)?, &base_ideal)?;
    let sym = sphere_realization(n)?.specialize(&solution.values);
    let ideal = sphere_ideal(sym.table())?;
    let mut records = racah::verify_realization(&sym, &rels, Some(&ideal))?;
    records.extend(racah::verify_symmetry(&sym, Some(&ideal))?);
    let basis: Vec<String> = sym.table().vars().iter().map(|v| v.label.clone()).collect();
    let ideal_order = format!(
        "ideal reduction: degree-lex with {} most significant",
        ideal.order().priority.iter().take(2 * n).map(|&i| basis[i].as_str()).collect::<Vec<_>>().join(" > ")
    );
    let orders = [COMMUTATIVE_ORDER, ideal_order.as_str()];
    let mut text = header("verify-racah", &basis, &orders);
    text.push_str(&format!("n = {n}, closure = {closure}\n"));
    text.push_str("constants:");
    for (name, v) in &solution.values {
        text.push_str(&format!(" {name}={}", fmt_rational(v)));
    }
    text.push_str(&format!("\nsolution family dimension: {}\n", solution.family_dim()));
    render_records(&mut text, &records);
    let summary = summarize(&records);
    let constants: serde_json::Map<String, Value> =
        solution.values.iter().map(|(k, v)| (k.clone(), Value::String(fmt_rational(v)))).collect();
    let json = json!({
        "schema": SCHEMA,
        "command": "verify-racah",
        "n": n,
        "closure": closure,
        "basis": basis,
        "monomial_order": orders.join("; "),
        "constants": constants,
        "free_constants": solution.free,
        "family_dim": solution.family_dim(),
        "records": records,
        "summary": summary,
    });
    Ok(Outcome { text, json, ok: summary.failed == 0, paper_ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutant_lists_generators_and_relation() {
        let out = commutant("sl3", 3, None).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["symbols"], json!(["h1", "h2", "p12", "p13", "p23", "p123", "p132"]));
        assert_eq!(out.json["relations"], json!(["p12*p13*p23 - p123*p132"]));
        assert!(out.text.contains("degree 3: dimension 12 (kernel method 12)"));
    }

    #[test]
    fn usage_errors() {
        assert!(is_usage_error(&commutant("sl3", 0, None).err().unwrap()));
        assert!(is_usage_error(&commutant("so5", 2, None).err().unwrap()));
        assert!(is_usage_error(&verify_racah(2, false).err().unwrap()));
    }

    #[test]
    fn algebra_is_seed_deterministic() {
        let a = algebra("gl3", 11).unwrap();
        let b = algebra("gl3", 11).unwrap();
        assert!(a.ok);
        assert_eq!(a.text, b.text);
    }

    #[test]
    fn constraint_reports_paper_mismatch() {
        let out = verify_a3(false, false, true).unwrap();
        assert!(out.ok);
        assert!(!out.paper_ok);
    }

    #[test]
    fn racah_rank_four() {
        let out = verify_racah(4, false).unwrap();
        assert!(out.ok, "{}", out.text);
        assert_eq!(out.json["constants"]["A"], json!("-1/4"));
    }
}
