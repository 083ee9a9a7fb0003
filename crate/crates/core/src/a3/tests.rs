use super::*;
use crate::envalg::{adjoint_matrices, defining_matrices, evaluate};

fn raw_cycle(a: &A3Classical, idx: &[usize]) -> CommPoly {
    // product of e_{i_t i_{t+1}} parsed from text, independent of `cycle`
    let text = (0..idx.len()).map(|t| format!("e{}{}", idx[t], idx[(t + 1) % idx.len()])).collect::<Vec<_>>().join("*");
    CommPoly::parse(&text, a.table()).unwrap()
}

#[test]
fn classical_generators() {
    let a = build_classical();
    let t = a.table();
    assert_eq!(a.get(A3Sym::C(1)), CommPoly::parse("2/3*h1 + 1/3*h2", t).unwrap());
    assert_eq!(a.get(A3Sym::C(2)), CommPoly::parse("-1/3*h1 + 1/3*h2", t).unwrap());
    let sum = &(&a.get(A3Sym::C(1)) + &a.get(A3Sym::C(2))) + &a.get(A3Sym::C(3));
    assert!(sum.is_zero());
    assert_eq!(a.get(A3Sym::F(1, 2, 3)), CommPoly::parse("1/2*e13*e32*e21 - 1/2*e12*e23*e31", t).unwrap());
    assert_eq!(a.get(A3Sym::G(1, 2, 3)), a.get(A3Sym::G(2, 1, 3)));
}

#[test]
fn accessors_match_definitions() {
    let a = build_classical();
    let half = frac(1, 2);
    for (i, j, k) in permutations() {
        let f = (&raw_cycle(&a, &[i, k, j]) - &raw_cycle(&a, &[i, j, k])).scale(&half);
        let g = (&raw_cycle(&a, &[i, k, j]) + &raw_cycle(&a, &[i, j, k])).scale(&half);
        assert_eq!(a.get(A3Sym::F(i, j, k)), f, "f{i}{j}{k}");
        assert_eq!(a.get(A3Sym::G(i, j, k)), g, "g{i}{j}{k}");
        assert_eq!(a.get(A3Sym::Pair(i, j)), raw_cycle(&a, &[i, j]));
        assert_eq!(a.get(A3Sym::F(i, j, k)), a.get(A3Sym::F(j, k, i)));
        assert_eq!(a.get(A3Sym::F(i, j, k)), a.get(A3Sym::F(j, i, k)).scale(&int(-1)));
    }
}

#[test]
fn classical_table_verifies() {
    let a = build_classical();
    let reports = verify_classical(&a);
    assert!(reports.len() >= 20);
    for r in &reports {
        assert!(r.verified(), "{}", r.to_text());
    }
    let first = reports.iter().find(|r| r.id == "pair-pair(1,2,3)").unwrap();
    assert_eq!(first.lhs, "2*f123");
}

#[test]
fn quantum_pair_generators() {
    let q = build_quantum().unwrap();
    assert_eq!(q.text(&q.get(A3Sym::Pair(1, 2))), "E12*E21 - 1/2*H1");
    assert_eq!(q.text(&q.get(A3Sym::Pair(2, 3))), "E23*E32 - 1/2*H2");
    assert_eq!(q.text(&q.get(A3Sym::Pair(1, 3))), "E13*E31 - 1/2*H1 - 1/2*H2");
    for r in q.generator_reports().unwrap() {
        assert!(r.verified(), "{}", r.to_text());
        println!("{}", r.to_text());
    }
}

#[test]
fn quantum_relations_certified() {
    let q = build_quantum().unwrap();
    let defining = MatrixModel::new(q.classical(), defining_matrices(q.envelope().spec()).unwrap());
    for rel in quantum_relations() {
        let out = q.quantum_bracket_with_correction(&rel).unwrap();
        assert!(out.report.verified(), "{}", out.report.to_text());
        assert!(out.remainder_degree.is_none_or(|d| d < out.principal_degree));
        if rel.family == "pair-pair" || rel.family == "central" {
            assert!(out.correction.is_zero(), "{}", out.report.to_text());
        }
        assert!(defining.bracket_residual(&rel, &out.correction).is_zero(), "{}", rel.id);
        if rel.family != "central" {
            println!("{}", out.report.to_text());
        }
    }
}

#[test]
fn quantum_constraint() {
    let q = build_quantum().unwrap();
    let spec = q.envelope().spec().clone();
    let defining = MatrixModel::new(q.classical(), defining_matrices(&spec).unwrap());
    let adjoint = MatrixModel::new(q.classical(), adjoint_matrices(&spec));
    for (i, j, k) in permutations() {
        let out = q.verify_quantum_constraint(i, j, k).unwrap();
        assert!(out.report.verified(), "{}", out.report.to_text());
        assert!(defining.constraint_residual(i, j, k, &out.correction).is_zero());
        assert!(adjoint.constraint_residual(i, j, k, &out.correction).is_zero());
        println!("{}", out.report.to_text());
    }
}

#[test]
fn matrix_model_agrees_with_normal_forms() {
    let q = build_quantum().unwrap();
    let mats = defining_matrices(q.envelope().spec()).unwrap();
    let model = MatrixModel::new(q.classical(), mats.clone());
    for label in SYMBOLS {
        let s = parse_sym(label).unwrap();
        assert_eq!(model.get(s), evaluate(&q.get(s), &mats), "{label}");
    }
}

#[test]
fn classical_limit() {
    let q = build_quantum().unwrap();
    let reports = q.classical_limit_reports();
    assert_eq!(reports.len(), 21);
    for r in reports {
        assert!(r.verified(), "{}", r.to_text());
    }
}

#[test]
fn quantum_generators_commute_with_cartan() {
    let q = build_quantum().unwrap();
    let env = q.envelope();
    for label in SYMBOLS {
        for h in ["H1", "H2"] {
            let c = env.commutator(&env.generator_named(h).unwrap(), &q.get_named(label).unwrap());
            assert!(c.is_zero());
        }
    }
}
