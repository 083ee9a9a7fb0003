use super::*;
use crate::symalg::sphere_ideal;

fn brute_force_count(n: usize, k: usize) -> usize {
    let mut count = 0;
    let total = n.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut seen = vec![false; n];
        let mut ok = true;
        for _ in 0..k {
            let d = c % n;
            c /= n;
            if seen[d] {
                ok = false;
            }
            seen[d] = true;
        }
        count += ok as usize;
    }
    count
}

#[test]
fn relation_counts() {
    for n in 3..=5 {
        let rels = build_relation_set(n, true).unwrap();
        for f in Family::ALL {
            let expected = if f.arity() > n { 0 } else { brute_force_count(n, f.arity()) };
            assert_eq!(rels.count(f), expected, "n={n} {f:?}");
        }
    }
    let r3 = build_relation_set(3, false).unwrap();
    assert_eq!(r3.count(Family::PairPair), 6);
    assert_eq!(r3.count(Family::PairTriple), 6);
    assert_eq!(r3.count(Family::PairTripleOuter), 0);
    assert_eq!(r3.count(Family::Closure3), 0);
    assert!(build_relation_set(4, false).unwrap().count(Family::TripleTripleTwo) > 0);
    assert_eq!(build_relation_set(4, false).unwrap().count(Family::TripleTripleOne), 0);
    assert!(build_relation_set(5, false).unwrap().count(Family::TripleTripleOne) > 0);
    assert!(matches!(build_relation_set(2, false), Err(Error::Unsupported(_))));
}

#[test]
fn zero_realization() {
    let table = VarTable::phase_space(3, &[]);
    let z = CommPoly::zero(&table);
    let mut p = BTreeMap::new();
    for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
        p.insert((i, j), z.clone());
    }
    let sym = RacahSymbols::new(3, PoissonRing::Canonical, p, vec![z.clone(), z.clone(), z], None).unwrap();
    let rels = build_relation_set(3, true).unwrap();
    for r in verify_realization(&sym, &rels, None).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
    }
}

#[test]
fn mixed_rings_rejected() {
    let t1 = VarTable::phase_space(3, &[]);
    let t2 = VarTable::phase_space(3, &["x"]);
    let mut p = BTreeMap::new();
    for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
        p.insert((i, j), CommPoly::zero(&t1));
    }
    let c = vec![CommPoly::zero(&t1), CommPoly::zero(&t1), CommPoly::zero(&t2)];
    assert!(matches!(RacahSymbols::new(3, PoissonRing::Canonical, p, c, None), Err(Error::IncompatibleRealization(_))));
}

#[test]
fn sphere_ansatz_basics() {
    let sym = sphere_realization(3).unwrap();
    assert!(sym.bracket(sym.p(1, 2), sym.p(1, 2)).unwrap().is_zero());
    assert!(sphere_realization(2).is_err());
}

#[test]
fn sphere_constants_n3() {
    let sym = sphere_realization(3).unwrap();
    let ideal = sphere_ideal(sym.table()).unwrap();
    let rels = build_relation_set(3, true).unwrap();
    let sol = solve_constants(&sym, &rels, &ideal).unwrap();
    println!("{sol:?}");
    assert_eq!(sol.get("A"), sol.get("B"));
    assert_eq!(sol.get("mu"), Some(&Rational::zero()));
    let solved = sym.specialize(&sol.values);
    for r in verify_realization(&solved, &rels, Some(&ideal)).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
    }
    for r in verify_symmetry(&solved, Some(&ideal)).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
        assert_ne!(r.residual_unreduced.as_deref(), Some("0"));
    }
}

#[test]
fn dropping_rotation_term_has_no_realization() {
    let sym = sphere_realization_with(3, SphereAnsatz { rotation: false }).unwrap();
    let ideal = sphere_ideal(sym.table()).unwrap();
    let rels = build_relation_set(3, false).unwrap();
    match solve_constants(&sym, &rels, &ideal) {
        Err(Error::NoRealization(ids)) => assert!(!ids.is_empty()),
        other => panic!("expected no realization, got {other:?}"),
    }
}

#[test]
fn rational_root_finder() {
    // 4x^2 - 1 and x^3 - x
    let c: BTreeMap<i32, Rational> = [(2, int(4)), (0, int(-1))].into_iter().collect();
    assert_eq!(rational_roots(&c), vec![frac(-1, 2), frac(1, 2)]);
    let c: BTreeMap<i32, Rational> = [(3, int(1)), (1, int(-1))].into_iter().collect();
    assert_eq!(rational_roots(&c), vec![int(-1), int(0), int(1)]);
    let c: BTreeMap<i32, Rational> = [(2, int(1)), (0, int(-2))].into_iter().collect();
    assert!(rational_roots(&c).is_empty());
}
