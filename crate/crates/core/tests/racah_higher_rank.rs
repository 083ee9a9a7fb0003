use commutant::racah::{
    build_relation_set, solve_constants, sphere_realization, verify_realization, Family, RacahSymbols,
};
use commutant::rational::frac;
use commutant::symalg::sphere_ideal;
use commutant::Rational;
use num_traits::Zero;

fn solved(n: usize) -> RacahSymbols {
    let base = sphere_realization(3).unwrap();
    let ideal = sphere_ideal(base.table()).unwrap();
    let rels = build_relation_set(3, false).unwrap();
    let sol = solve_constants(&base, &rels, &ideal).unwrap();
    sphere_realization(n).unwrap().specialize(&sol.values)
}

#[test]
fn constants_are_quarter_normalized() {
    let base = sphere_realization(3).unwrap();
    let ideal = sphere_ideal(base.table()).unwrap();
    let sol = solve_constants(&base, &build_relation_set(3, true).unwrap(), &ideal).unwrap();
    assert_eq!(sol.family_dim(), 0);
    for name in ["kappa", "A", "B", "lambda"] {
        assert_eq!(sol.get(name), Some(&frac(-1, 4)), "{name}");
    }
    for name in ["U", "V", "W", "mu"] {
        assert_eq!(sol.get(name), Some(&Rational::zero()), "{name}");
    }
}

#[test]
fn rank_four_relations() {
    let sym = solved(4);
    let ideal = sphere_ideal(sym.table()).unwrap();
    let rels = build_relation_set(4, true).unwrap();
    for r in verify_realization(&sym, &rels, Some(&ideal)).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
    }
}

#[test]
fn rank_five_new_families() {
    let sym = solved(5);
    let ideal = sphere_ideal(sym.table()).unwrap();
    let rels = build_relation_set(5, true).unwrap().only(&[Family::TripleTripleOne, Family::Closure5]);
    let mut sample = rels.clone();
    sample.instances.retain(|r| r.indices[0] == 1);
    for r in verify_realization(&sym, &sample, Some(&ideal)).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
    }
}

#[test]
fn disjoint_triples_commute_at_rank_six() {
    let sym = solved(6);
    let f123 = sym.f(1, 2, 3).unwrap();
    for (l, m, r) in [(4, 5, 6), (5, 4, 6), (6, 4, 5)] {
        assert!(sym.bracket(&f123, &sym.f(l, m, r).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn six_index_closure_sample() {
    let sym = solved(6);
    let ideal = sphere_ideal(sym.table()).unwrap();
    let mut rels = build_relation_set(6, true).unwrap().only(&[Family::Closure6]);
    assert_eq!(rels.instances.len(), 720);
    rels.instances.retain(|r| r.indices[..3] == [1, 2, 3] || r.indices[..3] == [2, 5, 1]);
    for r in verify_realization(&sym, &rels, Some(&ideal)).unwrap() {
        assert!(r.verified(), "{}", r.to_text());
    }
}
