use krfusion::current::{
    check_theorem_relations, current_power_coefficient, evaluation_module, fusion_of_spec,
    fusion_product, g_decompose, g_decompose_coinvariant, g_decompose_kernel, graded_character,
    kr_module, Generator,
};
use krfusion::fermionic::{fermionic_multiplicity, KrSpec};
use krfusion::liealg::{build_cartan, weyl_dim, NTuplePartitions, Weight};
use krfusion::linalg::{q, Q};
use krfusion::Error;
use std::collections::BTreeMap;

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn zero() -> Q {
    q(0)
}

#[test]
fn evaluation_examples() {
    let a1 = build_cartan("A1").unwrap();
    let m = evaluation_module(&a1, &w(&[1]), &q(0)).unwrap();
    assert_eq!(m.dim(), 2);
    assert!(m.act(Generator::f(0, 1)).is_none());
    let m1 = evaluation_module(&a1, &w(&[1]), &q(1)).unwrap();
    for k in 0..5 {
        assert_eq!(
            m1.act(Generator::f(0, k)).unwrap().into_owned(),
            m1.act(Generator::f(0, 0)).unwrap().into_owned()
        );
    }
    let a2 = build_cartan("A2").unwrap();
    let m2 = evaluation_module(&a2, &w(&[1, 0]), &q(2)).unwrap();
    let f0 = m2.act(Generator::f(0, 0)).unwrap().into_owned();
    assert_eq!(
        m2.act(Generator::f(0, 1)).unwrap().into_owned(),
        f0.scaled(&q(2))
    );
    assert!(matches!(
        evaluation_module(&a1, &w(&[-1]), &q(0)),
        Err(Error::NotDominant(_))
    ));
}

#[test]
fn evaluation_dimensions_and_brackets() {
    for label in ["A1", "A2", "A3"] {
        let c = build_cartan(label).unwrap();
        let n = c.rank();
        for node in 0..n {
            for level in 1..=2 {
                let lam = Weight::fundamental(n, node, level);
                for pt in [q(0), q(3)] {
                    let m = evaluation_module(&c, &lam, &pt).unwrap();
                    assert_eq!(m.dim() as u64, weyl_dim(&c, &lam).unwrap(), "{label} {lam}");
                    assert!(m.bracket_violations(&c).is_empty(), "{label} {lam}");
                }
            }
        }
    }
    let a2 = build_cartan("A2").unwrap();
    let m = evaluation_module(&a2, &w(&[1, 1]), &q(0)).unwrap();
    assert_eq!(m.dim(), 8);
}

#[test]
fn kr_examples() {
    let a1 = build_cartan("A1").unwrap();
    assert_eq!(kr_module(&a1, 0, 2, &zero()).unwrap().dim(), 3);
    let a2 = build_cartan("A2").unwrap();
    let m = kr_module(&a2, 0, 1, &zero()).unwrap();
    assert_eq!(m.dim(), 3);
    assert!(m.apply(Generator::f(1, 0), &m.generator()).is_empty());
    let b2 = build_cartan("B2").unwrap();
    assert!(matches!(
        kr_module(&b2, 1, 1, &zero()),
        Err(Error::UnsupportedRealization(_))
    ));
}

#[test]
fn fusion_examples() {
    let a1 = build_cartan("A1").unwrap();
    let w1 = kr_module(&a1, 0, 1, &zero()).unwrap();
    let single = fusion_product(&a1, std::slice::from_ref(&w1), &[q(0)]).unwrap();
    assert_eq!(graded_character(&single), graded_character(&w1));

    let f = fusion_product(&a1, &[w1.clone(), w1.clone()], &[q(0), q(1)]).unwrap();
    let mut by_degree = BTreeMap::new();
    for ((_, d), n) in graded_character(&f) {
        *by_degree.entry(d).or_insert(0) += n;
    }
    assert_eq!(by_degree, BTreeMap::from([(0, 3), (1, 1)]));
    let ch = graded_character(&f);
    assert_eq!(ch[&(w(&[0]), 0)], 1);
    assert_eq!(ch[&(w(&[0]), 1)], 1);
    assert_eq!(
        g_decompose(&f, &a1).unwrap(),
        BTreeMap::from([((w(&[2]), 0), 1), ((w(&[0]), 1), 1)])
    );
    assert!(f.bracket_violations(&a1).is_empty());

    let w2 = kr_module(&a1, 0, 2, &zero()).unwrap();
    assert_eq!(
        fusion_product(&a1, &[w2, w1.clone()], &[q(0), q(1)])
            .unwrap()
            .dim(),
        6
    );
    assert!(matches!(
        fusion_product(&a1, &[w1.clone(), w1], &[q(1), q(1)]),
        Err(Error::CoincidentPoints)
    ));
}

#[test]
fn decomposition_examples() {
    let a2 = build_cartan("A2").unwrap();
    let v = evaluation_module(&a2, &w(&[2, 1]), &zero()).unwrap();
    assert_eq!(
        g_decompose(&v, &a2).unwrap(),
        BTreeMap::from([((w(&[2, 1]), 0), 1)])
    );
    let s: KrSpec = "1:1,2:1".parse().unwrap();
    let f = fusion_of_spec(&a2, &s, None).unwrap();
    let dec = g_decompose(&f, &a2).unwrap();
    let total: u64 = dec
        .iter()
        .map(|((mu, _), k)| k * weyl_dim(&a2, mu).unwrap())
        .sum();
    assert_eq!(total, 9);
}

#[test]
fn current_power_examples() {
    let t = current_power_coefficient(0, 1, -4);
    assert_eq!(t.len(), 1);
    assert_eq!((t[0].ks.clone(), t[0].coeff), (vec![3], 1));
    let t = current_power_coefficient(0, 2, -3);
    assert_eq!(t.len(), 1);
    assert_eq!((t[0].ks.clone(), t[0].coeff), (vec![0, 1], 2));
    assert!(current_power_coefficient(0, 2, -1).is_empty());
    // total count of compositions of n into r parts is C(n + r − 1, r − 1)
    let total: u64 = current_power_coefficient(0, 3, -9)
        .iter()
        .map(|t| t.coeff)
        .sum();
    assert_eq!(total, 28);
}

#[test]
fn relation_examples() {
    let a1 = build_cartan("A1").unwrap();
    let s: KrSpec = "1:1,1:1".parse().unwrap();
    let f = fusion_of_spec(&a1, &s, None).unwrap();
    let v = f.generator();
    for k in 2..5 {
        assert!(f.apply(Generator::f(0, k), &v).is_empty());
    }
    let rep = check_theorem_relations(&f, &s);
    assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    assert!(rep
        .checks
        .iter()
        .any(|c| c.relation.starts_with("(F1^2)_-3")));

    let a2 = build_cartan("A2").unwrap();
    for (i, l) in [(0, 1), (1, 2), (0, 3)] {
        let m = evaluation_module(&a2, &Weight::fundamental(2, i, l), &zero()).unwrap();
        let spec = KrSpec::from_pairs(&[(i + 1, l as u32)]).unwrap();
        assert!(check_theorem_relations(&m, &spec).all_passed());
    }
}

#[test]
fn fusion_invariants_sl2() {
    let a1 = build_cartan("A1").unwrap();
    let point_sets = [
        vec![q(0), q(1), q(2), q(3)],
        vec![q(5), q(-2), q(1) / q(3), q(7)],
    ];
    for t in NTuplePartitions::all_up_to(1, 4) {
        let s = KrSpec::from_tuple(&t).unwrap();
        let expected: usize = s.factors().iter().map(|f| f.level as usize + 1).product();
        let base = fusion_of_spec(&a1, &s, None).unwrap();
        assert_eq!(base.dim(), expected);
        assert!(check_theorem_relations(&base, &s).all_passed(), "{s}");
        assert_eq!(
            g_decompose_kernel(&base),
            g_decompose_coinvariant(&base, &a1)
        );
        for pts in &point_sets {
            let other = fusion_of_spec(&a1, &s, Some(&pts[..s.factors().len()])).unwrap();
            assert_eq!(graded_character(&other), graded_character(&base), "{s}");
        }
        let lambda = s.lambda(1);
        let dec = g_decompose(&base, &a1).unwrap();
        for h in 0..=lambda.0[0] / 2 {
            let g = krfusion::liealg::RootVector(vec![h as u32]);
            let mu = &lambda - &a1.rootvec_to_weight(&g);
            let total: u64 = dec
                .iter()
                .filter(|((m, _), _)| *m == mu)
                .map(|(_, k)| k)
                .sum();
            assert_eq!(
                total,
                fermionic_multiplicity(&a1, &s, &g).unwrap(),
                "{s} {g}"
            );
        }
    }
}

#[test]
fn type_a_fusion_matches_fermionic() {
    for (label, rank) in [("A2", 2), ("A3", 3)] {
        let c = build_cartan(label).unwrap();
        for t in NTuplePartitions::all_up_to(rank, 3) {
            let s = KrSpec::from_tuple(&t).unwrap();
            let f = fusion_of_spec(&c, &s, None).unwrap();
            let rep = check_theorem_relations(&f, &s);
            assert!(
                rep.all_passed(),
                "{label} {s}: {:?}",
                rep.failures().collect::<Vec<_>>()
            );
            let dec = g_decompose(&f, &c).unwrap();
            let lambda = s.lambda(rank);
            for (g, m) in krfusion::fermionic::fermionic_table(&c, &s).unwrap() {
                let mu = &lambda - &c.rootvec_to_weight(&g);
                let total: u64 = dec
                    .iter()
                    .filter(|((x, _), _)| *x == mu)
                    .map(|(_, k)| k)
                    .sum();
                assert_eq!(total, m, "{label} {s} {g}");
            }
        }
    }
}
