use krfusion::dual::{
    basis_of_bar_u, basis_of_v, dim_v, pair_sum, root_vector_words, word_product, RationalElement,
    WordSum,
};
use krfusion::fermionic::{fermionic_table, KrSpec};
use krfusion::liealg::{build_cartan, CartanData, NTuplePartitions, RootVector};
use krfusion::linalg::{q, rank, SparseVec};
use krfusion::pbw::{multiplicity_upper_bound, pbw_basis_degree};
use num::Zero;

fn rv(v: &[u32]) -> RootVector {
    RootVector(v.to_vec())
}

#[test]
fn bar_u_examples() {
    let a1 = build_cartan("A1").unwrap();
    let b = basis_of_bar_u(&a1, &rv(&[1]), -2);
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].numerator.terms().next().unwrap().0, &vec![-2]);
    assert!(basis_of_bar_u(&a1, &rv(&[1]), -1).is_empty());
    let a2 = build_cartan("A2").unwrap();
    for d in -6..0 {
        for g in basis_of_bar_u(&a2, &rv(&[1, 1]), d) {
            g.validate(&a2).unwrap();
            assert_eq!(g.degree(), Some(d));
        }
    }
}

#[test]
fn v_examples() {
    let a1 = build_cartan("A1").unwrap();
    let s: KrSpec = "1:1,1:1".parse().unwrap();
    assert_eq!(basis_of_v(&a1, &s, &rv(&[1]), -2).len(), 1);
    assert!(basis_of_v(&a1, &"1:2".parse().unwrap(), &rv(&[1]), -2).is_empty());
    assert_eq!(dim_v(&a1, &s, &rv(&[1])).unwrap().value, 1);
    for l in 2..5 {
        let s: KrSpec = format!("1:{l}").parse().unwrap();
        assert_eq!(dim_v(&a1, &s, &rv(&[1])).unwrap().value, 0);
    }
    assert_eq!(dim_v(&a1, &s, &rv(&[0])).unwrap().value, 1);
}

#[test]
fn dim_v_matches_fermionic_and_graded_quotient() {
    for (label, rank, max_total) in [
        ("A1", 1, 4),
        ("A2", 2, 2),
        ("B2", 2, 2),
        ("C2", 2, 2),
        ("G2", 2, 1),
    ] {
        let c = build_cartan(label).unwrap();
        for t in NTuplePartitions::all_up_to(rank, max_total) {
            let s = KrSpec::from_tuple(&t).unwrap();
            for (g, m) in fermionic_table(&c, &s).unwrap() {
                let v = dim_v(&c, &s, &g).unwrap();
                assert_eq!(v.value, m, "{label} {s} {g}");
                let b = multiplicity_upper_bound(&c, &s, &g, None).unwrap();
                let graded: std::collections::BTreeMap<u32, u64> = b
                    .graded
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(d, &x)| (d as u32, x))
                    .collect();
                assert_eq!(v.by_quotient_degree(&g), graded, "{label} {s} {g}");
            }
        }
    }
}

fn monomial_words(c: &CartanData, m: &krfusion::pbw::PbwMonomial) -> WordSum {
    m.0.iter().fold(vec![(q(1), Vec::new())], |acc, l| {
        let beta = &c.positive_roots[l.root as usize];
        word_product(&acc, &root_vector_words(c, beta, l.k as i64).unwrap())
    })
}

fn duality_rank(c: &CartanData, gamma: &RootVector, k: u32) -> (usize, usize, usize) {
    let mons: Vec<_> = pbw_basis_degree(c, gamma, k)
        .into_iter()
        .filter(|m| m.0.iter().all(|l| l.k >= 1))
        .collect();
    let d = -(gamma.height() as i32) - k as i32;
    let dual: Vec<RationalElement> = basis_of_bar_u(c, gamma, d);
    let rows: Vec<SparseVec> = mons
        .iter()
        .map(|m| {
            let w = monomial_words(c, m);
            dual.iter()
                .enumerate()
                .map(|(t, g)| (t, pair_sum(&w, g).unwrap().as_scalar().unwrap()))
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    (mons.len(), dual.len(), rank(&rows))
}

#[test]
fn pairing_with_positive_currents_is_perfect() {
    for (label, gamma) in [
        ("A1", vec![1]),
        ("A1", vec![2]),
        ("A1", vec![3]),
        ("A2", vec![1, 1]),
        ("B2", vec![1, 2]),
    ] {
        let c = build_cartan(label).unwrap();
        let g = rv(&gamma);
        for k in g.height()..g.height() + 4 {
            let (m, n, r) = duality_rank(&c, &g, k);
            assert_eq!((m, n), (r, r), "{label} {g} k={k}");
        }
    }
}
