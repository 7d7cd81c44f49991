use std::cmp::Ordering;

use krfusion::dual::{
    filtration_basis, gamma_filtration_test, random_u_elements, specialize_phi,
    specialize_phi_with, LaurentPoly, RationalElement,
};
use krfusion::liealg::{build_cartan, NTuplePartitions, Partition, RootVector};
use krfusion::linalg::q;
use krfusion::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tuple(parts: &[&[u32]]) -> NTuplePartitions {
    NTuplePartitions(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
}

#[test]
fn specialization_examples() {
    // x1^{-1} x2^{-2} + x1^{-2} x2^{-1} in U_{2α}
    let mut p = LaurentPoly::zero(2);
    p.add_term(vec![-1, -2], q(1));
    p.add_term(vec![-2, -1], q(1));
    let g = RationalElement::new(RootVector(vec![2]), p).unwrap();
    let row = specialize_phi(&g, &tuple(&[&[2]])).unwrap();
    assert_eq!(row.rows, vec![(0, 2)]);
    assert_eq!(
        row.function.numerator.terms().collect::<Vec<_>>(),
        vec![(&vec![-3], &q(2))]
    );
    let col = specialize_phi(&g, &tuple(&[&[1, 1]])).unwrap();
    assert_eq!(col.function.numerator, g.numerator);
    assert!(matches!(
        specialize_phi(&g, &tuple(&[&[3]])),
        Err(Error::ShapeMismatch(_))
    ));
    let zero = RationalElement::zero(RootVector(vec![2]));
    for mu in NTuplePartitions::all_with_sizes(&[2]) {
        assert!(gamma_filtration_test(&zero, &mu).unwrap());
    }
    assert!(gamma_filtration_test(&g, &tuple(&[&[2]])).unwrap());
}

#[test]
fn filtration_membership_starts_at_the_largest_nonvanishing_tuple() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (label, gamma) in [
        ("A1", vec![3]),
        ("A2", vec![2, 1]),
        ("B2", vec![1, 2]),
        ("B2", vec![2, 2]),
    ] {
        let c = build_cartan(label).unwrap();
        let gamma = RootVector(gamma);
        let tuples = NTuplePartitions::all_with_sizes(&gamma.0);
        for g in random_u_elements(&c, &gamma, 10, &mut rng) {
            let top = tuples
                .iter()
                .filter(|nu| !specialize_phi(&g, nu).unwrap().is_zero())
                .max_by(|a, b| a.lex_cmp(b))
                .cloned();
            for mu in &tuples {
                let expect = top.as_ref().is_none_or(|t| mu.lex_cmp(t) != Ordering::Less);
                assert_eq!(
                    gamma_filtration_test(&g, mu).unwrap(),
                    expect,
                    "{label} {mu} {g}"
                );
            }
        }
    }
}

#[test]
fn zero_and_pole_orders_on_filtration_elements() {
    let mut checked = 0;
    for (label, rank) in [("A1", 1), ("A2", 2), ("B2", 2), ("C2", 2)] {
        let c = build_cartan(label).unwrap();
        for mu in NTuplePartitions::all_up_to(rank, 4) {
            if mu.total() == 0 {
                continue;
            }
            let n = mu.total() as i32;
            for (lo, hi) in [(-2, 1), (-3, 2)] {
                for total in [lo * n + 1, (lo + hi) * n / 2, hi * n - 1] {
                    let p = krfusion::dual::delta_degree(&RootVector(mu.sizes()));
                    for g in filtration_basis(&c, &mu, total - p, lo, hi).unwrap() {
                        assert!(gamma_filtration_test(&g, &mu).unwrap());
                        let phi = specialize_phi(&g, &mu).unwrap();
                        assert!(phi.zero_pole_violations(&c).is_empty(), "{label} {mu} {g}");
                        assert!(phi.is_symmetric());
                        let nv = g.layout().nvars();
                        let lay = g.layout();
                        let reversed: Vec<usize> = (0..nv)
                            .map(|v| {
                                let i = lay.node_of(v);
                                let r = lay.vars_of(i);
                                r.end - 1 - (v - r.start)
                            })
                            .collect();
                        assert_eq!(specialize_phi_with(&g, &mu, &reversed).unwrap(), phi);
                        checked += !phi.is_zero() as usize;
                    }
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} nonzero specializations");
}
