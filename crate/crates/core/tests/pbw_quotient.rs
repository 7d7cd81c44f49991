use krfusion::fermionic::{fermionic_table, KrSpec};
use krfusion::liealg::{build_cartan, NTuplePartitions, RootVector};
use krfusion::pbw::{
    ideal_slice, multiplicity_upper_bound, pbw_basis, Letter, PbwAlgebra, PbwElement, PbwMonomial,
    Schedule,
};
use krfusion::Error;
use proptest::prelude::*;

fn rv(v: &[u32]) -> RootVector {
    RootVector(v.to_vec())
}

fn l(root: u16, k: u16) -> Letter {
    Letter { root, k }
}

#[test]
fn basis_examples() {
    let a1 = build_cartan("A1").unwrap();
    assert_eq!(
        pbw_basis(&a1, &rv(&[1]), 1),
        vec![PbwMonomial(vec![l(0, 0)]), PbwMonomial(vec![l(0, 1)])]
    );
    // f₁² has degree 2, so it first appears at cap 2
    let b = pbw_basis(&a1, &rv(&[2]), 1);
    assert_eq!(b.len(), 2);
    assert!(!b.contains(&PbwMonomial(vec![l(0, 1), l(0, 1)])));
    let b = pbw_basis(&a1, &rv(&[2]), 2);
    assert_eq!(b.len(), 4);
    assert!(b.contains(&PbwMonomial(vec![l(0, 1), l(0, 1)])));
    assert!(b.iter().all(|m| m.is_sorted()));
    let a2 = build_cartan("A2").unwrap();
    let b = pbw_basis(&a2, &rv(&[1, 1]), 0);
    assert_eq!(b.len(), 2);
    for m in &b {
        assert_eq!(m.gamma(&a2), rv(&[1, 1]));
        assert_eq!(m.degree(), 0);
    }
    assert_eq!(pbw_basis(&a1, &rv(&[0]), 3), vec![PbwMonomial::one()]);
}

#[test]
fn straighten_examples() {
    let a2 = build_cartan("A2").unwrap();
    let mut alg = PbwAlgebra::new(&a2);
    let sorted = alg.straighten(&[l(0, 0), l(1, 0)]);
    assert_eq!(
        sorted,
        PbwElement::from([(PbwMonomial(vec![l(0, 0), l(1, 0)]), 1)])
    );
    let swapped = alg.straighten(&[l(1, 0), l(0, 0)]);
    let top = a2.positive_root_index(&rv(&[1, 1])).unwrap() as u16;
    let mut diff = swapped.clone();
    *diff.entry(PbwMonomial(vec![l(0, 0), l(1, 0)])).or_insert(0) -= 1;
    diff.retain(|_, c| *c != 0);
    assert_eq!(diff.len(), 1);
    let (m, c) = diff.iter().next().unwrap();
    assert_eq!(m, &PbwMonomial(vec![l(top, 0)]));
    assert_eq!(c.abs(), 1);

    let a1 = build_cartan("A1").unwrap();
    let mut alg = PbwAlgebra::new(&a1);
    assert_eq!(
        alg.straighten(&[l(0, 1), l(0, 0)]),
        PbwElement::from([(PbwMonomial(vec![l(0, 0), l(0, 1)]), 1)])
    );
}

#[test]
fn slice_examples() {
    let a1 = build_cartan("A1").unwrap();
    let s: KrSpec = "1:1".parse().unwrap();
    let slice = ideal_slice(&a1, &s, &rv(&[1]), 2);
    assert_eq!(slice.basis.len(), 3);
    assert_eq!(slice.corank(), 0);
    let s2: KrSpec = "1:1,1:1".parse().unwrap();
    assert!(ideal_slice(&a1, &s2, &rv(&[0]), 3).rows.is_empty());
    // V(0) ⊂ W^1 * W^1 sits at γ = α
    assert_eq!(ideal_slice(&a1, &s2, &rv(&[1]), 2).corank(), 1);
    assert_eq!(ideal_slice(&a1, &s2, &rv(&[2]), 2).corank(), 0);
}

#[test]
fn upper_bound_examples() {
    let a1 = build_cartan("A1").unwrap();
    let s: KrSpec = "1:1,1:1".parse().unwrap();
    let b = multiplicity_upper_bound(&a1, &s, &rv(&[1]), None).unwrap();
    assert_eq!(b.value, 1);
    assert!(b.trace.len() >= 3);
    assert_eq!(
        multiplicity_upper_bound(&a1, &s, &rv(&[0]), None)
            .unwrap()
            .value,
        1
    );
    let a2 = build_cartan("A2").unwrap();
    let s: KrSpec = "1:1,2:1".parse().unwrap();
    assert_eq!(
        multiplicity_upper_bound(&a2, &s, &rv(&[1, 1]), None)
            .unwrap()
            .value,
        1
    );
    assert!(matches!(
        multiplicity_upper_bound(&a1, &"1:1".parse().unwrap(), &rv(&[1]), None),
        Err(Error::NotDominant(_))
    ));
    let tight = Schedule { start: 0, max: 1 };
    assert!(matches!(
        multiplicity_upper_bound(&a1, &"1:3,1:3".parse().unwrap(), &rv(&[3]), Some(tight)),
        Err(Error::NotStabilized { .. })
    ));
}

#[test]
fn corank_trace_is_monotone_and_matches_fermionic() {
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
                let b = multiplicity_upper_bound(&c, &s, &g, None).unwrap();
                assert_eq!(b.value, m, "{label} {s} {g}");
                assert!(b.trace.windows(2).all(|w| w[0].1 <= w[1].1));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straighten_is_multiplicative(
        label in prop::sample::select(vec!["A2", "B2", "G2"]),
        u in prop::collection::vec((0usize..2, 0u16..3), 0..4),
        v in prop::collection::vec((0usize..2, 0u16..3), 0..4),
    ) {
        let c = build_cartan(label).unwrap();
        let mut alg = PbwAlgebra::new(&c);
        let to_letters = |w: &[(usize, u16)]| -> Vec<Letter> {
            w.iter().map(|&(i, k)| Letter { root: alg.simple_letter(i, 0).root, k }).collect()
        };
        let (lu, lv) = (to_letters(&u), to_letters(&v));
        let mut uv = lu.clone();
        uv.extend(lv.iter().copied());
        let whole = alg.straighten(&uv);
        let su = alg.straighten(&lu);
        let sv = alg.straighten(&lv);
        prop_assert_eq!(whole, alg.mul(&su, &sv));
    }
}
