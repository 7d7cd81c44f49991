use krfusion::dual::{
    check_simple_pole, iterated_residue_chain, iterated_residue_simplified,
    nested_commutator_pairing, pair, pair_scalar, residue_r, LaurentPoly, RationalElement,
};
use krfusion::liealg::{build_cartan, RootVector};
use krfusion::linalg::q;
use krfusion::Error;

fn rv(v: &[u32]) -> RootVector {
    RootVector(v.to_vec())
}

fn el(gamma: &[u32], terms: &[(&[i32], i64)]) -> RationalElement {
    let n: usize = gamma.iter().sum::<u32>() as usize;
    let mut p = LaurentPoly::zero(n);
    for (e, c) in terms {
        p.add_term(e.to_vec(), q(*c));
    }
    RationalElement::new(rv(gamma), p).unwrap()
}

#[test]
fn single_variable_residues() {
    let g = el(&[1], &[(&[-1], 1)]);
    assert_eq!(residue_r(0, 0, &g).unwrap().as_scalar(), Some(q(1)));
    assert_eq!(residue_r(0, 1, &g).unwrap().as_scalar(), Some(q(0)));
    assert_eq!(
        pair_scalar(&[(0, 1)], &el(&[1], &[(&[-2], 1)])).unwrap(),
        q(1)
    );
    for k in 0..=4i64 {
        let g = el(&[1], &[(&[-(k as i32) - 1], 1)]);
        assert_eq!(pair_scalar(&[(0, k)], &g).unwrap(), q(1));
    }
}

#[test]
fn two_node_residue_uses_small_expansion() {
    // 1/(x − y) has no x^{-1} term when expanded in powers of x/y
    let g = el(&[1, 1], &[(&[0, 0], 1)]);
    let r = residue_r(0, 0, &g).unwrap();
    assert!(r.is_zero());
    // x^{-1}/(x − y) = −x^{-1} y^{-1} + …
    let g = el(&[1, 1], &[(&[-1, 0], 1)]);
    let r = residue_r(0, 0, &g).unwrap();
    assert_eq!(r, el(&[0, 1], &[(&[-1], -1)]));
    // x_2 side: 1/(x − y) = Σ y^n / x^{n+1}, so Res_y y^{-1}/(x−y) = 1/x
    let g = el(&[1, 1], &[(&[0, -1], 1)]);
    assert_eq!(residue_r(1, 0, &g).unwrap(), el(&[1, 0], &[(&[-1], 1)]));
}

#[test]
fn degree_mismatch_pairs_to_zero() {
    let a2 = build_cartan("A2").unwrap();
    let g = el(&[1, 1], &[(&[-2, -1], 1), (&[-1, -2], 1)]);
    g.validate(&a2).unwrap();
    for (k, l) in [(0, 0), (1, 0), (0, 2), (2, 2)] {
        let v = pair_scalar(&[(0, k), (1, l)], &g).unwrap();
        if k + l + g.degree().unwrap() as i64 != -2 {
            assert_eq!(v, q(0), "k={k} l={l}");
        }
    }
    assert!(matches!(
        pair(&[(0, 0), (0, 0)], &g),
        Err(Error::OverweightWord)
    ));
}

#[test]
fn three_routes_agree_on_a1_two_alpha() {
    let g = el(&[2], &[(&[-2, -2], 1)]);
    for k1 in -1..4 {
        for k2 in -1..4 {
            let seq = [(0, k1), (0, k2)];
            let a = nested_commutator_pairing(&seq, &g).unwrap();
            let b = iterated_residue_simplified(&g, &seq).unwrap();
            let c = iterated_residue_chain(&g, &seq).unwrap();
            assert_eq!(a, b, "{k1} {k2}");
            assert_eq!(a, c, "{k1} {k2}");
            assert!(check_simple_pole(&g, &seq).unwrap());
        }
    }
}

#[test]
fn three_routes_agree_on_a2() {
    let a2 = build_cartan("A2").unwrap();
    // (x1 − x1')(…) style elements of U_{2α1+α2}: symmetric in node-1 variables,
    // vanishing at x_1 = x_2 = y
    let g = el(
        &[2, 1],
        &[(&[-1, -2, 0], 1), (&[-2, -1, 0], 1), (&[-1, -1, -1], -2)],
    );
    let lay_ok = g.validate(&a2);
    assert!(lay_ok.is_ok(), "{lay_ok:?}");
    for seq in [
        vec![(0, 1), (0, 0), (1, 2)],
        vec![(1, 0), (0, 1), (0, 3)],
        vec![(0, 2), (1, 1), (0, -1)],
        vec![(0, 0), (1, 1)],
        vec![(1, 2)],
    ] {
        let a = nested_commutator_pairing(&seq, &g).unwrap();
        let b = iterated_residue_simplified(&g, &seq).unwrap();
        let c = iterated_residue_chain(&g, &seq).unwrap();
        assert_eq!(a, b, "{seq:?}");
        assert_eq!(a, c, "{seq:?}");
    }
}

mod random {
    use krfusion::dual::{random_u_elements, residue_checks, ResidueChecks};
    use krfusion::liealg::{build_cartan, RootVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn residue_properties_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (label, rank) in [("A1", 1), ("A2", 2), ("B2", 2)] {
            let c = build_cartan(label).unwrap();
            let gammas: Vec<RootVector> = (0..4u32.pow(rank as u32))
                .map(|n| RootVector((0..rank).map(|i| n / 4u32.pow(i as u32) % 4).collect()))
                .filter(|g| (1..=3).contains(&g.height()))
                .collect();
            for gamma in gammas {
                let mut acc = ResidueChecks::default();
                let els = random_u_elements(&c, &gamma, 10, &mut rng);
                assert_eq!(els.len(), 10, "{label} {gamma}");
                for g in &els {
                    g.validate(&c).unwrap();
                    acc.absorb(residue_checks(&c, g, &mut rng).unwrap());
                }
                assert!(acc.passed(), "{label} {gamma}: {:?}", acc.failures);
            }
        }
    }
}

#[test]
fn pole_check_negative_control() {
    let a3 = build_cartan("A3").unwrap();
    // 1/Δ on α1+α2+α3 violates vanishing at x^(1) = x^(3)
    let bad = el(&[1, 1, 1], &[(&[0, 0, 0], 1)]);
    assert!(bad.validate(&a3).is_err());
    assert!(!check_simple_pole(&bad, &[(0, 0), (1, 0), (2, 0)]).unwrap());
    let good = el(&[1, 1, 1], &[(&[1, 0, 0], 1), (&[0, 0, 1], -1)]);
    good.validate(&a3).unwrap();
    assert!(check_simple_pole(&good, &[(0, 0), (1, 0), (2, 0)]).unwrap());
    // variable-disjoint letters: no poles at all
    let g = el(&[2], &[(&[-2, -2], 1)]);
    assert!(check_simple_pole(&g, &[(0, 0), (0, 1)]).unwrap());
}

#[test]
fn residues_stay_in_the_functional_space() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for label in ["A2", "B2", "G2"] {
        let c = build_cartan(label).unwrap();
        for gamma in [vec![2, 1], vec![1, 2], vec![2, 2]] {
            for g in krfusion::dual::random_u_elements(&c, &rv(&gamma), 5, &mut rng) {
                for i in 0..2 {
                    for k in -2..3 {
                        residue_r(i, k, &g).unwrap().validate(&c).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn fixture_pairings() {
    #[derive(serde::Deserialize)]
    struct Fixture {
        cartan: String,
        element: RationalElement,
        word: Vec<(usize, i64)>,
        value: String,
    }
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/dual_elements.json"
    ))
    .unwrap();
    let fixtures: Vec<Fixture> = serde_json::from_str(&text).unwrap();
    for f in fixtures {
        let c = build_cartan(&f.cartan).unwrap();
        f.element.validate(&c).unwrap();
        let v = pair_scalar(&f.word, &f.element).unwrap();
        assert_eq!(v.to_string(), f.value, "{} {:?}", f.element, f.word);
        let back: RationalElement =
            serde_json::from_str(&serde_json::to_string(&f.element).unwrap()).unwrap();
        assert_eq!(back, f.element);
    }
}
