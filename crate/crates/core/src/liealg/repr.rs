//! Characters of finite-dimensional simple modules.

use std::collections::{BTreeMap, BTreeSet};

use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::liealg::{CartanData, Weight};
use crate::linalg::{q, Q};

fn check_dominant(w: &Weight) -> Result<()> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(w.0.clone()))
    }
}

/// `(λ, μ)` for weights in fundamental-weight coordinates (unnormalized form).
pub fn form_weights(cartan: &CartanData, lambda: &Weight, mu: &Weight) -> Q {
    let mu_roots = cartan.weight_to_root_coords(mu);
    (0..cartan.rank())
        .map(|j| q(lambda.0[j] * cartan.symmetrizers[j]) * &mu_roots[j])
        .sum()
}

pub fn rho(cartan: &CartanData) -> Weight {
    Weight(vec![1; cartan.rank()])
}

/// Dimension of V(λ) by the Weyl dimension formula.
pub fn weyl_dim(cartan: &CartanData, lambda: &Weight) -> Result<u64> {
    check_dominant(lambda)?;
    let shifted = &rho(cartan) + lambda;
    let mut num = q(1);
    let mut den = q(1);
    for alpha in &cartan.positive_roots {
        let a = alpha.as_signed();
        // (μ, α) = Σ_j μ_j d_j a_j since (ϖ_j, α_i) = d_j δ_ij.
        let pair = |w: &Weight| -> i64 {
            (0..cartan.rank())
                .map(|j| w.0[j] * cartan.symmetrizers[j] * a[j])
                .sum()
        };
        num *= q(pair(&shifted));
        den *= q(pair(&rho(cartan)));
    }
    let v = num / den;
    debug_assert!(v.is_integer());
    Ok(v.to_integer().to_u64().expect("dimension fits in u64"))
}

/// Simple reflection `s_i` on a weight.
pub fn reflect(cartan: &CartanData, w: &Weight, i: usize) -> Weight {
    let k = w.0[i];
    Weight(
        (0..cartan.rank())
            .map(|j| w.0[j] - k * cartan.c(j, i))
            .collect(),
    )
}

/// Weyl-group orbit of a weight.
pub fn weyl_orbit(cartan: &CartanData, w: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![w.clone()];
    while let Some(x) = stack.pop() {
        if seen.insert(x.clone()) {
            for i in 0..cartan.rank() {
                let y = reflect(cartan, &x, i);
                if !seen.contains(&y) {
                    stack.push(y);
                }
            }
        }
    }
    seen
}

/// The dominant representative of the orbit of `w`.
pub fn dominant_representative(cartan: &CartanData, w: &Weight) -> Weight {
    let mut x = w.clone();
    while let Some(i) = (0..cartan.rank()).find(|&i| x.0[i] < 0) {
        x = reflect(cartan, &x, i);
    }
    x
}

/// Elements γ of the positive root cone with λ − γ dominant, in
/// (height, coordinate) order.
pub fn dominant_gammas(cartan: &CartanData, lambda: &Weight) -> Vec<crate::liealg::RootVector> {
    let bounds: Vec<u32> = cartan
        .weight_to_root_coords(lambda)
        .iter()
        .map(|x| x.floor().to_integer().to_i64().unwrap().max(-1))
        .map(|x| if x < 0 { u32::MAX } else { x as u32 })
        .collect();
    if bounds.contains(&u32::MAX) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; cartan.rank()];
    loop {
        let gamma = crate::liealg::RootVector(cur.clone());
        let mu = lambda - &cartan.rootvec_to_weight(&gamma);
        if mu.is_dominant() {
            out.push(gamma);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == cur.len() {
                out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
                return out;
            }
            if cur[k] < bounds[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// Full weight-multiplicity map of V(λ) by Freudenthal's recursion.
pub fn freudenthal_weights(cartan: &CartanData, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_dominant(lambda)?;
    let dominant: Vec<Weight> = dominant_gammas(cartan, lambda)
        .iter()
        .map(|g| lambda - &cartan.rootvec_to_weight(g))
        .collect();
    let r = rho(cartan);
    let lr = lambda + &r;
    let norm_lr = form_weights(cartan, &lr, &lr);
    let mut dom_mult: BTreeMap<Weight, Q> = BTreeMap::new();
    let pos_weights: Vec<Weight> = cartan
        .positive_roots
        .iter()
        .map(|a| cartan.rootvec_to_weight(a))
        .collect();
    for mu in &dominant {
        if mu == lambda {
            dom_mult.insert(mu.clone(), q(1));
            continue;
        }
        let mut acc = q(0);
        for aw in &pos_weights {
            let mut k = 1;
            loop {
                let shifted = Weight(mu.0.iter().zip(&aw.0).map(|(m, a)| m + k * a).collect());
                let rep = dominant_representative(cartan, &shifted);
                let Some(m) = dom_mult.get(&rep) else { break };
                if m.is_zero() {
                    break;
                }
                acc += m * form_weights(cartan, &shifted, aw);
                k += 1;
            }
        }
        let mr = mu + &r;
        let denom = &norm_lr - form_weights(cartan, &mr, &mr);
        let m = q(2) * acc / denom;
        debug_assert!(m.is_integer());
        dom_mult.insert(mu.clone(), m);
    }
    let mut out = BTreeMap::new();
    for (mu, m) in dom_mult {
        let m = m.to_integer().to_u64().unwrap();
        if m == 0 {
            continue;
        }
        for w in weyl_orbit(cartan, &mu) {
            out.insert(w, m);
        }
    }
    Ok(out)
}

/// Decomposition of V(λ) ⊗ V(μ) into simple modules (Brauer–Klimyk).
pub fn tensor_decompose(
    cartan: &CartanData,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    check_dominant(lambda)?;
    let weights = freudenthal_weights(cartan, mu)?;
    let r = rho(cartan);
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in &weights {
        let mut w = &(lambda + nu) + &r;
        let mut sign = 1i64;
        let mut singular = false;
        loop {
            if w.0.contains(&0) {
                singular = true;
                break;
            }
            match (0..cartan.rank()).find(|&i| w.0[i] < 0) {
                Some(i) => {
                    w = reflect(cartan, &w, i);
                    sign = -sign;
                }
                None => break,
            }
        }
        if !singular {
            *acc.entry(&w - &r).or_insert(0) += sign * (*m as i64);
        }
    }
    let mut out = BTreeMap::new();
    for (w, m) in acc {
        assert!(m >= 0, "negative multiplicity in tensor decomposition");
        if m > 0 {
            out.insert(w, m as u64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_cartan;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn weyl_dimension_examples() {
        let a1 = build_cartan("A1").unwrap();
        assert_eq!(weyl_dim(&a1, &w(&[2])).unwrap(), 3);
        let a2 = build_cartan("A2").unwrap();
        assert_eq!(weyl_dim(&a2, &w(&[1, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&a2, &w(&[1, 1])).unwrap(), 8);
        let g2 = build_cartan("G2").unwrap();
        // ϖ_2 (short node) is the 7-dimensional module, ϖ_1 the adjoint.
        assert_eq!(weyl_dim(&g2, &w(&[0, 1])).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &w(&[1, 0])).unwrap(), 14);
        assert!(matches!(
            weyl_dim(&a1, &w(&[-1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = build_cartan("A1").unwrap();
        let m = freudenthal_weights(&a1, &w(&[2])).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&x| x == 1));
        let a2 = build_cartan("A2").unwrap();
        let adj = freudenthal_weights(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj[&w(&[0, 0])], 2);
        assert_eq!(adj.values().sum::<u64>(), 8);
    }

    #[test]
    fn freudenthal_sums_match_weyl_dim() {
        for label in ["A2", "A3", "B2", "C3", "G2", "D4"] {
            let c = build_cartan(label).unwrap();
            let n = c.rank();
            for node in 0..n {
                for level in 1..=2 {
                    let lam = Weight::fundamental(n, node, level);
                    let m = freudenthal_weights(&c, &lam).unwrap();
                    assert_eq!(
                        m.values().sum::<u64>(),
                        weyl_dim(&c, &lam).unwrap(),
                        "{label} {lam}"
                    );
                    assert_eq!(m[&lam], 1);
                    for (mu, mult) in &m {
                        for x in weyl_orbit(&c, mu) {
                            assert_eq!(m[&x], *mult);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let a1 = build_cartan("A1").unwrap();
        let t = tensor_decompose(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(t, BTreeMap::from([(w(&[2]), 1), (w(&[0]), 1)]));
        let a2 = build_cartan("A2").unwrap();
        let t = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(t, BTreeMap::from([(w(&[1, 1]), 1), (w(&[0, 0]), 1)]));
        let t = tensor_decompose(&a2, &w(&[2, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(t, BTreeMap::from([(w(&[2, 1]), 1)]));
    }

    #[test]
    fn tensor_symmetric_and_dimension_exact() {
        for label in ["A2", "B2", "G2"] {
            let c = build_cartan(label).unwrap();
            let lams = [w(&[1, 0]), w(&[0, 1]), w(&[1, 1])];
            for a in &lams {
                for b in &lams {
                    let ab = tensor_decompose(&c, a, b).unwrap();
                    assert_eq!(ab, tensor_decompose(&c, b, a).unwrap());
                    let total: u64 = ab.iter().map(|(x, m)| m * weyl_dim(&c, x).unwrap()).sum();
                    assert_eq!(total, weyl_dim(&c, a).unwrap() * weyl_dim(&c, b).unwrap());
                }
            }
        }
    }
}
