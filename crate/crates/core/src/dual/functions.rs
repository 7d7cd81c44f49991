use num::{One, ToPrimitive};

use super::element::{RationalElement, VarLayout};
use super::laurent::LaurentPoly;
use super::residue::{pair_sum, root_vector_words};
use crate::error::{Error, Result};
use crate::liealg::{CartanData, RootVector};
use crate::linalg::{q, Q};

/// All permutations of `0..m`.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, m - 1);
            out.push(v);
        }
    }
    out
}

/// `Σ_{σ ∈ Π_i S_{m_i}} σ(p)`.
fn symmetrize(lay: &VarLayout, p: &LaurentPoly) -> LaurentPoly {
    let n = lay.nvars();
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    for i in 0..lay.counts.len() {
        let local = permutations(lay.counts[i]);
        let mut next = Vec::with_capacity(perms.len() * local.len());
        for base in &perms {
            for s in &local {
                let mut v = base.clone();
                for (r, &t) in s.iter().enumerate() {
                    v[lay.var(i, r)] = lay.var(i, t);
                }
                next.push(v);
            }
        }
        perms = next;
    }
    perms
        .iter()
        .fold(LaurentPoly::zero(n), |acc, s| acc.add(&p.permute(s, n)))
}

fn power(n: usize, v: usize, e: i32) -> LaurentPoly {
    let mut exps = vec![0; n];
    exps[v] = e;
    LaurentPoly::monomial(exps, q(1))
}

fn differences<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> LaurentPoly {
    pairs.into_iter().fold(LaurentPoly::one(n), |acc, (a, b)| {
        acc.mul(&LaurentPoly::difference(n, a, b))
    })
}

/// `Π (x_r^{(i)} − x_s^{(j)})` over `i < j` with `c_ij = 0`: the factors of
/// `Δ_γ` missing from the denominator of `g_{γ,k}`.
fn non_adjacent(cartan: &CartanData, lay: &VarLayout) -> LaurentPoly {
    let n = lay.nvars();
    differences(
        n,
        lay.delta_pairs()
            .into_iter()
            .filter(|&(a, b)| cartan.c(lay.node_of(a), lay.node_of(b)) == 0),
    )
}

fn generic(
    cartan: &CartanData,
    gamma: &RootVector,
    k: i64,
    fixed: (usize, usize),
) -> Result<RationalElement> {
    let lay = VarLayout::new(gamma);
    let n = lay.nvars();
    let rank = cartan.rank();
    let short: Vec<bool> = (0..rank).map(|i| !cartan.is_long_simple(i)).collect();
    let g: Vec<i64> = gamma.0.iter().map(|&m| m as i64).collect();
    let bar: Vec<i64> = (0..rank)
        .map(|i| (short[i] && gamma.0[i] % 2 == 1) as i64)
        .collect();
    let mut p = power(n, lay.var(fixed.0, fixed.1), (1 - k) as i32);
    for i in 0..rank {
        let simple: Vec<i64> = (0..rank).map(|j| (j == i) as i64).collect();
        for r in 1..=lay.counts[i] {
            let gr: Vec<i64> = if short[i] {
                let s = if r % 2 == 0 { -1 } else { 1 };
                g.iter().zip(&bar).map(|(x, b)| x + s * b).collect()
            } else {
                g.clone()
            };
            let e = cartan.normalized_form_roots(&simple, &gr);
            if !e.denom().is_one() {
                return Err(Error::Invalid(format!("non-integral exponent {e}")));
            }
            let e = e.to_integer().to_i32().unwrap();
            p = p.mul(&power(n, lay.var(i, r - 1), -e));
        }
    }
    // h_γ
    for i in 0..rank {
        let m = lay.counts[i];
        for r in 0..m {
            for s in r + 1..m {
                if !short[i] || (r % 2 == s % 2) {
                    let d = LaurentPoly::difference(n, lay.var(i, r), lay.var(i, s));
                    p = p.mul(&d).mul(&d);
                }
            }
        }
        for j in i + 1..rank {
            if !(short[i] && short[j] && cartan.c(i, j) == -1) {
                continue;
            }
            for r in 0..m {
                for s in 0..lay.counts[j] {
                    if r % 2 != s % 2 {
                        p = p.mul(&LaurentPoly::difference(n, lay.var(i, r), lay.var(j, s)));
                    }
                }
            }
        }
    }
    let num = symmetrize(&lay, &p).mul(&non_adjacent(cartan, &lay));
    RationalElement::new(gamma.clone(), num)
}

fn g2(gamma: &RootVector, k: i64) -> Result<RationalElement> {
    let lay = VarLayout::new(gamma);
    let n = lay.nvars();
    let k = k as i32;
    let num = match gamma.0.as_slice() {
        [1, 0] | [0, 1] => power(n, 0, -k - 1),
        &[1, m] => (0..m as usize).fold(power(n, lay.var(0, 0), -k + m as i32 - 1), |acc, r| {
            acc.mul(&power(n, lay.var(1, r), -1))
        }),
        [2, 3] => {
            let (a, b) = (lay.var(0, 0), lay.var(0, 1));
            let d = LaurentPoly::difference(n, a, b);
            symmetrize(&lay, &power(n, a, -k).mul(&power(n, b, -1)).mul(&d).mul(&d))
        }
        _ => return Err(Error::NotPositiveRoot(gamma.0.clone())),
    };
    RationalElement::new(gamma.clone(), num)
}

/// `g_{γ,k}` with `x = x_1^{(i_0)}` for the smallest node `i_0` with `m_{i_0} > 0`.
pub fn dual_current_function(
    cartan: &CartanData,
    gamma: &RootVector,
    k: i64,
) -> Result<RationalElement> {
    let i0 = gamma
        .0
        .iter()
        .position(|&m| m > 0)
        .ok_or_else(|| Error::NotPositiveRoot(gamma.0.clone()))?;
    dual_current_function_at(cartan, gamma, k, (i0, 0))
}

/// `g_{γ,k}` with the fixed variable `x = x_{r+1}^{(i)}` for `fixed = (i, r)`.
/// The choice is ignored in type G2, whose functions are given case by case.
pub fn dual_current_function_at(
    cartan: &CartanData,
    gamma: &RootVector,
    k: i64,
    fixed: (usize, usize),
) -> Result<RationalElement> {
    if gamma.0.len() != cartan.rank() || cartan.positive_root_index(gamma).is_none() {
        return Err(Error::NotPositiveRoot(gamma.0.clone()));
    }
    if cartan.type_label == "G2" {
        return g2(gamma, k);
    }
    if fixed.0 >= gamma.0.len() || fixed.1 >= gamma.0[fixed.0] as usize {
        return Err(Error::ShapeMismatch(format!(
            "no variable x_{}^({}) for γ = {gamma}",
            fixed.1 + 1,
            fixed.0 + 1
        )));
    }
    generic(cartan, gamma, k, fixed)
}

/// `⟨f_{β,l}, g⟩`, zero unless `β` equals the weight of `g`.
pub fn pair_root_vector(
    cartan: &CartanData,
    beta: &RootVector,
    l: i64,
    g: &RationalElement,
) -> Result<Q> {
    if beta != &g.gamma {
        cartan
            .positive_root_index(beta)
            .ok_or_else(|| Error::NotPositiveRoot(beta.0.clone()))?;
        return Ok(q(0));
    }
    let r = pair_sum(&root_vector_words(cartan, beta, l)?, g)?;
    r.as_scalar()
        .ok_or_else(|| Error::Invalid("pairing did not produce a scalar".into()))
}

/// Failures of the compatibility relations of `g_{γ,k}` against every
/// `f_{γ′,k′}` with `γ′ ∈ R⁺` and `1 ≤ k′ ≤ max_k`.
pub fn compatibility_failures(
    cartan: &CartanData,
    g: &RationalElement,
    k: i64,
    max_k: i64,
) -> Result<Vec<(RootVector, i64, Q)>> {
    let mut out = Vec::new();
    for beta in &cartan.positive_roots {
        for l in 1..=max_k {
            let v = pair_root_vector(cartan, beta, l, g)?;
            let expect_nonzero = beta == &g.gamma && l == k;
            let below = g.gamma.checked_sub(beta).is_some();
            let must_vanish = !below || (beta == &g.gamma && l != k);
            if (expect_nonzero && v == q(0)) || (must_vanish && v != q(0)) {
                out.push((beta.clone(), l, v));
            }
        }
    }
    Ok(out)
}
