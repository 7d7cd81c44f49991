use std::collections::BTreeMap;

use num::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::element::{RationalElement, VarLayout};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::fermionic::KrSpec;
use crate::liealg::{CartanData, RootVector};
use crate::linalg::{nullspace, q, SparseVec, Q};

/// Non-increasing sequences of length `m` with entries in `[lo, hi]` summing to `sum`.
fn sorted_sequences(m: usize, lo: i32, hi: i32, sum: i32) -> Vec<Vec<i32>> {
    fn rec(m: usize, lo: i32, hi: i32, sum: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if m == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let m_i = m as i32;
        if sum < lo * m_i || sum > hi * m_i {
            return;
        }
        for e in (lo..=hi).rev() {
            if e * m_i < sum {
                break;
            }
            cur.push(e);
            rec(m - 1, lo, e, sum - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(m, lo, hi, sum, &mut Vec::new(), &mut out);
    }
    out
}

/// Distinct permutations of a sequence.
fn distinct_permutations(seq: &[i32]) -> Vec<Vec<i32>> {
    let mut cur = seq.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Symmetric numerators on an exponent box cut out by linear conditions.
pub struct SymmetricSpace {
    pub gamma: RootVector,
    pub basis: Vec<LaurentPoly>,
    rows: Vec<SparseVec>,
}

impl SymmetricSpace {
    /// Orbit sums of monomials of total degree `total` with the exponents of
    /// every node-`i` variable in `[lo[i], hi[i]]`.
    pub fn on_box(gamma: &RootVector, lo: &[i32], hi: &[i32], total: i32) -> Self {
        let lay = VarLayout::new(gamma);
        let n = lay.nvars();
        let rank = lay.counts.len();
        let mut basis = Vec::new();
        let mut choice: Vec<Vec<i32>> = Vec::with_capacity(rank);
        fn rec(
            lay: &VarLayout,
            lo: &[i32],
            hi: &[i32],
            i: usize,
            left: i32,
            choice: &mut Vec<Vec<i32>>,
            out: &mut Vec<LaurentPoly>,
        ) {
            let rank = lay.counts.len();
            if i == rank {
                if left == 0 {
                    out.push(orbit_sum(lay, choice));
                }
                return;
            }
            let m = lay.counts[i] as i32;
            let rest_lo: i32 = (i + 1..rank).map(|j| lo[j] * lay.counts[j] as i32).sum();
            let rest_hi: i32 = (i + 1..rank).map(|j| hi[j] * lay.counts[j] as i32).sum();
            if m == 0 {
                choice.push(Vec::new());
                rec(lay, lo, hi, i + 1, left, choice, out);
                choice.pop();
                return;
            }
            for s in (m * lo[i]).max(left - rest_hi)..=(m * hi[i]).min(left - rest_lo) {
                for seq in sorted_sequences(m as usize, lo[i], hi[i], s) {
                    choice.push(seq);
                    rec(lay, lo, hi, i + 1, left - s, choice, out);
                    choice.pop();
                }
            }
        }
        fn orbit_sum(lay: &VarLayout, choice: &[Vec<i32>]) -> LaurentPoly {
            let n = lay.nvars();
            let mut acc = vec![vec![0i32; n]];
            for (i, seq) in choice.iter().enumerate() {
                let perms = distinct_permutations(seq);
                let mut next = Vec::with_capacity(acc.len() * perms.len());
                for base in &acc {
                    for p in &perms {
                        let mut e = base.clone();
                        for (r, &x) in p.iter().enumerate() {
                            e[lay.var(i, r)] = x;
                        }
                        next.push(e);
                    }
                }
                acc = next;
            }
            let mut out = LaurentPoly::zero(n);
            for e in acc {
                out.add_term(e, q(1));
            }
            out
        }
        if n == 0 {
            if total == 0 {
                basis.push(LaurentPoly::one(0));
            }
        } else {
            rec(&lay, lo, hi, 0, total, &mut choice, &mut basis);
        }
        Self {
            gamma: gamma.clone(),
            basis,
            rows: Vec::new(),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.basis.len()
    }

    /// Requires `f(g′) = 0`; `f` must be linear.
    pub fn require_zero(&mut self, f: impl Fn(&LaurentPoly) -> LaurentPoly) {
        let mut rows: BTreeMap<Vec<i32>, SparseVec> = BTreeMap::new();
        for (t, b) in self.basis.iter().enumerate() {
            for (e, c) in f(b).terms() {
                rows.entry(e.clone()).or_default().push((t, c.clone()));
            }
        }
        self.rows.extend(rows.into_values());
    }

    /// The vanishing conditions defining `U_γ`.
    pub fn require_vanishing(&mut self, cartan: &CartanData) {
        let lay = VarLayout::new(&self.gamma);
        let rank = lay.counts.len();
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let c = cartan.c_hat(i, j) as usize;
                if lay.counts[i] < c || lay.counts[j] == 0 {
                    continue;
                }
                let target = lay.var(j, 0);
                let vars: Vec<usize> = (0..c).map(|r| lay.var(i, r)).collect();
                self.require_zero(|p| vars.iter().fold(p.clone(), |acc, &v| acc.merge(v, target)));
            }
        }
    }

    pub fn solution_vectors(&self) -> Vec<SparseVec> {
        nullspace(&self.rows, self.basis.len())
    }

    pub fn combine(&self, v: &[(usize, Q)]) -> RationalElement {
        let n = VarLayout::new(&self.gamma).nvars();
        let mut p = LaurentPoly::zero(n);
        for (t, c) in v {
            p = p.add(&self.basis[*t].scale(c));
        }
        RationalElement {
            gamma: self.gamma.clone(),
            numerator: p,
        }
    }

    pub fn solve(&self) -> Vec<RationalElement> {
        self.solution_vectors()
            .iter()
            .map(|v| self.combine(v))
            .collect()
    }
}

/// `#Δ_γ` factors.
pub fn delta_degree(gamma: &RootVector) -> i32 {
    VarLayout::new(gamma).delta_pairs().len() as i32
}

/// Per-node upper bounds `Σ_{j≠i} m_j − 2` for the numerator exponents of `barU_γ`.
fn bar_upper(gamma: &RootVector) -> Vec<i32> {
    let total: i32 = gamma.0.iter().map(|&m| m as i32).sum();
    gamma.0.iter().map(|&m| total - m as i32 - 2).collect()
}

fn bar_space(
    cartan: &CartanData,
    gamma: &RootVector,
    d: i32,
    floor: Option<&[i32]>,
) -> SymmetricSpace {
    let hi = bar_upper(gamma);
    let total = d + delta_degree(gamma);
    let hi_sum: i32 = hi.iter().zip(&gamma.0).map(|(h, &m)| h * m as i32).sum();
    let lo: Vec<i32> = hi
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let forced = total - (hi_sum - h);
            floor.map_or(forced, |f| forced.max(f[i]))
        })
        .collect();
    let mut s = SymmetricSpace::on_box(gamma, &lo, &hi, total);
    s.require_vanishing(cartan);
    s
}

/// A basis of the degree-`d` part of `barU_γ`.
pub fn basis_of_bar_u(cartan: &CartanData, gamma: &RootVector, d: i32) -> Vec<RationalElement> {
    if gamma.is_zero() {
        return if d == 0 {
            vec![RationalElement::scalar(q(1), gamma.0.len())]
        } else {
            Vec::new()
        };
    }
    bar_space(cartan, gamma, d, None).solve()
}

/// A basis of the degree-`d` part of `V_γ`.
pub fn basis_of_v(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
    d: i32,
) -> Vec<RationalElement> {
    if gamma.is_zero() {
        return if d == 0 {
            vec![RationalElement::scalar(q(1), gamma.0.len())]
        } else {
            Vec::new()
        };
    }
    let rank = gamma.0.len();
    let floor: Vec<i32> = (0..rank).map(|i| -(spec.min_sum(i, 1) as i32)).collect();
    let mut s = bar_space(cartan, gamma, d, Some(&floor));
    let lay = VarLayout::new(gamma);
    for i in 0..rank {
        for r in 2..=lay.counts[i] {
            let bound = spec.min_sum(i, r as u32) as i32;
            let z = lay.var(i, 0);
            let vars: Vec<usize> = (1..r).map(|s| lay.var(i, s)).collect();
            s.require_zero(|p| {
                let merged = vars.iter().fold(p.clone(), |acc, &v| acc.merge(v, z));
                merged.truncate_above(z, -bound - 1)
            });
        }
    }
    s.solve()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimV {
    pub value: u64,
    /// `dim V_γ` in each degree `d` with a nonzero piece.
    pub per_degree: BTreeMap<i32, u64>,
    /// `(lowest degree in the window, running total)` for every window tried.
    pub trace: Vec<(i32, u64)>,
}

impl DimV {
    /// The graded pieces re-indexed by the quotient degree `k = −ht(γ) − d`.
    pub fn by_quotient_degree(&self, gamma: &RootVector) -> BTreeMap<u32, u64> {
        let h = gamma.height() as i32;
        self.per_degree
            .iter()
            .map(|(&d, &v)| ((-h - d) as u32, v))
            .collect()
    }
}

const WINDOW_LIMIT: i32 = 64;

/// `Σ_d dim V_γ[d]` over `d ∈ [−ht(γ) − D, −ht(γ)]`, widening `D` by 2 from
/// `ht(γ)` until two consecutive widenings add nothing.
pub fn dim_v(cartan: &CartanData, spec: &KrSpec, gamma: &RootVector) -> Result<DimV> {
    spec.validate(cartan)?;
    let mu = &spec.lambda(cartan.rank()) - &cartan.rootvec_to_weight(gamma);
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0));
    }
    if gamma.is_zero() {
        return Ok(DimV {
            value: 1,
            per_degree: BTreeMap::from([(0, 1)]),
            trace: vec![(0, 1)],
        });
    }
    let h = gamma.height() as i32;
    let mut per_degree = BTreeMap::new();
    let mut total = 0u64;
    let mut trace: Vec<(i32, u64)> = Vec::new();
    let mut next_d = -h;
    let mut width = h;
    while width <= WINDOW_LIMIT {
        let low = -h - width;
        while next_d >= low {
            let dim = basis_of_v(cartan, spec, gamma, next_d).len() as u64;
            if dim > 0 {
                per_degree.insert(next_d, dim);
            }
            total += dim;
            next_d -= 1;
        }
        trace.push((low, total));
        if let [.., a, b, c] = trace.as_slice() {
            if a.1 == b.1 && b.1 == c.1 {
                return Ok(DimV {
                    value: total,
                    per_degree,
                    trace,
                });
            }
        }
        width += 2;
    }
    Err(Error::NotStabilized {
        trace: trace.iter().map(|&(d, c)| (d as i64, c)).collect(),
    })
}

/// A random element of `U_γ` of degree `d` with numerator exponents in
/// `[lo, hi]`, or `None` when that slice is zero.
pub fn random_u_element<R: Rng>(
    cartan: &CartanData,
    gamma: &RootVector,
    d: i32,
    lo: i32,
    hi: i32,
    rng: &mut R,
) -> Option<RationalElement> {
    let rank = gamma.0.len();
    let mut s = SymmetricSpace::on_box(
        gamma,
        &vec![lo; rank],
        &vec![hi; rank],
        d + delta_degree(gamma),
    );
    s.require_vanishing(cartan);
    let sols = s.solution_vectors();
    if sols.is_empty() {
        return None;
    }
    loop {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for v in &sols {
            let c = q(rng.gen_range(-3..=3));
            if c.is_zero() {
                continue;
            }
            for (t, x) in v {
                *acc.entry(*t).or_insert_with(Q::zero) += x * &c;
            }
        }
        let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !v.is_empty() {
            return Some(s.combine(&v));
        }
    }
}

/// `count` random nonzero elements of `U_γ`, drawn from small exponent boxes.
pub fn random_u_elements<R: Rng>(
    cartan: &CartanData,
    gamma: &RootVector,
    count: usize,
    rng: &mut R,
) -> Vec<RationalElement> {
    let p = delta_degree(gamma);
    let n = gamma.height() as i32;
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count && misses < 1000 {
        let lo = rng.gen_range(-3..=0);
        let hi = rng.gen_range(lo + 1..=lo + 4);
        let total = rng.gen_range(lo * n..=hi * n);
        match random_u_element(cartan, gamma, total - p, lo, hi, rng) {
            Some(g) => out.push(g),
            None => misses += 1,
        }
    }
    out
}
