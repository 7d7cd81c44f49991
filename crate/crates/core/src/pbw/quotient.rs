use std::collections::{BTreeMap, HashMap};

use num::BigInt;
use serde::{Deserialize, Serialize};

use super::algebra::{pbw_basis_degree, Letter, PbwAlgebra, PbwElement, PbwMonomial};
use crate::current::current_power_coefficient;
use crate::error::{Error, Result};
use crate::fermionic::KrSpec;
use crate::liealg::{CartanData, RootVector};
use crate::linalg::IntEchelon;

/// Spanning vectors of `(n₋U⁻ + I)_{−γ}` in degrees `≤ max_degree`, in
/// coordinates of `basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSlice {
    pub gamma: RootVector,
    pub max_degree: u32,
    pub basis: Vec<PbwMonomial>,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl IdealSlice {
    pub fn rank(&self) -> usize {
        let mut e = IntEchelon::new();
        for r in &self.rows {
            e.insert(r.iter().map(|(k, c)| (*k, BigInt::from(*c))).collect());
        }
        e.rank()
    }

    pub fn corank(&self) -> usize {
        self.basis.len() - self.rank()
    }
}

/// `(F_i(z)^r)_s` as an element of `U(n₋[t])`.
pub fn current_power_element(alg: &PbwAlgebra<'_>, node: usize, r: u32, s: i64) -> PbwElement {
    current_power_coefficient(node, r, s)
        .into_iter()
        .map(|t| {
            let letters: Vec<Letter> = t.ks.iter().map(|&k| alg.simple_letter(node, k)).collect();
            (PbwMonomial(letters), t.coeff as i64)
        })
        .collect()
}

/// Builds the slice for one exact degree.
struct DegreeSlicer<'a, 'c> {
    alg: &'a mut PbwAlgebra<'c>,
    spec: &'a KrSpec,
    basis_cache: HashMap<(RootVector, u32), Vec<PbwMonomial>>,
}

impl DegreeSlicer<'_, '_> {
    fn basis(&mut self, gamma: &RootVector, d: u32) -> Vec<PbwMonomial> {
        let cartan = self.alg.cartan();
        self.basis_cache
            .entry((gamma.clone(), d))
            .or_insert_with(|| pbw_basis_degree(cartan, gamma, d))
            .clone()
    }

    fn rows(&mut self, gamma: &RootVector, d: u32) -> (Vec<PbwMonomial>, Vec<PbwElement>) {
        let basis = self.basis(gamma, d);
        let mut rows = Vec::new();
        let cartan = self.alg.cartan();
        let roots = cartan.positive_roots.clone();
        let rank = cartan.rank();
        for (a, alpha) in roots.iter().enumerate() {
            let Some(rest) = gamma.checked_sub(alpha) else {
                continue;
            };
            let letter = Letter {
                root: a as u16,
                k: 0,
            };
            for m in self.basis(&rest, d) {
                rows.push(self.alg.mul_word(&[letter], &PbwElement::from([(m, 1)])));
            }
        }
        for i in 0..rank {
            for r in 1..=gamma.0[i] {
                let mut rest = gamma.clone();
                rest.0[i] -= r;
                let first = (self.spec.min_sum(i, r) as i64 - r as i64 + 1).max(0) as u32;
                for gdeg in first..=d {
                    let g = current_power_element(self.alg, i, r, -(gdeg as i64) - r as i64);
                    if g.is_empty() {
                        continue;
                    }
                    for m in self.basis(&rest, d - gdeg) {
                        rows.push(self.alg.mul_word(&m.0, &g));
                    }
                }
            }
        }
        (basis, rows)
    }
}

fn coordinates(
    index: &HashMap<&PbwMonomial, usize>,
    x: &PbwElement,
    offset: usize,
) -> Vec<(usize, i64)> {
    let mut v: Vec<(usize, i64)> = x.iter().map(|(m, c)| (index[m] + offset, *c)).collect();
    v.sort_unstable();
    v
}

/// The ideal slice at every degree up to `max_degree`.
pub fn ideal_slice(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
    max_degree: u32,
) -> IdealSlice {
    let mut alg = PbwAlgebra::new(cartan);
    let mut slicer = DegreeSlicer {
        alg: &mut alg,
        spec,
        basis_cache: HashMap::new(),
    };
    let mut basis = Vec::new();
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let (b, r) = slicer.rows(gamma, d);
        let index: HashMap<&PbwMonomial, usize> =
            b.iter().enumerate().map(|(k, m)| (m, k)).collect();
        rows.extend(r.iter().map(|x| coordinates(&index, x, basis.len())));
        basis.extend(b.iter().cloned());
    }
    IdealSlice {
        gamma: gamma.clone(),
        max_degree,
        basis,
        rows,
    }
}

/// `dim (U⁻/(n₋U⁻ + I))_{−γ}` in each degree `0..=max_degree`.
pub fn quotient_dims(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
    max_degree: u32,
) -> Vec<u64> {
    let mut alg = PbwAlgebra::new(cartan);
    let mut slicer = DegreeSlicer {
        alg: &mut alg,
        spec,
        basis_cache: HashMap::new(),
    };
    (0..=max_degree)
        .map(|d| degree_corank(&mut slicer, gamma, d))
        .collect()
}

fn degree_corank(slicer: &mut DegreeSlicer<'_, '_>, gamma: &RootVector, d: u32) -> u64 {
    let (b, r) = slicer.rows(gamma, d);
    let index: HashMap<&PbwMonomial, usize> = b.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut e = IntEchelon::new();
    for x in &r {
        if e.rank() == b.len() {
            break;
        }
        e.insert(
            coordinates(&index, x, 0)
                .into_iter()
                .map(|(k, c)| (k, BigInt::from(c)))
                .collect(),
        );
    }
    (b.len() - e.rank()) as u64
}

/// Degree caps tried by [`multiplicity_upper_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub start: u32,
    pub max: u32,
}

impl Schedule {
    /// `ht(γ)` up to `ht(γ)·(p+1) + 2` for `p` tensor factors.
    pub fn default_for(spec: &KrSpec, gamma: &RootVector) -> Self {
        let h = gamma.height();
        Schedule {
            start: h,
            max: h * (spec.factors().len() as u32 + 1) + 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: u64,
    /// `(D, corank at degree cap D)` for every cap examined.
    pub trace: Vec<(u32, u64)>,
    /// Quotient dimension per exact degree.
    pub graded: Vec<u64>,
}

/// The corank of the ideal slice, increasing the degree cap until it agrees
/// at two consecutive steps.
pub fn multiplicity_upper_bound(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
    schedule: Option<Schedule>,
) -> Result<UpperBound> {
    spec.validate(cartan)?;
    let mu = &spec.lambda(cartan.rank()) - &cartan.rootvec_to_weight(gamma);
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0));
    }
    let schedule = schedule.unwrap_or_else(|| Schedule::default_for(spec, gamma));
    let mut alg = PbwAlgebra::new(cartan);
    let mut slicer = DegreeSlicer {
        alg: &mut alg,
        spec,
        basis_cache: HashMap::new(),
    };
    let mut graded = Vec::new();
    let mut total = 0u64;
    let mut trace: Vec<(u32, u64)> = Vec::new();
    for d in 0..=schedule.max {
        let q = degree_corank(&mut slicer, gamma, d);
        graded.push(q);
        total += q;
        if d < schedule.start {
            continue;
        }
        trace.push((d, total));
        if let [.., a, b, c] = trace.as_slice() {
            if a.1 == b.1 && b.1 == c.1 {
                return Ok(UpperBound {
                    value: total,
                    trace,
                    graded,
                });
            }
        }
    }
    Err(Error::NotStabilized {
        trace: trace.iter().map(|&(d, c)| (d as i64, c)).collect(),
    })
}

/// Graded quotient dimensions keyed by degree, dropping zeros.
pub fn graded_upper_bound(bound: &UpperBound) -> BTreeMap<u32, u64> {
    bound
        .graded
        .iter()
        .enumerate()
        .filter(|(_, &q)| q > 0)
        .map(|(d, &q)| (d as u32, q))
        .collect()
}
