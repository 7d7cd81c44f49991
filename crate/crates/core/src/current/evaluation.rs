use std::collections::BTreeMap;

use num::Zero;

use super::matrix::SparseMatrix;
use super::module::{BasisLabel, Generator, GradedModule};
use crate::error::{Error, Result};
use crate::liealg::{CartanData, Weight};
use crate::linalg::{q, Echelon, SparseVec, Q};

/// Largest `k` (exclusive) visited by exhaustive checks on evaluation modules
/// at a nonzero point.
pub const DEFAULT_K_CAP: u32 = 3;

/// A `g`-module given by matrices of the Chevalley generators.
#[derive(Debug, Clone)]
pub(crate) struct LieRep {
    pub weights: Vec<Weight>,
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
    pub h: Vec<SparseMatrix>,
}

impl LieRep {
    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn trivial(rank: usize) -> Self {
        let z = SparseMatrix::zero(1);
        LieRep {
            weights: vec![Weight::zero(rank)],
            e: vec![z.clone(); rank],
            f: vec![z.clone(); rank],
            h: vec![z; rank],
        }
    }

    /// `Λ^k C^{n+1}` for `sl_{n+1}`; basis is the k-subsets in lexicographic order.
    fn exterior_power(n: usize, k: usize) -> Self {
        let subsets = k_subsets(n + 1, k);
        let index: BTreeMap<&Vec<usize>, usize> =
            subsets.iter().enumerate().map(|(j, s)| (s, j)).collect();
        let weights = subsets
            .iter()
            .map(|s| {
                Weight(
                    (0..n)
                        .map(|j| s.contains(&j) as i64 - s.contains(&(j + 1)) as i64)
                        .collect(),
                )
            })
            .collect();
        let mut e = Vec::new();
        let mut f = Vec::new();
        let mut h = Vec::new();
        for i in 0..n {
            let shift = |from: usize, to: usize| -> SparseMatrix {
                SparseMatrix {
                    cols: subsets
                        .iter()
                        .map(|s| {
                            if s.contains(&from) && !s.contains(&to) {
                                let mut t: Vec<usize> =
                                    s.iter().map(|&x| if x == from { to } else { x }).collect();
                                t.sort_unstable();
                                vec![(index[&t], q(1))]
                            } else {
                                Vec::new()
                            }
                        })
                        .collect(),
                }
            };
            e.push(shift(i + 1, i));
            f.push(shift(i, i + 1));
            h.push(SparseMatrix {
                cols: subsets
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        let x = s.contains(&i) as i64 - s.contains(&(i + 1)) as i64;
                        if x == 0 {
                            Vec::new()
                        } else {
                            vec![(j, q(x))]
                        }
                    })
                    .collect(),
            });
        }
        LieRep { weights, e, f, h }
    }

    fn tensor(&self, other: &LieRep) -> LieRep {
        let (ia, ib) = (
            SparseMatrix::identity(self.dim()),
            SparseMatrix::identity(other.dim()),
        );
        let lift = |x: &SparseMatrix, y: &SparseMatrix| x.kron(&ib).add_scaled(&q(1), &ia.kron(y));
        LieRep {
            weights: self
                .weights
                .iter()
                .flat_map(|a| other.weights.iter().map(move |b| a + b))
                .collect(),
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(x, y)| lift(x, y))
                .collect(),
            f: self
                .f
                .iter()
                .zip(&other.f)
                .map(|(x, y)| lift(x, y))
                .collect(),
            h: self
                .h
                .iter()
                .zip(&other.h)
                .map(|(x, y)| lift(x, y))
                .collect(),
        }
    }

    /// The index of the unique basis vector of weight `w`.
    fn unique_vector(&self, w: &Weight) -> usize {
        let hits: Vec<usize> = (0..self.dim()).filter(|&j| &self.weights[j] == w).collect();
        assert_eq!(
            hits.len(),
            1,
            "highest weight must be a single basis vector"
        );
        hits[0]
    }

    /// The `U(n₋)`-submodule generated by basis vector `v`, re-expressed in a
    /// basis of weight vectors.
    fn cyclic_submodule(&self, v: usize) -> LieRep {
        let rank = self.f.len();
        let mut spaces: BTreeMap<Weight, (Echelon, Vec<usize>)> = BTreeMap::new();
        let mut basis: Vec<(Weight, SparseVec)> = Vec::new();
        let mut queue = vec![(self.weights[v].clone(), vec![(v, q(1))])];
        while let Some((w, x)) = queue.pop() {
            let slot = spaces
                .entry(w.clone())
                .or_insert_with(|| (Echelon::new(), Vec::new()));
            if slot.0.insert(&x).is_some() {
                slot.1.push(basis.len());
                basis.push((w.clone(), x.clone()));
                for i in 0..rank {
                    let y = self.f[i].apply(&x);
                    if !y.is_empty() {
                        let wy = Weight(
                            w.0.iter()
                                .zip(&self.weights_of_simple(i))
                                .map(|(a, b)| a - b)
                                .collect(),
                        );
                        queue.push((wy, y));
                    }
                }
            }
        }
        let express = |w: &Weight, y: &SparseVec| -> SparseVec {
            if y.is_empty() {
                return Vec::new();
            }
            let (ech, idx) = &spaces[w];
            let coords = ech.coordinates(y).expect("submodule is closed");
            coords
                .into_iter()
                .map(|(t, c)| (idx[t], c))
                .collect::<SparseVec>()
        };
        let shifted = |w: &Weight, i: usize, sign: i64| -> Weight {
            Weight(
                w.0.iter()
                    .zip(&self.weights_of_simple(i))
                    .map(|(a, b)| a + sign * b)
                    .collect(),
            )
        };
        let build = |mats: &[SparseMatrix], sign: i64| -> Vec<SparseMatrix> {
            (0..rank)
                .map(|i| SparseMatrix {
                    cols: basis
                        .iter()
                        .map(|(w, x)| {
                            let mut col = express(&shifted(w, i, sign), &mats[i].apply(x));
                            col.sort_by_key(|e| e.0);
                            col
                        })
                        .collect(),
                })
                .collect()
        };
        LieRep {
            weights: basis.iter().map(|(w, _)| w.clone()).collect(),
            e: build(&self.e, 1),
            f: build(&self.f, -1),
            h: build(&self.h, 0),
        }
    }

    fn weights_of_simple(&self, i: usize) -> Vec<i64> {
        // α_i in fundamental coordinates: column of the A_n Cartan matrix
        let n = self.f.len();
        (0..n)
            .map(|j| match (i as i64 - j as i64).abs() {
                0 => 2,
                1 => -1,
                _ => 0,
            })
            .collect()
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `V(λ)` for type A, as the cyclic submodule of a tensor of exterior powers.
pub(crate) fn type_a_simple(cartan: &CartanData, lambda: &Weight) -> Result<(LieRep, usize)> {
    if !cartan.is_type_a() {
        return Err(Error::UnsupportedRealization(format!(
            "evaluation modules are constructed for type A only, not {}",
            cartan.type_label
        )));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let n = cartan.rank();
    let mut rep = LieRep::trivial(n);
    for (i, &m) in lambda.0.iter().enumerate() {
        for _ in 0..m {
            rep = rep
                .tensor(&LieRep::exterior_power(n, i + 1))
                .cyclic_submodule(0);
        }
    }
    let top = rep.unique_vector(lambda);
    Ok((rep, top))
}

/// `V(λ)` with `x ⊗ t^k` acting as `c^k x`.
pub fn evaluation_module(cartan: &CartanData, lambda: &Weight, c: &Q) -> Result<GradedModule> {
    let (rep, top) = type_a_simple(cartan, lambda)?;
    let mut action = BTreeMap::new();
    for i in 0..cartan.rank() {
        action.insert(Generator::e(i, 0), rep.e[i].clone());
        action.insert(Generator::f(i, 0), rep.f[i].clone());
        action.insert(Generator::h(i, 0), rep.h[i].clone());
    }
    Ok(GradedModule {
        rank: cartan.rank(),
        labels: rep
            .weights
            .iter()
            .map(|w| BasisLabel {
                weight: w.clone(),
                degree: 0,
            })
            .collect(),
        action,
        generator_vector: top,
        k_max: if c.is_zero() { 1 } else { DEFAULT_K_CAP },
        graded: c.is_zero(),
        evaluation_point: Some(c.clone()),
    })
}

/// Failed defining relations of `W^{i,ℓ}(c)` on the cyclic vector of `m`.
pub fn kr_relation_failures(m: &GradedModule, node: usize, level: u32, c: &Q) -> Vec<String> {
    let v = m.generator();
    let mut bad = Vec::new();
    let cap = m.k_max.max(2);
    for j in 0..m.rank {
        for k in 0..cap {
            if !m.apply(Generator::e(j, k), &v).is_empty() {
                bad.push(format!("e{}[{k}] v != 0", j + 1));
            }
            let expected: Q = if j == node {
                q(level as i64) * num::pow(c.clone(), k as usize)
            } else {
                q(0)
            };
            let hv = m.apply(Generator::h(j, k), &v);
            let want: SparseVec = if expected.is_zero() {
                Vec::new()
            } else {
                vec![(m.generator_vector, expected)]
            };
            if hv != want {
                bad.push(format!("h{}[{k}] v has the wrong eigenvalue", j + 1));
            }
        }
        if j != node && !m.apply(Generator::f(j, 0), &v).is_empty() {
            bad.push(format!("f{} v != 0", j + 1));
        }
    }
    let word = vec![Generator::f(node, 0); level as usize + 1];
    if !m.apply_word(&word, &v).is_empty() {
        bad.push(format!("f{}^{} v != 0", node + 1, level + 1));
    }
    let shifted = crate::linalg::sub_scaled(
        &m.apply(Generator::f(node, 1), &v),
        c,
        &m.apply(Generator::f(node, 0), &v),
    );
    if !shifted.is_empty() {
        bad.push(format!("f{} ⊗ (t - c) v != 0", node + 1));
    }
    bad
}

/// `W^{i,ℓ}(c)`, realized as `V(ℓϖ_i)` evaluated at `c`. The defining
/// relations are verified on the returned module.
pub fn kr_module(cartan: &CartanData, node: usize, level: u32, c: &Q) -> Result<GradedModule> {
    if node >= cartan.rank() {
        return Err(Error::Invalid(format!("node {} out of range", node + 1)));
    }
    let m = evaluation_module(
        cartan,
        &Weight::fundamental(cartan.rank(), node, level as i64),
        c,
    )?;
    let bad = kr_relation_failures(&m, node, level, c);
    if !bad.is_empty() {
        return Err(Error::Invalid(format!(
            "realization of W^{{{},{level}}} fails: {bad:?}",
            node + 1
        )));
    }
    Ok(m)
}
