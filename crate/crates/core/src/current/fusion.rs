use std::collections::{BTreeMap, HashMap};

use num::Zero;

use super::matrix::SparseMatrix;
use super::module::{BasisLabel, GenKind, Generator, GradedModule};
use crate::error::{Error, Result};
use crate::liealg::{CartanData, RootVector, Weight};
use crate::linalg::{q, Echelon, SparseVec, Q};

fn binomial_q(n: u32, k: u32) -> Q {
    let mut acc = q(1);
    for j in 0..k {
        acc = acc * q((n - j) as i64) / q((j + 1) as i64);
    }
    acc
}

/// The tensor product of the factors pulled back along `t ↦ t + c_j`.
struct PulledTensor<'a> {
    factors: &'a [GradedModule],
    points: &'a [Q],
    dims: Vec<usize>,
    cache: HashMap<Generator, SparseMatrix>,
}

impl<'a> PulledTensor<'a> {
    fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// `x ⊗ t^k` on factor `j`: `Σ_m C(k,m) c^{k−m} ρ(x ⊗ t^m)`.
    fn factor_op(&self, j: usize, g: Generator) -> SparseMatrix {
        let m = &self.factors[j];
        let c = &self.points[j];
        let zero = SparseMatrix::zero(m.dim());
        if let Some(c0) = &m.evaluation_point {
            let base = m
                .act(Generator { k: 0, ..g })
                .map(|x| x.into_owned())
                .unwrap_or(zero);
            return base.scaled(&num::pow(c0 + c, g.k as usize));
        }
        let mut acc = zero;
        for s in 0..=g.k.min(m.k_max.saturating_sub(1)) {
            if let Some(x) = m.act(Generator { k: s, ..g }) {
                let coeff = binomial_q(g.k, s) * num::pow(c.clone(), (g.k - s) as usize);
                if !coeff.is_zero() {
                    acc = acc.add_scaled(&coeff, &x);
                }
            }
        }
        acc
    }

    fn op(&mut self, g: Generator) -> &SparseMatrix {
        if !self.cache.contains_key(&g) {
            let mut total = SparseMatrix::zero(self.total_dim());
            for j in 0..self.factors.len() {
                let left = SparseMatrix::identity(self.dims[..j].iter().product());
                let right = SparseMatrix::identity(self.dims[j + 1..].iter().product());
                let term = left.kron(&self.factor_op(j, g)).kron(&right);
                total = total.add_scaled(&q(1), &term);
            }
            self.cache.insert(g, total);
        }
        &self.cache[&g]
    }

    fn weights(&self) -> Vec<Weight> {
        let mut out = vec![Weight::zero(self.factors[0].rank)];
        for m in self.factors {
            out = out
                .iter()
                .flat_map(|a| m.labels.iter().map(move |l| a + &l.weight))
                .collect();
        }
        out
    }

    fn cyclic_index(&self) -> usize {
        self.factors
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (m, d)| acc * d + m.generator_vector)
    }
}

/// Whether every factor's cyclic vector is annihilated by `n₊[t]` and is an
/// eigenvector of `h[t]`, so that `U(n₋[t])` alone generates the filtration.
fn highest_weight_generators(factors: &[GradedModule]) -> bool {
    factors.iter().all(|m| {
        let v = m.generator();
        (0..m.rank).all(|i| {
            (0..m.k_max).all(|k| {
                let hv = m.apply(Generator::h(i, k), &v);
                m.apply(Generator::e(i, k), &v).is_empty()
                    && hv.iter().all(|(j, _)| *j == m.generator_vector)
            })
        })
    })
}

fn shift_for(cartan: &CartanData, g: Generator) -> Weight {
    let a = cartan.rootvec_to_weight(&RootVector::simple(cartan.rank(), g.node));
    match g.kind {
        GenKind::E => a,
        GenKind::F => &Weight::zero(cartan.rank()) - &a,
        GenKind::H => Weight::zero(cartan.rank()),
    }
}

struct Filtration {
    spaces: BTreeMap<Weight, (Echelon, Vec<usize>)>,
    basis: Vec<(Weight, u32, SparseVec)>,
}

impl Filtration {
    fn try_insert(&mut self, w: &Weight, degree: u32, x: SparseVec) -> Option<usize> {
        if x.is_empty() {
            return None;
        }
        let slot = self
            .spaces
            .entry(w.clone())
            .or_insert_with(|| (Echelon::new(), Vec::new()));
        slot.0.insert(&x)?;
        let idx = self.basis.len();
        slot.1.push(idx);
        self.basis.push((w.clone(), degree, x));
        Some(idx)
    }

    fn coordinates(&self, w: &Weight, x: &SparseVec) -> SparseVec {
        if x.is_empty() {
            return Vec::new();
        }
        let (ech, idx) = self.spaces.get(w).expect("weight space present");
        let coords = ech.coordinates(x).expect("filtration exhausts the tensor");
        let mut out: SparseVec = coords.into_iter().map(|(t, c)| (idx[t], c)).collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// The fusion product: associated graded of the tensor of the factors pulled
/// back to `points`, filtered by degree from the tensor of cyclic vectors.
pub fn fusion_product(
    cartan: &CartanData,
    modules: &[GradedModule],
    points: &[Q],
) -> Result<GradedModule> {
    if modules.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if modules.len() != points.len() {
        return Err(Error::SizeMismatch(format!(
            "{} modules, {} points",
            modules.len(),
            points.len()
        )));
    }
    for a in 0..points.len() {
        if points[a + 1..].contains(&points[a]) {
            return Err(Error::CoincidentPoints);
        }
    }
    let mut tensor = PulledTensor {
        factors: modules,
        points,
        dims: modules.iter().map(|m| m.dim()).collect(),
        cache: HashMap::new(),
    };
    let n = cartan.rank();
    let total = tensor.total_dim();
    let weights = tensor.weights();
    let kinds: Vec<GenKind> = if highest_weight_generators(modules) {
        vec![GenKind::F]
    } else {
        vec![GenKind::E, GenKind::F, GenKind::H]
    };
    let gens_at = |k: u32| -> Vec<Generator> {
        kinds
            .iter()
            .flat_map(|&kind| (0..n).map(move |node| Generator { kind, node, k }))
            .collect()
    };
    let stall_limit: u32 = modules
        .iter()
        .map(|m| {
            if m.evaluation_point.is_some() {
                1
            } else {
                m.k_max.max(1)
            }
        })
        .sum();

    let mut filt = Filtration {
        spaces: BTreeMap::new(),
        basis: Vec::new(),
    };
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let v = tensor.cyclic_index();
    let mut stalled = 0u32;
    let mut degree = 0u32;
    while filt.basis.len() < total {
        let mut fresh: Vec<usize> = Vec::new();
        if degree == 0 {
            fresh.extend(filt.try_insert(&weights[v], 0, vec![(v, q(1))]));
        }
        for (d_src, layer) in layers.iter().enumerate() {
            let m = degree - d_src as u32;
            for g in gens_at(m) {
                let shift = shift_for(cartan, g);
                for &b in layer {
                    let (w, _, x) = filt.basis[b].clone();
                    let y = tensor.op(g).apply(&x);
                    fresh.extend(filt.try_insert(&(&w + &shift), degree, y));
                }
            }
        }
        let mut queue = fresh.clone();
        while let Some(b) = queue.pop() {
            for g in gens_at(0) {
                let (w, _, x) = filt.basis[b].clone();
                let y = tensor.op(g).apply(&x);
                if let Some(idx) = filt.try_insert(&(&w + &shift_for(cartan, g)), degree, y) {
                    fresh.push(idx);
                    queue.push(idx);
                }
            }
        }
        if fresh.is_empty() {
            stalled += 1;
            if stalled > stall_limit {
                return Err(Error::NonCyclic(format!(
                    "filtration stopped at dimension {} of {total}",
                    filt.basis.len()
                )));
            }
        } else {
            stalled = 0;
        }
        layers.push(fresh);
        degree += 1;
    }
    let top = degree - 1;

    let dim = filt.basis.len();
    let mut action = BTreeMap::new();
    for a in 0..=top {
        for kind in [GenKind::E, GenKind::F, GenKind::H] {
            for node in 0..n {
                let g = Generator { kind, node, k: a };
                let shift = shift_for(cartan, g);
                let mut cols = Vec::with_capacity(dim);
                for b in 0..dim {
                    let (w, d, x) = filt.basis[b].clone();
                    let y = tensor.op(g).apply(&x);
                    let target = &w + &shift;
                    let col: SparseVec = if y.is_empty() {
                        Vec::new()
                    } else {
                        filt.coordinates(&target, &y)
                            .into_iter()
                            .filter(|(i, _)| filt.basis[*i].1 == d + a)
                            .collect()
                    };
                    cols.push(col);
                }
                let mat = SparseMatrix { cols };
                if !mat.is_zero() {
                    action.insert(g, mat);
                }
            }
        }
    }
    Ok(GradedModule {
        rank: n,
        labels: filt
            .basis
            .iter()
            .map(|(w, d, _)| BasisLabel {
                weight: w.clone(),
                degree: *d,
            })
            .collect(),
        action,
        generator_vector: 0,
        k_max: top + 1,
        graded: true,
        evaluation_point: None,
    })
}

/// Evaluation points `0, 1, …, p−1`.
pub fn default_points(p: usize) -> Vec<Q> {
    (0..p as i64).map(q).collect()
}
