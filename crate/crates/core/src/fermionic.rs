//! Fermionic multiplicity formula: sums of products of binomials over
//! admissible configurations `{m_a^{(i)}}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::{
    dominant_gammas, weyl_dim, CartanData, NTuplePartitions, Partition, RootVector, Weight,
};

/// One tensor factor `W^{i,ℓ}`; `node` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KrFactor {
    pub node: usize,
    pub level: u32,
}

/// A fusion product `W^{i_1,ℓ_1} * ⋯ * W^{i_p,ℓ_p}`.
///
/// Serialized as a list of `[i, ℓ]` pairs with 1-based nodes; textual form
/// `i:ℓ,i:ℓ,…`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KrSpec {
    factors: Vec<KrFactor>,
}

impl KrSpec {
    pub fn new(factors: Vec<KrFactor>) -> Result<Self> {
        if factors.iter().any(|f| f.level == 0) {
            return Err(Error::Invalid("levels must be positive".into()));
        }
        Ok(Self { factors })
    }

    /// From 1-based `(node, level)` pairs.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Result<Self> {
        if pairs.iter().any(|&(i, _)| i == 0) {
            return Err(Error::Invalid("nodes are numbered from 1".into()));
        }
        Self::new(
            pairs
                .iter()
                .map(|&(i, l)| KrFactor {
                    node: i - 1,
                    level: l,
                })
                .collect(),
        )
    }

    /// All factors on a single node with the given levels.
    pub fn single_node(node: usize, levels: &[u32]) -> Result<Self> {
        Self::new(
            levels
                .iter()
                .map(|&l| KrFactor { node, level: l })
                .collect(),
        )
    }

    /// The spec attached to a tuple of partitions: one factor `W^{i,μ_k^{(i)}}`
    /// per row.
    pub fn from_tuple(mu: &NTuplePartitions) -> Result<Self> {
        let factors =
            mu.0.iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    p.parts()
                        .iter()
                        .map(move |&l| KrFactor { node: i, level: l })
                })
                .collect();
        Self::new(factors)
    }

    pub fn factors(&self) -> &[KrFactor] {
        &self.factors
    }

    pub fn validate(&self, cartan: &CartanData) -> Result<()> {
        match self.factors.iter().find(|f| f.node >= cartan.rank()) {
            Some(f) => Err(Error::Invalid(format!(
                "node {} out of range for {}",
                f.node + 1,
                cartan.type_label
            ))),
            None => Ok(()),
        }
    }

    /// `λ = Σ_k ℓ_k ϖ_{i_k}`.
    pub fn lambda(&self, rank: usize) -> Weight {
        let mut w = vec![0i64; rank];
        for f in &self.factors {
            w[f.node] += f.level as i64;
        }
        Weight(w)
    }

    /// Levels `{ℓ_k : k ∈ S_i}`.
    pub fn levels_at(&self, node: usize) -> Vec<u32> {
        self.factors
            .iter()
            .filter(|f| f.node == node)
            .map(|f| f.level)
            .collect()
    }

    /// `Σ_{k ∈ S_i} min(r, ℓ_k)`.
    pub fn min_sum(&self, node: usize, r: u32) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.node == node)
            .map(|f| f.level.min(r))
            .sum()
    }

    pub fn total_level(&self) -> u32 {
        self.factors.iter().map(|f| f.level).sum()
    }
}

impl fmt::Display for KrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}:{}", x.node + 1, x.level))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for KrSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, l) = item
                .split_once(':')
                .ok_or_else(|| Error::Invalid(format!("expected `node:level`, got `{item}`")))?;
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad node `{i}`")))?;
            let l: u32 = l
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad level `{l}`")))?;
            pairs.push((i, l));
        }
        if pairs.is_empty() {
            return Err(Error::Invalid("empty spec".into()));
        }
        Self::from_pairs(&pairs)
    }
}

impl Serialize for KrSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[u64; 2]> = self
            .factors
            .iter()
            .map(|f| [(f.node + 1) as u64, f.level as u64])
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KrSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, u32)> = Vec::deserialize(d)?;
        KrSpec::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// A configuration `{m_a^{(i)}}`; `counts[i][a-1] = m_a^{(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigShape {
    pub counts: Vec<Vec<u32>>,
}

impl ConfigShape {
    pub fn empty(rank: usize) -> Self {
        Self {
            counts: vec![Vec::new(); rank],
        }
    }

    pub fn m(&self, node: usize, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        self.counts[node].get(a as usize - 1).copied().unwrap_or(0)
    }

    /// `γ = Σ_{i,a} a m_a^{(i)} α_i`.
    pub fn gamma(&self) -> RootVector {
        RootVector(
            self.counts
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .map(|(k, &m)| (k as u32 + 1) * m)
                        .sum()
                })
                .collect(),
        )
    }

    pub fn as_partitions(&self) -> NTuplePartitions {
        NTuplePartitions(
            self.counts
                .iter()
                .map(|m| Partition::from_multiplicities(m))
                .collect(),
        )
    }

    fn max_part(&self) -> u32 {
        self.counts
            .iter()
            .map(|row| row.len() as u32)
            .max()
            .unwrap_or(0)
    }
}

/// Vacancy number `p_a^{(i)}`.
pub fn vacancy(
    cartan: &CartanData,
    spec: &KrSpec,
    config: &ConfigShape,
    node: usize,
    a: u32,
) -> i64 {
    let mut p = spec.min_sum(node, a) as i64;
    for j in 0..cartan.rank() {
        if j == node {
            continue;
        }
        let (cji, cij) = (cartan.c(j, node).abs(), cartan.c(node, j).abs());
        for (k, &m) in config.counts[j].iter().enumerate() {
            let b = k as i64 + 1;
            p += (cji * a as i64).min(cij * b) * m as i64;
        }
    }
    for (k, &m) in config.counts[node].iter().enumerate() {
        let b = k as i64 + 1;
        p -= 2 * (a as i64).min(b) * m as i64;
    }
    p
}

/// Every `a` at which a vacancy number can change; beyond the last one all
/// vacancies are constant.
fn vacancy_range(cartan: &CartanData, spec: &KrSpec, config: &ConfigShape) -> u32 {
    let max_level = spec.factors().iter().map(|f| f.level).max().unwrap_or(0);
    let max_c = (0..cartan.rank())
        .flat_map(|i| (0..cartan.rank()).map(move |j| (i, j)))
        .map(|(i, j)| cartan.c(i, j).unsigned_abs() as u32)
        .max()
        .unwrap_or(1);
    max_level.max(config.max_part() * max_c).max(1) + 1
}

pub fn is_admissible(cartan: &CartanData, spec: &KrSpec, config: &ConfigShape) -> bool {
    let top = vacancy_range(cartan, spec, config);
    (0..cartan.rank()).all(|i| (1..=top).all(|a| vacancy(cartan, spec, config, i, a) >= 0))
}

/// All admissible configurations with `γ(config) = γ`, in lexicographic order
/// of `(i, a, m)`.
pub fn enumerate_configs(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
) -> Vec<ConfigShape> {
    let per_node: Vec<Vec<Vec<u32>>> = gamma
        .coeffs()
        .iter()
        .map(|&m| {
            let mut ms: Vec<Vec<u32>> = Partition::all(m)
                .iter()
                .map(|p| p.multiplicities())
                .collect();
            ms.sort();
            ms
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_node.len()];
    loop {
        let config = ConfigShape {
            counts: idx
                .iter()
                .zip(&per_node)
                .map(|(&k, opts)| opts[k].clone())
                .collect(),
        };
        if is_admissible(cartan, spec, &config) {
            out.push(config);
        }
        // odometer with the last node fastest, so the order is lexicographic in i
        let mut k = per_node.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] + 1 < per_node[k].len() {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits in u64")
}

/// `Π_{i,a} binom(p_a^{(i)} + m_a^{(i)}, m_a^{(i)})` for an admissible config.
pub fn config_weight(cartan: &CartanData, spec: &KrSpec, config: &ConfigShape) -> u64 {
    let mut prod = 1u64;
    for i in 0..cartan.rank() {
        for (k, &m) in config.counts[i].iter().enumerate() {
            if m == 0 {
                continue;
            }
            let p = vacancy(cartan, spec, config, i, k as u32 + 1);
            debug_assert!(p >= 0);
            prod = prod
                .checked_mul(binomial(p as u64 + m as u64, m as u64))
                .expect("overflow");
        }
    }
    prod
}

/// The fermionic multiplicity of `V(λ − γ)`.
pub fn fermionic_multiplicity(
    cartan: &CartanData,
    spec: &KrSpec,
    gamma: &RootVector,
) -> Result<u64> {
    spec.validate(cartan)?;
    let lambda = spec.lambda(cartan.rank());
    let mu = &lambda - &cartan.rootvec_to_weight(gamma);
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0));
    }
    Ok(enumerate_configs(cartan, spec, gamma)
        .iter()
        .map(|c| config_weight(cartan, spec, c))
        .sum())
}

/// All `(γ, multiplicity)` with `λ − γ` dominant.
pub fn fermionic_table(cartan: &CartanData, spec: &KrSpec) -> Result<Vec<(RootVector, u64)>> {
    spec.validate(cartan)?;
    let lambda = spec.lambda(cartan.rank());
    dominant_gammas(cartan, &lambda)
        .into_iter()
        .map(|g| fermionic_multiplicity(cartan, spec, &g).map(|m| (g, m)))
        .collect()
}

/// `Σ_γ fermionic_multiplicity(γ) · dim V(λ − γ)`.
pub fn fermionic_total(cartan: &CartanData, spec: &KrSpec) -> Result<u64> {
    let lambda = spec.lambda(cartan.rank());
    let mut total = 0;
    for (g, m) in fermionic_table(cartan, spec)? {
        if m > 0 {
            total += m * weyl_dim(cartan, &(&lambda - &cartan.rootvec_to_weight(&g)))?;
        }
    }
    Ok(total)
}

/// Whether `Σ_k min(r, μ_k^{(i)}) ≥ Σ_k min(r, ν_k^{(i)})` for all `i` and `r`,
/// i.e. whether a surjection `W(μ) ↠ W(ν)` is guaranteed.
pub fn dominance_surjection_exists(mu: &NTuplePartitions, nu: &NTuplePartitions) -> Result<bool> {
    if mu.0.len() != nu.0.len() || mu.sizes() != nu.sizes() {
        return Err(Error::SizeMismatch(format!("{mu} vs {nu}")));
    }
    Ok(mu.0.iter().zip(&nu.0).all(|(a, b)| {
        let top = a
            .parts()
            .first()
            .copied()
            .unwrap_or(0)
            .max(b.parts().first().copied().unwrap_or(0));
        (1..=top).all(|r| a.min_sum(r) >= b.min_sum(r))
    }))
}
