use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::SparseMatrix;
use num::{One, Zero};

use crate::liealg::{CartanData, Weight};
use crate::linalg::{q, rank, SparseVec, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    E,
    F,
    H,
}

/// `x_i ⊗ t^k` for `x ∈ {e, f, h}`; `node` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub node: usize,
    pub k: u32,
}

impl Generator {
    pub fn e(node: usize, k: u32) -> Self {
        Self {
            kind: GenKind::E,
            node,
            k,
        }
    }
    pub fn f(node: usize, k: u32) -> Self {
        Self {
            kind: GenKind::F,
            node,
            k,
        }
    }
    pub fn h(node: usize, k: u32) -> Self {
        Self {
            kind: GenKind::H,
            node,
            k,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.kind {
            GenKind::E => "e",
            GenKind::F => "f",
            GenKind::H => "h",
        };
        write!(f, "{x}{}[{}]", self.node + 1, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub weight: Weight,
    pub degree: u32,
}

/// `(weight, degree) → dimension`.
pub type GradedCharacter = BTreeMap<(Weight, u32), u64>;

/// A finite-dimensional `g[t]`-module with an explicit basis.
///
/// In a graded module generators `x ⊗ t^k` with `k ≥ k_max` act as zero.
/// An evaluation module at a nonzero point `c` stores only `k = 0` and acts by
/// `c^k x`; there `k_max` is just the cap used by exhaustive checks.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub rank: usize,
    pub labels: Vec<BasisLabel>,
    pub action: BTreeMap<Generator, SparseMatrix>,
    pub generator_vector: usize,
    pub k_max: u32,
    pub graded: bool,
    pub evaluation_point: Option<Q>,
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Matrix of `g`, or `None` when it acts as zero.
    pub fn act(&self, g: Generator) -> Option<Cow<'_, SparseMatrix>> {
        if let Some(c) = &self.evaluation_point {
            if g.k == 0 {
                return self.action.get(&g).map(Cow::Borrowed);
            }
            if c.is_zero() {
                return None;
            }
            let ck = num::pow(c.clone(), g.k as usize);
            return self
                .action
                .get(&Generator { k: 0, ..g })
                .map(|m| Cow::Owned(m.scaled(&ck)));
        }
        if g.k >= self.k_max {
            return None;
        }
        self.action.get(&g).map(Cow::Borrowed)
    }

    pub fn apply(&self, g: Generator, v: &[(usize, Q)]) -> SparseVec {
        match &self.evaluation_point {
            Some(c) if g.k > 0 && !c.is_one() => {
                if c.is_zero() {
                    return Vec::new();
                }
                let ck = num::pow(c.clone(), g.k as usize);
                self.apply(Generator { k: 0, ..g }, v)
                    .into_iter()
                    .map(|(i, x)| (i, x * &ck))
                    .collect()
            }
            Some(_) => self
                .action
                .get(&Generator { k: 0, ..g })
                .map(|m| m.apply(v))
                .unwrap_or_default(),
            None => self.act(g).map(|m| m.apply(v)).unwrap_or_default(),
        }
    }

    /// Apply a word of generators, rightmost first.
    pub fn apply_word(&self, word: &[Generator], v: &[(usize, Q)]) -> SparseVec {
        word.iter()
            .rev()
            .fold(v.to_vec(), |acc, g| self.apply(*g, &acc))
    }

    pub fn generator(&self) -> SparseVec {
        vec![(self.generator_vector, q(1))]
    }

    pub fn indices_at(&self, weight: &Weight, degree: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&j| self.labels[j].degree == degree && &self.labels[j].weight == weight)
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.labels.iter().map(|l| l.degree).max().unwrap_or(0)
    }

    /// Every defining bracket of `g[t]` among stored generators, checked on
    /// matrices; returns the violated identities.
    pub fn bracket_violations(&self, cartan: &CartanData) -> Vec<String> {
        let n = self.rank;
        let zero = SparseMatrix::zero(self.dim());
        let get = |g: Generator| {
            self.act(g)
                .map(Cow::into_owned)
                .unwrap_or_else(|| zero.clone())
        };
        let ks: Vec<u32> = (0..self.k_max).collect();
        let mut bad = Vec::new();
        let mut check = |name: String, lhs: SparseMatrix, rhs: SparseMatrix| {
            if lhs != rhs {
                bad.push(name);
            }
        };
        for i in 0..n {
            for j in 0..n {
                for &a in &ks {
                    for &b in &ks {
                        let (ea, fa, ha) = (
                            get(Generator::e(i, a)),
                            get(Generator::f(i, a)),
                            get(Generator::h(i, a)),
                        );
                        let (eb, fb, hb) = (
                            get(Generator::e(j, b)),
                            get(Generator::f(j, b)),
                            get(Generator::h(j, b)),
                        );
                        let cij = q(cartan.c(i, j));
                        let ef = if i == j {
                            get(Generator::h(i, a + b))
                        } else {
                            zero.clone()
                        };
                        check(format!("[e{i}[{a}],f{j}[{b}]]"), ea.commutator(&fb), ef);
                        check(
                            format!("[h{i}[{a}],e{j}[{b}]]"),
                            ha.commutator(&eb),
                            get(Generator::e(j, a + b)).scaled(&cij),
                        );
                        check(
                            format!("[h{i}[{a}],f{j}[{b}]]"),
                            ha.commutator(&fb),
                            get(Generator::f(j, a + b)).scaled(&-cij),
                        );
                        check(
                            format!("[h{i}[{a}],h{j}[{b}]]"),
                            ha.commutator(&hb),
                            zero.clone(),
                        );
                        if i == j || cartan.c(i, j) == 0 {
                            check(
                                format!("[f{i}[{a}],f{j}[{b}]]"),
                                fa.commutator(&fb),
                                zero.clone(),
                            );
                            check(
                                format!("[e{i}[{a}],e{j}[{b}]]"),
                                ea.commutator(&eb),
                                zero.clone(),
                            );
                        }
                    }
                }
            }
        }
        bad
    }
}

/// `(weight, degree) → dim` of a module.
pub fn graded_character(m: &GradedModule) -> GradedCharacter {
    let mut out = GradedCharacter::new();
    for l in &m.labels {
        *out.entry((l.weight.clone(), l.degree)).or_insert(0) += 1;
    }
    out
}

fn stacked_rank(m: &GradedModule, gens: &[Generator], sources: &[usize]) -> usize {
    let dim = m.dim();
    let cols: Vec<SparseVec> = sources
        .iter()
        .map(|&j| {
            let mut col = Vec::new();
            for (slot, g) in gens.iter().enumerate() {
                col.extend(
                    m.apply(*g, &[(j, q(1))])
                        .into_iter()
                        .map(|(r, x)| (slot * dim + r, x)),
                );
            }
            col
        })
        .collect();
    rank(cols.iter())
}

fn dominant_slots(m: &GradedModule) -> BTreeSet<(Weight, u32)> {
    m.labels
        .iter()
        .filter(|l| l.weight.is_dominant())
        .map(|l| (l.weight.clone(), l.degree))
        .collect()
}

/// Multiplicity of `V(μ)` in each degree, as the dimension of the joint kernel
/// of the `e_i` on highest-weight spaces.
pub fn g_decompose_kernel(m: &GradedModule) -> GradedCharacter {
    let es: Vec<Generator> = (0..m.rank).map(|i| Generator::e(i, 0)).collect();
    let mut out = GradedCharacter::new();
    for (w, d) in dominant_slots(m) {
        let idx = m.indices_at(&w, d);
        let k = idx.len() - stacked_rank(m, &es, &idx);
        if k > 0 {
            out.insert((w, d), k as u64);
        }
    }
    out
}

/// Same multiplicities via `dim (M / n₋M)_μ` per degree.
pub fn g_decompose_coinvariant(m: &GradedModule, cartan: &CartanData) -> GradedCharacter {
    let mut out = GradedCharacter::new();
    for (w, d) in dominant_slots(m) {
        let mut images: Vec<SparseVec> = Vec::new();
        for i in 0..m.rank {
            let above =
                &w + &cartan.rootvec_to_weight(&crate::liealg::RootVector::simple(m.rank, i));
            for j in m.indices_at(&above, d) {
                images.push(m.apply(Generator::f(i, 0), &[(j, q(1))]));
            }
        }
        let k = m.indices_at(&w, d).len() - rank(images.iter());
        if k > 0 {
            out.insert((w, d), k as u64);
        }
    }
    out
}

/// Decomposition into simple `g`-modules per degree. Both the kernel and the
/// coinvariant computation are run; they must agree.
pub fn g_decompose(m: &GradedModule, cartan: &CartanData) -> crate::Result<GradedCharacter> {
    let a = g_decompose_kernel(m);
    let b = g_decompose_coinvariant(m, cartan);
    if a != b {
        return Err(crate::Error::Invalid(format!(
            "kernel and coinvariant decompositions differ: {a:?} vs {b:?}"
        )));
    }
    Ok(a)
}

/// CSV with header `w1,…,wn,degree,dim`.
pub fn character_csv(ch: &GradedCharacter, rank: usize) -> String {
    let mut s: String = (1..=rank).map(|i| format!("w{i},")).collect();
    s.push_str("degree,dim\n");
    for ((w, d), n) in ch {
        for c in &w.0 {
            s.push_str(&format!("{c},"));
        }
        s.push_str(&format!("{d},{n}\n"));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub weight: Weight,
    pub degree: u32,
    pub dim: u64,
}

pub fn character_entries(ch: &GradedCharacter) -> Vec<CharacterEntry> {
    ch.iter()
        .map(|((w, d), n)| CharacterEntry {
            weight: w.clone(),
            degree: *d,
            dim: *n,
        })
        .collect()
}

/// Text dump: one `generator row col value` line per nonzero entry, preceded
/// by a `# dim N` header. Rows and columns are 0-based basis indices.
pub fn dump_triplets(m: &GradedModule) -> String {
    let mut s = format!("# dim {}\n", m.dim());
    for (g, mat) in &m.action {
        for (r, c, v) in mat.triplets() {
            s.push_str(&format!("{g} {r} {c} {v}\n"));
        }
    }
    s
}
