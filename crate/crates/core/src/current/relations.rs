use serde::{Deserialize, Serialize};

use super::module::{Generator, GradedModule};
use crate::fermionic::KrSpec;
use crate::linalg::{collect_sparse, q, SparseVec};

/// One monomial `f_{i,k_1} ⋯ f_{i,k_r}` (with `k_1 ≤ ⋯ ≤ k_r`) and its
/// multiplicity in `(F_i(z)^r)_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurrentMonomial {
    pub node: usize,
    pub ks: Vec<u32>,
    pub coeff: u64,
}

impl CurrentMonomial {
    pub fn word(&self) -> Vec<Generator> {
        self.ks
            .iter()
            .map(|&k| Generator::f(self.node, k))
            .collect()
    }
}

fn multinomial(ks: &[u32]) -> u64 {
    let mut acc: u64 = 1;
    let mut run = 0u64;
    for (pos, k) in ks.iter().enumerate() {
        run = if pos > 0 && ks[pos - 1] == *k {
            run + 1
        } else {
            1
        };
        acc = acc * (pos as u64 + 1) / run;
    }
    acc
}

/// The coefficient of `z^s` in `F_i(z)^r`, as a sum of sorted monomials.
pub fn current_power_coefficient(node: usize, r: u32, s: i64) -> Vec<CurrentMonomial> {
    let total = -s - r as i64;
    if r == 0 || total < 0 {
        return Vec::new();
    }
    fn rec(left: u32, slots: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = min;
        while k * slots <= left {
            cur.push(k);
            rec(left - k, slots - 1, k, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut seqs = Vec::new();
    rec(total as u32, r, 0, &mut Vec::new(), &mut seqs);
    seqs.into_iter()
        .map(|ks| CurrentMonomial {
            node,
            coeff: multinomial(&ks),
            ks,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, relation: String, passed: bool) {
        self.checks.push(RelationCheck { relation, passed });
    }
}

/// `(F_i(z)^r)_s v`.
pub fn apply_current_power(
    m: &GradedModule,
    node: usize,
    r: u32,
    s: i64,
    v: &SparseVec,
) -> SparseVec {
    let terms = current_power_coefficient(node, r, s);
    collect_sparse(terms.iter().flat_map(|t| {
        let c = q(t.coeff as i64);
        m.apply_word(&t.word(), v)
            .into_iter()
            .map(move |(j, x)| (j, x * &c))
    }))
}

/// Checks on the cyclic vector: `n₊[t]v = 0`, `h ⊗ t^k` eigenvalues, and
/// `(F_i(z)^r)_s v = 0` for `s < −Σ_{k∈S_i} min(r, ℓ_k)` down to one band
/// past the top degree.
pub fn check_theorem_relations(m: &GradedModule, spec: &KrSpec) -> RelationReport {
    let mut report = RelationReport::default();
    let v = m.generator();
    let lambda = spec.lambda(m.rank);
    let top = m.max_degree() as i64;
    for i in 0..m.rank {
        for k in 0..m.k_max.max(1) {
            report.push(
                format!("e{}[{k}] v = 0", i + 1),
                m.apply(Generator::e(i, k), &v).is_empty(),
            );
            let want: SparseVec = if k == 0 && lambda.0[i] != 0 {
                vec![(m.generator_vector, q(lambda.0[i]))]
            } else {
                Vec::new()
            };
            report.push(
                format!(
                    "h{}[{k}] v = {} v",
                    i + 1,
                    if k == 0 { lambda.0[i] } else { 0 }
                ),
                m.apply(Generator::h(i, k), &v) == want,
            );
        }
    }
    for i in 0..m.rank {
        let max_r = lambda.0[i].max(0) as u32 + 1;
        for r in 1..=max_r {
            let bound = -(spec.min_sum(i, r) as i64);
            let lowest = -(r as i64) - top - 1;
            let mut s = bound - 1;
            while s >= lowest {
                let zero = apply_current_power(m, i, r, s, &v).is_empty();
                report.push(format!("(F{}^{r})_{s} v = 0", i + 1), zero);
                s -= 1;
            }
        }
    }
    report
}
