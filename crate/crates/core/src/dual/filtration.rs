use std::cmp::Ordering;

use super::element::{RationalElement, VarLayout};
use super::factored::FactoredRational;
use super::spaces::{delta_degree, SymmetricSpace};
use crate::error::{Error, Result};
use crate::liealg::{CartanData, NTuplePartitions, RootVector};

/// `φ_μ(g)`: a rational function in the row variables `y_{a,u}^{(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedFn {
    pub mu: NTuplePartitions,
    /// `(node, row length)` of each `y` variable, node-major in partition order.
    pub rows: Vec<(usize, u32)>,
    pub function: FactoredRational,
}

impl SpecializedFn {
    pub fn is_zero(&self) -> bool {
        self.function.is_zero()
    }

    /// Pairs of `y` variables where the order of zero or pole exceeds what
    /// the filtration lemma allows.
    pub fn zero_pole_violations(&self, cartan: &CartanData) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for p in 0..self.rows.len() {
            for r in p + 1..self.rows.len() {
                let ((i, a), (j, b)) = (self.rows[p], self.rows[r]);
                let Some(order) = self.function.pole_order(p, r) else {
                    continue;
                };
                let ok = if i == j {
                    -order >= 2 * a.min(b) as i64
                } else {
                    order
                        <= (cartan.c(j, i).unsigned_abs() as i64 * a as i64)
                            .min(cartan.c(i, j).unsigned_abs() as i64 * b as i64)
                };
                if !ok {
                    out.push((p, r));
                }
            }
        }
        out
    }

    /// Whether the function is unchanged by exchanging equal-length rows of one node.
    pub fn is_symmetric(&self) -> bool {
        let n = self.rows.len();
        (0..n).all(|p| {
            (p + 1..n)
                .filter(|&r| self.rows[r] == self.rows[p])
                .all(|r| {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.swap(p, r);
                    let mut f = FactoredRational::new(self.function.numerator.permute(&perm, n));
                    for (&(a, b), &e) in &self.function.denominator {
                        f.divide_difference(perm[a], perm[b], e);
                    }
                    f == self.function
                })
        })
    }
}

fn check_shape(gamma: &RootVector, mu: &NTuplePartitions) -> Result<()> {
    if mu.0.len() != gamma.0.len() || mu.sizes() != gamma.0 {
        return Err(Error::ShapeMismatch(format!(
            "μ = {mu} does not have sizes {gamma}"
        )));
    }
    Ok(())
}

/// The row of each `x` variable and the row list, after reordering the
/// variables of each node by `order`.
fn row_map(
    lay: &VarLayout,
    mu: &NTuplePartitions,
    order: &[usize],
) -> (Vec<usize>, Vec<(usize, u32)>) {
    let mut map = vec![0; lay.nvars()];
    let mut rows = Vec::new();
    for (i, part) in mu.0.iter().enumerate() {
        let vars: Vec<usize> = lay.vars_of(i).map(|v| order[v]).collect();
        let mut pos = 0;
        for &a in part.parts() {
            for _ in 0..a {
                map[vars[pos]] = rows.len();
                pos += 1;
            }
            rows.push((i, a));
        }
    }
    (map, rows)
}

/// `φ_μ(g)` using an explicit assignment of variables to boxes: the boxes of
/// node `i` are filled row by row with the variables `order[v]`, `v` running
/// over node `i`. `order` must permute each node's variables among themselves.
pub fn specialize_phi_with(
    g: &RationalElement,
    mu: &NTuplePartitions,
    order: &[usize],
) -> Result<SpecializedFn> {
    check_shape(&g.gamma, mu)?;
    let lay = g.layout();
    if order.len() != lay.nvars()
        || (0..lay.nvars()).any(|v| lay.node_of(order[v]) != lay.node_of(v))
    {
        return Err(Error::ShapeMismatch(
            "reindexing must preserve nodes".into(),
        ));
    }
    let (map, rows) = row_map(&lay, mu, order);
    let function = FactoredRational::from_element(g, &map, rows.len());
    Ok(SpecializedFn {
        mu: mu.clone(),
        rows,
        function,
    })
}

/// `φ_μ(g)`: `x_{a,u,v}^{(i)} ↦ y_{a,u}^{(i)}`.
pub fn specialize_phi(g: &RationalElement, mu: &NTuplePartitions) -> Result<SpecializedFn> {
    let n = g.layout().nvars();
    specialize_phi_with(g, mu, &(0..n).collect::<Vec<_>>())
}

/// `true` iff `φ_ν(g) = 0` for every `ν > μ`.
pub fn gamma_filtration_test(g: &RationalElement, mu: &NTuplePartitions) -> Result<bool> {
    check_shape(&g.gamma, mu)?;
    for nu in NTuplePartitions::all_with_sizes(&g.gamma.0) {
        if nu.lex_cmp(mu) == Ordering::Greater && !specialize_phi(g, &nu)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Γ_μ` cut out of a symmetric space on `U_γ`.
pub fn require_filtration(space: &mut SymmetricSpace, mu: &NTuplePartitions) {
    let lay = VarLayout::new(&space.gamma);
    let id: Vec<usize> = (0..lay.nvars()).collect();
    for nu in NTuplePartitions::all_with_sizes(&space.gamma.0) {
        if nu.lex_cmp(mu) != Ordering::Greater {
            continue;
        }
        let (map, rows) = row_map(&lay, &nu, &id);
        space.require_zero(|p| p.permute(&map, rows.len()));
    }
}

/// Elements of `Γ_μ ⊂ U_γ` of degree `d` with numerator exponents in `[lo, hi]`.
pub fn filtration_basis(
    cartan: &CartanData,
    mu: &NTuplePartitions,
    d: i32,
    lo: i32,
    hi: i32,
) -> Result<Vec<RationalElement>> {
    let gamma = RootVector(mu.sizes());
    let rank = gamma.0.len();
    let mut s = SymmetricSpace::on_box(
        &gamma,
        &vec![lo; rank],
        &vec![hi; rank],
        d + delta_degree(&gamma),
    );
    s.require_vanishing(cartan);
    require_filtration(&mut s, mu);
    Ok(s.solve())
}

/// `P(μ) = 2 Σ_i Σ_{(a,u)<(b,v)} min(a,b) − Σ_{i<j} Σ min(|c_ji| a, |c_ij| b)`.
pub fn compute_p(cartan: &CartanData, mu: &NTuplePartitions) -> Result<i64> {
    if mu.0.len() != cartan.rank() {
        return Err(Error::ShapeMismatch(format!(
            "μ has {} partitions for rank {}",
            mu.0.len(),
            cartan.rank()
        )));
    }
    if mu.total() == 0 {
        return Err(Error::EmptyTuple);
    }
    let mut p = 0i64;
    for part in &mu.0 {
        let rows = part.parts();
        for u in 0..rows.len() {
            for v in u + 1..rows.len() {
                p += 2 * rows[u].min(rows[v]) as i64;
            }
        }
    }
    for i in 0..mu.0.len() {
        for j in i + 1..mu.0.len() {
            let (cji, cij) = (
                cartan.c(j, i).unsigned_abs() as i64,
                cartan.c(i, j).unsigned_abs() as i64,
            );
            for &a in mu.0[i].parts() {
                for &b in mu.0[j].parts() {
                    p -= (cji * a as i64).min(cij * b as i64);
                }
            }
        }
    }
    Ok(p)
}
