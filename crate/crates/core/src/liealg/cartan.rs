//! Cartan data, positive roots and Chevalley structure constants.
//!
//! Conventions: `c[i][j] = <α_i^∨, α_j>`; for B_n the last node is short, for
//! C_n the last node is long, and for G2 the first node is long. Symmetrizers
//! are the smallest positive integers with `d_i c_ij = d_j c_ji`, so
//! `(α_i, α_j) = d_i c_ij` is the (unnormalized) invariant form.
//!
//! Positive roots are ordered by height, and within one height by descending
//! lexicographic order of their simple-root coordinates (so α_1 comes first).
//!
//! Structure constants `N_{α,β}` (with `[e_α, e_β] = N_{α,β} e_{α+β}`) follow
//! the extraspecial-pair construction: `N = p + 1 > 0` on every extraspecial
//! pair, `N_{-α,-β} = -N_{α,β}`, and `[e_α, e_{-α}] = h_α`, the coroot.

use std::collections::HashMap;

use num::{BigInt, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{RootVector, Weight};
use crate::linalg::{q, Q};

pub const SUPPORTED_TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "D4", "G2"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanData {
    pub type_label: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    pub hatted_entries: Vec<Vec<i64>>,
    pub positive_roots: Vec<RootVector>,
    pub structure_constants: Vec<StructureConstant>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    n_table: HashMap<(usize, usize), i64>,
}

impl PartialEq for CartanData {
    fn eq(&self, other: &Self) -> bool {
        self.type_label == other.type_label
            && self.cartan_matrix == other.cartan_matrix
            && self.symmetrizers == other.symmetrizers
            && self.hatted_entries == other.hatted_entries
            && self.positive_roots == other.positive_roots
            && self.structure_constants == other.structure_constants
    }
}

fn cartan_matrix_for(label: &str) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let tri = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i as i64 - j as i64).abs() {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    };
    let out = match label {
        "A1" => (vec![vec![2]], vec![1]),
        "A2" => (tri(2), vec![1, 1]),
        "A3" => (tri(3), vec![1, 1, 1]),
        "B2" | "B3" => {
            let n = if label == "B2" { 2 } else { 3 };
            let mut c = tri(n);
            c[n - 1][n - 2] = -2;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (c, d)
        }
        "C2" | "C3" => {
            let n = if label == "C2" { 2 } else { 3 };
            let mut c = tri(n);
            c[n - 2][n - 1] = -2;
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (c, d)
        }
        "D4" => {
            let c = vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ];
            (c, vec![1; 4])
        }
        "G2" => (vec![vec![2, -1], vec![-3, 2]], vec![3, 1]),
        other => return Err(Error::UnsupportedType(other.to_string())),
    };
    Ok(out)
}

/// Builds the Cartan data of a supported simple Lie type.
pub fn build_cartan(type_label: &str) -> Result<CartanData> {
    let (c, d) = cartan_matrix_for(type_label)?;
    let n = c.len();
    let hatted = c
        .iter()
        .map(|row| row.iter().map(|&x| if x < 0 { 1 - x } else { 1 }).collect())
        .collect();
    let positive_roots = enumerate_positive_roots(&c);
    let mut data = CartanData {
        type_label: type_label.to_string(),
        cartan_matrix: c,
        symmetrizers: d,
        hatted_entries: hatted,
        positive_roots,
        structure_constants: Vec::new(),
        index: HashMap::new(),
        n_table: HashMap::new(),
    };
    data.rebuild_index();
    data.compute_structure_constants();
    let mut table = Vec::new();
    let roots = data.all_roots();
    for a in &roots {
        for b in &roots {
            let v = data.n_const(a, b);
            if v != 0 {
                table.push(StructureConstant {
                    alpha: a.clone(),
                    beta: b.clone(),
                    value: v,
                });
            }
        }
    }
    data.structure_constants = table;
    debug_assert_eq!(data.rank(), n);
    Ok(data)
}

fn enumerate_positive_roots(c: &[Vec<i64>]) -> Vec<RootVector> {
    let n = c.len();
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()];
    let mut all: std::collections::HashSet<Vec<i64>> = layers[0].iter().cloned().collect();
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in layers.last().unwrap() {
            for i in 0..n {
                // p: how far the α_i-string extends downward from β.
                let mut p = 0;
                let mut cur = beta.clone();
                loop {
                    cur[i] -= 1;
                    if all.contains(&cur) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| c[i][j] * beta[j]).sum();
                let qv = p - pairing;
                if qv > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        all.insert(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let mut roots: Vec<Vec<i64>> = layers.into_iter().flatten().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
        .into_iter()
        .map(|r| RootVector(r.into_iter().map(|x| x as u32).collect()))
        .collect()
}

impl CartanData {
    fn rebuild_index(&mut self) {
        self.index = self
            .positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.as_signed(), k))
            .collect();
    }

    /// Restores the lookup tables after deserialization and re-validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut data: CartanData =
            serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let fresh = build_cartan(&data.type_label)?;
        data.rebuild_index();
        data.n_table = fresh.n_table.clone();
        if data != fresh {
            return Err(Error::Invalid(
                "cached Cartan data does not match its type".into(),
            ));
        }
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("Cartan data serializes")
    }

    pub fn rank(&self) -> usize {
        self.cartan_matrix.len()
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan_matrix[i][j]
    }

    pub fn c_hat(&self, i: usize, j: usize) -> i64 {
        self.hatted_entries[i][j]
    }

    pub fn is_type_a(&self) -> bool {
        self.type_label.starts_with('A')
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn positive_root_index(&self, root: &RootVector) -> Option<usize> {
        self.root_index(&root.as_signed())
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn highest_root(&self) -> &RootVector {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// All roots, positive ones first (in the fixed order), then negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let pos: Vec<Vec<i64>> = self.positive_roots.iter().map(|r| r.as_signed()).collect();
        let neg: Vec<Vec<i64>> = pos.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        pos.into_iter().chain(neg).collect()
    }

    /// Unnormalized invariant form on root coordinates: `(α_i, α_j) = d_i c_ij`.
    pub fn form_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * b[j] * self.symmetrizers[i] * self.cartan_matrix[i][j];
            }
        }
        s
    }

    /// Invariant form normalized so that long roots have squared length 2.
    pub fn normalized_form_roots(&self, a: &[i64], b: &[i64]) -> Q {
        let dmax = *self.symmetrizers.iter().max().unwrap();
        Q::new(BigInt::from(self.form_roots(a, b)), BigInt::from(dmax))
    }

    pub fn is_long_simple(&self, i: usize) -> bool {
        self.symmetrizers[i] == *self.symmetrizers.iter().max().unwrap()
    }

    /// `<β, α_i^∨>` for β in root coordinates.
    pub fn pairing_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank())
            .map(|j| self.cartan_matrix[i][j] * beta[j])
            .sum()
    }

    /// Weight (fundamental-weight coordinates) of a root-lattice element.
    pub fn root_to_weight(&self, gamma: &[i64]) -> Weight {
        Weight(
            (0..self.rank())
                .map(|i| self.pairing_coroot(gamma, i))
                .collect(),
        )
    }

    pub fn rootvec_to_weight(&self, gamma: &RootVector) -> Weight {
        self.root_to_weight(&gamma.as_signed())
    }

    /// Root coordinates of a weight (exact rationals, via the inverse Cartan matrix).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Q> {
        let inv = self.inverse_cartan();
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| &inv[i][j] * q(w.0[j])).sum())
            .collect()
    }

    /// Inverse of the Cartan matrix: column j gives ϖ_j in root coordinates.
    pub fn inverse_cartan(&self) -> Vec<Vec<Q>> {
        let n = self.rank();
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = self.cartan_matrix[i].iter().map(|&x| q(x)).collect();
                row.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("invertible Cartan matrix");
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &f * p;
                    }
                }
            }
        }
        // The system is M^{-1} where weight = C * rootcoords; rows of C index i.
        a.into_iter().map(|row| row[n..].to_vec()).collect()
    }

    /// Whether the symmetrized matrix `(d_i c_ij)` is positive definite.
    pub fn symmetrized_positive_definite(&self) -> bool {
        let n = self.rank();
        let b: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| q(self.symmetrizers[i] * self.cartan_matrix[i][j]))
                    .collect()
            })
            .collect();
        (1..=n).all(|k| {
            determinant(&b[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>()) > q(0)
        })
    }

    fn compute_structure_constants(&mut self) {
        let roots: Vec<Vec<i64>> = self.positive_roots.iter().map(|r| r.as_signed()).collect();
        let nroots = roots.len();
        for xi_idx in 0..nroots {
            let xi = &roots[xi_idx];
            let special: Vec<(usize, usize)> = (0..xi_idx)
                .flat_map(|a| (a + 1..xi_idx).map(move |b| (a, b)))
                .filter(|&(a, b)| {
                    roots[a]
                        .iter()
                        .zip(&roots[b])
                        .map(|(x, y)| x + y)
                        .collect::<Vec<_>>()
                        == *xi
                })
                .collect();
            let Some(&(ea, eb)) = special.first() else {
                continue;
            };
            // p: largest integer with β' − pα' a root.
            let mut p = 0;
            loop {
                let cand: Vec<i64> = roots[eb]
                    .iter()
                    .zip(&roots[ea])
                    .map(|(b, a)| b - (p + 1) * a)
                    .collect();
                if self.is_root(&cand) {
                    p += 1;
                } else {
                    break;
                }
            }
            let n_extra = p + 1;
            self.n_table.insert((ea, eb), n_extra);
            self.n_table.insert((eb, ea), -n_extra);
            for &(a, b) in special.iter().skip(1) {
                let (alpha, beta) = (&roots[a], &roots[b]);
                let (alpha1, beta1) = (&roots[ea], &roots[eb]);
                let neg = |v: &Vec<i64>| -> Vec<i64> { v.iter().map(|x| -x).collect() };
                let diff = |u: &Vec<i64>, v: &Vec<i64>| -> Vec<i64> {
                    u.iter().zip(v).map(|(x, y)| x - y).collect()
                };
                let mut acc = q(0);
                let b_minus_a1 = diff(beta, alpha1);
                if self.is_root(&b_minus_a1) {
                    let t = q(self.n_const(beta, &neg(alpha1)) * self.n_const(alpha, &neg(beta1)));
                    acc += t / q(self.form_roots(&b_minus_a1, &b_minus_a1));
                }
                let a_minus_a1 = diff(alpha, alpha1);
                if self.is_root(&a_minus_a1) {
                    let t = q(self.n_const(&neg(alpha1), alpha) * self.n_const(beta, &neg(beta1)));
                    acc += t / q(self.form_roots(&a_minus_a1, &a_minus_a1));
                }
                let val = acc * q(self.form_roots(xi, xi)) / q(n_extra);
                assert!(val.is_integer(), "non-integral structure constant");
                let v = val.to_integer().to_i64().unwrap();
                self.n_table.insert((a, b), v);
                self.n_table.insert((b, a), -v);
            }
        }
    }

    /// `N_{α,β}` for arbitrary roots (zero when α+β is not a root).
    pub fn n_const(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let sum: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        if sum.iter().all(|&x| x == 0) || !self.is_root(&sum) {
            return 0;
        }
        let positive = |v: &[i64]| v.iter().any(|&x| x > 0);
        let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
        match (positive(alpha), positive(beta)) {
            (true, true) => {
                let a = self.index[alpha];
                let b = self.index[beta];
                *self
                    .n_table
                    .get(&(a, b))
                    .expect("structure constant computed in height order")
            }
            (false, false) => -self.n_const(&neg(alpha), &neg(beta)),
            (false, true) => -self.n_const(beta, alpha),
            (true, false) => {
                let gamma = neg(&sum);
                let ratio_num;
                let ratio_den;
                let base;
                if positive(&sum) {
                    // γ negative: N_{α,β} = (γ,γ)/(α,α) N_{β,γ}.
                    ratio_num = self.form_roots(&gamma, &gamma);
                    ratio_den = self.form_roots(alpha, alpha);
                    base = self.n_const(beta, &gamma);
                } else {
                    // γ positive: N_{α,β} = (γ,γ)/(β,β) N_{γ,α}.
                    ratio_num = self.form_roots(&gamma, &gamma);
                    ratio_den = self.form_roots(beta, beta);
                    base = self.n_const(&gamma, alpha);
                }
                let v = q(base * ratio_num) / q(ratio_den);
                assert!(v.is_integer());
                v.to_integer().to_i64().unwrap()
            }
        }
    }

    /// Bracket constant of the negative currents: `[f_α, f_β] = c f_{α+β}`
    /// for positive roots α, β (with `f_α = e_{-α}`).
    pub fn n_minus(&self, a: usize, b: usize) -> i64 {
        let ra: Vec<i64> = self.positive_roots[a]
            .0
            .iter()
            .map(|&x| -(x as i64))
            .collect();
        let rb: Vec<i64> = self.positive_roots[b]
            .0
            .iter()
            .map(|&x| -(x as i64))
            .collect();
        self.n_const(&ra, &rb)
    }

    /// Coroot `h_α` in the basis of simple coroots.
    pub fn coroot_coeffs(&self, alpha: &[i64]) -> Vec<Q> {
        let len = self.form_roots(alpha, alpha);
        (0..self.rank())
            .map(|i| q(alpha[i] * 2 * self.symmetrizers[i]) / q(len))
            .collect()
    }

    /// Exhaustive Jacobi-identity scan over the Chevalley basis; returns the
    /// number of failing triples.
    pub fn jacobi_violations(&self) -> usize {
        let algebra = ChevalleyAlgebra::new(self);
        let dim = algebra.dim();
        let mut bad = 0;
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    if !algebra.jacobi_holds(x, y, z) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}

fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = q(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return q(0);
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            let pivot_row = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                *x = &*x - &f * p;
            }
        }
    }
    det
}

/// The Chevalley basis `{e_α : α ∈ R} ∪ {h_i}` with its bracket table.
struct ChevalleyAlgebra<'a> {
    cartan: &'a CartanData,
    roots: Vec<Vec<i64>>,
    root_pos: HashMap<Vec<i64>, usize>,
}

type Elem = Vec<Q>;

impl<'a> ChevalleyAlgebra<'a> {
    fn new(cartan: &'a CartanData) -> Self {
        let roots = cartan.all_roots();
        let root_pos = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        Self {
            cartan,
            roots,
            root_pos,
        }
    }

    fn dim(&self) -> usize {
        self.roots.len() + self.cartan.rank()
    }

    fn basis(&self, k: usize) -> Elem {
        let mut v = vec![q(0); self.dim()];
        v[k] = q(1);
        v
    }

    fn bracket_basis(&self, x: usize, y: usize) -> Elem {
        let nr = self.roots.len();
        let mut out = vec![q(0); self.dim()];
        match (x < nr, y < nr) {
            (false, false) => {}
            (false, true) => {
                let i = x - nr;
                out[y] = q(self.cartan.pairing_coroot(&self.roots[y], i));
            }
            (true, false) => {
                let i = y - nr;
                out[x] = -q(self.cartan.pairing_coroot(&self.roots[x], i));
            }
            (true, true) => {
                let a = &self.roots[x];
                let b = &self.roots[y];
                let sum: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if sum.iter().all(|&s| s == 0) {
                    // [e_α, e_{-α}] = h_α, written via simple coroots.
                    let (sign, pos) = if a.iter().any(|&c| c > 0) {
                        (1, a.clone())
                    } else {
                        (-1, b.clone())
                    };
                    for (i, c) in self.cartan.coroot_coeffs(&pos).into_iter().enumerate() {
                        out[nr + i] = c * q(sign);
                    }
                } else if let Some(&k) = self.root_pos.get(&sum) {
                    out[k] = q(self.cartan.n_const(a, b));
                }
            }
        }
        out
    }

    fn bracket(&self, u: &Elem, v: &Elem) -> Elem {
        let mut out = vec![q(0); self.dim()];
        for (x, cu) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (y, cv) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let b = self.bracket_basis(x, y);
                for (o, bb) in out.iter_mut().zip(b) {
                    if !bb.is_zero() {
                        *o += cu * cv * bb;
                    }
                }
            }
        }
        out
    }

    fn jacobi_holds(&self, x: usize, y: usize, z: usize) -> bool {
        let (bx, by, bz) = (self.basis(x), self.basis(y), self.basis(z));
        let t1 = self.bracket(&bx, &self.bracket(&by, &bz));
        let t2 = self.bracket(&by, &self.bracket(&bz, &bx));
        let t3 = self.bracket(&bz, &self.bracket(&bx, &by));
        t1.iter()
            .zip(&t2)
            .zip(&t3)
            .all(|((a, b), c)| (a + b + c).is_zero())
    }
}
