use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::liealg::{CartanData, RootVector};
use crate::linalg::{q, Q};

/// Node-major indexing of the variables `x_r^{(i)}` attached to `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarLayout {
    pub counts: Vec<usize>,
    offsets: Vec<usize>,
}

impl VarLayout {
    pub fn new(gamma: &RootVector) -> Self {
        let counts: Vec<usize> = gamma.0.iter().map(|&m| m as usize).collect();
        let mut offsets = Vec::with_capacity(counts.len());
        let mut acc = 0;
        for &m in &counts {
            offsets.push(acc);
            acc += m;
        }
        Self { counts, offsets }
    }

    pub fn nvars(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Index of `x_{r+1}^{(i)}` (0-based `r`).
    pub fn var(&self, i: usize, r: usize) -> usize {
        debug_assert!(r < self.counts[i]);
        self.offsets[i] + r
    }

    pub fn node_of(&self, v: usize) -> usize {
        (0..self.counts.len())
            .rev()
            .find(|&i| self.offsets[i] <= v && self.counts[i] > 0)
            .unwrap()
    }

    pub fn vars_of(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.counts[i]
    }

    /// Ordered pairs `(a, b)`, `a < b`, whose factors `x_a − x_b` make up `Δ_γ`.
    pub fn delta_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.counts.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for a in self.vars_of(i) {
                    for b in self.vars_of(j) {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }
}

/// `g = g′ / Δ_γ` with `g′` a Laurent polynomial in the variables of `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct RationalElement {
    pub gamma: RootVector,
    pub numerator: LaurentPoly,
}

impl RationalElement {
    pub fn new(gamma: RootVector, numerator: LaurentPoly) -> Result<Self> {
        let n = VarLayout::new(&gamma).nvars();
        if numerator.nvars() != n {
            return Err(Error::ShapeMismatch(format!(
                "numerator has {} variables, γ needs {n}",
                numerator.nvars()
            )));
        }
        Ok(Self { gamma, numerator })
    }

    pub fn zero(gamma: RootVector) -> Self {
        let n = VarLayout::new(&gamma).nvars();
        Self {
            gamma,
            numerator: LaurentPoly::zero(n),
        }
    }

    /// The constant `c` in `U_0`.
    pub fn scalar(c: Q, rank: usize) -> Self {
        Self {
            gamma: RootVector::zero(rank),
            numerator: LaurentPoly::constant(0, c),
        }
    }

    pub fn layout(&self) -> VarLayout {
        VarLayout::new(&self.gamma)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Value of an element of `U_0`.
    pub fn as_scalar(&self) -> Option<Q> {
        self.gamma.is_zero().then(|| self.numerator.constant_term())
    }

    /// Homogeneous degree of `g` (numerator degree minus `#Δ` factors), if homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let degs = self.numerator.total_degrees();
        if degs.len() != 1 {
            return None;
        }
        let p = self.layout().delta_pairs().len() as i32;
        degs.into_iter().next().map(|d| d - p)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.gamma, other.gamma);
        Self {
            gamma: self.gamma.clone(),
            numerator: self.numerator.add(&other.numerator),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            gamma: self.gamma.clone(),
            numerator: self.numerator.scale(c),
        }
    }

    /// Whether the numerator is invariant under every same-node transposition.
    pub fn is_symmetric(&self) -> bool {
        let lay = self.layout();
        let n = lay.nvars();
        (0..lay.counts.len()).all(|i| {
            lay.vars_of(i).zip(lay.vars_of(i).skip(1)).all(|(a, b)| {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(a, b);
                self.numerator.permute(&perm, n) == self.numerator
            })
        })
    }

    /// Whether `g′` vanishes at `x_1^{(i)} = ⋯ = x_{ĉ_ij}^{(i)} = x_1^{(j)}` for all `i ≠ j`.
    pub fn satisfies_vanishing(&self, cartan: &CartanData) -> bool {
        let lay = self.layout();
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
                let mut p = self.numerator.clone();
                for r in 0..c {
                    p = p.merge(lay.var(i, r), target);
                }
                if !p.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks membership in `U_γ`.
    pub fn validate(&self, cartan: &CartanData) -> Result<()> {
        if self.gamma.0.len() != cartan.rank() {
            return Err(Error::ShapeMismatch(format!(
                "γ has {} entries for rank {}",
                self.gamma.0.len(),
                cartan.rank()
            )));
        }
        if !self.is_symmetric() {
            return Err(Error::Invalid(
                "numerator is not symmetric in same-node variables".into(),
            ));
        }
        if !self.satisfies_vanishing(cartan) {
            return Err(Error::Invalid(
                "numerator violates the vanishing condition".into(),
            ));
        }
        Ok(())
    }
}

/// `Σ_{|n| = total} Π_s y_s^{−n_s−1}` over the listed variables.
fn complete_inverse(nvars: usize, ys: &[usize], total: i32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars);
    if total < 0 {
        return out;
    }
    fn rec(ys: &[usize], left: i32, exps: &mut Vec<i32>, out: &mut LaurentPoly) {
        match ys.split_first() {
            None => {
                if left == 0 {
                    out.add_term(exps.clone(), q(1));
                }
            }
            Some((&y, rest)) => {
                let base = exps[y];
                let upper = if rest.is_empty() { left } else { 0 };
                for n in upper..=left {
                    exps[y] = base - n - 1;
                    rec(rest, left - n, exps, out);
                }
                exps[y] = base;
            }
        }
    }
    if ys.is_empty() {
        if total == 0 {
            out.add_term(vec![0; nvars], q(1));
        }
        return out;
    }
    rec(ys, total, &mut vec![0; nvars], &mut out);
    out
}

/// `R_{i,k}(g) = Res_{x_1^{(i)}} (x_1^{(i)})^k g`, expanding each
/// `(x_1^{(i)} − y)^{−1}` in non-negative powers of `x_1^{(i)}/y`.
pub fn residue_r(i: usize, k: i64, g: &RationalElement) -> Result<RationalElement> {
    let lay = g.layout();
    if i >= lay.counts.len() || lay.counts[i] == 0 {
        return Err(Error::OverweightWord);
    }
    let n = lay.nvars();
    let x = lay.var(i, 0);
    let others: Vec<usize> = (0..lay.counts.len())
        .filter(|&j| j != i)
        .flat_map(|j| lay.vars_of(j))
        .collect();
    let before: usize = lay.counts[..i].iter().sum();
    let sign = if (before + others.len()).is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    };
    let mut acc = LaurentPoly::zero(n);
    let (Some(lo), Some(hi)) = (g.numerator.min_exp(x), g.numerator.max_exp(x)) else {
        let mut gamma = g.gamma.clone();
        gamma.0[i] -= 1;
        return Ok(RationalElement::zero(gamma));
    };
    for e in lo..=hi {
        let total = -1 - k - e as i64;
        if total < 0 {
            continue;
        }
        let c = g.numerator.coefficient_of(x, e);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&complete_inverse(n, &others, total as i32)));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != x).collect();
    let mut gamma = g.gamma.clone();
    gamma.0[i] -= 1;
    RationalElement::new(gamma, acc.scale(&sign).drop_vars(&keep))
}

/// `⟨f_{i_1,k_1} ⋯ f_{i_N,k_N}, g⟩ = R_{i_1,k_1} ⋯ R_{i_N,k_N} g`.
pub fn pair(word: &[(usize, i64)], g: &RationalElement) -> Result<RationalElement> {
    let mut weight = vec![0u32; g.gamma.0.len()];
    for &(i, _) in word {
        if i >= weight.len() {
            return Err(Error::OverweightWord);
        }
        weight[i] += 1;
    }
    if weight.iter().zip(&g.gamma.0).any(|(w, m)| w > m) {
        return Err(Error::OverweightWord);
    }
    let mut cur = g.clone();
    for &(i, k) in word.iter().rev() {
        if cur.is_zero() {
            let mut gamma = cur.gamma.clone();
            gamma.0[i] -= 1;
            cur = RationalElement::zero(gamma);
            continue;
        }
        cur = residue_r(i, k, &cur)?;
    }
    Ok(cur)
}

/// The scalar `⟨word, g⟩` for a word of weight exactly `γ`.
pub fn pair_scalar(word: &[(usize, i64)], g: &RationalElement) -> Result<Q> {
    let r = pair(word, g)?;
    r.as_scalar()
        .ok_or_else(|| Error::ShapeMismatch("word weight is smaller than γ".into()))
}

impl fmt::Display for RationalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / Δ{}", self.numerator, self.gamma)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    gamma: Vec<u32>,
    numerator: Vec<(Vec<i32>, String)>,
}

impl TryFrom<ElementJson> for RationalElement {
    type Error = Error;
    fn try_from(j: ElementJson) -> Result<Self> {
        let gamma = RootVector(j.gamma);
        let n = VarLayout::new(&gamma).nvars();
        let mut p = LaurentPoly::zero(n);
        for (e, c) in j.numerator {
            if e.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vector {e:?} needs {n} entries"
                )));
            }
            let c: Q = c
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rational `{c}`")))?;
            p.add_term(e, c);
        }
        RationalElement::new(gamma, p)
    }
}

impl From<RationalElement> for ElementJson {
    fn from(g: RationalElement) -> Self {
        ElementJson {
            gamma: g.gamma.0.clone(),
            numerator: g
                .numerator
                .terms()
                .map(|(e, c)| (e.clone(), c.to_string()))
                .collect(),
        }
    }
}
