use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::linalg::{q, Q};

/// Generalized binomial coefficient `C(e, n)` for any integer `e`.
pub fn binom_signed(e: i64, n: u32) -> Q {
    let mut acc = q(1);
    for j in 0..n as i64 {
        acc = acc * q(e - j) / q(j + 1);
    }
    acc
}

/// A Laurent polynomial in `nvars` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, q(1))
    }

    pub fn monomial(exps: Vec<i32>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `x_a − x_b`.
    pub fn difference(nvars: usize, a: usize, b: usize) -> Self {
        let mut p = Self::zero(nvars);
        let mut ea = vec![0; nvars];
        ea[a] = 1;
        let mut eb = vec![0; nvars];
        eb[b] = 1;
        p.add_term(ea, q(1));
        p.add_term(eb, q(-1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Variables permuted: variable `v` of `self` becomes variable `perm[v]`.
    pub fn permute(&self, perm: &[usize], nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (v, &x) in e.iter().enumerate() {
                f[perm[v]] += x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitute `x_from := x_to`; variable `from` stays with exponent 0.
    pub fn merge(&self, from: usize, to: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[to] += f[from];
            f[from] = 0;
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn min_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub fn max_exp(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degrees(&self) -> std::collections::BTreeSet<i32> {
        self.terms.keys().map(|e| e.iter().sum()).collect()
    }

    /// Coefficients of `t^0, …, t^order` after substituting `x_a := x_b + t`.
    pub fn shift_expansion(&self, a: usize, b: usize, order: u32) -> Vec<LaurentPoly> {
        let mut out = vec![Self::zero(self.nvars); order as usize + 1];
        for (e, c) in &self.terms {
            let ea = e[a] as i64;
            for n in 0..=order {
                let bc = binom_signed(ea, n);
                if bc.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[a] = 0;
                f[b] += e[a] - n as i32;
                out[n as usize].add_term(f, c * bc);
            }
        }
        out
    }

    /// Order of vanishing along `x_a = x_b`, with the leading coefficient
    /// (a function with `x_a` eliminated). `None` for the zero polynomial.
    pub fn diagonal_order(&self, a: usize, b: usize) -> Option<(u32, LaurentPoly)> {
        let (lo, hi) = (self.min_exp(a)?, self.max_exp(a)?);
        let span = (hi - lo) as u32;
        let exps = self.shift_expansion(a, b, span);
        exps.into_iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(n, p)| (n as u32, p))
    }

    /// `p(x) ↦ p` with the listed variables removed (all exponents there must be 0).
    pub fn drop_vars(&self, keep: &[usize]) -> Self {
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            out.add_term(keep.iter().map(|&v| e[v]).collect(), c.clone());
        }
        out
    }

    /// Coefficient of `x_var^e`, as a polynomial with `x_var` exponent 0.
    pub fn coefficient_of(&self, var: usize, e: i32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (f, c) in &self.terms {
            if f[var] == e {
                let mut g = f.clone();
                g[var] = 0;
                out.add_term(g, c.clone());
            }
        }
        out
    }

    /// Terms whose exponent of `x_var` is at most `max`.
    pub fn truncate_above(&self, var: usize, max: i32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The constant when no variables remain (or all exponents vanish).
    pub fn constant_term(&self) -> Q {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mon: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(v, &x)| {
                        if x == 1 {
                            format!("x{v}")
                        } else {
                            format!("x{v}^{x}")
                        }
                    })
                    .collect();
                if mon.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mon.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
