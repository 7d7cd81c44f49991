use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::element::RationalElement;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// `N / Π (x_a − x_b)^{e_ab}` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRational {
    pub numerator: LaurentPoly,
    pub denominator: BTreeMap<(usize, usize), u32>,
}

fn key(a: usize, b: usize) -> ((usize, usize), bool) {
    if a < b {
        ((a, b), false)
    } else {
        ((b, a), true)
    }
}

impl FactoredRational {
    pub fn new(numerator: LaurentPoly) -> Self {
        Self {
            numerator,
            denominator: BTreeMap::new(),
        }
    }

    /// `g` with its variables sent to `map[v]` among `nvars` new variables.
    /// The map must keep different-node variables apart.
    pub fn from_element(g: &RationalElement, map: &[usize], nvars: usize) -> Self {
        let mut f = Self::new(g.numerator.permute(map, nvars));
        for (a, b) in g.layout().delta_pairs() {
            f.divide_difference(map[a], map[b], 1);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Divide by `(x_a − x_b)^e`.
    pub fn divide_difference(&mut self, a: usize, b: usize, e: u32) {
        assert_ne!(a, b);
        let (k, flip) = key(a, b);
        if flip && e % 2 == 1 {
            self.numerator = self.numerator.scale(&q(-1));
        }
        *self.denominator.entry(k).or_insert(0) += e;
    }

    /// Multiply by `x_a − x_b`.
    pub fn mul_difference(&mut self, a: usize, b: usize) {
        let (k, flip) = key(a, b);
        match self.denominator.get_mut(&k) {
            Some(e) if *e > 0 => {
                *e -= 1;
                if *e == 0 {
                    self.denominator.remove(&k);
                }
                if flip {
                    self.numerator = self.numerator.scale(&q(-1));
                }
            }
            _ => {
                let n = self.nvars();
                self.numerator = self.numerator.mul(&LaurentPoly::difference(n, a, b));
            }
        }
    }

    pub fn mul_var_power(&mut self, v: usize, e: i32) {
        let mut exps = vec![0; self.nvars()];
        exps[v] = e;
        self.numerator = self.numerator.mul_monomial(&exps);
    }

    pub fn exponent(&self, a: usize, b: usize) -> u32 {
        self.denominator.get(&key(a, b).0).copied().unwrap_or(0)
    }

    /// Order of the pole along `x_a = x_b` (negative for a zero); `None` for 0.
    pub fn pole_order(&self, a: usize, b: usize) -> Option<i64> {
        let (ord, _) = self.numerator.diagonal_order(a, b)?;
        Some(self.exponent(a, b) as i64 - ord as i64)
    }

    /// The restriction to `x_from = x_to`, which must not lie in the polar locus.
    pub fn restrict(&self, from: usize, to: usize) -> Result<Self> {
        let (k, flip) = key(from, to);
        let e = self.denominator.get(&k).copied().unwrap_or(0);
        let mut num = if e == 0 {
            self.numerator.merge(from, to)
        } else {
            let mut exps = self.numerator.shift_expansion(from, to, e);
            if exps[..e as usize].iter().any(|p| !p.is_zero()) {
                return Err(Error::Invalid(format!("pole along x{from} = x{to}")));
            }
            exps.swap_remove(e as usize)
        };
        // the stored factor is (x_to − x_from) = −t when from > to
        if flip && e % 2 == 1 {
            num = num.scale(&q(-1));
        }
        let mut out = Self::new(num);
        for (&(a, b), &f) in &self.denominator {
            if (a, b) == k {
                continue;
            }
            let (a2, b2) = (
                if a == from { to } else { a },
                if b == from { to } else { b },
            );
            out.divide_difference(a2, b2, f);
        }
        if out.numerator.is_zero() {
            out.denominator.clear();
        }
        Ok(out)
    }

    /// `Res_{x_from = x_to}`, valid when the pole there is at most simple.
    pub fn residue_at(&self, from: usize, to: usize) -> Result<Self> {
        let mut f = self.clone();
        f.mul_difference(from, to);
        f.restrict(from, to)
    }

    /// `Res_{x_v}` at 0 once no denominator factors remain.
    pub fn residue_at_zero(&self, v: usize) -> Result<Q> {
        if !self.denominator.is_empty() {
            return Err(Error::Invalid(
                "residue at 0 needs a Laurent polynomial".into(),
            ));
        }
        let c = self.numerator.coefficient_of(v, -1);
        if !c.is_constant() {
            return Err(Error::Invalid("residue is not a scalar".into()));
        }
        Ok(c.constant_term())
    }

    /// `Res_{x_v}` at 0, expanding every `(x_v − y)^{−1}` in non-negative
    /// powers of `x_v / y`. Factors not involving `x_v` are kept.
    pub fn residue_at_zero_expanded(&self, v: usize) -> Self {
        let n = self.nvars();
        let mut p = self.numerator.truncate_above(v, -1);
        let mut rest = BTreeMap::new();
        for (&(a, b), &e) in &self.denominator {
            if a != v && b != v {
                rest.insert((a, b), e);
                continue;
            }
            let (y, sign) = if a == v { (b, e % 2 == 1) } else { (a, false) };
            // (x_v − y)^{−e} = (−1)^e Σ_n C(n+e−1, e−1) x_v^n y^{−n−e}; a reversed factor cancels the sign
            let Some(lo) = p.min_exp(v) else { break };
            let top = (-1 - lo).max(0);
            let mut series = LaurentPoly::zero(n);
            for k in 0..=top {
                let mut exps = vec![0; n];
                exps[v] = k;
                exps[y] = -k - e as i32;
                let c = crate::dual::binom_signed(k as i64 + e as i64 - 1, e - 1);
                series.add_term(exps, if sign { -c } else { c });
            }
            p = p.mul(&series).truncate_above(v, -1);
        }
        let num = p.coefficient_of(v, -1);
        let denominator = if num.is_zero() { BTreeMap::new() } else { rest };
        Self {
            numerator: num,
            denominator,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new(LaurentPoly::zero(self.nvars()));
        }
        Self {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|((a, b), e)| format!("(x{a}-x{b})^{e}"))
            .collect();
        write!(f, "({}) / [{}]", self.numerator, den.join(""))
    }
}
