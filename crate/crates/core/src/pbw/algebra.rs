use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::liealg::{CartanData, RootVector};

/// `f_α ⊗ t^k`, with `root` an index into the positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub root: u16,
    pub k: u16,
}

/// A PBW monomial of `U(n₋[t])`: letters in non-decreasing (root, k) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PbwMonomial(pub Vec<Letter>);

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|l| l.k as u32).sum()
    }

    /// `γ` such that the monomial has weight `−γ`.
    pub fn gamma(&self, cartan: &CartanData) -> RootVector {
        let mut g = RootVector::zero(cartan.rank());
        for l in &self.0 {
            g = &g + &cartan.positive_roots[l.root as usize];
        }
        g
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Factors `(root, k, exponent)` in order.
    pub fn factors(&self) -> Vec<(u16, u16, u32)> {
        let mut out: Vec<(u16, u16, u32)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some(last) if last.0 == l.root && last.1 == l.k => last.2 += 1,
                _ => out.push((l.root, l.k, 1)),
            }
        }
        out
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|(r, k, e)| {
                if *e == 1 {
                    format!("f[{r},{k}]")
                } else {
                    format!("f[{r},{k}]^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A linear combination of PBW monomials with integer coefficients.
pub type PbwElement = BTreeMap<PbwMonomial, i64>;

fn add_into(acc: &mut PbwElement, m: PbwMonomial, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            let v = e.get().checked_add(c).expect("coefficient overflow");
            if v == 0 {
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

type Straightened = Vec<(Vec<Letter>, i64)>;

/// Multiplication in `U(n₋[t])` on the PBW basis, by straightening.
pub struct PbwAlgebra<'a> {
    cartan: &'a CartanData,
    brackets: Vec<Vec<Option<(u16, i64)>>>,
    memo: HashMap<(Letter, Vec<Letter>), Straightened>,
}

impl<'a> PbwAlgebra<'a> {
    pub fn new(cartan: &'a CartanData) -> Self {
        let n = cartan.num_positive_roots();
        let brackets = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let sum = &cartan.positive_roots[a] + &cartan.positive_roots[b];
                        let idx = cartan.positive_root_index(&sum)?;
                        let c = cartan.n_minus(a, b);
                        (c != 0).then_some((idx as u16, c))
                    })
                    .collect()
            })
            .collect();
        Self {
            cartan,
            brackets,
            memo: HashMap::new(),
        }
    }

    pub fn cartan(&self) -> &CartanData {
        self.cartan
    }

    /// Letter of the simple root current `f_i ⊗ t^k`.
    pub fn simple_letter(&self, node: usize, k: u32) -> Letter {
        let idx = self
            .cartan
            .positive_root_index(&RootVector::simple(self.cartan.rank(), node))
            .unwrap();
        Letter {
            root: idx as u16,
            k: k as u16,
        }
    }

    /// `L · M` for a sorted monomial `M`.
    fn mul_letter(&mut self, l: Letter, m: &[Letter]) -> Vec<(Vec<Letter>, i64)> {
        if m.is_empty() || l <= m[0] {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(l);
            v.extend_from_slice(m);
            return vec![(v, 1)];
        }
        let key = (l, m.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let first = m[0];
        let rest = &m[1..];
        let mut acc: HashMap<Vec<Letter>, i64> = HashMap::new();
        // L m1 = m1 L + [L, m1]; every letter produced below is ≥ m1.
        for (mon, c) in self.mul_letter(l, rest) {
            let mut v = Vec::with_capacity(mon.len() + 1);
            v.push(first);
            v.extend(mon);
            *acc.entry(v).or_insert(0) += c;
        }
        if let Some((root, n)) = self.brackets[l.root as usize][first.root as usize] {
            let br = Letter {
                root,
                k: l.k + first.k,
            };
            for (mon, c) in self.mul_letter(br, rest) {
                *acc.entry(mon).or_insert(0) += n * c;
            }
        }
        let out: Vec<(Vec<Letter>, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        self.memo.insert(key, out.clone());
        out
    }

    /// Left multiplication of an element by a word of letters (rightmost
    /// letter applied first).
    pub fn mul_word(&mut self, word: &[Letter], x: &PbwElement) -> PbwElement {
        let mut cur: PbwElement = x.clone();
        for &l in word.iter().rev() {
            let mut next = PbwElement::new();
            for (m, c) in &cur {
                for (mon, d) in self.mul_letter(l, &m.0) {
                    add_into(
                        &mut next,
                        PbwMonomial(mon),
                        c.checked_mul(d).expect("coefficient overflow"),
                    );
                }
            }
            cur = next;
        }
        cur
    }

    /// The PBW expansion of an arbitrary word.
    pub fn straighten(&mut self, word: &[Letter]) -> PbwElement {
        self.mul_word(word, &PbwElement::from([(PbwMonomial::one(), 1)]))
    }

    pub fn mul(&mut self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        let mut out = PbwElement::new();
        for (m, c) in x {
            for (mon, d) in self.mul_word(&m.0, y) {
                add_into(&mut out, mon, c * d);
            }
        }
        out
    }
}

/// All PBW monomials of weight `−γ` and degree exactly `d`, sorted.
pub fn pbw_basis_degree(cartan: &CartanData, gamma: &RootVector, d: u32) -> Vec<PbwMonomial> {
    let roots = &cartan.positive_roots;
    let letters: Vec<Letter> = (0..roots.len())
        .flat_map(|r| {
            (0..=d).map(move |k| Letter {
                root: r as u16,
                k: k as u16,
            })
        })
        .collect();
    fn rec(
        roots: &[RootVector],
        letters: &[Letter],
        pos: usize,
        gamma: RootVector,
        d: u32,
        cur: &mut Vec<Letter>,
        out: &mut Vec<PbwMonomial>,
    ) {
        if gamma.is_zero() {
            if d == 0 {
                out.push(PbwMonomial(cur.clone()));
            }
            return;
        }
        if pos == letters.len() {
            return;
        }
        let l = letters[pos];
        rec(roots, letters, pos + 1, gamma.clone(), d, cur, out);
        let mut g = gamma;
        let mut left = d;
        let mut pushed = 0;
        while let Some(next) = g.checked_sub(&roots[l.root as usize]) {
            if (l.k as u32) > left {
                break;
            }
            left -= l.k as u32;
            cur.push(l);
            pushed += 1;
            rec(roots, letters, pos + 1, next.clone(), left, cur, out);
            g = next;
        }
        cur.truncate(cur.len() - pushed);
    }
    let mut out = Vec::new();
    rec(
        roots,
        &letters,
        0,
        gamma.clone(),
        d,
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// All PBW monomials of weight `−γ` and degree at most `max_degree`, by
/// degree and then lexicographically.
pub fn pbw_basis(cartan: &CartanData, gamma: &RootVector, max_degree: u32) -> Vec<PbwMonomial> {
    (0..=max_degree)
        .flat_map(|d| pbw_basis_degree(cartan, gamma, d))
        .collect()
}
