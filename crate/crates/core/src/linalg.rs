//! Sparse exact linear algebra.
//!
//! Vectors are sorted `(index, value)` lists without explicit zeros. Two
//! eliminators are provided: a rational one with unit pivots (used where
//! coordinates must be recovered) and a fraction-free integer one used for
//! plain rank computations on integral spanning sets.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Q = BigRational;
pub type SparseVec = Vec<(usize, Q)>;
pub type IntVec = Vec<(usize, BigInt)>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `a - c * b`, merging sorted sparse vectors.
pub fn sub_scaled(a: &[(usize, Q)], c: &Q, b: &[(usize, Q)]) -> SparseVec {
    if c.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<I: IntoIterator<Item = (usize, Q)>>(entries: I) -> SparseVec {
    let mut map: BTreeMap<usize, Q> = BTreeMap::new();
    for (k, v) in entries {
        *map.entry(k).or_insert_with(Q::zero) += v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn scale(v: &[(usize, Q)], c: &Q) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Row echelon form over the rationals with unit pivots.
///
/// Every stored row may carry a companion "tag" vector recording which
/// inserted vectors it is a combination of, so that a reduced vector can be
/// expressed in terms of the accepted insertions.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    accepted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; returns the remainder together with
    /// the tag combination that was subtracted (so `v = remainder + Σ tags`).
    pub fn reduce_tracked(&self, v: &[(usize, Q)]) -> (SparseVec, SparseVec) {
        let mut rem: SparseVec = v.to_vec();
        let mut coords: SparseVec = Vec::new();
        let mut start = 0usize;
        loop {
            let hit = rem
                .iter()
                .enumerate()
                .skip_while(|(_, (k, _))| *k < start)
                .find(|(_, (k, _))| self.rows.contains_key(k))
                .map(|(pos, (k, c))| (pos, *k, c.clone()));
            let Some((_, p, c)) = hit else { break };
            let (row, tag) = &self.rows[&p];
            rem = sub_scaled(&rem, &c, row);
            coords = sub_scaled(&coords, &(-c), tag);
            start = p + 1;
        }
        (rem, coords)
    }

    pub fn reduce(&self, v: &[(usize, Q)]) -> SparseVec {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns the tag index assigned if `v` was independent.
    pub fn insert(&mut self, v: &[(usize, Q)]) -> Option<usize> {
        let (rem, coords) = self.reduce_tracked(v);
        if rem.is_empty() {
            return None;
        }
        let tag_index = self.accepted;
        self.accepted += 1;
        // rem = v - coords, so tag(rem) = e_new - coords.
        let mut tag = scale(&coords, &q(-1));
        tag = sub_scaled(&tag, &q(-1), &[(tag_index, q(1))]);
        let lead = rem[0].1.clone();
        let inv = lead.recip();
        let p = rem[0].0;
        self.rows.insert(p, (scale(&rem, &inv), scale(&tag, &inv)));
        Some(tag_index)
    }

    /// Expresses `v` as a combination of the accepted insertions, or `None`
    /// if `v` is outside their span.
    pub fn coordinates(&self, v: &[(usize, Q)]) -> Option<SparseVec> {
        let (rem, coords) = self.reduce_tracked(v);
        rem.is_empty().then_some(coords)
    }

    /// Reduced row echelon rows (each pivot column cleared in all other rows).
    pub fn rref_rows(&self) -> Vec<(usize, SparseVec)> {
        let mut rows: Vec<(usize, SparseVec)> = self
            .rows
            .iter()
            .map(|(p, (r, _))| (*p, r.clone()))
            .collect();
        for idx in (0..rows.len()).rev() {
            let (p, pivot_row) = rows[idx].clone();
            for other in rows.iter_mut().take(idx) {
                if let Some((_, c)) = other.1.iter().find(|(k, _)| *k == p) {
                    let c = c.clone();
                    other.1 = sub_scaled(&other.1, &c, &pivot_row);
                }
            }
        }
        rows
    }
}

/// Rank of a set of rational sparse rows.
pub fn rank<'a, I: IntoIterator<Item = &'a SparseVec>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{x : row · x = 0 for every row}` in a space of `ncols` columns.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let rref = e.rref_rows();
    let pivots: BTreeMap<usize, &SparseVec> = rref.iter().map(|(p, r)| (*p, r)).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut entries = vec![(free, q(1))];
        for (p, row) in &pivots {
            if let Some((_, c)) = row.iter().find(|(k, _)| *k == free) {
                entries.push((*p, -c.clone()));
            }
        }
        out.push(collect_sparse(entries));
    }
    out
}

/// Fraction-free row echelon form over the integers.
#[derive(Debug, Clone, Default)]
pub struct IntEchelon {
    rows: BTreeMap<usize, IntVec>,
}

fn primitive(mut v: IntVec) -> IntVec {
    let mut g = BigInt::zero();
    for (_, c) in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if let Some((_, c)) = v.first() {
        if c.is_negative() {
            for (_, c) in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
    v
}

/// `a*x - b*y` for sorted integer sparse vectors.
fn int_combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> IntVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: IntVec) -> bool {
        let mut rem = primitive(v.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        let mut start = 0usize;
        loop {
            let hit = rem
                .iter()
                .skip_while(|(k, _)| *k < start)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((p, c)) = hit else { break };
            let row = &self.rows[&p];
            let lead = &row[0].1;
            let g = lead.gcd(&c);
            rem = primitive(int_combine(&(lead / &g), &rem, &(&c / &g), row));
            start = p + 1;
        }
        if rem.is_empty() {
            return false;
        }
        self.rows.insert(rem[0].0, rem);
        true
    }
}

/// Converts a rational vector with integral entries (after clearing
/// denominators) to an integer vector.
pub fn clear_denominators(v: &[(usize, Q)]) -> IntVec {
    let mut l = BigInt::one();
    for (_, c) in v {
        l = l.lcm(c.denom());
    }
    v.iter()
        .map(|(k, c)| (*k, (c * Q::from_integer(l.clone())).to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        collect_sparse(entries.iter().map(|(k, x)| (*k, q(*x))))
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(&v(&[(0, 1), (1, 2)])), Some(0));
        assert_eq!(e.insert(&v(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(&v(&[(0, 1), (1, 3), (2, 1)])), None);
        assert_eq!(e.rank(), 2);
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn coordinates_recover_combination() {
        let mut e = Echelon::new();
        let a = v(&[(0, 2), (3, 1)]);
        let b = v(&[(0, 1), (1, 1)]);
        e.insert(&a);
        e.insert(&b);
        let target = sub_scaled(&scale(&a, &q(3)), &q(-5), &b);
        let c = e.coordinates(&target).unwrap();
        assert_eq!(c, vec![(0, q(3)), (1, q(5))]);
        assert!(e.coordinates(&v(&[(2, 1)])).is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, -1)])];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                let dot: Q = r
                    .iter()
                    .map(|(k, a)| {
                        x.iter()
                            .find(|(j, _)| j == k)
                            .map(|(_, b)| a * b)
                            .unwrap_or_else(Q::zero)
                    })
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn integer_rank_matches_rational() {
        let rows = vec![
            v(&[(0, 2), (1, 4)]),
            v(&[(0, 3), (1, 6)]),
            v(&[(1, 5), (2, 7)]),
        ];
        let mut ie = IntEchelon::new();
        let mut r = 0;
        for row in &rows {
            if ie.insert(clear_denominators(row)) {
                r += 1;
            }
        }
        assert_eq!(r, 2);
        assert_eq!(rank(rows.iter()), 2);
    }
}
