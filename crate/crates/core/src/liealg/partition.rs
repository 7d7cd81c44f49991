use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_a`: the number of rows of length `a`.
    pub fn multiplicity(&self, a: u32) -> u32 {
        self.0.iter().filter(|&&p| p == a).count() as u32
    }

    /// Multiplicities `m_1, m_2, …, m_{max part}`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.0.first().copied().unwrap_or(0);
        (1..=max).map(|a| self.multiplicity(a)).collect()
    }

    pub fn from_multiplicities(m: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (k, &c) in m.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n((k + 1) as u32, c as usize));
        }
        Partition(parts)
    }

    pub fn partial_sums(&self) -> Vec<u32> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// `Σ_k min(r, μ_k)`.
    pub fn min_sum(&self, r: u32) -> u32 {
        self.0.iter().map(|&p| p.min(r)).sum()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// The usual lexicographic order on partitions.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominanceOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Dominance comparison of two partitions of the same size.
pub fn dominance_compare(mu: &Partition, nu: &Partition) -> Result<DominanceOrder> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!("|{mu}| != |{nu}|")));
    }
    let len = mu.len().max(nu.len());
    let pad = |p: &Partition| -> Vec<u32> {
        let mut s = p.partial_sums();
        let last = s.last().copied().unwrap_or(0);
        s.resize(len, last);
        s
    };
    let (a, b) = (pad(mu), pad(nu));
    let le = a.iter().zip(&b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(&b).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, true) => DominanceOrder::Equal,
        (true, false) => DominanceOrder::Less,
        (false, true) => DominanceOrder::Greater,
        (false, false) => DominanceOrder::Incomparable,
    })
}

/// An I-indexed tuple of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NTuplePartitions(pub Vec<Partition>);

impl NTuplePartitions {
    pub fn sizes(&self) -> Vec<u32> {
        self.0.iter().map(|p| p.size()).collect()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|p| p.size()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// All tuples whose i-th partition has size `sizes[i]`, in the
    /// lexicographic order of tuples (node 1 most significant), increasing.
    pub fn all_with_sizes(sizes: &[u32]) -> Vec<NTuplePartitions> {
        let mut out = vec![Vec::new()];
        for &s in sizes {
            let mut parts = Partition::all(s);
            parts.reverse();
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Partition>| {
                    parts.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(NTuplePartitions).collect()
    }

    /// All tuples with `rank` entries and total size between 1 and `max_total`.
    pub fn all_up_to(rank: usize, max_total: u32) -> Vec<NTuplePartitions> {
        let mut out = Vec::new();
        let mut sizes = vec![0u32; rank];
        loop {
            let t: u32 = sizes.iter().sum();
            if t >= 1 && t <= max_total {
                out.extend(Self::all_with_sizes(&sizes));
            }
            let mut k = 0;
            loop {
                if k == rank {
                    return out;
                }
                if sizes.iter().sum::<u32>() < max_total {
                    sizes[k] += 1;
                    break;
                }
                sizes[k] = 0;
                k += 1;
            }
        }
    }

    pub fn lex_cmp(&self, other: &NTuplePartitions) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.lex_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for NTuplePartitions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            dominance_compare(&p(&[2, 1]), &p(&[3])).unwrap(),
            DominanceOrder::Less
        );
        assert_eq!(
            dominance_compare(&p(&[2, 2]), &p(&[2, 2])).unwrap(),
            DominanceOrder::Equal
        );
        assert_eq!(
            dominance_compare(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap(),
            DominanceOrder::Incomparable
        );
        assert!(dominance_compare(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn multiplicities_round_trip() {
        for n in 0..7 {
            for part in Partition::all(n) {
                let m = part.multiplicities();
                let size: u32 = m.iter().enumerate().map(|(a, c)| (a as u32 + 1) * c).sum();
                assert_eq!(size, n);
                assert_eq!(Partition::from_multiplicities(&m), part);
            }
        }
    }

    #[test]
    fn tuple_enumeration_is_sorted() {
        let all = NTuplePartitions::all_with_sizes(&[2, 3]);
        assert_eq!(all.len(), 2 * 3);
        for w in all.windows(2) {
            assert_eq!(w[0].lex_cmp(&w[1]), Ordering::Less);
        }
        let upto = NTuplePartitions::all_up_to(2, 2);
        // sizes (1,0),(2,0),(0,1),(1,1),(0,2): 1+2+1+1+2
        assert_eq!(upto.len(), 7);
    }
}
