use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// An integral weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `level * ϖ_node` (node is 0-based).
    pub fn fundamental(rank: usize, node: usize, level: i64) -> Self {
        let mut w = vec![0; rank];
        w[node] = level;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of the positive root cone, in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, node: usize) -> Self {
        let mut v = vec![0; rank];
        v[node] = 1;
        RootVector(v)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn as_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    /// Componentwise `self - other`, if it stays in the cone.
    pub fn checked_sub(&self, other: &RootVector) -> Option<RootVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }

    pub fn dominates(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
