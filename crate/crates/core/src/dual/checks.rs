use rand::seq::SliceRandom;
use rand::Rng;

use super::element::RationalElement;
use super::residue::{
    check_simple_pole, iterated_residue_chain, iterated_residue_simplified,
    nested_commutator_pairing, root_vector_sequence,
};
use crate::error::Result;
use crate::liealg::{CartanData, RootVector};

/// Outcome of the residue property checks on one function.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResidueChecks {
    pub serre_checked: usize,
    pub degree_shift_checked: usize,
    pub formula_checked: usize,
    pub pole_checked: usize,
    /// Nested commutators that came out nonzero.
    pub nonzero_pairings: usize,
    pub failures: Vec<String>,
}

impl ResidueChecks {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: ResidueChecks) {
        self.serre_checked += other.serre_checked;
        self.degree_shift_checked += other.degree_shift_checked;
        self.formula_checked += other.formula_checked;
        self.pole_checked += other.pole_checked;
        self.nonzero_pairings += other.nonzero_pairings;
        self.failures.extend(other.failures);
    }
}

/// A random sequence of nodes of length `h` drawn from the variables of `g`.
fn random_nodes<R: Rng>(g: &RationalElement, h: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = g
        .gamma
        .0
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize))
        .collect();
    pool.shuffle(rng);
    pool.truncate(h);
    pool
}

fn random_degrees<R: Rng>(h: usize, rng: &mut R) -> Vec<i64> {
    (0..h).map(|_| rng.gen_range(-2..=3)).collect()
}

/// Checks on `g ∈ U_γ` with randomly chosen letters: the Serre-type relation
/// and the degree-shift relation of the residue commutators, agreement of the
/// nested commutator with the diagonal-restriction formula and the residue
/// chain, and simplicity of the intermediate poles.
pub fn residue_checks<R: Rng>(
    cartan: &CartanData,
    g: &RationalElement,
    rng: &mut R,
) -> Result<ResidueChecks> {
    let mut out = ResidueChecks::default();
    let rank = cartan.rank();
    let m = &g.gamma.0;
    for i in 0..rank {
        for j in 0..rank {
            let c = cartan.c_hat(i, j) as u32;
            if i == j || m[j] == 0 || m[i] < c {
                continue;
            }
            let mut seq = vec![(j, rng.gen_range(-2..=3))];
            seq.extend(random_degrees(c as usize, rng).into_iter().map(|k| (i, k)));
            let v = nested_commutator_pairing(&seq, g)?;
            out.serre_checked += 1;
            if !v.is_zero() {
                out.failures
                    .push(format!("Serre relation {seq:?} on {g}: {v}"));
            }
        }
    }
    let total = g.gamma.height() as usize;
    if total == 0 {
        return Ok(out);
    }
    // nested commutators vanish unless every partial sum is a root
    let roots: Vec<&RootVector> = cartan
        .positive_roots
        .iter()
        .filter(|b| g.gamma.checked_sub(b).is_some())
        .collect();
    let beta = roots[rng.gen_range(0..roots.len())];
    let nodes = root_vector_sequence(cartan, beta)?.0;
    let h = nodes.len();
    let ks = random_degrees(h, rng);
    let mut ls = random_degrees(h, rng);
    let shift: i64 = ks.iter().sum::<i64>() - ls.iter().sum::<i64>();
    ls[0] += shift;
    let seq_k: Vec<(usize, i64)> = nodes.iter().copied().zip(ks).collect();
    let seq_l: Vec<(usize, i64)> = nodes.iter().copied().zip(ls).collect();
    let a = nested_commutator_pairing(&seq_k, g)?;
    let b = nested_commutator_pairing(&seq_l, g)?;
    out.degree_shift_checked += 1;
    if a != b {
        out.failures
            .push(format!("degree shift {seq_k:?} vs {seq_l:?} on {g}"));
    }
    // the full-weight sequence gives a scalar; also check a random shorter one
    let full_nodes = match cartan.positive_root_index(&g.gamma) {
        Some(_) => root_vector_sequence(cartan, &g.gamma)?.0,
        None => random_nodes(g, total, rng),
    };
    let mut full: Vec<(usize, i64)> = full_nodes
        .iter()
        .copied()
        .zip(random_degrees(total, rng))
        .collect();
    // pairings vanish unless the degrees add up to −ht(γ) − deg g
    if let Some(d) = g.degree() {
        let sum: i64 = full.iter().map(|s| s.1).sum();
        full[0].1 += -(total as i64) - d as i64 - sum;
    }
    for seq in [&seq_k, &full] {
        let a = nested_commutator_pairing(seq, g)?;
        let b = iterated_residue_simplified(g, seq)?;
        let c = iterated_residue_chain(g, seq)?;
        out.formula_checked += 1;
        if !a.is_zero() {
            out.nonzero_pairings += 1;
        }
        if a != b || a != c {
            out.failures
                .push(format!("residue formula {seq:?} on {g}: {a} / {b} / {c}"));
        }
        out.pole_checked += 1;
        if !check_simple_pole(g, seq)? {
            out.failures
                .push(format!("pole of order ≥ 2 for {seq:?} on {g}"));
        }
    }
    Ok(out)
}
