use std::collections::BTreeMap;

use super::element::{pair, RationalElement, VarLayout};
use super::factored::FactoredRational;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::liealg::{CartanData, RootVector};
use crate::linalg::{q, Q};

/// A signed combination of words in the letters `(i, k)`.
pub type WordSum = Vec<(Q, Vec<(usize, i64)>)>;

/// `[s_h, [s_{h−1}, …, [s_2, s_1]…]]` expanded into words.
pub fn nested_commutator_words(seq: &[(usize, i64)]) -> WordSum {
    let Some((&first, rest)) = seq.split_first() else {
        return vec![(q(1), Vec::new())];
    };
    let mut cur: WordSum = vec![(q(1), vec![first])];
    for &s in rest {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (c, w) in &cur {
            let mut left = vec![s];
            left.extend(w.iter().copied());
            next.push((c.clone(), left));
            let mut right = w.clone();
            right.push(s);
            next.push((-c.clone(), right));
        }
        cur = next;
    }
    cur
}

/// `Σ c ⟨w, g⟩` over a word sum.
pub fn pair_sum(words: &WordSum, g: &RationalElement) -> Result<RationalElement> {
    let mut acc: Option<RationalElement> = None;
    for (c, w) in words {
        let r = pair(w, g)?.scale(c);
        acc = Some(match acc {
            None => r,
            Some(a) => a.add(&r),
        });
    }
    acc.ok_or_else(|| Error::Invalid("empty word sum".into()))
}

/// The nested commutator `[R_{i_h,k_h}, […, [R_{i_2,k_2}, R_{i_1,k_1}]…]] g`,
/// by expanding the commutators into words.
pub fn nested_commutator_pairing(
    seq: &[(usize, i64)],
    g: &RationalElement,
) -> Result<RationalElement> {
    pair_sum(&nested_commutator_words(seq), g)
}

/// Variables of `g` consumed by `seq`, in order, and the remaining ones.
fn sequence_vars(
    seq: &[(usize, i64)],
    g: &RationalElement,
) -> Result<(Vec<usize>, Vec<usize>, RootVector)> {
    let lay = g.layout();
    let mut used = vec![0usize; lay.counts.len()];
    let mut vars = Vec::with_capacity(seq.len());
    for &(i, _) in seq {
        if i >= used.len() || used[i] >= lay.counts[i] {
            return Err(Error::OverweightWord);
        }
        vars.push(lay.var(i, used[i]));
        used[i] += 1;
    }
    let rest: Vec<usize> = (0..lay.counts.len())
        .flat_map(|i| lay.vars_of(i).skip(used[i]))
        .collect();
    let gamma = RootVector(
        g.gamma
            .0
            .iter()
            .zip(&used)
            .map(|(&m, &u)| m - u as u32)
            .collect(),
    );
    Ok((vars, rest, gamma))
}

/// Converts `F` on the remaining variables back to `N / Δ_{γ′}`.
fn to_element(f: &FactoredRational, rest: &[usize], gamma: RootVector) -> Result<RationalElement> {
    if f.is_zero() {
        return Ok(RationalElement::zero(gamma));
    }
    let index: BTreeMap<usize, usize> = rest.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut num = f.numerator.drop_vars(rest);
    let mut den: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (&(a, b), &e) in &f.denominator {
        let (Some(&a2), Some(&b2)) = (index.get(&a), index.get(&b)) else {
            return Err(Error::DivisionFailure(format!(
                "factor (x{a} − x{b}) on a consumed variable"
            )));
        };
        den.insert((a2, b2), e);
    }
    let lay = VarLayout::new(&gamma);
    for (a, b) in lay.delta_pairs() {
        match den.remove(&(a, b)).unwrap_or(0) {
            0 => num = num.mul(&LaurentPoly::difference(lay.nvars(), a, b)),
            1 => {}
            e => return Err(Error::DivisionFailure(format!("factor (x{a} − x{b})^{e}"))),
        }
    }
    if let Some(((a, b), _)) = den.into_iter().next() {
        return Err(Error::DivisionFailure(format!(
            "unexpected factor (x{a} − x{b})"
        )));
    }
    RationalElement::new(gamma, num)
}

/// `Res_{x_h} { Π_{r≥2} (x_r − x_{r−1}) g |_{x_1=⋯=x_h} · x_h^{Σk} }`.
pub fn iterated_residue_simplified(
    g: &RationalElement,
    seq: &[(usize, i64)],
) -> Result<RationalElement> {
    let (vars, rest, gamma) = sequence_vars(seq, g)?;
    if vars.is_empty() {
        return Ok(g.clone());
    }
    let n = g.layout().nvars();
    let mut f = FactoredRational::from_element(g, &(0..n).collect::<Vec<_>>(), n);
    for w in vars.windows(2) {
        f.mul_difference(w[1], w[0]);
    }
    for w in vars.windows(2) {
        f = f.restrict(w[0], w[1])?;
    }
    let last = *vars.last().unwrap();
    f.mul_var_power(last, seq.iter().map(|s| s.1).sum::<i64>() as i32);
    to_element(&f.residue_at_zero_expanded(last), &rest, gamma)
}

/// The functions `x_r^{k_r} Res_{x_{r−1}=x_r}(⋯ Res_{x_1=x_2}(x_1^{k_1} g)⋯)`
/// for `r = 1, …, h`, stopping early at a pole of order ≥ 2.
fn residue_chain(
    g: &RationalElement,
    seq: &[(usize, i64)],
) -> Result<(Vec<FactoredRational>, Vec<usize>)> {
    let (vars, _, _) = sequence_vars(seq, g)?;
    let n = g.layout().nvars();
    let mut f = FactoredRational::from_element(g, &(0..n).collect::<Vec<_>>(), n);
    let mut chain = Vec::with_capacity(vars.len());
    for r in 0..vars.len() {
        if r > 0 {
            match f.residue_at(vars[r - 1], vars[r]) {
                Ok(next) => f = next,
                Err(_) => break,
            }
        }
        f.mul_var_power(vars[r], seq[r].1 as i32);
        chain.push(f.clone());
    }
    Ok((chain, vars))
}

/// Whether each `g_r` has at most a simple pole at `x_r = x_{r+1}`.
pub fn check_simple_pole(g: &RationalElement, seq: &[(usize, i64)]) -> Result<bool> {
    let (chain, vars) = residue_chain(g, seq)?;
    if chain.len() < vars.len() {
        return Ok(false);
    }
    Ok(chain
        .iter()
        .enumerate()
        .take(vars.len().saturating_sub(1))
        .all(|(r, f)| f.pole_order(vars[r], vars[r + 1]).is_none_or(|o| o <= 1)))
}

/// `(−1)^{h−1} Res_{x_h}(x_h^{k_h} Res_{x_{h−1}=x_h}(⋯ Res_{x_1=x_2}(x_1^{k_1} g)⋯))`.
pub fn iterated_residue_chain(
    g: &RationalElement,
    seq: &[(usize, i64)],
) -> Result<RationalElement> {
    let (vars, rest, gamma) = sequence_vars(seq, g)?;
    if vars.is_empty() {
        return Ok(g.clone());
    }
    let (chain, _) = residue_chain(g, seq)?;
    if chain.len() < vars.len() {
        return Err(Error::Invalid(
            "pole of order ≥ 2 in the residue chain".into(),
        ));
    }
    let last = chain
        .last()
        .unwrap()
        .residue_at_zero_expanded(*vars.last().unwrap());
    let sign = if vars.len() % 2 == 1 { q(1) } else { q(-1) };
    to_element(&last.scale(&sign), &rest, gamma)
}

/// A choice of simple roots `i_1, …, i_h` whose partial sums are all roots,
/// with `f_β = c · [f_{i_h}, […, [f_{i_2}, f_{i_1}]…]]`; returns the sequence and `c`.
pub fn root_vector_sequence(cartan: &CartanData, beta: &RootVector) -> Result<(Vec<usize>, Q)> {
    cartan
        .positive_root_index(beta)
        .ok_or_else(|| Error::NotPositiveRoot(beta.0.clone()))?;
    let rank = cartan.rank();
    if beta.height() == 1 {
        return Ok((vec![beta.0.iter().position(|&x| x == 1).unwrap()], q(1)));
    }
    for i in 0..rank {
        let simple = RootVector::simple(rank, i);
        let Some(prev) = beta.checked_sub(&simple) else {
            continue;
        };
        let Some(pidx) = cartan.positive_root_index(&prev) else {
            continue;
        };
        let sidx = cartan.positive_root_index(&simple).unwrap();
        let n = cartan.n_minus(sidx, pidx);
        if n == 0 {
            continue;
        }
        let (mut seq, c) = root_vector_sequence(cartan, &prev)?;
        seq.push(i);
        // [f_i, f_prev] = n f_β and f_prev = c · nested
        return Ok((seq, c / q(n)));
    }
    Err(Error::NotPositiveRoot(beta.0.clone()))
}

/// `f_β ⊗ t^k` as a word sum in simple currents, with the degree placed on the first letter.
pub fn root_vector_words(cartan: &CartanData, beta: &RootVector, k: i64) -> Result<WordSum> {
    let (nodes, c) = root_vector_sequence(cartan, beta)?;
    let seq: Vec<(usize, i64)> = nodes
        .iter()
        .enumerate()
        .map(|(r, &i)| (i, if r == 0 { k } else { 0 }))
        .collect();
    Ok(nested_commutator_words(&seq)
        .into_iter()
        .map(|(d, w)| (d * &c, w))
        .collect())
}

/// Concatenation product of word sums.
pub fn word_product(x: &WordSum, y: &WordSum) -> WordSum {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (a, u) in x {
        for (b, v) in y {
            let mut w = u.clone();
            w.extend(v.iter().copied());
            out.push((a * b, w));
        }
    }
    out
}
