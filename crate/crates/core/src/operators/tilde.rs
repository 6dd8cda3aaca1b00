//! The preimage chain `D̃₋₁^j w` of a closed `𝔪₂` form `w`:
//!
//! ```text
//! D̃⁰w = w,   d D̃¹w = e¹∧w,   d D̃^j w = e¹∧D̃^{j−1}w + e²∧D̃^{j−2}w .
//! ```
//!
//! Each step is a linear solve. The unknowns are first restricted to
//! monomials whose head (all indices but the last) weighs no more than the
//! heads of `w`, avoiding `e¹` and avoiding monomials that end in three
//! consecutive indices; the last restriction makes the adjoint series built
//! from the chain vanish on every other basic tuple. Wider column sets are
//! tried only if the narrow system has no solution.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::AlgebraSpec;
use crate::cochain::d_scalar;
use crate::error::{Error, Result};
use crate::exterior::{monomials_of_weight, Monomial, ScalarForm};
use crate::linalg::{solve_particular, SparseMatrix, SparseVec};

use super::scalar::{apply_dminus1, omega_cocycle, w_cocycle};

fn consecutive_tail(m: &Monomial) -> bool {
    let idx = m.indices();
    let n = idx.len();
    n >= 3 && idx[n - 2] == idx[n - 3] + 1 && idx[n - 1] == idx[n - 3] + 2
}

fn max_head_weight(w: &ScalarForm) -> u32 {
    w.terms().map(|(m, _)| m.head().weight()).max().unwrap_or(0)
}

/// Monomials of degree `q`, weight `weight`, over `e², e³, …`, whose head
/// weighs at most `bound`.
fn bounded_head_columns(q: usize, weight: u32, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if q == 0 {
        return out;
    }
    for hw in 0..=bound.min(weight) {
        let allowed: Vec<u32> = (2..=hw).collect();
        for head in monomials_of_weight(q - 1, hw, &allowed) {
            let top = weight - hw;
            if head.last().map_or(top >= 2, |l| top > l) {
                out.push(head.push_top(top));
            }
        }
    }
    out.sort();
    out
}

fn full_columns(q: usize, weight: u32, allow_e1: bool) -> Vec<Monomial> {
    let first = if allow_e1 { 1 } else { 2 };
    let allowed: Vec<u32> = (first..=weight).collect();
    monomials_of_weight(q, weight, &allowed)
}

/// Solves `d ξ = rhs` over the given column monomials.
fn solve_in_columns(alg: &AlgebraSpec, columns: &[Monomial], rhs: &ScalarForm) -> Option<ScalarForm> {
    let images: Vec<ScalarForm> = columns.iter().map(|m| d_scalar(alg, &ScalarForm::from_monomial(m.clone()))).collect();
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let mut row_of = |m: &Monomial| {
        let n = rows.len();
        *rows.entry(m.clone()).or_insert(n)
    };
    let mut triplets = Vec::new();
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            triplets.push((row_of(m), col, c.clone()));
        }
    }
    let mut b = SparseVec::new();
    for (m, c) in rhs.terms() {
        b.insert(row_of(m), c.clone());
    }
    let mut mat = SparseMatrix::zeros(rows.len(), columns.len());
    for (r, c, x) in triplets {
        mat.add(r, c, &x);
    }
    let x = solve_particular(&mat, &b)?;
    Some(ScalarForm::from_terms(x.into_iter().map(|(i, c)| (columns[i].clone(), c))))
}

fn solve_step(rhs: &ScalarForm, degree: usize, weight: u32, head_bound: u32) -> Result<ScalarForm> {
    let alg = AlgebraSpec::M2;
    if rhs.is_zero() {
        return Ok(ScalarForm::zero());
    }
    let narrow: Vec<Monomial> = bounded_head_columns(degree, weight, head_bound)
        .into_iter()
        .filter(|m| !consecutive_tail(m))
        .collect();
    if let Some(x) = solve_in_columns(&alg, &narrow, rhs) {
        return Ok(x);
    }
    let wide: Vec<Monomial> = full_columns(degree, weight, false).into_iter().filter(|m| !consecutive_tail(m)).collect();
    if let Some(x) = solve_in_columns(&alg, &wide, rhs) {
        return Ok(x);
    }
    solve_in_columns(&alg, &full_columns(degree, weight, true), rhs).ok_or_else(|| {
        Error::Inconsistent(format!("no preimage of {} (degree {}, weight {weight})", short(rhs), degree + 1))
    })
}

fn short(f: &ScalarForm) -> String {
    let s = f.to_text();
    if s.len() > 100 {
        format!("{}…", &s[..s.char_indices().nth(100).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

/// Extends `chain = [D̃⁰w, …]` up to order `j`.
fn extend_chain(chain: &mut Vec<ScalarForm>, j: usize, head_bound: u32) -> Result<()> {
    let w = chain[0].clone();
    let degree = w.degree().ok_or_else(|| Error::Inhomogeneous(format!("mixed degree in {}", short(&w))))?;
    let weight = w.weight().ok_or_else(|| Error::Inhomogeneous(format!("mixed weight in {}", short(&w))))?;
    let e1 = ScalarForm::generator(1);
    let e2 = ScalarForm::generator(2);
    while chain.len() <= j {
        let k = chain.len();
        let mut rhs = e1.wedge(&chain[k - 1]);
        if k >= 2 {
            rhs += &e2.wedge(&chain[k - 2]);
        }
        let next = solve_step(&rhs, degree, weight + k as u32, head_bound)?;
        chain.push(next);
    }
    Ok(())
}

/// `[D̃⁰w, D̃¹w, …, D̃^j w]` for a closed homogeneous `𝔪₂` form `w`.
pub fn tilde_chain(w: &ScalarForm, j: usize) -> Result<Vec<ScalarForm>> {
    if !d_scalar(&AlgebraSpec::M2, w).is_zero() {
        return Err(Error::NotClosed(short(w)));
    }
    let mut chain = vec![w.clone()];
    if !w.is_zero() {
        extend_chain(&mut chain, j, max_head_weight(w))?;
    } else {
        chain.resize(j + 1, ScalarForm::zero());
    }
    Ok(chain)
}

/// `D̃₋₁^j w` for a closed homogeneous `𝔪₂` form `w` (uncached).
pub fn tilde_dminus1(w: &ScalarForm, j: usize) -> Result<ScalarForm> {
    Ok(tilde_chain(w, j)?.pop().expect("nonempty chain"))
}

type ChainMap = RwLock<HashMap<Vec<u32>, Arc<Vec<ScalarForm>>>>;

/// Chains `D̃₋₁^j w_I` (and `D₋₁^j ω_I`) keyed by `I`, shared between
/// threads. Readers never block each other; a miss computes outside the lock
/// and publishes the longer chain. Concurrent misses compute the same
/// deterministic values.
#[derive(Debug, Default)]
pub struct TildeCache {
    chains: ChainMap,
    omega_chains: ChainMap,
}

fn lookup(map: &ChainMap, tuple: &[u32]) -> Option<Arc<Vec<ScalarForm>>> {
    map.read().expect("cache lock").get(tuple).cloned()
}

fn publish(map: &ChainMap, tuple: &[u32], chain: Vec<ScalarForm>) -> Arc<Vec<ScalarForm>> {
    let chain = Arc::new(chain);
    let mut guard = map.write().expect("cache lock");
    if guard.get(tuple).map_or(true, |c| c.len() < chain.len()) {
        guard.insert(tuple.to_vec(), chain.clone());
    }
    chain
}

impl TildeCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[w_I, D̃¹w_I, …, D̃^j w_I]` (possibly longer).
    pub fn chain(&self, tuple: &[u32], j: usize) -> Result<Arc<Vec<ScalarForm>>> {
        let cached = lookup(&self.chains, tuple);
        if let Some(c) = &cached {
            if c.len() > j {
                return Ok(c.clone());
            }
        }
        let mut chain = match cached {
            Some(c) => c.as_ref().clone(),
            None => vec![w_cocycle(tuple)?],
        };
        let bound = max_head_weight(&chain[0]);
        extend_chain(&mut chain, j, bound)?;
        Ok(publish(&self.chains, tuple, chain))
    }

    /// `[ω_I, D₋₁ω_I, …, D₋₁^j ω_I]` (possibly longer).
    pub fn omega_chain(&self, tuple: &[u32], j: usize) -> Result<Arc<Vec<ScalarForm>>> {
        let cached = lookup(&self.omega_chains, tuple);
        if let Some(c) = &cached {
            if c.len() > j {
                return Ok(c.clone());
            }
        }
        let mut chain = match cached {
            Some(c) => c.as_ref().clone(),
            None => vec![omega_cocycle(tuple)?],
        };
        while chain.len() <= j {
            let next = apply_dminus1(chain.last().expect("nonempty chain"))?;
            chain.push(next);
        }
        Ok(publish(&self.omega_chains, tuple, chain))
    }

    pub fn get(&self, tuple: &[u32], j: usize) -> Result<ScalarForm> {
        Ok(self.chain(tuple, j)?[j].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::scalar::tilde_dminus1_explicit;

    #[test]
    fn chain_satisfies_its_defining_equations() {
        let cache = TildeCache::new();
        let chain = cache.chain(&[3, 4, 5], 6).unwrap();
        let m2 = AlgebraSpec::M2;
        let e1 = ScalarForm::generator(1);
        let e2 = ScalarForm::generator(2);
        assert_eq!(d_scalar(&m2, &chain[1]), e1.wedge(&chain[0]));
        for k in 2..=6 {
            assert_eq!(d_scalar(&m2, &chain[k]), e1.wedge(&chain[k - 1]) + &e2.wedge(&chain[k - 2]), "order {k}");
        }
    }

    #[test]
    fn solver_preimage_differs_from_explicit_one_by_a_cocycle() {
        let cache = TildeCache::new();
        let ours = cache.get(&[3, 4, 5], 1).unwrap();
        let explicit = tilde_dminus1_explicit(&[3, 4, 5]).unwrap();
        assert!(d_scalar(&AlgebraSpec::M2, &(ours - &explicit)).is_zero());
    }

    #[test]
    fn cache_extends_shorter_chains() {
        let cache = TildeCache::new();
        let short = cache.chain(&[3, 4, 5], 2).unwrap();
        let long = cache.chain(&[3, 4, 5], 5).unwrap();
        assert_eq!(&long[..3], &short[..3]);
        assert_eq!(tilde_chain(&w_cocycle(&[3, 4, 5]).unwrap(), 5).unwrap(), long[..6].to_vec());
    }

    #[test]
    fn non_closed_input_is_rejected() {
        assert!(matches!(tilde_dminus1(&ScalarForm::generator(5), 1), Err(Error::NotClosed(_))));
    }
}
