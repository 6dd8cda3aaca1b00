//! Label enumeration for every cocycle family, partition counts, and the
//! brute-force oracles the enumeration is checked against.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::algebra::AlgebraSpec;
use crate::cochain::{block_matrix, cohomology_dim, AdjointCochain, BlockSpec, Mode};
use crate::error::{Error, Result};
use crate::exterior::{monomials_of_weight, ScalarForm};
use crate::linalg::{cohomology, kernel_basis, rank_of_columns, SparseMatrix, SparseVec};
use crate::operators::adjoint::{phi_cochain, psi_cochain_cached};
use crate::operators::label::{CocycleLabel, Family};
use crate::operators::scalar::{omega_cocycle, w_cocycle};
use crate::operators::tilde::TildeCache;

/// Number of partitions of `k` into exactly `q` positive parts.
pub fn partition_count(q: u32, k: i64) -> u64 {
    static MEMO: Mutex<Option<HashMap<(u32, i64), u64>>> = Mutex::new(None);
    fn go(q: u32, k: i64, memo: &mut HashMap<(u32, i64), u64>) -> u64 {
        if q == 0 {
            return u64::from(k == 0);
        }
        if k < i64::from(q) {
            return 0;
        }
        if let Some(&v) = memo.get(&(q, k)) {
            return v;
        }
        let v = go(q - 1, k - 1, memo) + go(q, k - i64::from(q), memo);
        memo.insert((q, k), v);
        v
    }
    let mut guard = MEMO.lock().expect("partition memo");
    go(q, k, guard.get_or_insert_with(HashMap::new))
}

/// `P_q(k) − P_q(k−1)`: `dim H^q_λ(𝔪₀)` at `λ = k + q(q+1)/2`.
pub fn m0_scalar_formula(q: u32, k: i64) -> i64 {
    partition_count(q, k) as i64 - partition_count(q, k - 1) as i64
}

/// `P_q(k) − P_q(k−1) − P_q(k−2) + P_q(k−3)`: `dim H^q_λ(𝔪₂)` at
/// `λ = k + q(q+3)/2`, for `q ≥ 3`.
pub fn m2_scalar_formula(q: u32, k: i64) -> i64 {
    let p = |j: i64| partition_count(q, k - j) as i64;
    p(0) - p(1) - p(2) + p(3)
}

/// Tuples `(i₁ < … < i_{n−1}, i_{n−1}+1)` with `i₁ ≥ 2` and the given sum.
pub fn omega_tuples(n: usize, weight: u32) -> Vec<Vec<u32>> {
    adjacent_tuples(n, 1, 2, weight)
}

/// Tuples `(i₁ < … < i_{n−2}, i_{n−2}+1, i_{n−2}+2)` with `i₁ ≥ 3` and the given sum.
pub fn w_tuples(n: usize, weight: u32) -> Vec<Vec<u32>> {
    adjacent_tuples(n, 2, 3, weight)
}

fn adjacent_tuples(n: usize, tail: usize, min_first: u32, weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n < tail + 1 {
        return out;
    }
    let t = tail as u32;
    let tail_weight = |a: u32| (t + 1) * a + t * (t + 1) / 2;
    let mut a = min_first + (n - tail - 1) as u32;
    while tail_weight(a) <= weight {
        let rest = weight - tail_weight(a);
        let allowed: Vec<u32> = (min_first..a).collect();
        for head in monomials_of_weight(n - tail - 1, rest, &allowed) {
            let mut v = head.indices().to_vec();
            v.extend((0..=t).map(|k| a + k));
            out.push(v);
        }
        a += 1;
    }
    out.sort();
    out
}

fn check_scalar_algebra(alg: &AlgebraSpec) -> Result<AlgebraSpec> {
    let p = alg.parent();
    if p == AlgebraSpec::M0 || p == AlgebraSpec::M2 {
        Ok(p)
    } else {
        Err(Error::WrongAlgebra {
            expected: "m0 or m2",
            got: alg.to_string(),
        })
    }
}

/// Basis labels of `H^q_λ` with trivial coefficients.
pub fn enumerate_scalar_labels(alg: &AlgebraSpec, q: usize, weight: i64) -> Result<Vec<CocycleLabel>> {
    let parent = check_scalar_algebra(alg)?;
    if q == 0 {
        return Err(Error::OutsideDomain("scalar labels start in degree 1".into()));
    }
    if weight < 0 {
        return Ok(Vec::new());
    }
    let w = weight as u32;
    if q == 1 {
        return Ok(if w == 1 || w == 2 { vec![CocycleLabel::generator(w)] } else { Vec::new() });
    }
    if parent == AlgebraSpec::M0 {
        return omega_tuples(q, w).iter().map(|t| CocycleLabel::omega(t)).collect();
    }
    if q == 2 {
        return Ok(match w {
            5 => vec![CocycleLabel::omega(&[2, 3])?],
            7 => vec![CocycleLabel::omega(&[3, 4])?],
            _ => Vec::new(),
        });
    }
    w_tuples(q, w).iter().map(|t| CocycleLabel::w(t)).collect()
}

/// The closed form named by a scalar label.
pub fn scalar_cocycle(label: &CocycleLabel) -> Result<ScalarForm> {
    match label.family {
        Family::Generator => Ok(ScalarForm::generator(label.tuple[0])),
        Family::Omega => omega_cocycle(&label.tuple),
        Family::W => w_cocycle(&label.tuple),
        _ => Err(Error::WrongAlgebra {
            expected: "a scalar family (e, omega, w)",
            got: label.to_string(),
        }),
    }
}

/// The truncated adjoint cocycle named by a `Psi`/`Phi` label.
pub fn adjoint_cocycle(label: &CocycleLabel, cap: u32, cache: &TildeCache) -> Result<AdjointCochain> {
    match label.family {
        Family::Psi | Family::PsiSpecial => psi_cochain_cached(label, cap, cache),
        Family::Phi | Family::PhiSpecial => phi_cochain(label, cap, cache),
        _ => Err(Error::WrongAlgebra {
            expected: "an adjoint family (Psi, Phi)",
            got: label.to_string(),
        }),
    }
}

/// Which labels of `Ψ_{I,r}` are removed, following the spectral-sequence
/// argument: `d_s` (`s ≥ 2`) kills `r = s+1` when `I` starts with
/// `2, 3, …, s` and that prefix leaves a free index, as well as
/// `I = (2, …, s)` itself.
///
/// `Ψ_{(2,3),3}` is kept: the brute-force oracle finds a class there.
pub fn psi_rule_violation(tuple: &[u32], r: u32) -> Option<String> {
    if r < 2 {
        return Some("target index r must be at least 2".into());
    }
    let prefix = tuple.iter().zip(2..).take_while(|(a, b)| *a == b).count() as u32;
    let free = tuple.len() as u32 - 1;
    let s = r - 1;
    if s >= 2 && s - 1 < free && prefix >= s - 1 {
        return Some(format!("r = {r} with I starting 2..{s} (removed by d_{s})"));
    }
    if prefix as usize == tuple.len() && tuple.last() == Some(&s) {
        return Some(format!("I = (2..{s}) with r = {r} (removed by d_{s})"));
    }
    None
}

/// The exclusion clause in closed form:
/// `i_{r−2} > r−1` if `3 ≤ r ≤ q+1` or `r = q+3`, with `q` free indices.
pub fn psi_theorem_violation(tuple: &[u32], r: u32) -> Option<String> {
    if r < 2 {
        return Some("target index r must be at least 2".into());
    }
    let q = tuple.len() as u32 - 1;
    if (3 <= r && r <= q + 1) || r == q + 3 {
        let i = tuple[(r - 3) as usize];
        if i <= r - 1 {
            return Some(format!("i_{} = {i} must exceed {}", r - 2, r - 1));
        }
    }
    None
}

/// Exclusion clauses for `Φ_{I,r}`, `I = (i₁,…,i_q,i_q+1,i_q+2)`.
///
/// At `r = q+6` the equality case `i_{q+2} = r−1`, `i₁ = 3` is removed only
/// when dropping the last entry leaves an admissible tuple; otherwise nothing
/// hits the label and the oracle finds a class (`Φ_{(3,5,6,7),8}`).
pub fn phi_rule_violation(tuple: &[u32], r: u32) -> Option<String> {
    if r < 3 {
        return Some("target index r must be at least 3".into());
    }
    let q = tuple.len() as u32 - 2;
    let at = |k: u32| tuple[(k - 1) as usize];
    if r == 4 && q >= 2 && at(1) <= 3 {
        return Some("r = 4, q ≥ 2 requires i1 > 3".into());
    }
    if 5 <= r && r <= q + 3 {
        let i = at(r - 4);
        if !(i > r - 1 || (i == r - 1 && at(1) > 3)) {
            return Some(format!("r = {r} requires i_{} > {} or (i_{} = {} and i1 > 3)", r - 4, r - 1, r - 4, r - 1));
        }
    }
    if r == q + 6 {
        // i_{r-4} is the last entry here; with i1 = 3 the label is hit from
        // e_1 ⊗ w of the tuple without it, when that tuple is admissible
        let n = tuple.len();
        let source_admissible = n >= 4 && tuple[n - 4] + 3 == tuple[n - 1];
        let i = at(r - 4);
        if i < r - 1 || (i == r - 1 && at(1) == 3 && source_admissible) {
            return Some(format!("r = {r} requires i_{} ≥ {}, and i1 > 3 if equality holds with a consecutive last four", r - 4, r - 1));
        }
    }
    if r == q + 5 && at(r - 3) <= r - 1 {
        return Some(format!("r = {r} requires i_{} > {}", r - 3, r - 1));
    }
    None
}

/// Labels of one homogeneous cohomology component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub algebra: AlgebraSpec,
    pub mode: Mode,
    pub degree: usize,
    pub grade: i64,
    /// Bound on the leading module index of adjoint labels.
    pub cap: Option<u32>,
    pub labels: Vec<CocycleLabel>,
    pub dimension: usize,
    /// Whether labels continue beyond the cap (the component is infinite-dimensional).
    pub unbounded: bool,
}

/// Basis of the scalar component `H^q_λ`.
pub fn census_scalar(alg: &AlgebraSpec, q: usize, weight: i64) -> Result<CensusResult> {
    let labels = enumerate_scalar_labels(alg, q, weight)?;
    Ok(CensusResult {
        algebra: alg.parent(),
        mode: Mode::Trivial,
        degree: q,
        grade: weight,
        cap: None,
        dimension: labels.len(),
        labels,
        unbounded: false,
    })
}

/// Leading (smallest) module index of an adjoint label.
pub fn leading_index(label: &CocycleLabel) -> u32 {
    label.target.unwrap_or(0)
}

/// Basis labels of `H^q_k(𝔤, 𝔤)` with leading module index `≤ cap`.
pub fn census_adjoint(alg: &AlgebraSpec, q: usize, k: i64, cap: u32) -> Result<CensusResult> {
    let parent = check_scalar_algebra(alg)?;
    let is_m0 = parent == AlgebraSpec::M0;
    let mut labels = Vec::new();
    let mut unbounded = false;
    let in_cap = |r: i64| r >= 1 && r <= i64::from(cap);
    match q {
        0 => {}
        1 => {
            let special: Vec<(u32, i64)> = if is_m0 {
                match k {
                    0 => vec![(1, 1), (2, 2)],
                    1 => vec![(1, 2)],
                    k if k >= 2 => vec![(2, k + 2)],
                    _ => vec![],
                }
            } else {
                match k {
                    0 => vec![(1, 1)],
                    k if k >= 2 => vec![(2, k + 2)],
                    _ => vec![],
                }
            };
            for (i, r) in special {
                if in_cap(r) {
                    let l = if is_m0 { CocycleLabel::psi(&[i], r as u32)? } else { CocycleLabel::phi(&[i], r as u32)? };
                    labels.push(l);
                }
            }
        }
        2 if !is_m0 => {
            let m = k + 5;
            if (1..=3).contains(&m) || m >= 7 {
                if in_cap(m) {
                    labels.push(CocycleLabel::phi(&[2, 3], m as u32)?);
                }
            }
            let l = k + 7;
            if l >= 3 && in_cap(l) {
                labels.push(CocycleLabel::phi(&[3, 4], l as u32)?);
            }
        }
        _ => {
            unbounded = true;
            let top = i64::from(cap) - k;
            for weight in (1 - k).max(0)..=top {
                let r = (k + weight) as u32;
                let tuples = if is_m0 { omega_tuples(q, weight as u32) } else { w_tuples(q, weight as u32) };
                for t in tuples {
                    let violation = if is_m0 { psi_rule_violation(&t, r) } else { phi_rule_violation(&t, r) };
                    if violation.is_none() {
                        labels.push(if is_m0 { CocycleLabel::psi(&t, r)? } else { CocycleLabel::phi(&t, r)? });
                    }
                }
            }
        }
    }
    labels.sort_by_key(|l| (leading_index(l), l.clone()));
    Ok(CensusResult {
        algebra: parent,
        mode: Mode::Adjoint,
        degree: q,
        grade: k,
        cap: Some(cap),
        dimension: labels.len(),
        labels,
        unbounded,
    })
}

/// Brute-force cohomology dimension of one block of a finite quotient.
pub fn quotient_oracle(alg: &AlgebraSpec, mode: Mode, q: usize, grade: i64) -> Result<usize> {
    let n = alg.dimension().ok_or_else(|| Error::WrongAlgebra {
        expected: "a finite quotient m0:n or m2:n",
        got: alg.to_string(),
    })?;
    let spec = BlockSpec {
        alg: *alg,
        mode,
        degree: q,
        grade,
        cap: Some(n),
    };
    Ok(cohomology_dim(&spec)?.dimension)
}

/// Total dimension of `H^q` of a finite quotient, summed over all grades.
pub fn quotient_oracle_total(alg: &AlgebraSpec, mode: Mode, q: usize) -> Result<usize> {
    let n = i64::from(alg.dimension().ok_or_else(|| Error::WrongAlgebra {
        expected: "a finite quotient m0:n or m2:n",
        got: alg.to_string(),
    })?);
    let max_weight = n * q as i64;
    let grades: Vec<i64> = match mode {
        Mode::Trivial => (0..=max_weight).collect(),
        Mode::Adjoint => (1 - max_weight..=n).collect(),
    };
    grades.into_iter().map(|g| quotient_oracle(alg, mode, q, g)).sum()
}

/// The common value over three consecutive quotient sizes starting at `n`,
/// if it is constant there.
pub fn stable_quotient_dim(parent: &AlgebraSpec, mode: Mode, q: usize, grade: i64, n: u32) -> Result<Option<usize>> {
    let mut values = Vec::new();
    for m in n..n + 3 {
        let alg = if *parent == AlgebraSpec::M0 { AlgebraSpec::m0_quotient(m) } else { AlgebraSpec::m2_quotient(m) };
        let alg = alg.ok_or_else(|| Error::OutsideDomain(format!("quotient size {m} too small")))?;
        values.push(quotient_oracle(&alg, mode, q, grade)?);
    }
    Ok(values.windows(2).all(|w| w[0] == w[1]).then_some(values[0]))
}

/// Dimension of the image of `H(C_{≤cap+margin}) → H(C_{≤cap})` on the
/// adjoint block `(q, μ)`: the classes visible at the cap that extend to
/// cocycles `margin` indices further.
pub fn truncation_oracle(alg: &AlgebraSpec, q: usize, mu: i64, cap: u32, margin: u32) -> Result<usize> {
    let spec = BlockSpec::adjoint(*alg, q, mu, cap);
    let n = spec.basis()?.len();
    let boundaries: Vec<SparseVec> = match q {
        0 => Vec::new(),
        _ => block_matrix(&spec.with_degree(q - 1))?.columns(),
    };
    let wide = BlockSpec::adjoint(*alg, q, mu, cap + margin);
    let cycles = kernel_basis(&block_matrix(&wide)?);
    // the narrow basis is a prefix of the wide one
    let mut vectors: Vec<SparseVec> = cycles.into_iter().map(|z| z.into_iter().filter(|(i, _)| *i < n).collect()).collect();
    let b = rank_of_columns(&boundaries);
    vectors.extend(boundaries);
    Ok(rank_of_columns(&vectors) - b)
}

/// Dimension of the `E₁` term at module index `l`, degree `n`, form weight
/// `λ`: cohomology of the module-index-preserving part of the adjoint
/// differential restricted to `e_l ⊗ Λ^•_λ`.
pub fn e1_dimension(alg: &AlgebraSpec, l: u32, n: usize, weight: u32) -> Result<usize> {
    let mu = i64::from(l) - i64::from(weight);
    let diagonal = |degree: usize| -> Result<SparseMatrix> {
        let spec = BlockSpec::adjoint(*alg, degree, mu, l);
        let source = spec.basis()?;
        let target = spec.with_degree(degree + 1).basis()?;
        let cols: Vec<usize> = (0..source.len()).filter(|&i| source[i].module_index == Some(l)).collect();
        let rows: Vec<usize> = (0..target.len()).filter(|&i| target[i].module_index == Some(l)).collect();
        let full = block_matrix(&spec)?;
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        for (r, c, x) in full.entries() {
            if let (Some(&pr), Some(&pc)) = (row_pos.get(&r), col_pos.get(&c)) {
                m.add(pr, pc, x);
            }
        }
        Ok(m)
    };
    let d_out = diagonal(n)?;
    let d_in = match n {
        0 => SparseMatrix::zeros(d_out.n_cols(), 0),
        _ => diagonal(n - 1)?,
    };
    Ok(cohomology(&d_in, &d_out).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        for k in 1..20 {
            assert_eq!(partition_count(1, k), 1);
        }
        assert_eq!(partition_count(2, 4), 2);
        assert_eq!(partition_count(3, 2), 0);
        assert_eq!(partition_count(0, 0), 1);
        assert_eq!(partition_count(4, 12), 15);
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(omega_tuples(2, 5), vec![vec![2, 3]]);
        assert!(omega_tuples(3, 18).contains(&vec![5, 6, 7]));
        assert_eq!(w_tuples(3, 12), vec![vec![3, 4, 5]]);
        for t in omega_tuples(4, 30) {
            assert_eq!(t.iter().sum::<u32>(), 30);
            assert!(CocycleLabel::omega(&t).is_ok());
        }
    }

    #[test]
    fn scalar_labels() {
        let m0 = AlgebraSpec::M0;
        assert_eq!(enumerate_scalar_labels(&m0, 2, 5).unwrap(), vec![CocycleLabel::omega(&[2, 3]).unwrap()]);
        let m2 = AlgebraSpec::M2;
        assert_eq!(enumerate_scalar_labels(&m2, 3, 12).unwrap(), vec![CocycleLabel::w(&[3, 4, 5]).unwrap()]);
        assert_eq!(enumerate_scalar_labels(&m2, 2, 7).unwrap().len(), 1);
        assert!(enumerate_scalar_labels(&AlgebraSpec::L1, 1, 1).is_err());
        assert!(enumerate_scalar_labels(&m0, 0, 0).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let h = census_adjoint(&AlgebraSpec::M0, 1, 0, 30).unwrap();
        assert_eq!(h.labels.iter().map(ToString::to_string).collect::<Vec<_>>(), ["Psi[1;1]", "Psi[2;2]"]);
        let h = census_adjoint(&AlgebraSpec::M2, 2, -4, 30).unwrap();
        assert_eq!(h.labels.iter().map(ToString::to_string).collect::<Vec<_>>(), ["Phi[2,3;1]", "Phi[3,4;3]"]);
        assert_eq!(census_adjoint(&AlgebraSpec::M2, 1, 1, 30).unwrap().dimension, 0);
    }

    #[test]
    fn h3_example_removals() {
        assert!(phi_rule_violation(&[3, 4, 5], 6).is_some());
        assert!(phi_rule_violation(&[3, 4, 5], 7).is_some());
        assert!(phi_rule_violation(&[3, 4, 5], 5).is_none());
        assert!(phi_rule_violation(&[4, 5, 6], 7).is_none());
    }

    #[test]
    fn equality_case_needs_an_admissible_source() {
        assert!(phi_rule_violation(&[3, 5, 6, 7], 8).is_none());
        assert!(phi_rule_violation(&[3, 5, 6, 7, 8], 9).is_some());
        assert!(phi_rule_violation(&[3, 4, 6, 7, 8], 9).is_none());
        assert!(phi_rule_violation(&[4, 5, 6, 7, 8], 9).is_none());
    }

    #[test]
    fn proof_rules_match_theorem_clause() {
        for n in 2..=5 {
            for weight in 0..=40 {
                for t in omega_tuples(n, weight) {
                    for r in 2..=14 {
                        let proof = psi_rule_violation(&t, r).is_some();
                        let theorem = psi_theorem_violation(&t, r).is_some();
                        assert_eq!(proof, theorem, "{t:?} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_center() {
        let q = AlgebraSpec::m0_quotient(10).unwrap();
        assert_eq!(quotient_oracle_total(&q, Mode::Adjoint, 0).unwrap(), 1);
    }
}
