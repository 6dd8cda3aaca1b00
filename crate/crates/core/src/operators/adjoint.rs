//! Adjoint cocycle families `Ψ` (for `𝔪₀`) and `Φ` (for `𝔪₂`), truncated
//! at a module-index cap, and their evaluation on basis vectors.

use std::collections::BTreeMap;

use crate::census::{phi_rule_violation, psi_rule_violation};
use crate::cochain::AdjointCochain;
use crate::error::{Error, Result};
use crate::exterior::ScalarForm;
use crate::rational::{q, q_frac, Q};

use super::label::{check_adjacent_tuple, CocycleLabel, Family};
use super::scalar::{apply_dminus1, omega_cocycle};
use super::tilde::TildeCache;

fn wedge2(a: u32, b: u32) -> ScalarForm {
    ScalarForm::wedge_of(&[a, b])
}

/// `Σ_{j ≥ 0, r+j ≤ cap} e_{r+j} ⊗ D₋₁^j ω_I`, with no admissibility check.
pub fn psi_series(tuple: &[u32], r: u32, cap: u32) -> Result<AdjointCochain> {
    if r == 0 {
        return Err(Error::OutsideDomain("target index must be positive".to_string()));
    }
    let mut form = omega_cocycle(tuple)?;
    let mut x = AdjointCochain::zero();
    let mut l = r;
    while l <= cap {
        x.add_component(l, &form, &q(1));
        l += 1;
        if l <= cap {
            form = apply_dminus1(&form)?;
        }
    }
    Ok(x.with_cap(cap))
}

/// [`psi_series`] through the shared chain cache.
pub fn psi_series_cached(tuple: &[u32], r: u32, cap: u32, cache: &TildeCache) -> Result<AdjointCochain> {
    if r == 0 {
        return Err(Error::OutsideDomain("target index must be positive".to_string()));
    }
    let mut x = AdjointCochain::zero();
    if r <= cap {
        let chain = cache.omega_chain(tuple, (cap - r) as usize)?;
        for l in r..=cap {
            x.add_component(l, &chain[(l - r) as usize], &q(1));
        }
    }
    Ok(x.with_cap(cap))
}

/// `Σ_{j ≥ 0, r+j ≤ cap} e_{r+j} ⊗ D̃₋₁^j w_I`, with no admissibility check.
pub fn phi_series(tuple: &[u32], r: u32, cap: u32, cache: &TildeCache) -> Result<AdjointCochain> {
    check_adjacent_tuple(tuple, 2, 3)?;
    if r == 0 {
        return Err(Error::OutsideDomain("target index must be positive".to_string()));
    }
    let mut x = AdjointCochain::zero();
    if r <= cap {
        let chain = cache.chain(tuple, (cap - r) as usize)?;
        for l in r..=cap {
            x.add_component(l, &chain[(l - r) as usize], &q(1));
        }
    }
    Ok(x.with_cap(cap))
}

/// `Ψ_{1,1} = e₁⊗e¹ + Σ_{j≥3} (j−2) e_j⊗e^j`.
pub fn psi_11(cap: u32) -> AdjointCochain {
    let mut x = AdjointCochain::from_components([(1, ScalarForm::generator(1))]);
    for j in 3..=cap {
        x.add_component(j, &ScalarForm::generator(j), &q(i64::from(j) - 2));
    }
    x.with_cap(cap)
}

/// `Ψ_{1,2} = e₂⊗e¹`.
pub fn psi_12(cap: u32) -> AdjointCochain {
    let x = if cap >= 2 {
        AdjointCochain::from_components([(2, ScalarForm::generator(1))])
    } else {
        AdjointCochain::zero()
    };
    x.with_cap(cap)
}

/// `Σ_{j≥2} e_{l+j}⊗e^j`: `Ψ_{2,l+2}` on `𝔪₀`, `Φ_{2,l+2}` on `𝔪₂`.
pub fn shift_series(l: u32, cap: u32) -> AdjointCochain {
    AdjointCochain::from_components((2..).map(|j| (l + j, ScalarForm::generator(j))).take_while(|(k, _)| *k <= cap))
        .with_cap(cap)
}

/// The grading derivation `τ = Σ_j j e_j⊗e^j` (`= Ψ_{1,1} + 2Ψ_{2,2} = Φ_{1,1}`).
pub fn tau(cap: u32) -> AdjointCochain {
    AdjointCochain::from_components((1..=cap).map(|j| (j, ScalarForm::generator(j) * &q(i64::from(j))))).with_cap(cap)
}

/// `Σ_{i≥0} e_{m+i}⊗e²∧e^{3+i}` (`Ψ_{2,3,m}` and, for admissible `m`, `Φ_{2,3,m}`).
pub fn e23_series(m: u32, cap: u32) -> AdjointCochain {
    AdjointCochain::from_components((0..).map(|i| (m + i, wedge2(2, 3 + i))).take_while(|(k, _)| *k <= cap))
        .with_cap(cap)
}

/// `Φ_{3,4,l} = Σ_{i≥0} e_{l+i}⊗(e³∧e^{4+i} − (i+1) e²∧e^{5+i})`.
pub fn phi_34(l: u32, cap: u32) -> AdjointCochain {
    let mut x = AdjointCochain::zero();
    let mut i = 0;
    while l + i <= cap {
        let f = wedge2(3, 4 + i) - &(wedge2(2, 5 + i) * &q(i64::from(i) + 1));
        x.add_component(l + i, &f, &q(1));
        i += 1;
    }
    x.with_cap(cap)
}

/// `½ Σ_{j≥0} e_{s+j}⊗(e⁴∧e^{5+j} − (j+1)e³∧e^{6+j} + (j+2)(j+1)/2 e²∧e^{7+j})`.
fn half_tail(s: u32, cap: u32) -> AdjointCochain {
    let mut x = AdjointCochain::zero();
    let mut j = 0u32;
    while s + j <= cap {
        let jj = i64::from(j);
        let f = wedge2(4, 5 + j) - &(wedge2(3, 6 + j) * &q(jj + 1)) + &(wedge2(2, 7 + j) * &q_frac((jj + 2) * (jj + 1), 2));
        x.add_component(s + j, &f, &q_frac(1, 2));
        j += 1;
    }
    x
}

/// `Φ_{2,3,1} = e₁⊗e²∧e³ + ½ Σ_j e_{5+j}⊗(…)`.
pub fn phi_231(cap: u32) -> AdjointCochain {
    let mut x = AdjointCochain::from_components([(1, wedge2(2, 3))]);
    x.add_scaled(&half_tail(5, cap), &q(1));
    x.with_cap(cap)
}

/// `Φ_{2,3,2} = Σ_i e_{2+i}⊗e²∧e^{3+i} + ½ Σ_j e_{6+j}⊗(…)`.
pub fn phi_232(cap: u32) -> AdjointCochain {
    let mut x = e23_series(2, cap);
    x.add_scaled(&half_tail(6, cap), &q(1));
    x.with_cap(cap)
}

fn inadmissible(label: &CocycleLabel, rule: String) -> Error {
    Error::Inadmissible {
        label: label.to_string(),
        rule,
    }
}

/// `Ψ` cochain named by `label`, truncated at `cap`.
pub fn psi_cochain(label: &CocycleLabel, cap: u32) -> Result<AdjointCochain> {
    psi_cochain_cached(label, cap, &TildeCache::new())
}

/// [`psi_cochain`] reusing the `D₋₁` chains held in `cache`.
pub fn psi_cochain_cached(label: &CocycleLabel, cap: u32, cache: &TildeCache) -> Result<AdjointCochain> {
    let r = label.target.ok_or_else(|| Error::LabelParse(label.to_string()))?;
    match (label.family, label.tuple.as_slice()) {
        (Family::PsiSpecial, [1]) if r == 1 => Ok(psi_11(cap)),
        (Family::PsiSpecial, [1]) if r == 2 => Ok(psi_12(cap)),
        (Family::PsiSpecial, [2]) if r >= 2 && r != 3 => Ok(shift_series(r - 2, cap)),
        (Family::PsiSpecial, _) => Err(inadmissible(label, "not one of Psi[1;1], Psi[1;2], Psi[2;l+2] (l ≠ 1)".into())),
        (Family::Psi, tuple) => {
            if let Some(rule) = psi_rule_violation(tuple, r) {
                return Err(inadmissible(label, rule));
            }
            psi_series_cached(tuple, r, cap, cache)
        }
        _ => Err(Error::WrongAlgebra {
            expected: "m2 (Phi labels)",
            got: label.to_string(),
        }),
    }
}

/// `Φ` cochain named by `label`, truncated at `cap`.
pub fn phi_cochain(label: &CocycleLabel, cap: u32, cache: &TildeCache) -> Result<AdjointCochain> {
    let r = label.target.ok_or_else(|| Error::LabelParse(label.to_string()))?;
    match (label.family, label.tuple.as_slice()) {
        (Family::PhiSpecial, [1]) if r == 1 => Ok(tau(cap)),
        (Family::PhiSpecial, [2]) if r >= 4 => Ok(shift_series(r - 2, cap)),
        (Family::PhiSpecial, [2, 3]) => match r {
            1 => Ok(phi_231(cap)),
            2 => Ok(phi_232(cap)),
            3 => Ok(e23_series(3, cap)),
            m if m >= 7 => Ok(e23_series(m, cap)),
            _ => Err(inadmissible(label, "Phi[2,3;m] needs m ∈ {1,2,3} or m ≥ 7".into())),
        },
        (Family::PhiSpecial, [3, 4]) if r >= 3 => Ok(phi_34(r, cap)),
        (Family::PhiSpecial, _) => Err(inadmissible(label, "not a listed low-degree Phi family".into())),
        (Family::Phi, tuple) => {
            if let Some(rule) = phi_rule_violation(tuple, r) {
                return Err(inadmissible(label, rule));
            }
            phi_series(tuple, r, cap, cache)
        }
        _ => Err(Error::WrongAlgebra {
            expected: "m0 (Psi labels)",
            got: label.to_string(),
        }),
    }
}

/// `x(e_{a₁}, …, e_{a_q})` as a map module index → coefficient.
pub fn eval_cochain(x: &AdjointCochain, args: &[u32]) -> BTreeMap<u32, Q> {
    x.evaluate(args)
}
