//! The derivations `D₁`, `D₂`, the right inverse `D₋₁`, and the scalar
//! cocycles `ω_I` (for `𝔪₀`) and `w_I` (for `𝔪₂`).

use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{Monomial, ScalarForm};
use crate::rational::{q, q_frac, Q};

use super::label::check_adjacent_tuple;

fn require_no_e1(f: &ScalarForm, op: &str) -> Result<()> {
    if f.involves(1) {
        return Err(Error::OutsideDomain(format!("{op} applied to {f}")));
    }
    Ok(())
}

/// Extends `e^i ↦ image(i)` (a multiple of a single generator, or zero) to a
/// degree-zero derivation.
fn derivation<F: Fn(u32) -> Option<(i64, u32)>>(f: &ScalarForm, image: F) -> ScalarForm {
    f.map_linear(|m| {
        let idx = m.indices();
        let mut out = ScalarForm::zero();
        for (k, &i) in idx.iter().enumerate() {
            if let Some((c, j)) = image(i) {
                let mut seq = idx.to_vec();
                seq[k] = j;
                if let Some((s, mono)) = Monomial::from_unsorted(seq) {
                    out.add_term(mono, q(c * i64::from(s)));
                }
            }
        }
        out
    })
}

fn d1_unchecked(f: &ScalarForm) -> ScalarForm {
    derivation(f, |i| (i >= 3).then_some((1, i - 1)))
}

/// `D₁ = ad* e₁`: `e² ↦ 0`, `e^i ↦ e^{i−1}`.
pub fn apply_d1(f: &ScalarForm) -> Result<ScalarForm> {
    require_no_e1(f, "D_1")?;
    Ok(d1_unchecked(f))
}

/// `D₂ = ad* e₂` on `𝔪₂`: `e¹, e², e⁴ ↦ 0`, `e³ ↦ e¹`, `e^i ↦ e^{i−2}` for `i ≥ 5`.
pub fn apply_d2(f: &ScalarForm) -> ScalarForm {
    derivation(f, |i| match i {
        3 => Some((1, 1)),
        i if i >= 5 => Some((1, i - 2)),
        _ => None,
    })
}

/// `ω(ξ∧e^i) = Σ_{l≥0} (−1)^l D₁^l(ξ)∧e^{i+l}`, applied monomial by monomial
/// with `e^i` the top index.
pub fn omega(f: &ScalarForm) -> Result<ScalarForm> {
    require_no_e1(f, "omega")?;
    let mut out = ScalarForm::zero();
    for (m, c) in f.terms() {
        let top = m
            .last()
            .ok_or_else(|| Error::OutsideDomain("omega of a constant".to_string()))?;
        let mut xi = ScalarForm::from_monomial(m.head());
        let mut l = 0;
        while !xi.is_zero() {
            let sign = if l % 2 == 0 { c.clone() } else { -c.clone() };
            for (h, x) in xi.terms() {
                out.add_term(h.push_top(top + l), x * &sign);
            }
            xi = d1_unchecked(&xi);
            l += 1;
        }
    }
    Ok(out)
}

/// The right inverse of `D₁`: `D₋₁(ξ∧e^i) = Σ_{l≥0} (−1)^l D₁^l(ξ)∧e^{i+1+l}`.
pub fn apply_dminus1(f: &ScalarForm) -> Result<ScalarForm> {
    require_no_e1(f, "D_-1")?;
    let shifted = f.map_linear(|m| match m.last() {
        Some(top) => ScalarForm::from_monomial(m.head().push_top(top + 1)),
        None => ScalarForm::zero(),
    });
    if f.terms().any(|(m, _)| m.degree() == 0) {
        return Err(Error::OutsideDomain("D_-1 of a constant".to_string()));
    }
    omega(&shifted)
}

/// `ω_I` for `I = (i₁,…,i_q,i_q+1)`, `i₁ ≥ 2`.
pub fn omega_cocycle(tuple: &[u32]) -> Result<ScalarForm> {
    check_adjacent_tuple(tuple, 1, 2)?;
    omega(&ScalarForm::wedge_of(tuple))
}

/// `D₂ + D₁²` followed by dropping every monomial containing `e¹`.
fn delta(f: &ScalarForm) -> ScalarForm {
    let g = apply_d2(f) + &d1_unchecked(&d1_unchecked(f));
    g.filter(|m| !m.contains(1))
}

/// `w_I = Σ_{l≥0} 2^{−l} ω((D₂+D₁²)^l(e^{i₁}∧…∧e^{i_q})∧e^{i_q+1+l}∧e^{i_q+2+l})`
/// for `I = (i₁,…,i_q,i_q+1,i_q+2)`, `i₁ ≥ 3`, with `e¹`-terms of the
/// iterates discarded.
pub fn w_cocycle(tuple: &[u32]) -> Result<ScalarForm> {
    check_adjacent_tuple(tuple, 2, 3)?;
    let n = tuple.len();
    let a = tuple[n - 3];
    let mut xi = ScalarForm::wedge_of(&tuple[..n - 2]);
    let mut out = ScalarForm::zero();
    let mut l = 0u32;
    let mut scale = Q::one();
    while !xi.is_zero() {
        let tail = ScalarForm::wedge_of(&[a + 1 + l, a + 2 + l]);
        out.add_scaled(&omega(&xi.wedge(&tail))?, &scale);
        xi = delta(&xi);
        scale *= q_frac(1, 2);
        l += 1;
    }
    Ok(out)
}

/// The explicit first preimage
/// `D₋₁w − Σ_{s≥0} (s+1)/2^s · ω((D₁²+D₂)^s D₁(e^{i₁}∧…∧e^{i_q})∧e^{i_q+2+s}∧e^{i_q+3+s})`,
/// which satisfies `d(·) = e¹∧w_I` in `𝔪₂`.
pub fn tilde_dminus1_explicit(tuple: &[u32]) -> Result<ScalarForm> {
    let w = w_cocycle(tuple)?;
    let n = tuple.len();
    let a = tuple[n - 3];
    let mut out = apply_dminus1(&w)?;
    let mut xi = d1_unchecked(&ScalarForm::wedge_of(&tuple[..n - 2]));
    let mut s = 0u32;
    while !xi.is_zero() {
        let tail = ScalarForm::wedge_of(&[a + 2 + s, a + 3 + s]);
        let coeff = q_frac(i64::from(s) + 1, 1i64 << s);
        out.add_scaled(&omega(&xi.wedge(&tail))?, &-coeff);
        xi = delta(&xi);
        s += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::cochain::d_scalar;

    fn form(terms: &[(i64, &[u32])]) -> ScalarForm {
        ScalarForm::from_terms(terms.iter().map(|(c, v)| (Monomial::new(v.to_vec()).unwrap(), q(*c))))
    }

    #[test]
    fn d1_examples() {
        assert!(apply_d1(&ScalarForm::generator(2)).unwrap().is_zero());
        assert_eq!(apply_d1(&ScalarForm::generator(7)).unwrap(), ScalarForm::generator(6));
        assert_eq!(apply_d1(&form(&[(1, &[3, 5])])).unwrap(), form(&[(1, &[2, 5]), (1, &[3, 4])]));
        assert!(matches!(apply_d1(&form(&[(1, &[1, 5])])), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn dminus1_examples() {
        assert_eq!(apply_dminus1(&ScalarForm::generator(5)).unwrap(), ScalarForm::generator(6));
        assert_eq!(apply_dminus1(&form(&[(1, &[2, 3])])).unwrap(), form(&[(1, &[2, 4])]));
        assert_eq!(apply_dminus1(&form(&[(1, &[3, 4])])).unwrap(), form(&[(1, &[3, 5]), (-1, &[2, 6])]));
        assert!(apply_dminus1(&ScalarForm::one()).is_err());
        assert!(apply_dminus1(&ScalarForm::generator(1)).is_err());
    }

    #[test]
    fn d2_examples() {
        assert_eq!(apply_d2(&ScalarForm::generator(3)), ScalarForm::generator(1));
        assert!(apply_d2(&ScalarForm::generator(4)).is_zero());
        assert!(apply_d2(&ScalarForm::generator(2)).is_zero());
        assert_eq!(apply_d2(&ScalarForm::generator(7)), ScalarForm::generator(5));
        assert_eq!(apply_d2(&form(&[(1, &[3, 7])])), form(&[(1, &[1, 7]), (1, &[3, 5])]));
    }

    #[test]
    fn small_omegas() {
        assert_eq!(omega_cocycle(&[2, 3]).unwrap(), form(&[(1, &[2, 3])]));
        assert_eq!(omega_cocycle(&[3, 4]).unwrap(), form(&[(1, &[3, 4]), (-1, &[2, 5])]));
        assert!(omega_cocycle(&[3, 5]).is_err());
    }

    #[test]
    fn w345_and_its_first_preimage() {
        let w = w_cocycle(&[3, 4, 5]).unwrap();
        assert_eq!(w, form(&[(1, &[3, 4, 5]), (-1, &[2, 4, 6]), (1, &[2, 3, 7])]));
        let t = tilde_dminus1_explicit(&[3, 4, 5]).unwrap();
        assert_eq!(t, form(&[(1, &[3, 4, 6]), (-1, &[2, 5, 6]), (-1, &[2, 4, 7]), (2, &[2, 3, 8])]));
        let m2 = AlgebraSpec::M2;
        assert_eq!(d_scalar(&m2, &t), ScalarForm::generator(1).wedge(&w));
    }

    #[test]
    fn d1_inverts_dminus1() {
        let f = form(&[(2, &[3, 5, 9]), (-1, &[2, 4, 7])]);
        assert_eq!(apply_d1(&apply_dminus1(&f).unwrap()).unwrap(), f);
    }
}
