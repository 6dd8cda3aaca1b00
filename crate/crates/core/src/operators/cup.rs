//! Products of scalar cohomology classes, compared in block quotients.

use crate::algebra::AlgebraSpec;
use crate::cochain::{block_matrix, d_scalar, BlockSpec, Cochain};
use crate::error::{Error, Result};
use crate::exterior::ScalarForm;
use crate::linalg::reduce_modulo;

/// `a∧b` together with its canonical representative modulo coboundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupProduct {
    pub product: ScalarForm,
    pub normal_form: ScalarForm,
}

impl CupProduct {
    pub fn is_zero_class(&self) -> bool {
        self.normal_form.is_zero()
    }
}

/// Canonical representative of the class of a closed homogeneous form:
/// two closed forms are cohomologous iff their normal forms agree.
pub fn class_normal_form(alg: &AlgebraSpec, f: &ScalarForm) -> Result<ScalarForm> {
    if f.is_zero() {
        return Ok(ScalarForm::zero());
    }
    let (degree, weight) = match (f.degree(), f.weight()) {
        (Some(q), Some(w)) => (q, w),
        _ => return Err(Error::Inhomogeneous(f.to_text())),
    };
    if !d_scalar(alg, f).is_zero() {
        return Err(Error::NotClosed(f.to_text()));
    }
    let spec = BlockSpec::trivial(*alg, degree, i64::from(weight));
    let basis = spec.basis()?;
    let v = spec.vector_of(&basis, &Cochain::Scalar(f.clone()))?;
    let image = match degree {
        0 => Vec::new(),
        q => block_matrix(&spec.with_degree(q - 1))?.columns(),
    };
    match spec.cochain_from_vector(&basis, &reduce_modulo(&image, &v)) {
        Cochain::Scalar(g) => Ok(g),
        Cochain::Adjoint(_) => unreachable!("trivial block"),
    }
}

/// Whether two closed forms of one bidegree define the same class.
pub fn cohomologous(alg: &AlgebraSpec, a: &ScalarForm, b: &ScalarForm) -> Result<bool> {
    Ok(class_normal_form(alg, &(a.clone() - b))?.is_zero())
}

/// The cup product `[a]∧[b]`.
pub fn cup_product(alg: &AlgebraSpec, a: &ScalarForm, b: &ScalarForm) -> Result<CupProduct> {
    for f in [a, b] {
        if !d_scalar(alg, f).is_zero() {
            return Err(Error::NotClosed(f.to_text()));
        }
    }
    let product = a.wedge(b);
    let normal_form = class_normal_form(alg, &product)?;
    Ok(CupProduct { product, normal_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::scalar::omega_cocycle;

    #[test]
    fn e1_kills_and_e2_extends() {
        let m0 = AlgebraSpec::M0;
        let w34 = omega_cocycle(&[3, 4]).unwrap();
        assert!(cup_product(&m0, &ScalarForm::generator(1), &w34).unwrap().is_zero_class());
        let c = cup_product(&m0, &ScalarForm::generator(2), &w34).unwrap();
        assert!(cohomologous(&m0, &c.product, &omega_cocycle(&[2, 3, 4]).unwrap()).unwrap());
    }

    #[test]
    fn non_closed_factor_is_rejected() {
        let e3 = ScalarForm::generator(3);
        assert!(matches!(cup_product(&AlgebraSpec::M0, &e3, &e3), Err(Error::NotClosed(_))));
    }
}
