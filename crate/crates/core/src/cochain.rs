//! Chevalley–Eilenberg differentials with trivial and adjoint coefficients,
//! and their restriction to finite homogeneous blocks.
//!
//! Signs: `d e^k = Σ_{a<b, a+b=k} c_ab e^a∧e^b`, extended as a graded
//! derivation, and
//!
//! ```text
//! d(e_l ⊗ ω) = Σ_j c_lj e_{l+j} ⊗ e^j∧ω + e_l ⊗ dω .
//! ```
//!
//! This is the negative of the textbook differential, chosen so that on `𝔪₀`
//! `dξ = e¹∧D₁ξ` and `d e_j = −e_{j+1}⊗e¹`. The module index never decreases,
//! so the components of `dx` with index `≤ W` only see components of `x`
//! with index `≤ W`; truncating at `W` is exact.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{monomials_of_weight, Monomial, ScalarForm};
use crate::linalg::{cohomology, SparseMatrix, SparseVec};
use crate::rational::{q, signed_prefix, Q};

/// Trivial (scalar) or adjoint coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Trivial,
    Adjoint,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Trivial => "trivial",
            Mode::Adjoint => "adjoint",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trivial" | "scalar" => Ok(Mode::Trivial),
            "adjoint" => Ok(Mode::Adjoint),
            other => Err(format!("unknown coefficients {other:?} (expected trivial or adjoint)")),
        }
    }
}

/// Finite rational combination of `e_l ⊗ e^{i₁}∧…∧e^{i_q}`.
///
/// Formal series are stored truncated: every component with module index up
/// to `cap` is present, nothing above it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdjointCochain {
    terms: BTreeMap<(u32, Monomial), Q>,
    cap: Option<u32>,
}

impl AdjointCochain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_l ⊗ 1`.
    pub fn vector(l: u32) -> Self {
        let mut x = Self::zero();
        x.add_term(l, Monomial::unit(), Q::one());
        x
    }

    /// `Σ_l e_l ⊗ f_l`.
    pub fn from_components<I: IntoIterator<Item = (u32, ScalarForm)>>(components: I) -> Self {
        let mut x = Self::zero();
        for (l, f) in components {
            x.add_component(l, &f, &Q::one());
        }
        x
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = Some(cap);
        self
    }

    /// Module-index bound this cochain is complete up to, if it is a truncated series.
    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn add_term(&mut self, l: u32, m: Monomial, c: Q) {
        assert!(l > 0, "module indices start at 1");
        if c.is_zero() {
            return;
        }
        match self.terms.entry((l, m)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · e_l ⊗ f`.
    pub fn add_component(&mut self, l: u32, f: &ScalarForm, c: &Q) {
        for (m, x) in f.terms() {
            self.add_term(l, m.clone(), x * c);
        }
    }

    pub fn add_scaled(&mut self, other: &AdjointCochain, c: &Q) {
        for ((l, m), x) in &other.terms {
            self.add_term(*l, m.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in basis order: ascending module index, then lexicographic monomial.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Monomial, &Q)> {
        self.terms.iter().map(|((l, m), c)| (*l, m, c))
    }

    pub fn coefficient(&self, l: u32, m: &Monomial) -> Q {
        self.terms.get(&(l, m.clone())).cloned().unwrap_or_else(Q::zero)
    }

    /// The scalar form multiplying `e_l`.
    pub fn component(&self, l: u32) -> ScalarForm {
        ScalarForm::from_terms(
            self.terms
                .range((l, Monomial::unit())..)
                .take_while(|((k, _), _)| *k == l)
                .map(|((_, m), c)| (m.clone(), c.clone())),
        )
    }

    pub fn module_indices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|(l, _)| *l).collect();
        v.dedup();
        v
    }

    /// Drops every component with module index above `cap`.
    pub fn truncate(&self, cap: u32) -> AdjointCochain {
        AdjointCochain {
            terms: self.terms.iter().filter(|((l, _), _)| *l <= cap).map(|(k, c)| (k.clone(), c.clone())).collect(),
            cap: Some(self.cap.map_or(cap, |c| c.min(cap))),
        }
    }

    /// Common exterior degree; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        common(self.terms.keys().map(|(_, m)| m.degree()))
    }

    /// Common weight `μ = l − weight(mon)`; `None` for zero or mixed weight.
    pub fn weight(&self) -> Option<i64> {
        common(self.terms.keys().map(|(l, m)| i64::from(*l) - i64::from(m.weight())))
    }

    /// Evaluates on `(e_{a₁}, …, e_{a_q})`: the vector `Σ_l c_l e_l`.
    ///
    /// Arguments in any order; repeated arguments give zero.
    pub fn evaluate(&self, args: &[u32]) -> BTreeMap<u32, Q> {
        let mut out = BTreeMap::new();
        let Some((sign, m)) = Monomial::from_unsorted(args.to_vec()) else {
            return out;
        };
        for ((l, mon), c) in &self.terms {
            if *mon == m {
                out.insert(*l, if sign < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.render(Monomial::to_text, |l| format!("e_{l}"), " (x) ")
    }

    pub fn to_latex(&self) -> String {
        self.render(Monomial::to_latex, |l| format!("e_{{{l}}}"), "\\otimes ")
    }

    fn render(&self, mono: fn(&Monomial) -> String, vec: fn(u32) -> String, tensor: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, ((l, m), c)) in self.terms.iter().enumerate() {
            let (sep, coeff) = signed_prefix(c, k == 0);
            s.push_str(&sep);
            s.push_str(&coeff);
            s.push_str(&vec(*l));
            if m.degree() > 0 {
                s.push_str(tensor);
                s.push_str(&mono(m));
            }
        }
        s
    }
}

impl fmt::Display for AdjointCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn common<T: PartialEq, I: Iterator<Item = T>>(mut it: I) -> Option<T> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

/// A cochain of either kind, as produced by block computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cochain {
    Scalar(ScalarForm),
    Adjoint(AdjointCochain),
}

impl Cochain {
    pub fn to_text(&self) -> String {
        match self {
            Cochain::Scalar(f) => f.to_text(),
            Cochain::Adjoint(x) => x.to_text(),
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            Cochain::Scalar(f) => f.to_latex(),
            Cochain::Adjoint(x) => x.to_latex(),
        }
    }

    /// `(module index, monomial, coefficient)`; module index is `None` for scalars.
    pub fn terms(&self) -> Vec<(Option<u32>, Monomial, Q)> {
        match self {
            Cochain::Scalar(f) => f.terms().map(|(m, c)| (None, m.clone(), c.clone())).collect(),
            Cochain::Adjoint(x) => x.terms().map(|(l, m, c)| (Some(l), m.clone(), c.clone())).collect(),
        }
    }
}

fn d_monomial(alg: &AlgebraSpec, m: &Monomial) -> ScalarForm {
    let idx = m.indices();
    let mut out = ScalarForm::zero();
    for (k, &i) in idx.iter().enumerate() {
        for (a, b, c) in alg.bracket_preimages(i) {
            let mut seq = Vec::with_capacity(idx.len() + 1);
            seq.extend_from_slice(&idx[..k]);
            seq.push(a);
            seq.push(b);
            seq.extend_from_slice(&idx[k + 1..]);
            if let Some((s, mono)) = Monomial::from_unsorted(seq) {
                let sign = if k % 2 == 0 { s } else { -s };
                out.add_term(mono, q(c * i64::from(sign)));
            }
        }
    }
    out
}

/// The differential with trivial coefficients.
pub fn d_scalar(alg: &AlgebraSpec, f: &ScalarForm) -> ScalarForm {
    f.map_linear(|m| d_monomial(alg, m))
}

/// The differential with adjoint coefficients, exact for all components with
/// module index `≤ cap` (and, for quotients, `≤ n`).
pub fn d_adjoint(alg: &AlgebraSpec, x: &AdjointCochain, cap: u32) -> AdjointCochain {
    let cap = alg.dimension().map_or(cap, |n| cap.min(n));
    let mut out = AdjointCochain::zero().with_cap(cap);
    let mut d_cache: HashMap<&Monomial, ScalarForm> = HashMap::new();
    for ((l, m), c) in &x.terms {
        let l = *l;
        if l > cap {
            continue;
        }
        for j in 1..=(cap - l) {
            let b = alg.coefficient(l, j);
            if b == 0 || m.contains(j) {
                continue;
            }
            if let Some((s, mono)) = Monomial::single(j).wedge(m) {
                out.add_term(l + j, mono, c * q(b * i64::from(s)));
            }
        }
        let dm = d_cache.entry(m).or_insert_with(|| d_monomial(alg, m));
        out.add_component(l, dm, c);
    }
    out
}

/// One homogeneous piece of the cochain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    pub alg: AlgebraSpec,
    pub mode: Mode,
    pub degree: usize,
    /// `λ` for trivial coefficients, `μ` for adjoint ones.
    pub grade: i64,
    /// Bound on the module index; ignored for trivial coefficients.
    pub cap: Option<u32>,
}

/// A basis element of a block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub module_index: Option<u32>,
    pub monomial: Monomial,
}

impl BlockSpec {
    pub fn trivial(alg: AlgebraSpec, degree: usize, weight: i64) -> Self {
        BlockSpec {
            alg,
            mode: Mode::Trivial,
            degree,
            grade: weight,
            cap: None,
        }
    }

    pub fn adjoint(alg: AlgebraSpec, degree: usize, weight: i64, cap: u32) -> Self {
        BlockSpec {
            alg,
            mode: Mode::Adjoint,
            degree,
            grade: weight,
            cap: Some(cap),
        }
    }

    pub fn with_degree(&self, degree: usize) -> Self {
        BlockSpec { degree, ..*self }
    }

    /// Effective module-index bound of an adjoint block.
    pub fn module_cap(&self) -> Result<u32> {
        match (self.cap, self.alg.dimension()) {
            (Some(w), Some(n)) => Ok(w.min(n)),
            (Some(w), None) => Ok(w),
            (None, Some(n)) => Ok(n),
            (None, None) => Err(Error::OutsideDomain(format!(
                "adjoint block of the infinite algebra {} needs a module-index cap",
                self.alg
            ))),
        }
    }

    fn generators_up_to(&self, bound: i64) -> Vec<u32> {
        let top = u32::try_from(bound.max(0)).unwrap_or(u32::MAX);
        (1..=top).filter(|&i| self.alg.has_generator(i)).collect()
    }

    /// The canonical basis: ascending module index, then lexicographic monomial.
    pub fn basis(&self) -> Result<Vec<BasisKey>> {
        match self.mode {
            Mode::Trivial => {
                if self.grade < 0 {
                    return Ok(Vec::new());
                }
                let allowed = self.generators_up_to(self.grade);
                Ok(monomials_of_weight(self.degree, self.grade as u32, &allowed)
                    .into_iter()
                    .map(|monomial| BasisKey {
                        module_index: None,
                        monomial,
                    })
                    .collect())
            }
            Mode::Adjoint => {
                let cap = self.module_cap()?;
                let mut out = Vec::new();
                for l in 1..=cap {
                    if !self.alg.has_generator(l) {
                        continue;
                    }
                    let w = i64::from(l) - self.grade;
                    if w < 0 {
                        continue;
                    }
                    let allowed = self.generators_up_to(w);
                    for monomial in monomials_of_weight(self.degree, w as u32, &allowed) {
                        out.push(BasisKey {
                            module_index: Some(l),
                            monomial,
                        });
                    }
                }
                Ok(out)
            }
        }
    }

    /// The cochain with coordinates `v` in [`BlockSpec::basis`].
    pub fn cochain_from_vector(&self, basis: &[BasisKey], v: &SparseVec) -> Cochain {
        match self.mode {
            Mode::Trivial => Cochain::Scalar(ScalarForm::from_terms(
                v.iter().map(|(&i, c)| (basis[i].monomial.clone(), c.clone())),
            )),
            Mode::Adjoint => {
                let mut x = AdjointCochain::zero();
                for (&i, c) in v {
                    x.add_term(basis[i].module_index.expect("adjoint key"), basis[i].monomial.clone(), c.clone());
                }
                Cochain::Adjoint(x.with_cap(self.module_cap().unwrap_or(0)))
            }
        }
    }

    /// Coordinates of a cochain in this block; errors if it leaves the block.
    pub fn vector_of(&self, basis: &[BasisKey], x: &Cochain) -> Result<SparseVec> {
        let index: HashMap<&BasisKey, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut v = SparseVec::new();
        for (l, m, c) in x.terms() {
            let key = BasisKey {
                module_index: l,
                monomial: m,
            };
            match index.get(&key) {
                Some(&i) => {
                    v.insert(i, c);
                }
                None => {
                    return Err(Error::Inhomogeneous(format!(
                        "term {}{} outside block (q={}, grade={})",
                        l.map_or(String::new(), |l| format!("e_{l} (x) ")),
                        key.monomial,
                        self.degree,
                        self.grade
                    )))
                }
            }
        }
        Ok(v)
    }
}

fn d_basis(spec: &BlockSpec, key: &BasisKey) -> Result<Cochain> {
    Ok(match spec.mode {
        Mode::Trivial => Cochain::Scalar(d_monomial(&spec.alg, &key.monomial)),
        Mode::Adjoint => {
            let mut x = AdjointCochain::zero();
            x.add_term(key.module_index.expect("adjoint key"), key.monomial.clone(), Q::one());
            Cochain::Adjoint(d_adjoint(&spec.alg, &x, spec.module_cap()?))
        }
    })
}

/// Matrix of `d` from the degree-`q` block to the degree-`(q+1)` block:
/// columns follow the source basis, rows the target basis.
pub fn block_matrix(spec: &BlockSpec) -> Result<SparseMatrix> {
    let source = spec.basis()?;
    let target_spec = spec.with_degree(spec.degree + 1);
    let target = target_spec.basis()?;
    let index: HashMap<&BasisKey, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseMatrix::zeros(target.len(), source.len());
    for (col, key) in source.iter().enumerate() {
        for (l, mono, c) in d_basis(spec, key)?.terms() {
            let row = index
                .get(&BasisKey {
                    module_index: l,
                    monomial: mono,
                })
                .expect("d preserves the grading");
            m.add(*row, col, &c);
        }
    }
    Ok(m)
}

/// Cohomology of one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCohomology {
    pub dimension: usize,
    pub representatives: Vec<Cochain>,
}

/// `H` at the block `spec`: `dim ker(d: C^q → C^{q+1}) − rank(d: C^{q−1} → C^q)`,
/// with one representative per class.
pub fn cohomology_dim(spec: &BlockSpec) -> Result<BlockCohomology> {
    let basis = spec.basis()?;
    let d_out = block_matrix(spec)?;
    let d_in = match spec.degree {
        0 => SparseMatrix::zeros(basis.len(), 0),
        q => block_matrix(&spec.with_degree(q - 1))?,
    };
    let (dimension, reps) = cohomology(&d_in, &d_out);
    Ok(BlockCohomology {
        dimension,
        representatives: reps.iter().map(|v| spec.cochain_from_vector(&basis, v)).collect(),
    })
}

/// Whether `Σ_{l ≤ cap} e_l ⊗ family(l)` is closed in all module indices `≤ cap`.
///
/// The family must be homogeneous: one degree and one weight `μ` throughout.
pub fn is_cocycle_mod_filtration<F>(alg: &AlgebraSpec, family: F, cap: u32) -> Result<bool>
where
    F: Fn(u32) -> ScalarForm,
{
    let x = AdjointCochain::from_components((1..=cap).map(|l| (l, family(l))));
    is_closed_mod_filtration(alg, &x, cap)
}

/// [`is_cocycle_mod_filtration`] for an already assembled cochain.
pub fn is_closed_mod_filtration(alg: &AlgebraSpec, x: &AdjointCochain, cap: u32) -> Result<bool> {
    if !x.is_zero() && (x.degree().is_none() || x.weight().is_none()) {
        return Err(Error::Inhomogeneous(format!(
            "cochain mixes bidegrees: {}",
            truncate_text(&x.to_text())
        )));
    }
    Ok(d_adjoint(alg, &x.truncate(cap), cap).is_zero())
}

fn truncate_text(s: &str) -> String {
    if s.chars().count() > 120 {
        format!("{}…", s.chars().take(120).collect::<String>())
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec()).unwrap()
    }

    fn form(terms: &[(i64, &[u32])]) -> ScalarForm {
        ScalarForm::from_terms(terms.iter().map(|(c, v)| (mono(v), q(*c))))
    }

    #[test]
    fn scalar_differential_examples() {
        let e5 = ScalarForm::generator(5);
        assert_eq!(d_scalar(&AlgebraSpec::M0, &e5), form(&[(1, &[1, 4])]));
        assert_eq!(d_scalar(&AlgebraSpec::M2, &e5), form(&[(1, &[1, 4]), (1, &[2, 3])]));
        for alg in [AlgebraSpec::M0, AlgebraSpec::M2] {
            assert!(d_scalar(&alg, &ScalarForm::generator(1)).is_zero());
            assert!(d_scalar(&alg, &ScalarForm::generator(2)).is_zero());
        }
    }

    #[test]
    fn adjoint_differential_examples() {
        let m0 = AlgebraSpec::M0;
        let mut expect = AdjointCochain::zero();
        expect.add_term(6, mono(&[1]), q(-1));
        assert_eq!(d_adjoint(&m0, &AdjointCochain::vector(5), 40).terms, expect.terms);

        let mut expect = AdjointCochain::zero();
        for j in 2..=5 {
            expect.add_term(j + 1, mono(&[j]), q(1));
        }
        assert_eq!(d_adjoint(&m0, &AdjointCochain::vector(1), 6).terms, expect.terms);

        let mut expect = AdjointCochain::zero();
        expect.add_term(4, mono(&[1]), q(-1));
        expect.add_term(5, mono(&[2]), q(-1));
        assert_eq!(d_adjoint(&AlgebraSpec::M2, &AdjointCochain::vector(3), 40).terms, expect.terms);
    }

    #[test]
    fn e2_tensor_e2_is_not_closed() {
        let x = AdjointCochain::from_components([(2, ScalarForm::generator(2))]);
        let dx = d_adjoint(&AlgebraSpec::M0, &x, 10);
        assert_eq!(dx.coefficient(3, &mono(&[1, 2])), q(-1));
        assert!(!is_closed_mod_filtration(&AlgebraSpec::M0, &x, 10).unwrap());
    }

    #[test]
    fn grading_derivations_are_closed() {
        let psi11 = |l: u32| match l {
            1 => ScalarForm::generator(1),
            2 => ScalarForm::zero(),
            _ => ScalarForm::generator(l) * &q(i64::from(l) - 2),
        };
        assert!(is_cocycle_mod_filtration(&AlgebraSpec::M0, psi11, 25).unwrap());
        let tau = |l: u32| ScalarForm::generator(l) * &q(i64::from(l));
        assert!(is_cocycle_mod_filtration(&AlgebraSpec::M2, tau, 25).unwrap());
    }

    #[test]
    fn inhomogeneous_family_is_rejected() {
        let bad = |l: u32| if l == 3 { ScalarForm::generator(1) } else { ScalarForm::generator(l) };
        assert!(matches!(
            is_cocycle_mod_filtration(&AlgebraSpec::M0, bad, 6),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn small_blocks() {
        let m = block_matrix(&BlockSpec::trivial(AlgebraSpec::M0, 1, 3)).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (1, 1));
        assert_eq!(m.get(0, 0), q(1));
        let m = block_matrix(&BlockSpec::trivial(AlgebraSpec::M0, 1, 1)).unwrap();
        assert_eq!((m.n_rows(), m.n_cols(), m.nnz()), (0, 1, 0));
        let m = block_matrix(&BlockSpec::adjoint(AlgebraSpec::M2, 0, 2, 8)).unwrap();
        assert_eq!(m.rank(), m.n_cols());
        let e = block_matrix(&BlockSpec::trivial(AlgebraSpec::M0, 3, 2)).unwrap();
        assert_eq!((e.n_rows(), e.n_cols()), (0, 0));
    }

    #[test]
    fn low_scalar_cohomology() {
        let h = cohomology_dim(&BlockSpec::trivial(AlgebraSpec::M0, 1, 1)).unwrap();
        assert_eq!(h.dimension, 1);
        assert_eq!(h.representatives, vec![Cochain::Scalar(ScalarForm::generator(1))]);
        assert_eq!(cohomology_dim(&BlockSpec::trivial(AlgebraSpec::M0, 2, 7)).unwrap().dimension, 1);
        assert_eq!(cohomology_dim(&BlockSpec::trivial(AlgebraSpec::M2, 2, 6)).unwrap().dimension, 0);
        let h = cohomology_dim(&BlockSpec::trivial(AlgebraSpec::M0, 2, 5)).unwrap();
        assert_eq!(h.representatives, vec![Cochain::Scalar(form(&[(1, &[2, 3])]))]);
    }

    #[test]
    fn adjoint_block_needs_cap_for_infinite_algebras() {
        let spec = BlockSpec {
            alg: AlgebraSpec::M0,
            mode: Mode::Adjoint,
            degree: 1,
            grade: 0,
            cap: None,
        };
        assert!(spec.basis().is_err());
        let finite = BlockSpec { alg: AlgebraSpec::m0_quotient(6).unwrap(), ..spec };
        assert!(!finite.basis().unwrap().is_empty());
    }

    #[test]
    fn evaluation_signs() {
        let x = AdjointCochain::from_components([(4, form(&[(1, &[5, 6])]))]);
        assert_eq!(x.evaluate(&[5, 6]), BTreeMap::from([(4, q(1))]));
        assert_eq!(x.evaluate(&[6, 5]), BTreeMap::from([(4, q(-1))]));
        assert!(x.evaluate(&[5, 5]).is_empty());
    }
}
