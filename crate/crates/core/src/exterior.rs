//! Exterior monomials `e^{i₁}∧…∧e^{i_q}` over the dual basis and finite
//! rational combinations of them.
//!
//! Monomials are kept canonical (strictly increasing indices); ordering is
//! lexicographic on the index sequence, which fixes serialization order and
//! the column order of every block matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{parse_q, signed_prefix, Q};

/// `e^{i₁}∧…∧e^{i_q}` with `i₁ < … < i_q`; the empty sequence is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// `None` unless the indices are positive and strictly increasing.
    pub fn new(indices: Vec<u32>) -> Option<Self> {
        if indices.first() == Some(&0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Monomial(indices))
    }

    pub fn single(i: u32) -> Self {
        assert!(i > 0, "generator indices start at 1");
        Monomial(vec![i])
    }

    /// Sorts an arbitrary index sequence, returning the permutation sign, or
    /// `None` when an index repeats (the wedge vanishes).
    pub fn from_unsorted(mut indices: Vec<u32>) -> Option<(i32, Self)> {
        // insertion sort: sequences are short and usually nearly sorted
        let mut sign = 1;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if j > 0 && indices[j - 1] == indices[j] {
                return None;
            }
        }
        if indices.first() == Some(&0) {
            return None;
        }
        Some((sign, Monomial(indices)))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `self ∧ other` as `(sign, monomial)`, or `None` on a repeated index.
    pub fn wedge(&self, other: &Monomial) -> Option<(i32, Monomial)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut inversions = 0usize;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over the remaining a-elements
                    inversions += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(out)))
    }

    /// Monomial with index `i` appended on the right; `i` must exceed every index.
    pub fn push_top(&self, i: u32) -> Monomial {
        debug_assert!(self.0.last().map_or(true, |&l| l < i));
        let mut v = self.0.clone();
        v.push(i);
        Monomial(v)
    }

    /// All but the last index.
    pub fn head(&self) -> Monomial {
        let n = self.0.len().saturating_sub(1);
        Monomial(self.0[..n].to_vec())
    }

    /// Text form `e^2^e^3^e^7`; the unit prints as `1`.
    pub fn to_text(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|i| format!("e^{i}")).collect::<Vec<_>>().join("^")
    }

    /// Parses the [`Monomial::to_text`] format.
    pub fn parse_text(s: &str) -> Option<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Some(Monomial::unit());
        }
        let mut indices = Vec::new();
        let mut parts = s.split('^');
        loop {
            match parts.next() {
                None => break,
                Some("e") => {
                    let idx: u32 = parts.next()?.parse().ok()?;
                    indices.push(idx);
                }
                Some(_) => return None,
            }
        }
        Monomial::new(indices)
    }

    /// `e^{5}\wedge e^{6}` style.
    pub fn to_latex(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|i| format!("e^{{{i}}}")).collect::<Vec<_>>().join("\\wedge ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A finite rational combination of exterior monomials.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarForm {
    terms: BTreeMap<Monomial, Q>,
}

impl ScalarForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut f = Self::zero();
        f.add_term(m, Q::one());
        f
    }

    /// `e^i`.
    pub fn generator(i: u32) -> Self {
        Self::from_monomial(Monomial::single(i))
    }

    /// Builds `e^{i₁}∧…∧e^{i_q}` from an arbitrary index order (with sign).
    pub fn wedge_of(indices: &[u32]) -> Self {
        match Monomial::from_unsorted(indices.to_vec()) {
            Some((s, m)) => Self::from_monomial(m) * &crate::rational::q(i64::from(s)),
            None => Self::zero(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ScalarForm, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Common degree of all monomials; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        common(self.terms.keys().map(Monomial::degree))
    }

    /// Common weight of all monomials; `None` for zero or mixed weight.
    pub fn weight(&self) -> Option<u32> {
        common(self.terms.keys().map(Monomial::weight))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::last).max()
    }

    pub fn involves(&self, i: u32) -> bool {
        self.terms.keys().any(|m| m.contains(i))
    }

    pub fn wedge(&self, other: &ScalarForm) -> ScalarForm {
        let mut out = ScalarForm::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((s, m)) = a.wedge(b) {
                    let c = x * y;
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Keeps only the monomials satisfying `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> ScalarForm {
        ScalarForm {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear<F: FnMut(&Monomial) -> ScalarForm>(&self, mut image: F) -> ScalarForm {
        let mut out = ScalarForm::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&image(m), c);
        }
        out
    }

    /// Text form `e^2^e^3 - 3/2 e^4^e^5`; zero prints as `0`.
    pub fn to_text(&self) -> String {
        self.render(Monomial::to_text)
    }

    pub fn to_latex(&self) -> String {
        self.render(Monomial::to_latex)
    }

    fn render(&self, mono: fn(&Monomial) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (sep, coeff) = signed_prefix(c, k == 0);
            s.push_str(&sep);
            if m.degree() == 0 {
                s.push_str(&crate::rational::format_q(&num_traits::Signed::abs(c)));
            } else {
                s.push_str(&coeff);
                s.push_str(&mono(m));
            }
        }
        s
    }

    /// Parses a sum such as `e^2^e^3 - 3/2 e^4^e^5`.
    pub fn parse_text(s: &str) -> Option<ScalarForm> {
        let s = s.trim();
        if s == "0" {
            return Some(ScalarForm::zero());
        }
        let mut out = ScalarForm::zero();
        // split into signed chunks on top-level " + " / " - "
        let normalized = s.replace(" - ", " + -");
        for chunk in normalized.split(" + ") {
            let chunk = chunk.trim();
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, chunk),
            };
            let (coeff, mono) = match body.split_once(' ') {
                Some((c, m)) => (parse_q(c)?, Monomial::parse_text(m)?),
                None => match Monomial::parse_text(body) {
                    Some(m) if body != "1" => (Q::one(), m),
                    _ => (parse_q(body)?, Monomial::unit()),
                },
            };
            out.add_term(mono, if neg { -coeff } else { coeff });
        }
        Some(out)
    }
}

fn common<T: PartialEq, I: Iterator<Item = T>>(mut it: I) -> Option<T> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl AddAssign<&ScalarForm> for ScalarForm {
    fn add_assign(&mut self, rhs: &ScalarForm) {
        self.add_scaled(rhs, &Q::one());
    }
}

impl Add<&ScalarForm> for ScalarForm {
    type Output = ScalarForm;
    fn add(mut self, rhs: &ScalarForm) -> ScalarForm {
        self += rhs;
        self
    }
}

impl Sub<&ScalarForm> for ScalarForm {
    type Output = ScalarForm;
    fn sub(mut self, rhs: &ScalarForm) -> ScalarForm {
        self.add_scaled(rhs, &-Q::one());
        self
    }
}

impl Neg for ScalarForm {
    type Output = ScalarForm;
    fn neg(self) -> ScalarForm {
        ScalarForm {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul<&Q> for ScalarForm {
    type Output = ScalarForm;
    fn mul(self, rhs: &Q) -> ScalarForm {
        if rhs.is_zero() {
            return ScalarForm::zero();
        }
        ScalarForm {
            terms: self.terms.into_iter().map(|(m, c)| (m, c * rhs)).collect(),
        }
    }
}

/// All `q`-element strictly increasing sequences of integers from `allowed`
/// (ascending list) with the given sum, in lexicographic order.
pub fn monomials_of_weight(q: usize, weight: u32, allowed: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fill(q, weight, allowed, 0, &mut cur, &mut out);
    out
}

fn fill(q: usize, remaining: u32, allowed: &[u32], start: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if q == 0 {
        if remaining == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    for pos in start..allowed.len() {
        let a = allowed[pos];
        // the q smallest remaining choices must fit
        let min_rest: u64 = allowed[pos..].iter().take(q).map(|&x| u64::from(x)).sum();
        if allowed.len() - pos < q || min_rest > u64::from(remaining) {
            break;
        }
        cur.push(a);
        fill(q - 1, remaining - a, allowed, pos + 1, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let e23 = ScalarForm::from_monomial(m(&[2, 3]));
        let e5 = ScalarForm::generator(5);
        assert_eq!(e23.wedge(&e5), ScalarForm::from_monomial(m(&[2, 3, 5])));
        let e3 = ScalarForm::generator(3);
        let e2 = ScalarForm::generator(2);
        assert_eq!(e3.wedge(&e2), -ScalarForm::from_monomial(m(&[2, 3])));
        assert!(e2.wedge(&e2).is_zero());
    }

    #[test]
    fn monomial_sign_by_inversions() {
        assert_eq!(m(&[3, 7]).wedge(&m(&[1, 5])), Some((-1, m(&[1, 3, 5, 7]))));
        assert_eq!(m(&[3, 7]).wedge(&m(&[8])), Some((1, m(&[3, 7, 8]))));
        assert_eq!(m(&[3, 7]).wedge(&m(&[1])), Some((1, m(&[1, 3, 7]))));
        assert_eq!(m(&[3]).wedge(&m(&[1, 2])), Some((1, m(&[1, 2, 3]))));
        assert_eq!(m(&[3]).wedge(&m(&[1, 5])), Some((-1, m(&[1, 3, 5]))));
        assert_eq!(Monomial::from_unsorted(vec![5, 2, 3]), Some((1, m(&[2, 3, 5]))));
        assert_eq!(Monomial::from_unsorted(vec![3, 2]), Some((-1, m(&[2, 3]))));
        assert_eq!(Monomial::from_unsorted(vec![3, 2, 3]), None);
    }

    #[test]
    fn gradings() {
        let f = ScalarForm::from_terms([(m(&[2, 5]), q(1)), (m(&[3, 4]), q(-2))]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.weight(), Some(7));
        let g = f.clone() + &ScalarForm::generator(7);
        assert_eq!(g.degree(), None);
        assert_eq!(g.weight(), Some(7));
        assert_eq!(ScalarForm::zero().degree(), None);
    }

    #[test]
    fn no_stored_zeros() {
        let mut f = ScalarForm::generator(4);
        f.add_term(m(&[4]), q(-1));
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
    }

    #[test]
    fn text_roundtrip() {
        let f = ScalarForm::from_terms([
            (m(&[2, 3, 7]), q(1)),
            (m(&[2, 4, 6]), crate::rational::q_frac(-3, 2)),
            (m(&[3, 4, 5]), q(5)),
        ]);
        let s = f.to_text();
        assert_eq!(s, "e^2^e^3^e^7 - 3/2 e^2^e^4^e^6 + 5 e^3^e^4^e^5");
        assert_eq!(ScalarForm::parse_text(&s), Some(f));
        assert_eq!(Monomial::parse_text("e^2^e^3^e^7"), Some(m(&[2, 3, 7])));
        assert_eq!(Monomial::parse_text("e^3^e^2"), None);
        assert_eq!(ScalarForm::parse_text("-2"), Some(ScalarForm::one() * &q(-2)));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all: Vec<u32> = (1..=20).collect();
        let ms = monomials_of_weight(3, 12, &all);
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(ms, sorted);
        // brute force
        let mut count = 0;
        for a in 1..=20 {
            for b in (a + 1)..=20 {
                for c in (b + 1)..=20 {
                    if a + b + c == 12 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(ms.len(), count);
        assert_eq!(monomials_of_weight(0, 0, &all), vec![Monomial::unit()]);
        assert!(monomials_of_weight(0, 3, &all).is_empty());
        let no_two: Vec<u32> = (1..=20).filter(|&i| i != 2).collect();
        assert!(monomials_of_weight(2, 12, &no_two).iter().all(|m| !m.contains(2)));
    }
}
