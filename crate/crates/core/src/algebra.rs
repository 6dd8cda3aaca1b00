//! The ℕ-graded Lie algebras of maximal class and their finite quotients.
//!
//! Every algebra here has a basis `e_1, e_2, …` with `[e_i, e_j] = c_ij e_{i+j}`,
//! so the bracket is fully described by an integer coefficient rule. Nothing is
//! tabulated; index caps are free.

use std::fmt;

/// Which algebra a [`AlgebraSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    /// `[e_1, e_i] = e_{i+1}` for `i ≥ 2`.
    M0,
    /// `𝔪₀` plus `[e_2, e_j] = e_{j+2}` for `j ≥ 3`.
    M2,
    /// Positive part of the Witt algebra, `[e_i, e_j] = (j − i) e_{i+j}`.
    L1,
    /// `𝔪₀(n)`: the quotient of `𝔪₀` by the span of `e_k`, `k > n`.
    M0Quotient(u32),
    /// `𝔪₂(n)`: the quotient of `𝔪₂` by the span of `e_k`, `k > n`.
    M2Quotient(u32),
    /// The codimension-one ideal `span(e_1, e_3, e_4, …)` of `𝔪₂`.
    ///
    /// It is isomorphic to an `𝔪₀`-type algebra generated by `e_1` and `e_3`;
    /// `ad* e_2` acts on its cochains by the operator `D_2`.
    M2Ideal,
}

/// An immutable description of one maximal-class algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    kind: AlgebraKind,
}

/// `[e_i, e_j] = coeff · e_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bracket {
    pub coeff: i64,
    pub index: u32,
}

impl AlgebraSpec {
    pub const M0: AlgebraSpec = AlgebraSpec { kind: AlgebraKind::M0 };
    pub const M2: AlgebraSpec = AlgebraSpec { kind: AlgebraKind::M2 };
    pub const L1: AlgebraSpec = AlgebraSpec { kind: AlgebraKind::L1 };
    pub const M2_IDEAL: AlgebraSpec = AlgebraSpec {
        kind: AlgebraKind::M2Ideal,
    };

    /// `None` for quotients that are too small to be of maximal class
    /// (`n < 2` for `𝔪₀(n)`, `n < 3` for `𝔪₂(n)`).
    pub fn new(kind: AlgebraKind) -> Option<Self> {
        match kind {
            AlgebraKind::M0Quotient(n) if n < 2 => None,
            AlgebraKind::M2Quotient(n) if n < 3 => None,
            _ => Some(AlgebraSpec { kind }),
        }
    }

    pub fn m0_quotient(n: u32) -> Option<Self> {
        Self::new(AlgebraKind::M0Quotient(n))
    }

    pub fn m2_quotient(n: u32) -> Option<Self> {
        Self::new(AlgebraKind::M2Quotient(n))
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// The largest generator index, for finite-dimensional quotients.
    pub fn dimension(&self) -> Option<u32> {
        match self.kind {
            AlgebraKind::M0Quotient(n) | AlgebraKind::M2Quotient(n) => Some(n),
            _ => None,
        }
    }

    /// The infinite algebra this one is a quotient of (itself otherwise).
    pub fn parent(&self) -> AlgebraSpec {
        match self.kind {
            AlgebraKind::M0Quotient(_) => Self::M0,
            AlgebraKind::M2Quotient(_) => Self::M2,
            _ => *self,
        }
    }

    pub fn is_m0_like(&self) -> bool {
        matches!(self.kind, AlgebraKind::M0 | AlgebraKind::M0Quotient(_))
    }

    pub fn is_m2_like(&self) -> bool {
        matches!(self.kind, AlgebraKind::M2 | AlgebraKind::M2Quotient(_))
    }

    /// Whether `e_i` is a basis vector of this algebra.
    pub fn has_generator(&self, i: u32) -> bool {
        if i == 0 {
            return false;
        }
        match self.kind {
            AlgebraKind::M0Quotient(n) | AlgebraKind::M2Quotient(n) => i <= n,
            AlgebraKind::M2Ideal => i != 2,
            _ => true,
        }
    }

    /// The structure constant `c_ij` of `[e_i, e_j] = c_ij e_{i+j}`.
    pub fn coefficient(&self, i: u32, j: u32) -> i64 {
        if i == j || !self.has_generator(i) || !self.has_generator(j) {
            return 0;
        }
        if !self.has_generator(i + j) {
            return 0;
        }
        if i > j {
            return -self.coefficient(j, i);
        }
        // i < j from here on
        match self.kind {
            AlgebraKind::L1 => i64::from(j) - i64::from(i),
            AlgebraKind::M0 | AlgebraKind::M0Quotient(_) => i64::from(i == 1),
            AlgebraKind::M2 | AlgebraKind::M2Quotient(_) => i64::from(i == 1 || (i == 2 && j >= 3)),
            AlgebraKind::M2Ideal => i64::from(i == 1 && j >= 3),
        }
    }

    /// `[e_i, e_j]`. Vanishing brackets (including quotient truncation) carry
    /// coefficient 0.
    pub fn bracket(&self, i: u32, j: u32) -> Bracket {
        Bracket {
            coeff: self.coefficient(i, j),
            index: i + j,
        }
    }

    /// All `(a, b, c_ab)` with `a < b`, `a + b = k` and `c_ab ≠ 0`: the
    /// decomposition of `e_k` under the bracket, i.e. the terms of `d e^k`.
    pub fn bracket_preimages(&self, k: u32) -> Vec<(u32, u32, i64)> {
        if !self.has_generator(k) {
            return Vec::new();
        }
        (1..k)
            .take_while(|&a| 2 * a < k)
            .filter_map(|a| {
                let c = self.coefficient(a, k - a);
                (c != 0).then_some((a, k - a, c))
            })
            .collect()
    }

    /// Checks the Jacobi identity on all triples `i < j < k` with
    /// `i + j + k ≤ cap`.
    pub fn jacobi_check(&self, cap: u32) -> bool {
        for i in 1..=cap {
            for j in (i + 1)..=cap {
                for k in (j + 1)..=cap {
                    if i + j + k > cap {
                        break;
                    }
                    let term = |a: u32, b: u32, c: u32| self.coefficient(a, b) * self.coefficient(a + b, c);
                    if term(i, j, k) + term(j, k, i) + term(k, i, j) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AlgebraKind::M0 => write!(f, "m0"),
            AlgebraKind::M2 => write!(f, "m2"),
            AlgebraKind::L1 => write!(f, "l1"),
            AlgebraKind::M0Quotient(n) => write!(f, "m0:{n}"),
            AlgebraKind::M2Quotient(n) => write!(f, "m2:{n}"),
            AlgebraKind::M2Ideal => write!(f, "m2-ideal"),
        }
    }
}

impl std::str::FromStr for AlgebraSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let parse_n = |rest: &str| rest.parse::<u32>().map_err(|_| format!("bad quotient dimension in {s:?}"));
        let spec = match lower.as_str() {
            "m0" => Some(Self::M0),
            "m2" => Some(Self::M2),
            "l1" => Some(Self::L1),
            "m2-ideal" => Some(Self::M2_IDEAL),
            other => {
                if let Some(rest) = other.strip_prefix("m0:") {
                    Self::m0_quotient(parse_n(rest)?)
                } else if let Some(rest) = other.strip_prefix("m2:") {
                    Self::m2_quotient(parse_n(rest)?)
                } else {
                    return Err(format!("unknown algebra {s:?} (expected m0, m2, l1, m0:n, m2:n)"));
                }
            }
        };
        spec.ok_or_else(|| format!("quotient too small in {s:?} (m0:n needs n ≥ 2, m2:n needs n ≥ 3)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_match_defining_relations() {
        assert_eq!(AlgebraSpec::M0.bracket(1, 5), Bracket { coeff: 1, index: 6 });
        assert_eq!(AlgebraSpec::M2.bracket(2, 3), Bracket { coeff: 1, index: 5 });
        assert_eq!(AlgebraSpec::L1.bracket(2, 3), Bracket { coeff: 1, index: 5 });
        for alg in [AlgebraSpec::M0, AlgebraSpec::M2, AlgebraSpec::L1] {
            assert_eq!(alg.bracket(4, 4), Bracket { coeff: 0, index: 8 });
        }
        assert_eq!(AlgebraSpec::M0.bracket(2, 3).coeff, 0);
        assert_eq!(AlgebraSpec::M0.bracket(1, 2).coeff, 1);
        assert_eq!(AlgebraSpec::M2.bracket(1, 2).coeff, 1);
        assert_eq!(AlgebraSpec::M2.bracket(3, 2).coeff, -1);
        assert_eq!(AlgebraSpec::L1.bracket(5, 1).coeff, -4);
    }

    #[test]
    fn quotients_truncate() {
        let q = AlgebraSpec::m0_quotient(6).unwrap();
        assert_eq!(q.bracket(1, 5).coeff, 1);
        assert_eq!(q.bracket(1, 6).coeff, 0);
        assert!(!q.has_generator(7));
        assert!(AlgebraSpec::m0_quotient(1).is_none());
        assert!(AlgebraSpec::m2_quotient(2).is_none());
    }

    #[test]
    fn ideal_skips_e2() {
        let b = AlgebraSpec::M2_IDEAL;
        assert!(!b.has_generator(2));
        assert_eq!(b.bracket(1, 3).coeff, 1);
        assert_eq!(b.bracket(1, 2).coeff, 0);
        assert!(b.jacobi_check(40));
    }

    #[test]
    fn jacobi_holds() {
        for alg in [AlgebraSpec::M0, AlgebraSpec::M2, AlgebraSpec::L1] {
            assert!(alg.jacobi_check(60), "{alg}");
        }
        for n in 2..12 {
            assert!(AlgebraSpec::m0_quotient(n).unwrap().jacobi_check(40));
        }
        for n in 3..12 {
            assert!(AlgebraSpec::m2_quotient(n).unwrap().jacobi_check(40));
        }
    }

    #[test]
    fn antisymmetric() {
        for alg in [AlgebraSpec::M0, AlgebraSpec::M2, AlgebraSpec::L1, AlgebraSpec::m2_quotient(17).unwrap()] {
            for i in 1..=60 {
                for j in 1..=60 {
                    assert_eq!(alg.coefficient(i, j), -alg.coefficient(j, i));
                }
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["m0", "m2", "l1", "m0:10", "m2:7", "m2-ideal"] {
            let a: AlgebraSpec = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("m0:1".parse::<AlgebraSpec>().is_err());
        assert!("x9".parse::<AlgebraSpec>().is_err());
    }
}
