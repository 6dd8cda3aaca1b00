//! Symbolic names of basis cohomology classes.
//!
//! Text forms: `e[1]`, `omega[5,6,7]`, `w[3,4,5]`, `Psi[5,6;4]`, `Psi[1;1]`,
//! `Phi[2,3;1]`, `Phi[3,4,5;3]`. The number after `;` is the target module
//! index `r` (or the series parameter `m`, `l` of the low-degree families).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// A scalar generator class `e^1`, `e^2`.
    Generator,
    /// `ω_I`, tuple `(i₁,…,i_q,i_q+1)`, `i₁ ≥ 2`.
    Omega,
    /// `w_I`, tuple `(i₁,…,i_q,i_q+1,i_q+2)`, `i₁ ≥ 3`.
    W,
    /// `Ψ_{I,r}` with an `Omega` tuple.
    Psi,
    /// `Ψ_{1,1}`, `Ψ_{1,2}`, `Ψ_{2,l+2}`.
    PsiSpecial,
    /// `Φ_{I,r}` with a `W` tuple.
    Phi,
    /// `Φ_{1,1}`, `Φ_{2,l+2}`, `Φ_{2,3,m}`, `Φ_{3,4,l}`.
    PhiSpecial,
}

impl Family {
    pub fn is_adjoint(self) -> bool {
        matches!(self, Family::Psi | Family::PsiSpecial | Family::Phi | Family::PhiSpecial)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleLabel {
    pub family: Family,
    pub tuple: Vec<u32>,
    pub target: Option<u32>,
}

fn malformed(tuple: &[u32], reason: &str) -> Error {
    Error::MalformedTuple {
        tuple: tuple.to_vec(),
        reason: reason.to_string(),
    }
}

/// Checks `(i₁ < … < i_q, i_q+1, …, i_q+tail)` with `i₁ ≥ min_first`.
pub(crate) fn check_adjacent_tuple(tuple: &[u32], tail: usize, min_first: u32) -> Result<()> {
    if tuple.len() < tail + 1 {
        return Err(malformed(tuple, &format!("needs at least {} entries", tail + 1)));
    }
    if tuple[0] < min_first {
        return Err(malformed(tuple, &format!("first entry must be at least {min_first}")));
    }
    if tuple.windows(2).any(|w| w[0] >= w[1]) {
        return Err(malformed(tuple, "entries must be strictly increasing"));
    }
    let n = tuple.len();
    let base = tuple[n - 1 - tail];
    for (k, &x) in tuple[n - tail..].iter().enumerate() {
        if x != base + 1 + k as u32 {
            return Err(malformed(tuple, &format!("the last {} entries must be consecutive", tail + 1)));
        }
    }
    Ok(())
}

impl CocycleLabel {
    pub fn generator(i: u32) -> Self {
        CocycleLabel {
            family: Family::Generator,
            tuple: vec![i],
            target: None,
        }
    }

    pub fn omega(tuple: &[u32]) -> Result<Self> {
        check_adjacent_tuple(tuple, 1, 2)?;
        Ok(CocycleLabel {
            family: Family::Omega,
            tuple: tuple.to_vec(),
            target: None,
        })
    }

    pub fn w(tuple: &[u32]) -> Result<Self> {
        check_adjacent_tuple(tuple, 2, 3)?;
        Ok(CocycleLabel {
            family: Family::W,
            tuple: tuple.to_vec(),
            target: None,
        })
    }

    /// `Ψ_{I,r}`; special names when `I` has a single entry.
    pub fn psi(tuple: &[u32], target: u32) -> Result<Self> {
        let family = if tuple.len() == 1 {
            match (tuple[0], target) {
                (1, 1) | (1, 2) => {}
                (2, r) if r >= 2 && r != 3 => {}
                _ => return Err(malformed(tuple, "degree-one Ψ is Psi[1;1], Psi[1;2] or Psi[2;l+2] with l ≠ 1")),
            }
            Family::PsiSpecial
        } else {
            check_adjacent_tuple(tuple, 1, 2)?;
            Family::Psi
        };
        Ok(CocycleLabel {
            family,
            tuple: tuple.to_vec(),
            target: Some(target),
        })
    }

    /// `Φ_{I,r}`; special names for single entries and for `(2,3)`, `(3,4)`.
    pub fn phi(tuple: &[u32], target: u32) -> Result<Self> {
        let family = match tuple {
            [1] if target == 1 => Family::PhiSpecial,
            [2] if target >= 2 => Family::PhiSpecial,
            [2, 3] | [3, 4] => Family::PhiSpecial,
            [_] => return Err(malformed(tuple, "degree-one Φ is Phi[1;1] or Phi[2;l+2]")),
            [_, _] => return Err(malformed(tuple, "degree-two Φ is Phi[2,3;m] or Phi[3,4;l]")),
            _ => {
                check_adjacent_tuple(tuple, 2, 3)?;
                Family::Phi
            }
        };
        Ok(CocycleLabel {
            family,
            tuple: tuple.to_vec(),
            target: Some(target),
        })
    }

    /// Exterior degree of the class.
    pub fn degree(&self) -> usize {
        self.tuple.len()
    }

    /// Weight: `λ` for scalar classes, `μ` for adjoint ones.
    pub fn weight(&self) -> i64 {
        let sum: i64 = self.tuple.iter().map(|&i| i64::from(i)).sum();
        let r = self.target.map_or(0, i64::from);
        match (self.family, self.tuple.as_slice()) {
            (Family::Generator | Family::Omega | Family::W, _) => sum,
            (Family::Psi | Family::Phi, _) => r - sum,
            (Family::PsiSpecial, [1]) => r - 1,
            (Family::PsiSpecial, _) => r - 2,
            (Family::PhiSpecial, [1]) => 0,
            (Family::PhiSpecial, [2]) => r - 2,
            (Family::PhiSpecial, [2, 3]) => r - 5,
            (Family::PhiSpecial, _) => r - 7,
        }
    }

    pub fn to_latex(&self) -> String {
        let t = self.tuple.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self.family {
            Family::Generator => format!("e^{{{t}}}"),
            Family::Omega => format!("\\omega_{{({t})}}"),
            Family::W => format!("w_{{{t}}}"),
            Family::Psi | Family::PsiSpecial => format!("\\Psi_{{({t}),{}}}", self.target.unwrap_or(0)),
            Family::Phi | Family::PhiSpecial => format!("\\Phi_{{({t}),{}}}", self.target.unwrap_or(0)),
        }
    }
}

impl fmt::Display for CocycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tuple.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let name = match self.family {
            Family::Generator => "e",
            Family::Omega => "omega",
            Family::W => "w",
            Family::Psi | Family::PsiSpecial => "Psi",
            Family::Phi | Family::PhiSpecial => "Phi",
        };
        match self.target {
            Some(r) => write!(f, "{name}[{t};{r}]"),
            None => write!(f, "{name}[{t}]"),
        }
    }
}

impl std::str::FromStr for CocycleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::LabelParse(s.to_string());
        let s = s.trim();
        let (name, rest) = s.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let (tuple_text, target) = match body.split_once(';') {
            Some((t, r)) => (t, Some(r.trim().parse::<u32>().map_err(|_| bad())?)),
            None => (body, None),
        };
        let tuple = tuple_text
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (name.trim().to_ascii_lowercase().as_str(), target) {
            ("e", None) if tuple.len() == 1 && (tuple[0] == 1 || tuple[0] == 2) => {
                Ok(CocycleLabel::generator(tuple[0]))
            }
            ("omega", None) => CocycleLabel::omega(&tuple),
            ("w", None) => CocycleLabel::w(&tuple),
            ("psi", Some(r)) => CocycleLabel::psi(&tuple, r),
            ("phi", Some(r)) => CocycleLabel::phi(&tuple, r),
            _ => Err(bad()),
        }
    }
}
