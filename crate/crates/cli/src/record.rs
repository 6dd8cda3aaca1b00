use std::fmt::Write as _;

use maxclass_core::rational::{parse_q, Q};
use maxclass_core::{Cochain, CocycleLabel, Monomial};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// `dimension` is either a count or the string `"infinite"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dimension {
    Finite(usize),
    Infinite(Infinite),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Infinite {
    Infinite,
}

impl Dimension {
    pub fn infinite() -> Self {
        Dimension::Infinite(Infinite::Infinite)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub module_index: Option<u32>,
    pub indices: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub terms: Vec<Term>,
}

/// One homogeneous result: a dimension and a basis of named representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algebra: String,
    pub mode: String,
    pub degree: usize,
    pub grade: i64,
    pub cap: Option<u32>,
    pub dimension: Dimension,
    pub basis: Vec<BasisEntry>,
}

/// Always `p/q`, lowest terms, `q > 0`.
pub fn coeff_string(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coeff(s: &str) -> Option<Q> {
    parse_q(s).filter(|c| !c.is_zero())
}

impl BasisEntry {
    pub fn new(label: impl Into<String>, cochain: &Cochain) -> Self {
        let terms = cochain
            .terms()
            .into_iter()
            .map(|(l, m, c)| Term {
                module_index: l,
                indices: m.indices().to_vec(),
                coeff: coeff_string(&c),
            })
            .collect();
        BasisEntry { label: label.into(), terms }
    }

    /// Rebuilds the cochain; `None` if a term is malformed.
    pub fn cochain(&self) -> Option<Cochain> {
        let scalar = self.terms.iter().all(|t| t.module_index.is_none());
        let mut parts = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.module_index.is_none() != scalar {
                return None;
            }
            parts.push((t.module_index, Monomial::new(t.indices.clone())?, parse_coeff(&t.coeff)?));
        }
        if scalar {
            let mut f = maxclass_core::ScalarForm::zero();
            for (_, m, c) in parts {
                f.add_term(m, c);
            }
            Some(Cochain::Scalar(f))
        } else {
            let mut x = maxclass_core::AdjointCochain::zero();
            for (l, m, c) in parts {
                x.add_term(l?, m, c);
            }
            Some(Cochain::Adjoint(x))
        }
    }
}

impl ResultRecord {
    /// Canonical JSON: field order is the struct order, coefficients are strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let r: ResultRecord = serde_json::from_str(s).map_err(|e| e.to_string())?;
        r.validate()?;
        Ok(r)
    }

    /// Checks the invariants a loaded record must satisfy.
    pub fn validate(&self) -> Result<(), String> {
        for b in &self.basis {
            for t in &b.terms {
                let c = parse_coeff(&t.coeff).ok_or_else(|| format!("bad coefficient {:?} in {}", t.coeff, b.label))?;
                if coeff_string(&c) != t.coeff {
                    return Err(format!("coefficient {:?} in {} is not in lowest terms", t.coeff, b.label));
                }
                if t.indices.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(format!("indices of {} are not ascending", b.label));
                }
            }
        }
        Ok(())
    }

    pub fn dimension_text(&self) -> String {
        match self.dimension {
            Dimension::Finite(n) => n.to_string(),
            Dimension::Infinite(_) => "infinite".into(),
        }
    }

    pub fn csv_header() -> &'static str {
        "algebra,mode,degree,grade,cap,dimension,label,module_index,indices,coeff"
    }

    /// One row per term; a record with an empty basis still gets a row.
    pub fn to_csv_rows(&self) -> String {
        let cap = self.cap.map_or(String::new(), |c| c.to_string());
        let prefix = format!("{},{},{},{},{},{}", self.algebra, self.mode, self.degree, self.grade, cap, self.dimension_text());
        let mut out = String::new();
        if self.basis.is_empty() {
            let _ = writeln!(out, "{prefix},,,,");
        }
        for b in &self.basis {
            for t in &b.terms {
                let l = t.module_index.map_or(String::new(), |l| l.to_string());
                let idx = t.indices.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                let _ = writeln!(out, "{prefix},{},{l},{idx},{}", b.label, t.coeff);
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "% {} {} degree {} grade {} dimension {}",
            self.algebra,
            self.mode,
            self.degree,
            self.grade,
            self.dimension_text()
        );
        for b in &self.basis {
            let name = b.label.parse::<CocycleLabel>().map_or_else(|_| b.label.clone(), |l| l.to_latex());
            let body = b.cochain().map_or_else(|| "?".into(), |c| c.to_latex());
            let _ = writeln!(out, "{name} = {body}");
        }
        out
    }
}
