//! Exact rational coefficients and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `"p/q"` in lowest terms with `q > 0`, or the integer alone when `q = 1`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Inverse of [`format_q`]. Rejects zero denominators.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Coefficient prefix for human-readable sums: `""` for 1, `"-"` for −1,
/// `"3/2 "` otherwise, together with the sign separator.
pub(crate) fn signed_prefix(x: &Q, first: bool) -> (String, String) {
    let sep = if x.is_negative() {
        if first {
            "-".to_string()
        } else {
            " - ".to_string()
        }
    } else if first {
        String::new()
    } else {
        " + ".to_string()
    };
    let a = x.abs();
    let coeff = if a.is_one() { String::new() } else { format!("{} ", format_q(&a)) };
    (sep, coeff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_q(&q_frac(6, -4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
        assert_eq!(format_q(&q(0)), "0");
        assert_eq!(parse_q("-3/2"), Some(q_frac(-3, 2)));
        assert_eq!(parse_q("4/2"), Some(q(2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }
}
