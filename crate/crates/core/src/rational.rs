//! Exact rational coefficients and their canonical `p/q` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

use crate::error::{Error, Result};

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` for non-integers, `p` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Appends one signed term of a sum: handles the leading sign, the ` + `/` - `
/// separators, and drops a unit coefficient in front of a non-empty monomial.
pub(crate) fn push_term(out: &mut String, coeff: &Rational, monomial: &str) {
    let negative = coeff.is_negative();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let magnitude = coeff.abs();
    if monomial.is_empty() {
        out.push_str(&fmt_rational(&magnitude));
    } else {
        if !magnitude.is_one() {
            out.push_str(&fmt_rational(&magnitude));
            out.push('*');
        }
        out.push_str(monomial);
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_parses() {
        assert_eq!(fmt_rational(&frac(-1, 2)), "-1/2");
        assert_eq!(fmt_rational(&frac(4, 2)), "2");
        assert_eq!(parse_rational(" 3/6 ").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn term_signs() {
        let mut s = String::new();
        push_term(&mut s, &int(-1), "x");
        push_term(&mut s, &frac(1, 2), "");
        push_term(&mut s, &int(-2), "y");
        assert_eq!(s, "-x + 1/2 - 2*y");
    }
}
