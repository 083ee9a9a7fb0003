//! Parser for the canonical polynomial text form shared by commutative and
//! noncommutative polynomials: `2*e12*e21 - 1/2*h1`, `s1^-2*p1`, `h1^3`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ParsedTerm {
    pub coeff: Rational,
    /// Factors in written order; exponents may be negative.
    pub factors: Vec<(String, i32)>,
}

pub(crate) fn parse_sum(input: &str) -> Result<Vec<ParsedTerm>> {
    let src = input.trim();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in src.chars() {
        let unary_context = matches!(prev, None | Some('^') | Some('*'));
        if (ch == '+' || ch == '-') && !unary_context {
            chunks.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            prev = None;
            continue;
        }
        if ch == '-' && prev.is_none() && current.trim().is_empty() {
            negative = !negative;
            prev = None;
            continue;
        }
        if ch == '+' && prev.is_none() && current.trim().is_empty() {
            continue;
        }
        current.push(ch);
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    chunks.push((negative, current));

    let mut terms = Vec::with_capacity(chunks.len());
    for (neg, body) in chunks {
        let body = body.trim();
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling operator in `{src}`")));
        }
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{body}`")));
            }
            let starts_numeric = factor.starts_with(|c: char| c.is_ascii_digit() || c == '-');
            if starts_numeric {
                coeff *= parse_rational(factor)?;
                continue;
            }
            let (label, exp) = match factor.split_once('^') {
                Some((l, e)) => {
                    let e: i32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (l.trim(), e)
                }
                None => (factor, 1),
            };
            if label.is_empty() || !label.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad symbol `{label}`")));
            }
            factors.push((label.to_string(), exp));
        }
        if neg {
            coeff = -coeff;
        }
        if !coeff.is_zero() {
            terms.push(ParsedTerm { coeff, factors });
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn splits_terms_and_exponents() {
        let t = parse_sum("2*e12*e21 - 1/2*h1 + s1^-2").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, int(2));
        assert_eq!(t[1].coeff, frac(-1, 2));
        assert_eq!(t[1].factors, vec![("h1".to_string(), 1)]);
        assert_eq!(t[2].factors, vec![("s1".to_string(), -2)]);
    }

    #[test]
    fn leading_minus_and_unary_after_plus() {
        let t = parse_sum("-x + -1/2*y").unwrap();
        assert_eq!(t[0].coeff, int(-1));
        assert_eq!(t[1].coeff, frac(-1, 2));
    }

    #[test]
    fn zero_is_empty_sum() {
        assert!(parse_sum("0").unwrap().is_empty());
        assert!(parse_sum("x +").is_err());
        assert!(parse_sum("").is_err());
    }
}
