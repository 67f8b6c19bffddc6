//! Text form of polynomial-represented scalars: `c0+c1*z+c2*z^2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Render coefficients (constant term first) as `c0+c1*z+...`, skipping zeros.
pub(crate) fn render(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse `c0+c1*z+...` into a dense coefficient vector (length = max exponent + 1).
pub(crate) fn parse(s: &str) -> Result<Vec<BigRational>, FieldError> {
    let err = || FieldError::ParseScalar(s.to_string());
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&text[start..i]);
            start = i;
        }
    }
    terms.push(&text[start..]);

    let mut coeffs: Vec<BigRational> = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (coef_str, mono) = match body.find('z') {
            None => (body, ""),
            Some(pos) => {
                let head = &body[..pos];
                let head = head.strip_suffix('*').unwrap_or(head);
                if pos > 0 && head.len() == body[..pos].len() {
                    // coefficient glued to z without '*'
                    return Err(err());
                }
                (head, &body[pos..])
            }
        };
        let coef = if coef_str.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coef_str).ok_or_else(err)?
        };
        let exp: usize = match mono {
            "" => 0,
            "z" => 1,
            m => m
                .strip_prefix("z^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(err)?,
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigRational::zero());
        }
        let signed = if sign < 0 { -coef } else { coef };
        coeffs[exp] += signed;
    }
    Ok(coeffs)
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn render_and_parse() {
        let c = vec![q(1, 1), q(-2, 1), q(1, 3)];
        let s = render(&c);
        assert_eq!(s, "1-2*z+1/3*z^2");
        assert_eq!(parse(&s).unwrap(), c);
        assert_eq!(render(&[q(0, 1), q(-1, 1)]), "-z");
        assert_eq!(parse("-z").unwrap(), vec![q(0, 1), q(-1, 1)]);
        assert_eq!(render(&[q(0, 1)]), "0");
        assert_eq!(parse("3*z^2 + 1").unwrap(), vec![q(1, 1), q(0, 1), q(3, 1)]);
        assert!(parse("2z").is_err());
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
    }
}
