use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{domain, Result};
use crate::Rational;

/// Decimal rendering of `r` with `digits` places after the point (truncated toward zero).
pub fn to_decimal_string(r: &Rational, digits: u32) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits);
    let scaled = (a.numer() * &scale).div_floor(a.denom());
    let (int, frac) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        let f = frac.to_string();
        s.push('.');
        for _ in f.len()..digits as usize {
            s.push('0');
        }
        s.push_str(&f);
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    s
}

/// Parses `"p/q"`, an integer, or a plain decimal (optionally with exponent) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().or_else(|_| domain(format!("bad numerator in {t:?}")))?;
        let d: BigInt = d.trim().parse().or_else(|_| domain(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return domain(format!("zero denominator in {t:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().or_else(|_| domain(format!("bad exponent in {t:?}")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return domain(format!("not a number: {t:?}"));
    }
    let digits: BigInt = format!("{int}{frac}").parse().or_else(|_| domain(format!("not a number: {t:?}")))?;
    let exp10 = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if exp10 >= 0 {
        Rational::from_integer(digits * ten.pow(exp10 as u32))
    } else {
        Rational::new(digits, ten.pow(exp10.unsigned_abs()))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("1.5e2").unwrap(), rat(150));
        assert_eq!(parse_rational("25e-2").unwrap(), ratio(1, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn renders_decimals() {
        assert_eq!(to_decimal_string(&ratio(2, 3), 5), "0.66666");
        assert_eq!(to_decimal_string(&ratio(-1, 8), 5), "-0.125");
        assert_eq!(to_decimal_string(&rat(3), 4), "3.0");
    }
}
