//! Exact rational scalars and their JSON encoding.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"3"`, `"-1/2"` or `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches('-'), fraction);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fraction.len());
        let q = Rational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `{"num": "...", "den": "..."}` wire form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    #[serde(default = "one_string")]
    pub den: String,
}

fn one_string() -> String {
    "1".to_string()
}

impl RationalJson {
    pub fn encode(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }

    pub fn decode(&self) -> Result<Rational> {
        let n: BigInt = self
            .num
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad numerator `{}`", self.num)))?;
        let d: BigInt = self
            .den
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("bad denominator `{}`", self.den)))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("{}/{}", self.num, self.den)));
        }
        Ok(Rational::new(n, d))
    }
}

/// Accepts either a JSON string (`"1/2"`) or a JSON number.
pub fn rational_from_value(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        serde_json::Value::Object(_) => {
            let rj: RationalJson = serde_json::from_value(v.clone())?;
            rj.decode()
        }
        other => Err(Error::Malformed(format!("expected a rational, got {other}"))),
    }
}

pub(crate) fn abs_lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| {
        num_integer::Integer::lcm(&acc, &q.denom().abs())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = frac(-7, 3);
        let j = RationalJson::encode(&q);
        assert_eq!(j.num, "-7");
        assert_eq!(j.den, "3");
        assert_eq!(j.decode().unwrap(), q);
    }
}
