//! Exact rationals and the factorial-type products used throughout.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type BigCount = BigUint;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn count_to_rational(c: &BigCount) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

/// Parses `"3"`, `"-2/5"` or a finite decimal such as `"2.5"`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("{s:?}: {e}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|e| bad(&e))?;
        let den: BigInt = den.trim().parse().map_err(|e| bad(&e))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("{s:?}: not a decimal")));
        }
        let num: BigInt = digits.parse().map_err(|e| bad(&e))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    let v: BigInt = s.parse().map_err(|e| bad(&e))?;
    Ok(Rational::from_integer(v))
}

/// `"num/den"` in lowest terms, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn rising(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t -= Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> BigCount {
    (1..=n as u64).fold(BigCount::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && r <= &Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&ratio(6, 30)), "1/5");
    }

    #[test]
    fn factorial_products() {
        assert_eq!(rising(&int(2), 3), int(24));
        assert_eq!(rising(&int(5), 0), int(1));
        assert_eq!(falling(&int(5), 2), int(20));
        assert_eq!(factorial(9), BigCount::from(362880u32));
        assert_eq!(binomial(9, 3), BigCount::from(84u32));
        assert_eq!(binomial(2, 3), BigCount::zero());
    }

    #[test]
    fn float_round_trip() {
        assert_eq!(to_f64(&from_f64(0.3)), 0.3);
        assert_eq!(to_f64(&ratio(1, 3)), 1.0 / 3.0);
    }
}
