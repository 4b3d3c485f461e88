//! Scalar helpers on top of `BigRational`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `p`, `-p` or `p/q`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = |msg: &str| Error::Parse(format!("{msg}: {t:?}"));
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("not an exact integer or fraction"));
        }
        part.parse::<BigInt>().map_err(|_| bad("not an integer"))
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t)?)),
        Some((p, q)) => {
            let num = parse_int(p.trim())?;
            let den = parse_int(q.trim())?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `p/q` or `p` when the value is an integer.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Least common multiple of the denominators of `v` (1 for integral vectors).
pub fn denominator_lcm<'a>(v: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()))
}

/// True when `r` is an integer multiple of `1/k`.
pub fn is_k_integral(r: &Rational, k: &BigInt) -> bool {
    (r * from_int(k)).is_integer()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm1(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

pub fn norm_inf(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

pub fn norm2_sq(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[Rational], s: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * s).collect()
}

/// `a + s*b`
pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn negative_part(v: &[Rational]) -> Vec<Rational> {
    v.iter()
        .map(|x| if x.is_negative() { -x } else { Rational::zero() })
        .collect()
}

pub fn support(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Positive divisors of `n > 0`, ascending. Trial division, so only for small `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(" 5 / -10 ").unwrap(), frac(-1, 2));
        for bad in ["1.5", "1e3", "", "/2", "3/0", "abc", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for r in [frac(7, 3), rat(-4), frac(-1, 9), rat(0)] {
            assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn divisors_of_5850() {
        let d = divisors(5850);
        assert_eq!(d.len(), 36);
        assert!(d.iter().all(|x| 5850 % x == 0));
        assert_eq!(d.first(), Some(&1));
        assert_eq!(d.last(), Some(&5850));
    }

    #[test]
    fn k_integrality() {
        assert!(is_k_integral(&frac(25, 13), &int(5850)));
        assert!(!is_k_integral(&frac(1, 4), &int(5850)));
    }
}
