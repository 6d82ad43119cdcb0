//! Exact rational scalars. All coefficients in the engine are `Rat`; no
//! floating point appears anywhere in the core or in any output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Render a rational as a decimal-free string: `"p"` when integral,
/// `"p/q"` otherwise, with `q > 0`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a `"p"` or `"p/q"` string. Floating-point literals (anything with
/// a `.`, `e` or `E`) are rejected.
pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("floating-point literal rejected: {s:?}"));
    }
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.parse::<BigInt>()
            .map_err(|_| format!("bad integer in rational literal: {t:?}"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(rs: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for r in rs {
        let d = r.denom().abs();
        let g = num_integer_gcd(&l, &d);
        l = &l / &g * &d;
    }
    l
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_strings() {
        for s in ["0", "7", "-3", "1/2", "-5/3", "22/7"] {
            let r = rat_from_string(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        assert_eq!(rat_to_string(&rat_from_string("2/4").unwrap()), "1/2");
        assert_eq!(rat_to_string(&rat_from_string("1/-2").unwrap()), "-1/2");
        assert_eq!(rat_to_string(&rat_from_string("4/2").unwrap()), "2");
    }

    #[test]
    fn rejects_floats() {
        assert!(rat_from_string("0.5").is_err());
        assert!(rat_from_string("1e3").is_err());
        assert!(rat_from_string("1/0").is_err());
    }
}
