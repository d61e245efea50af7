//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always stored reduced with a
//! positive denominator. Helpers here cover the combinatorics the rest of the
//! crate leans on (binomials, divisor enumeration) and serde support encoding
//! rationals as `"p/q"` strings.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

/// Exact rational number; reduced, denominator positive, no rounding ever.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational (`q != 0`).
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    s.trim().parse::<BigRational>().ok()
}

/// Render as `"p"` or `"p/q"`, never a decimal.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
pub fn binomial(n: u64, k: u64) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= rat((n - i) as i64, (i + 1) as i64);
    }
    acc
}

/// Euler characteristic polynomial `C(n+k, n)` extended to negative `k`,
/// i.e. the product `(k+1)(k+2)...(k+n) / n!`.
pub fn binomial_poly(k: i64, n: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 1..=n {
        acc *= rat(k + i as i64, i as i64);
    }
    acc
}

/// Ascending divisors of `n >= 1`.
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
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// True when the reduced rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Extract `i64` from an integral rational, if it fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let digits = n.to_u64_digits();
    match (digits.0, digits.1.len()) {
        (Sign::NoSign, _) => Some(0),
        (sign, 1) if digits.1[0] <= i64::MAX as u64 => {
            let v = digits.1[0] as i64;
            Some(if sign == Sign::Minus { -v } else { v })
        }
        _ => None,
    }
}

/// Serde adapter: one rational as a `"p/q"` string.
pub mod serde_rat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
    }
}

/// Serde adapter: vectors of rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| {
                parse_rat(s).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
            })
            .collect()
    }
}

/// Serde adapter: matrices of rationals.
pub mod serde_rat_mat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        parse_rat(s)
                            .ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-7", "0", "22610/1", "-1/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1.5").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), rat_int(20));
        assert_eq!(binomial(4, 0), rat_int(1));
        assert_eq!(binomial(3, 5), rat_int(0));
        // χ(P³, O(-4)) = C(-1,3) = -1
        assert_eq!(binomial_poly(-4, 3), rat_int(-1));
        assert_eq!(binomial_poly(2, 3), rat_int(10));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn i64_extraction() {
        assert_eq!(to_i64(&rat_int(-42)), Some(-42));
        assert_eq!(to_i64(&rat(1, 2)), None);
        assert_eq!(to_i64(&rat_int(0)), Some(0));
    }
}
