//! Exact scalars: arbitrary-precision rationals or residues in a prime field F_p.
//!
//! Every scalar carries its field tag. Mixing tags in an arithmetic operation
//! is a programming error and panics; inputs are validated at the parsing and
//! matrix-construction boundaries so this cannot be triggered from files.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::EngineError;

/// The ground field of a computation: ℚ or F_p with p prime.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GroundField {
    Rational,
    Prime(u64),
}

impl GroundField {
    /// Parses `rational` or `prime <p>` (also accepts `prime:<p>`).
    pub fn parse(text: &str) -> Result<GroundField, EngineError> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["rational"] => Ok(GroundField::Rational),
            ["prime", p] => GroundField::parse_prime(p),
            [one] if one.starts_with("prime:") => GroundField::parse_prime(&one[6..]),
            _ => Err(EngineError::Config(format!(
                "unknown field `{text}` (expected `rational` or `prime <p>`)"
            ))),
        }
    }

    fn parse_prime(tok: &str) -> Result<GroundField, EngineError> {
        let p: u64 = tok
            .parse()
            .map_err(|_| EngineError::Config(format!("invalid prime modulus `{tok}`")))?;
        if p >= 1 << 31 {
            return Err(EngineError::Config(format!("modulus {p} too large (< 2^31)")));
        }
        if !is_prime(p) {
            return Err(EngineError::Config(format!("modulus {p} is not prime")));
        }
        Ok(GroundField::Prime(p))
    }
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundField::Rational => write!(f, "rational"),
            GroundField::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (enforced by `BigRational`); prime-field values lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> GroundField {
        match self {
            Scalar::Rational(_) => GroundField::Rational,
            Scalar::Prime { p, .. } => GroundField::Prime(*p),
        }
    }

    pub fn zero(field: GroundField) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: GroundField) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: GroundField, n: i64) -> Scalar {
        match field {
            GroundField::Rational => Scalar::Rational(BigRational::from(BigInt::from(n))),
            GroundField::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Prime { p, value: r }
            }
        }
    }

    pub fn from_ratio(field: GroundField, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        let n = Scalar::from_integer(field, num);
        let d = Scalar::from_integer(field, den);
        n.div(&d)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { p: *p, value: (a + b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { p: *p, value: (a + p - b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Prime { p: *p, value: prod as u64 }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, value } => Scalar::Prime { p: *p, value: (p - value) % p },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { p, value } => Scalar::Prime { p: *p, value: mod_inverse(*value, *p) },
        })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    /// Parses `n`, `-n`, or `n/d`. In F_p the quotient is taken mod p.
    pub fn parse(field: GroundField, text: &str) -> Result<Scalar, EngineError> {
        let bad = |t: &str| EngineError::Config(format!("invalid scalar `{t}`"));
        let parse_int = |t: &str| -> Result<i64, EngineError> {
            t.trim().parse::<i64>().map_err(|_| bad(text))
        };
        if let Some((n, d)) = text.split_once('/') {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den == 0 {
                return Err(bad(text));
            }
            let d = Scalar::from_integer(field, den);
            if d.is_zero() {
                return Err(EngineError::Config(format!(
                    "denominator of `{text}` vanishes in {field}"
                )));
            }
            Ok(Scalar::from_integer(field, num).div(&d))
        } else {
            Ok(Scalar::from_integer(field, parse_int(text)?))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert!(r0 == 1, "{a} not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

/// Renders a coordinate vector as `c1*label1 + c2*label2` over the given labels.
pub fn format_vector(coords: &[Scalar], labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (c, l) in coords.iter().zip(labels) {
        if !c.is_zero() {
            if c.is_one() {
                parts.push(l.clone());
            } else {
                parts.push(format!("{c}*{l}"));
            }
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let half = Scalar::from_ratio(GroundField::Rational, 2, 4);
        assert_eq!(half.to_string(), "1/2");
        let neg = Scalar::from_ratio(GroundField::Rational, 3, -6);
        assert_eq!(neg.to_string(), "-1/2");
        assert_eq!(Scalar::from_integer(GroundField::Rational, 7).to_string(), "7");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = GroundField::Prime(5);
        let a = Scalar::from_integer(f, 3);
        let b = Scalar::from_integer(f, 4);
        assert_eq!(a.add(&b).to_string(), "2");
        assert_eq!(a.mul(&b).to_string(), "2");
        assert_eq!(a.inv().unwrap().to_string(), "2");
        assert_eq!(Scalar::from_integer(f, -1).to_string(), "4");
    }

    #[test]
    fn parse_round_trip() {
        let s = Scalar::parse(GroundField::Rational, "-7/3").unwrap();
        assert_eq!(s.to_string(), "-7/3");
        let s = Scalar::parse(GroundField::Prime(7), "1/2").unwrap();
        assert_eq!(s.to_string(), "4");
        assert!(Scalar::parse(GroundField::Rational, "x").is_err());
    }

    #[test]
    fn field_parse() {
        assert_eq!(GroundField::parse("rational").unwrap(), GroundField::Rational);
        assert_eq!(GroundField::parse("prime 13").unwrap(), GroundField::Prime(13));
        assert!(GroundField::parse("prime 12").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_field_panics() {
        let a = Scalar::from_integer(GroundField::Rational, 1);
        let b = Scalar::from_integer(GroundField::Prime(3), 1);
        let _ = a.add(&b);
    }
}
