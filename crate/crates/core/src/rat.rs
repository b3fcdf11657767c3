//! Exact rational exponents and their `[num, den]` JSON encoding.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = Rational64;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn half() -> Rat {
    Rat::new(1, 2)
}

/// True when `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// True when `x` is a non-negative integer; returns it as u32.
pub fn as_non_negative_integer(x: &Rat) -> Option<u32> {
    if is_integer(x) && !x.is_negative() {
        u32::try_from(*x.numer()).ok()
    } else {
        None
    }
}

/// Serde adapter encoding a rational as a two-integer array `[num, den]`
/// in lowest terms with positive denominator.
pub mod as_pair {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        (*value.numer(), *value.denom()).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let (num, den) = <(i64, i64)>::deserialize(de)?;
        if den == 0 {
            return Err(D::Error::custom("rational denominator must be nonzero"));
        }
        Ok(Rat::new(num, den))
    }
}

/// Wrapper for rationals that serializes via [`as_pair`]; handy inside
/// collections where a `with`-attribute cannot reach.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatPair(#[allow(dead_code)] pub Rat);

impl Serialize for RatPair {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        as_pair::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for RatPair {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        as_pair::deserialize(de).map(RatPair)
    }
}

/// Parses "3", "-1/2" style rational literals (used by the CLI).
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        text.parse::<i64>().ok().map(Rat::from_integer)
    }
}

/// Renders a rational as "3" or "-1/2".
pub fn display_rat(x: &Rat) -> String {
    if is_integer(x) {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_roundtrip_normalizes() {
        let v: RatPair = serde_json::from_str("[2, 4]").unwrap();
        assert_eq!(v.0, rat(1, 2));
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,2]");
        let neg: RatPair = serde_json::from_str("[1, -2]").unwrap();
        assert_eq!(serde_json::to_string(&neg).unwrap(), "[-1,2]");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(serde_json::from_str::<RatPair>("[1, 0]").is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rat("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("7"), Some(int(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(display_rat(&rat(-1, 2)), "-1/2");
        assert_eq!(display_rat(&int(3)), "3");
    }
}
