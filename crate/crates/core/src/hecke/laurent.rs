//! Laurent polynomials in the Hecke parameter q over exact rationals.
//!
//! Canonical form stores no zero coefficients, so equality is structural.
//! A rational specialization of q is obtained with [`Laurent::eval`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::rat::{self, Rat};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i64, Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Rat::from_integer(1))
    }

    pub fn constant(c: Rat) -> Self {
        Laurent::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Laurent { coeffs }
    }

    /// The parameter q itself.
    pub fn q() -> Self {
        Laurent::monomial(1, Rat::from_integer(1))
    }

    /// q - 1, the coefficient of every commutation correction.
    pub fn q_minus_one() -> Self {
        &Laurent::q() - &Laurent::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rat> {
        &self.coeffs
    }

    pub fn scaled(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational q (or any rational when no
    /// negative exponents occur).
    pub fn eval(&self, q: &Rat) -> Rat {
        let mut acc = Rat::from_integer(0);
        for (&e, c) in &self.coeffs {
            acc += c * pow_rat(q, e);
        }
        acc
    }
}

fn pow_rat(q: &Rat, e: i64) -> Rat {
    match e.cmp(&0) {
        std::cmp::Ordering::Equal => Rat::from_integer(1),
        std::cmp::Ordering::Greater => {
            let mut acc = Rat::from_integer(1);
            for _ in 0..e {
                acc *= q;
            }
            acc
        }
        std::cmp::Ordering::Less => Rat::from_integer(1) / pow_rat(q, -e),
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            let entry = coeffs.entry(e).or_insert_with(|| Rat::from_integer(0));
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        Laurent { coeffs }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                let entry = coeffs
                    .entry(e1 + e2)
                    .or_insert_with(|| Rat::from_integer(0));
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Laurent { coeffs }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if c < &Rat::from_integer(0) {
                ("-", -c)
            } else {
                ("+", *c)
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_part = rat::display_rat(&mag);
            match e {
                0 => write!(f, "{coeff_part}")?,
                _ => {
                    if mag != Rat::from_integer(1) {
                        write!(f, "{coeff_part}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.coeffs.len()))?;
        for (&e, c) in &self.coeffs {
            seq.serialize_element(&(e, rat::RatPair(*c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, rat::RatPair)>::deserialize(de)?;
        let mut acc = Laurent::zero();
        for (e, c) in pairs {
            acc = &acc + &Laurent::monomial(e, c.0);
        }
        Ok(acc)
    }
}
