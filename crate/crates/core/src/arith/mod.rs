//! Exact arithmetic over Q: rationals, square classes, places, Legendre and
//! Hilbert symbols.

mod factor;
mod hilbert;
mod place;
mod solve;
mod square_class;

pub use factor::{factorize, is_prime, primes_below};
pub use hilbert::{
    hilbert_reciprocity_check, hilbert_sc, hilbert_symbol, legendre, symbol_places, symbol_support, valuation,
};
pub use place::Place;
pub use solve::{find_symbol_partner, partner_exists};
pub use square_class::SquareClass;

use num::bigint::BigInt;
use num::traits::Zero;

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(value)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Square class of a nonzero rational.
pub fn square_class(x: &Rational) -> Result<SquareClass> {
    SquareClass::of(x)
}

/// Serde adapter for rationals as canonical strings.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
