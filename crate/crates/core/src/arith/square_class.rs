use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint, Sign};
use num::traits::{One, Signed, Zero};

use super::factor::factorize;
use super::{Place, Rational};
use crate::error::{Error, Result};

/// An element of Q^×/Q^×², stored as its squarefree integer representative
/// together with the primes dividing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass {
    rep: BigInt,
    primes: Vec<BigUint>,
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass {
            rep: BigInt::one(),
            primes: Vec::new(),
        }
    }

    pub fn minus_one() -> Self {
        SquareClass {
            rep: -BigInt::one(),
            primes: Vec::new(),
        }
    }

    /// Square class of a nonzero rational.
    pub fn of(x: &Rational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Domain("square class of zero".into()));
        }
        // x = n/d lies in the class of n*d
        let negative = x.is_negative();
        let mut odd: Vec<BigUint> = Vec::new();
        let mut exps: Vec<(BigUint, u32)> = factorize(x.numer().magnitude());
        exps.extend(factorize(x.denom().magnitude()));
        exps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut i = 0;
        while i < exps.len() {
            let mut e = exps[i].1;
            let mut j = i + 1;
            while j < exps.len() && exps[j].0 == exps[i].0 {
                e += exps[j].1;
                j += 1;
            }
            if e % 2 == 1 {
                odd.push(exps[i].0.clone());
            }
            i = j;
        }
        Ok(Self::from_parts(negative, odd))
    }

    pub fn of_int(n: i64) -> Result<Self> {
        Self::of(&Rational::from_integer(BigInt::from(n)))
    }

    /// Builds a class from a sign and a strictly increasing list of primes.
    pub(crate) fn from_parts(negative: bool, primes: Vec<BigUint>) -> Self {
        debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        let mag: BigUint = primes.iter().product();
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        SquareClass {
            rep: BigInt::from_biguint(sign, mag),
            primes,
        }
    }

    /// The squarefree integer representative.
    pub fn rep(&self) -> &BigInt {
        &self.rep
    }

    /// Primes dividing the representative, ascending.
    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn is_negative(&self) -> bool {
        self.rep.is_negative()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn contains_prime(&self, p: &BigUint) -> bool {
        self.primes.binary_search(p).is_ok()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.rep.clone())
    }

    /// Product in Q^×/Q^×².
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() && j < other.primes.len() {
            match self.primes[i].cmp(&other.primes[j]) {
                Ordering::Less => {
                    primes.push(self.primes[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    primes.push(other.primes[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        primes.extend_from_slice(&self.primes[i..]);
        primes.extend_from_slice(&other.primes[j..]);
        Self::from_parts(self.is_negative() != other.is_negative(), primes)
    }

    pub fn neg(&self) -> SquareClass {
        Self::from_parts(!self.is_negative(), self.primes.clone())
    }

    /// Places where this class can have a nontrivial local symbol against a
    /// unit: the real place, 2, and the primes of the representative.
    pub fn bad_places(&self) -> Vec<Place> {
        let mut out = vec![Place::Real, Place::two()];
        out.extend(
            self.primes
                .iter()
                .filter(|p| **p != BigUint::from(2u32))
                .cloned()
                .map(Place::finite_unchecked),
        );
        out
    }

    /// Whether the class is a square in the completion at `v`.
    pub fn is_local_square(&self, v: &Place) -> bool {
        match v {
            Place::Real => !self.is_negative(),
            Place::Finite(p) => {
                if self.contains_prime(p) {
                    return false;
                }
                if *p == BigUint::from(2u32) {
                    let r = residue_mod(&self.rep, &BigUint::from(8u32));
                    r == 1
                } else {
                    super::hilbert::legendre_unchecked(&self.rep, p) == 1
                }
            }
        }
    }
}

pub(crate) fn residue_mod(n: &BigInt, m: &BigUint) -> u64 {
    let m_int = BigInt::from(m.clone());
    let r = ((n % &m_int) + &m_int) % &m_int;
    num::ToPrimitive::to_u64(&r).expect("residue fits")
}

/// Canonical order: by absolute value of the representative, positive first.
impl Ord for SquareClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep
            .magnitude()
            .cmp(other.rep.magnitude())
            .then_with(|| self.is_negative().cmp(&other.is_negative()))
    }
}

impl PartialOrd for SquareClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl FromStr for SquareClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let x = super::parse_rational(s)?;
        SquareClass::of(&x)
    }
}

impl serde::Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SquareClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn sc(s: &str) -> SquareClass {
        SquareClass::of(&parse_rational(s).unwrap()).unwrap()
    }

    #[test]
    fn representatives() {
        assert_eq!(sc("18").rep(), &BigInt::from(2));
        assert_eq!(sc("4/9").rep(), &BigInt::from(1));
        assert_eq!(sc("-50/27").rep(), &BigInt::from(-6));
        assert_eq!(sc("-1").rep(), &BigInt::from(-1));
        assert_eq!(sc("1/2").rep(), &BigInt::from(2));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            SquareClass::of(&Rational::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn multiplication_is_symmetric_difference() {
        assert_eq!(sc("6").mul(&sc("-10")), sc("-15"));
        assert_eq!(sc("7").mul(&sc("7")), SquareClass::one());
    }

    #[test]
    fn canonical_order() {
        let mut v = [sc("-2"), sc("3"), sc("1"), sc("2"), sc("-1")];
        v.sort();
        let reps: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        assert_eq!(reps, ["1", "-1", "2", "-2", "3"]);
    }

    #[test]
    fn local_squares() {
        assert!(sc("17").is_local_square(&Place::two()));
        assert!(!sc("-1").is_local_square(&Place::two()));
        assert!(sc("-1").is_local_square(&Place::prime(5u32).unwrap()));
        assert!(!sc("2").is_local_square(&Place::prime(5u32).unwrap()));
        assert!(!sc("-3").is_local_square(&Place::Real));
    }
}
