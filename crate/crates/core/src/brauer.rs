//! The 2-torsion of Br(Q): formal products of quaternion symbols, compared by
//! their local invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{hilbert_sc, symbol_support, Place, SquareClass};

/// The quaternion algebra (a, b).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionSymbol {
    pub a: SquareClass,
    pub b: SquareClass,
}

impl QuaternionSymbol {
    pub fn new(a: SquareClass, b: SquareClass) -> Self {
        QuaternionSymbol { a, b }
    }

    pub fn local_invariant(&self, v: &Place) -> i8 {
        hilbert_sc(&self.a, &self.b, v)
    }

    /// Places where the algebra ramifies.
    pub fn ramification(&self) -> BTreeSet<Place> {
        symbol_support(&self.a, &self.b).into_iter().collect()
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A class in Br(Q)[2]. The symbol list is kept for display; identity is
/// decided by the ramification set alone.
#[derive(Debug, Clone)]
pub struct BrauerClass2 {
    symbols: Vec<QuaternionSymbol>,
    support: BTreeSet<Place>,
}

impl BrauerClass2 {
    pub fn trivial() -> Self {
        BrauerClass2 {
            symbols: Vec::new(),
            support: BTreeSet::new(),
        }
    }

    pub fn class_of(symbols: Vec<QuaternionSymbol>) -> Self {
        let mut support = BTreeSet::new();
        for s in &symbols {
            for v in s.ramification() {
                if !support.remove(&v) {
                    support.insert(v);
                }
            }
        }
        BrauerClass2 { symbols, support }
    }

    pub fn symbol(a: SquareClass, b: SquareClass) -> Self {
        Self::class_of(vec![QuaternionSymbol::new(a, b)])
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    /// Places with local invariant -1.
    pub fn support(&self) -> &BTreeSet<Place> {
        &self.support
    }

    pub fn local_invariant(&self, v: &Place) -> i8 {
        if self.support.contains(v) {
            -1
        } else {
            1
        }
    }

    pub fn add(&self, other: &BrauerClass2) -> BrauerClass2 {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        let support = self
            .support
            .symmetric_difference(&other.support)
            .cloned()
            .collect();
        BrauerClass2 { symbols, support }
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    /// Equality in Br(Q) / <modulus>.
    pub fn equal_mod(&self, other: &BrauerClass2, modulus: &BrauerClass2) -> bool {
        self == other || *self == other.add(modulus)
    }

    /// Whether the class dies over Q(√d): every ramified place must be
    /// nonsplit in the extension. d = 1 stands for Q × Q.
    pub fn is_split_by(&self, d: &SquareClass) -> bool {
        if d.is_one() {
            return self.is_trivial();
        }
        self.support.iter().all(|v| !d.is_local_square(v))
    }

    /// Index over Q; exponent-2 classes have index at most 2.
    pub fn index_bound(&self) -> u8 {
        if self.is_trivial() {
            1
        } else {
            2
        }
    }
}

impl PartialEq for BrauerClass2 {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
    }
}

impl Eq for BrauerClass2 {}

impl fmt::Display for BrauerClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let places: Vec<String> = self.support.iter().map(ToString::to_string).collect();
        write!(f, "ramified at {{{}}}", places.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    symbols: Vec<(SquareClass, SquareClass)>,
    profile: BTreeMap<Place, i8>,
}

impl Serialize for BrauerClass2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClassRepr {
            symbols: self.symbols.iter().map(|q| (q.a.clone(), q.b.clone())).collect(),
            profile: self.support.iter().map(|v| (v.clone(), -1)).collect(),
        }
        .serialize(s)
    }
}

/// Loading recomputes the local invariants and rejects a stale profile.
impl<'de> Deserialize<'de> for BrauerClass2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ClassRepr::deserialize(d)?;
        let class = BrauerClass2::class_of(
            r.symbols
                .into_iter()
                .map(|(a, b)| QuaternionSymbol::new(a, b))
                .collect(),
        );
        let mut claimed = BTreeSet::new();
        for (v, s) in r.profile {
            match s {
                -1 => {
                    claimed.insert(v);
                }
                1 => {}
                _ => {
                    return Err(D::Error::custom(format!(
                        "local invariant at {v} must be 1 or -1"
                    )))
                }
            }
        }
        if claimed != class.support {
            return Err(D::Error::custom("stored profile does not match the symbols"));
        }
        Ok(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::of_int(n).unwrap()
    }

    fn p(n: u32) -> Place {
        Place::prime(n).unwrap()
    }

    #[test]
    fn class_of_examples() {
        assert!(BrauerClass2::class_of(vec![]).is_trivial());
        assert!(BrauerClass2::symbol(sc(1), sc(7)).is_trivial());
        let h = BrauerClass2::symbol(sc(-1), sc(-1));
        assert_eq!(h.support(), &BTreeSet::from([Place::Real, p(2)]));
        assert_eq!(h.index_bound(), 2);
    }

    #[test]
    fn group_law() {
        let h = BrauerClass2::symbol(sc(-1), sc(-1));
        let m = BrauerClass2::symbol(sc(2), sc(5));
        assert!(h.add(&h).is_trivial());
        assert!(h.equal_mod(&h.add(&m), &m));
        assert!(!h.equal_mod(&BrauerClass2::trivial(), &m));
        assert_eq!(h.add(&m).index_bound(), 2);
        // (2,5) is ramified at 2 and 5
        assert_eq!(m.support(), &BTreeSet::from([p(2), p(5)]));
    }

    #[test]
    fn splitting_fields() {
        let h = BrauerClass2::symbol(sc(-1), sc(-1));
        assert!(BrauerClass2::trivial().is_split_by(&sc(5)));
        assert!(h.is_split_by(&sc(-1)));
        assert!(!h.is_split_by(&sc(17)));
        assert!(!h.is_split_by(&sc(1)));
        assert!(BrauerClass2::trivial().is_split_by(&sc(1)));
    }

    #[test]
    fn serde_verifies_profile() {
        let h = BrauerClass2::symbol(sc(-1), sc(-1));
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"symbols":[["-1","-1"]],"profile":{"inf":-1,"2":-1}}"#);
        let back: BrauerClass2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
        let stale = r#"{"symbols":[["-1","-1"]],"profile":{"inf":-1,"3":-1}}"#;
        assert!(serde_json::from_str::<BrauerClass2>(stale).is_err());
    }
}
