//! Complete local data of a form: the Hasse–Minkowski classifying profile.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{clifford_correction, hasse_from_classes, sign_twist, QuadraticForm};
use crate::arith::{hilbert_sc, Place, SquareClass};
use crate::error::{Error, Invariant, Result};

/// Dimension, signed discriminant, signature and the finite set of places
/// where the Hasse invariant is -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormProfile {
    pub(super) dim: usize,
    pub(super) signed_disc: SquareClass,
    pub(super) signature: i64,
    pub(super) hasse: BTreeSet<Place>,
}

impl FormProfile {
    /// Builds a profile from raw parts and checks it is realizable.
    pub fn new(dim: usize, signed_disc: SquareClass, signature: i64, hasse: BTreeSet<Place>) -> Result<Self> {
        let pr = FormProfile {
            dim,
            signed_disc,
            signature,
            hasse,
        };
        pr.validate()?;
        Ok(pr)
    }

    pub fn of(q: &QuadraticForm) -> Self {
        let classes = q.classes();
        let det = classes.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
        let mut places: BTreeSet<Place> = [Place::Real, Place::two()].into();
        for c in &classes {
            places.extend(c.bad_places());
        }
        let hasse = places
            .into_iter()
            .filter(|v| hasse_from_classes(&classes, v) == -1)
            .collect();
        FormProfile {
            dim: q.dim(),
            signed_disc: sign_twist(q.dim(), &det),
            signature: q.signature(),
            hasse,
        }
    }

    /// Profile of the hyperbolic form with `planes` planes.
    pub fn hyperbolic(planes: usize) -> Self {
        let mut hasse = BTreeSet::new();
        // s(mH) = (-1,-1)^{m(m-1)/2}
        if (planes * planes.saturating_sub(1) / 2) % 2 == 1 {
            hasse.insert(Place::Real);
            hasse.insert(Place::two());
        }
        FormProfile {
            dim: 2 * planes,
            signed_disc: SquareClass::one(),
            signature: 0,
            hasse,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signed_disc(&self) -> &SquareClass {
        &self.signed_disc
    }

    pub fn signature(&self) -> i64 {
        self.signature
    }

    /// Places where the Hasse invariant is -1.
    pub fn hasse_support(&self) -> &BTreeSet<Place> {
        &self.hasse
    }

    pub fn hasse_at(&self, v: &Place) -> i8 {
        if self.hasse.contains(v) {
            -1
        } else {
            1
        }
    }

    /// Square class of the determinant.
    pub fn det_class(&self) -> SquareClass {
        sign_twist(self.dim, &self.signed_disc)
    }

    /// Number of negative entries in any diagonalization.
    pub fn negatives(&self) -> usize {
        ((self.dim as i64 - self.signature) / 2) as usize
    }

    /// The places at which any local invariant can be nontrivial.
    pub fn relevant_places(&self) -> BTreeSet<Place> {
        let mut places: BTreeSet<Place> = self.signed_disc.bad_places().into_iter().collect();
        places.extend(self.hasse.iter().cloned());
        places
    }

    /// Checks the conditions under which a form with this profile exists.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::NoSuchForm(m));
        let n = self.dim as i64;
        if n == 0 {
            return bad("dimension must be positive".into());
        }
        if self.signature.abs() > n || (n - self.signature) % 2 != 0 {
            return bad(format!(
                "signature {} impossible in dimension {n}",
                self.signature
            ));
        }
        if !self.hasse.len().is_multiple_of(2) {
            return bad("Hasse invariants violate reciprocity".into());
        }
        let r = self.negatives();
        let real_hasse = if (r * r.saturating_sub(1) / 2) % 2 == 1 {
            -1
        } else {
            1
        };
        if self.hasse_at(&Place::Real) != real_hasse {
            return bad("real Hasse invariant disagrees with the signature".into());
        }
        if self.det_class().is_negative() != (r % 2 == 1) {
            return bad("sign of the discriminant disagrees with the signature".into());
        }
        match self.dim {
            1 if !self.hasse.is_empty() => bad("a unary form has trivial Hasse invariant".into()),
            // <x, x det> has Hasse invariant (x, d±)
            2 => match self.hasse.iter().find(|v| self.signed_disc.is_local_square(v)) {
                Some(v) => bad(format!(
                    "binary form with square discriminant at {v} is split there"
                )),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    pub fn clifford_at(&self, v: &Place) -> i8 {
        clifford_correction(self.dim, &self.signed_disc, v) * self.hasse_at(v)
    }

    /// Places where the Clifford invariant is -1.
    pub fn clifford_support(&self) -> BTreeSet<Place> {
        self.relevant_places()
            .into_iter()
            .filter(|v| self.clifford_at(v) == -1)
            .collect()
    }

    /// The first invariant preventing membership in I³: odd dimension or a
    /// nontrivial discriminant (e1), else the first place with nontrivial
    /// Clifford invariant (e2).
    pub fn i3_obstruction(&self) -> Option<(Invariant, Option<Place>)> {
        if self.dim % 2 == 1 || !self.signed_disc.is_one() {
            return Some((Invariant::E1, None));
        }
        self.clifford_support()
            .into_iter()
            .next()
            .map(|v| (Invariant::E2, Some(v)))
    }

    pub fn in_i3(&self) -> bool {
        self.i3_obstruction().is_none()
    }

    /// (signature / 8) mod 2, defined on I³.
    pub fn e3_real(&self) -> Result<u8> {
        if let Some((inv, place)) = self.i3_obstruction() {
            let at = place.map(|p| format!(" at {p}")).unwrap_or_default();
            return Err(Error::Precondition(format!(
                "form is not in I^3 ({inv} nontrivial{at})"
            )));
        }
        Ok(self.signature.div_euclid(8).rem_euclid(2) as u8)
    }

    /// Local isotropy over the completion at `v`.
    pub fn is_isotropic_local(&self, v: &Place) -> bool {
        if self.dim == 1 {
            return false;
        }
        if v.is_real() {
            return (self.signature.unsigned_abs() as usize) < self.dim;
        }
        let det = self.det_class();
        let m1 = SquareClass::minus_one();
        match self.dim {
            2 => det.neg().is_local_square(v),
            3 => self.hasse_at(v) == hilbert_sc(&m1, &det.neg(), v),
            4 => !det.is_local_square(v) || self.hasse_at(v) == hilbert_sc(&m1, &m1, v),
            _ => true,
        }
    }

    /// Global isotropy by Hasse–Minkowski.
    pub fn is_isotropic(&self) -> bool {
        if !self.is_isotropic_local(&Place::Real) {
            return false;
        }
        self.dim >= 5 || self.relevant_places().iter().all(|v| self.is_isotropic_local(v))
    }

    /// Profile of `r` where this profile is that of `H ⊥ r`.
    pub fn split_hyperbolic(&self) -> Option<FormProfile> {
        if self.dim < 3 {
            return None;
        }
        // s(H ⊥ r) = s(r) (-1, det r) and det r = -det q
        let neg_det = self.det_class().neg();
        let m1 = SquareClass::minus_one();
        let hasse = self
            .relevant_places()
            .into_iter()
            .filter(|v| self.hasse_at(v) * hilbert_sc(&m1, &neg_det, v) == -1)
            .collect();
        Some(FormProfile {
            dim: self.dim - 2,
            signed_disc: self.signed_disc.clone(),
            signature: self.signature,
            hasse,
        })
    }

    pub fn witt_index(&self) -> usize {
        let mut index = 0;
        let mut cur = self.clone();
        while cur.is_isotropic() {
            index += 1;
            match cur.split_hyperbolic() {
                Some(next) => cur = next,
                None => break,
            }
        }
        index
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.dim.is_multiple_of(2) && *self == FormProfile::hyperbolic(self.dim / 2)
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    dim: usize,
    disc: SquareClass,
    signature: i64,
    hasse: BTreeMap<Place, i8>,
}

impl Serialize for FormProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProfileRepr {
            dim: self.dim,
            disc: self.signed_disc.clone(),
            signature: self.signature,
            hasse: self.hasse.iter().map(|v| (v.clone(), -1)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ProfileRepr::deserialize(d)?;
        let mut hasse = BTreeSet::new();
        for (v, s) in r.hasse {
            match s {
                -1 => {
                    hasse.insert(v);
                }
                1 => {}
                _ => return Err(D::Error::custom(format!("Hasse value at {v} must be 1 or -1"))),
            }
        }
        FormProfile::new(r.dim, r.disc, r.signature, hasse).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(s: &str) -> QuadraticForm {
        s.parse().unwrap()
    }

    fn p(n: u32) -> Place {
        Place::prime(n).unwrap()
    }

    #[test]
    fn basic_profiles() {
        let h = qf("1,-1").profile();
        assert_eq!(h, FormProfile::hyperbolic(1));
        assert!(h.hasse_support().is_empty());
        let pr = qf("1,1").profile();
        assert_eq!(pr.signed_disc(), &SquareClass::minus_one());
        assert_eq!(pr.signature(), 2);
        assert!(qf("1,2,-3").profile().validate().is_ok());
    }

    #[test]
    fn local_isotropy_examples() {
        assert!(qf("1,2,3,5,7").profile().is_isotropic_local(&p(7)));
        assert!(!qf("1,1").profile().is_isotropic_local(&Place::Real));
        assert!(!qf("1,-2").profile().is_isotropic_local(&p(2)));
        assert!(!qf("3").profile().is_isotropic_local(&p(5)));
        // x² + y² + z² is anisotropic only at 2 and ∞
        let pr = qf("1,1,1").profile();
        assert!(!pr.is_isotropic_local(&p(2)));
        assert!(pr.is_isotropic_local(&p(3)));
        // quaternion norm form of (-1,-1) is anisotropic at 2
        assert!(!qf("1,1,1,1").profile().is_isotropic_local(&p(2)));
        assert!(qf("1,1,1,1").profile().is_isotropic_local(&p(3)));
    }

    #[test]
    fn witt_indices() {
        assert_eq!(QuadraticForm::hyperbolic(6).unwrap().witt_index(), 6);
        assert_eq!(qf("1,1,1,1").witt_index(), 0);
        assert_eq!(qf("1,1,-2,-2").witt_index(), 2);
        assert_eq!(qf("1,1,1,-1,-1,-1").witt_index(), 3);
        assert_eq!(qf("1,1,1,1,-7").witt_index(), 1);
        assert_eq!(qf("1,-1,1").witt_index(), 1);
    }

    #[test]
    fn split_hyperbolic_matches_direct_profile() {
        for r in ["1", "2,3", "1,1,1", "-5,3,7/2", "1,1,1,1,2,2"] {
            let r = qf(r);
            let q = qf("1,-1").orth_sum(&r);
            assert_eq!(q.profile().split_hyperbolic().unwrap(), r.profile(), "{r}");
        }
    }

    #[test]
    fn validate_rejects_bad_profiles() {
        let one = SquareClass::one();
        let odd: BTreeSet<Place> = [p(2)].into();
        assert!(FormProfile::new(2, one.clone(), 0, odd).is_err());
        assert!(FormProfile::new(2, one.clone(), 1, BTreeSet::new()).is_err());
        assert!(FormProfile::new(2, one.clone(), 4, BTreeSet::new()).is_err());
        // <1,-1> is split everywhere
        let pair: BTreeSet<Place> = [p(3), p(5)].into();
        assert!(FormProfile::new(2, one, 0, pair).is_err());
    }

    #[test]
    fn serde_shape() {
        let pr = qf("-1,-1").profile();
        let json = serde_json::to_string(&pr).unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"disc":"-1","signature":-2,"hasse":{"inf":-1,"2":-1}}"#
        );
        let back: FormProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pr);
        let broken = r#"{"dim":2,"disc":"-1","signature":-2,"hasse":{"inf":-1}}"#;
        assert!(serde_json::from_str::<FormProfile>(broken).is_err());
    }
}
