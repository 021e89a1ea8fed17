//! Constructing a diagonal form with a prescribed profile.

use std::collections::BTreeSet;

use num::bigint::BigInt;

use super::{hasse_from_classes, FormProfile, QuadraticForm};
use crate::arith::{find_symbol_partner, hilbert_sc, primes_below, Place, Rational, SquareClass};
use crate::error::{Error, Result};

/// Scalings tried on the first entry of the ±1 part before giving up.
const SCALE_PRIMES: u32 = 2000;

/// A form whose profile equals `pr`.
///
/// For n ≥ 3 the form is `q1 ⊥ <x, x·e>` where `q1` is a ±1 diagonal with
/// possibly one entry scaled by a prime, `e` fixes the determinant, and `x`
/// solves the Hilbert system that fixes the Hasse invariants.
pub fn realize_form(pr: &FormProfile) -> Result<QuadraticForm> {
    pr.validate()?;
    let det = pr.det_class();
    let q = match pr.dim() {
        1 => QuadraticForm::new(vec![det.to_rational()])?,
        2 => {
            // s(<x, x det>) = (x, -det) = (x, d±)
            let x = find_symbol_partner(pr.signed_disc(), pr.hasse_support())
                .ok_or_else(|| Error::NoSuchForm("binary Hilbert system unsolvable".into()))?;
            binary(&x, &det)
        }
        _ => realize_large(pr, &det)?,
    };
    if q.profile() != *pr {
        return Err(Error::Internal(format!(
            "realized {q} does not match the profile"
        )));
    }
    Ok(q)
}

fn binary(x: &SquareClass, e: &SquareClass) -> QuadraticForm {
    let x = x.to_rational();
    let xe = &x * e.to_rational();
    QuadraticForm::new(vec![x, xe]).expect("nonzero entries")
}

fn realize_large(pr: &FormProfile, det: &SquareClass) -> Result<QuadraticForm> {
    let n = pr.dim();
    let r = pr.negatives();
    let scales = std::iter::once(1u32).chain(primes_below(SCALE_PRIMES));
    for k in scales {
        for r_bin in 0..=2usize.min(r) {
            let r1 = r - r_bin;
            if r1 > n - 2 {
                continue;
            }
            let mut head: Vec<i64> = (0..n - 2).map(|i| if i < r1 { -1 } else { 1 }).collect();
            head[0] *= k as i64;
            let classes: Vec<SquareClass> = head
                .iter()
                .map(|&a| SquareClass::of_int(a).expect("nonzero"))
                .collect();
            let det1 = classes.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
            let e = det.mul(&det1);
            // target for (x, -e)_v: s_v(q) s_v(q1) (det q1, e)_v
            let mut places: BTreeSet<Place> = pr.relevant_places();
            places.extend(e.bad_places());
            let targets: BTreeSet<Place> = places
                .into_iter()
                .filter(|v| pr.hasse_at(v) * hasse_from_classes(&classes, v) * hilbert_sc(&det1, &e, v) == -1)
                .collect();
            let Some(x) = find_symbol_partner(&e.neg(), &targets) else {
                continue;
            };
            let mut entries: Vec<Rational> = head
                .iter()
                .map(|&a| Rational::from_integer(BigInt::from(a)))
                .collect();
            entries.extend(binary(&x, &e).entries().iter().cloned());
            let q = QuadraticForm::new(entries)?;
            if q.profile() == *pr {
                return Ok(q);
            }
        }
    }
    Err(Error::NoSuchForm(
        "no realization found in the search range".into(),
    ))
}
