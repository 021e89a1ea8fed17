//! Twelve-dimensional forms in I³ as ⟨1, -d⟩ ⊗ ψ with disc ψ = 1.
//!
//! The quadratic field Q(√d) is found by a certified local-global search:
//! q becomes hyperbolic over K iff it does so at every completion of K, and
//! at a nonsplit completion only the discriminant survives restriction.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num::bigint::{BigInt, BigUint};
use num::traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{primes_below, Place, SquareClass};
use crate::error::{Error, Result};
use crate::involution::UnitaryDescent;
use crate::qform::{isometric, realize_form, FormProfile, QuadraticForm};

/// Candidates evaluated concurrently per round of the d-search.
const BATCH: usize = 32;
/// Candidate cap before falling back to small primes.
const MAX_CANDIDATES: usize = 1 << 14;
/// Primes added to the candidate generators when the first pass is exhausted.
const EXTENSION_PRIME_BOUND: u32 = 50;

/// One local condition of the hyperbolicity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceCheck {
    /// `None` for the global discriminant condition.
    pub place: Option<Place>,
    pub condition: String,
    pub holds: bool,
}

/// The record proving (or refuting) that q ⊗ Q(√d) is hyperbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub d: SquareClass,
    pub checks: Vec<PlaceCheck>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pfister12Result {
    pub d: SquareClass,
    pub psi: QuadraticForm,
    pub certificate: Certificate,
}

impl Pfister12Result {
    /// ⟨1, -d⟩ ⊗ ψ.
    pub fn product(&self) -> QuadraticForm {
        QuadraticForm::norm_form(&self.d).tensor(&self.psi)
    }

    /// The unitary descent (M_6(K), ad_ψ ⊗ bar) of which Ad_q is a quadratic
    /// extension.
    pub fn descent(&self) -> UnitaryDescent {
        UnitaryDescent::new(self.d.clone(), self.psi.clone())
    }
}

fn check(place: Option<Place>, condition: String, holds: bool) -> PlaceCheck {
    PlaceCheck {
        place,
        condition,
        holds,
    }
}

/// Whether q becomes hyperbolic over K = Q(√d), with a per-place record.
pub fn k_hyperbolic_test(q: &QuadraticForm, d: &SquareClass) -> Result<Certificate> {
    if q.dim() % 2 == 1 {
        return Err(Error::Precondition(format!("dimension {} is odd", q.dim())));
    }
    let pr = q.profile();
    let planes = q.dim() / 2;
    let hyp = FormProfile::hyperbolic(planes);
    let mut checks = Vec::new();
    if d.is_one() {
        checks.push(check(None, "hyperbolic over Q".into(), pr.is_hyperbolic()));
        return Ok(Certificate { d: d.clone(), checks });
    }
    let disc = pr.signed_disc();
    checks.push(check(
        None,
        format!("signed discriminant {disc} in {{1, {d}}}"),
        disc.is_one() || disc == d,
    ));
    if d.is_negative() {
        checks.push(check(Some(Place::Real), "K complex: no condition".into(), true));
    } else {
        checks.push(check(
            Some(Place::Real),
            "K totally real: signature 0".into(),
            pr.signature() == 0,
        ));
    }
    let mut places: BTreeSet<Place> = d.bad_places().into_iter().collect();
    for c in q.classes() {
        places.extend(c.bad_places());
    }
    places.remove(&Place::Real);
    for v in places {
        let holds;
        let condition;
        if d.is_local_square(&v) {
            condition = "d split: q locally hyperbolic".to_string();
            holds = disc.is_local_square(&v) && pr.hasse_at(&v) == hyp.hasse_at(&v);
        } else {
            condition = "d nonsplit: discriminant in {1, d} locally".to_string();
            holds = disc.is_local_square(&v) || disc.mul(d).is_local_square(&v);
        }
        checks.push(check(Some(v), condition, holds));
    }
    Ok(Certificate { d: d.clone(), checks })
}

fn require_i3_12(q: &QuadraticForm) -> Result<()> {
    if q.dim() != 12 {
        return Err(Error::Dimension {
            expected: 12,
            found: q.dim(),
        });
    }
    if let Some((invariant, place)) = q.profile().i3_obstruction() {
        return Err(Error::NotInI3 { invariant, place });
    }
    Ok(())
}

/// Squarefree products of `primes`, ascending, generated lazily.
fn subset_products(primes: Vec<BigUint>) -> impl Iterator<Item = BigUint> {
    // node (value, index of largest prime used); children replace or append
    // the next prime, so every subset appears exactly once and values grow
    let mut heap: BinaryHeap<Reverse<(BigUint, Option<usize>)>> = BinaryHeap::new();
    heap.push(Reverse((BigUint::one(), None)));
    std::iter::from_fn(move || {
        let Reverse((v, last)) = heap.pop()?;
        let next = last.map_or(0, |i| i + 1);
        if next < primes.len() {
            heap.push(Reverse((&v * &primes[next], Some(next))));
            if let Some(i) = last {
                heap.push(Reverse((&v / &primes[i] * &primes[next], Some(next))));
            }
        }
        Some(v)
    })
}

/// Candidates for d in canonical order (|d| ascending, positive first).
fn candidates(primes: Vec<BigUint>) -> impl Iterator<Item = SquareClass> {
    subset_products(primes).flat_map(|v| {
        let pos = SquareClass::of(&BigInt::from(v).into()).expect("nonzero");
        let neg = pos.neg();
        [pos, neg]
    })
}

fn search_d(q: &QuadraticForm, cands: impl Iterator<Item = SquareClass>) -> Result<Option<SquareClass>> {
    let cands: Vec<SquareClass> = cands.take(MAX_CANDIDATES).collect();
    for chunk in cands.chunks(BATCH) {
        // gather the whole batch, then take the first success in order
        let results: Vec<bool> = chunk
            .par_iter()
            .map(|d| k_hyperbolic_test(q, d).map(|c| c.holds()))
            .collect::<Result<_>>()?;
        if let Some(i) = results.iter().position(|&ok| ok) {
            return Ok(Some(chunk[i].clone()));
        }
    }
    Ok(None)
}

/// The canonically smallest d with q hyperbolic over Q(√d).
pub fn find_d(q: &QuadraticForm) -> Result<SquareClass> {
    require_i3_12(q).map_err(|e| Error::Precondition(e.to_string()))?;
    let mut primes: BTreeSet<BigUint> = [BigUint::from(2u32)].into();
    for c in q.classes() {
        primes.extend(c.primes().iter().cloned());
    }
    if let Some(d) = search_d(q, candidates(primes.iter().cloned().collect()))? {
        return Ok(d);
    }
    primes.extend(primes_below(EXTENSION_PRIME_BOUND).into_iter().map(BigUint::from));
    if let Some(d) = search_d(q, candidates(primes.into_iter().collect()))? {
        return Ok(d);
    }
    Err(Error::SearchExhausted(
        "no quadratic field makes the form hyperbolic".into(),
    ))
}

/// Target profile for a 6-dimensional ψ with ⟨1, -d⟩ ⊗ ψ ≅ q.
///
/// Over Q the local Hasse invariants of ψ never reach ⟨1, -d⟩ ⊗ ψ: for even
/// dim ψ and c = -d, s(ψ ⊥ cψ) depends only on c and det ψ. So only the
/// signature is constrained, and the Hasse data is chosen with the smallest
/// support compatible with it.
fn psi_profile(q: &QuadraticForm, d: &SquareClass) -> Result<FormProfile> {
    let signature = if d.is_negative() {
        let s = q.signature();
        if s % 2 != 0 || ![-4, 0, 4].contains(&(s / 2)) {
            return Err(Error::Precondition(format!(
                "signature {s} has no 6-dimensional half"
            )));
        }
        s / 2
    } else {
        0
    };
    let negatives = (6 - signature) / 2;
    let mut hasse = BTreeSet::new();
    if (negatives * (negatives - 1) / 2) % 2 == 1 {
        hasse.insert(Place::Real);
        hasse.insert(Place::two());
    }
    FormProfile::new(6, SquareClass::one(), signature, hasse)
}

/// Bounded search over ψ = ⟨a₁, …, a₅, a₆⟩ with a₆ fixing the discriminant.
fn search_psi(q: &QuadraticForm, d: &SquareClass) -> Option<QuadraticForm> {
    let mut pool: BTreeSet<SquareClass> = [1i64, -1, 2, -2, 3, -3]
        .iter()
        .map(|&n| SquareClass::of_int(n).expect("nonzero"))
        .collect();
    pool.extend(q.classes());
    pool.insert(d.clone());
    pool.insert(d.neg());
    let pool: Vec<SquareClass> = pool.into_iter().take(12).collect();
    let n = pool.len();
    let norm = QuadraticForm::norm_form(d);
    let mut idx = [0usize; 5];
    loop {
        let head: Vec<SquareClass> = idx.iter().map(|&i| pool[i].clone()).collect();
        let prod = head.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
        // d±(ψ) = -det ψ for dim 6
        let last = prod.neg();
        let entries = head
            .iter()
            .chain(std::iter::once(&last))
            .map(SquareClass::to_rational)
            .collect();
        let psi = QuadraticForm::new(entries).expect("nonzero");
        if isometric(q, &norm.tensor(&psi)) {
            return Some(psi);
        }
        // nondecreasing index tuples
        let mut k = 4;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            if k == 0 {
                return None;
            }
            k -= 1;
        }
        for j in k + 1..5 {
            idx[j] = idx[k];
        }
    }
}

/// A 6-dimensional ψ with d±(ψ) = 1 and q ≅ ⟨1, -d⟩ ⊗ ψ.
pub fn find_psi(q: &QuadraticForm, d: &SquareClass) -> Result<QuadraticForm> {
    if q.dim() != 12 {
        return Err(Error::Dimension {
            expected: 12,
            found: q.dim(),
        });
    }
    if !k_hyperbolic_test(q, d)?.holds() {
        return Err(Error::Precondition(format!(
            "q is not hyperbolic over Q(sqrt({d}))"
        )));
    }
    let norm = QuadraticForm::norm_form(d);
    let verified =
        |psi: &QuadraticForm| psi.signed_discriminant().is_one() && isometric(q, &norm.tensor(psi));
    if d.is_one() {
        let psi = QuadraticForm::from_ints(&[1, 1, 1, -1, -1, -1])?;
        if verified(&psi) {
            return Ok(psi);
        }
    } else if let Ok(psi) = psi_profile(q, d).and_then(|pr| realize_form(&pr)) {
        if verified(&psi) {
            return Ok(psi);
        }
    }
    match search_psi(q, d) {
        Some(psi) if verified(&psi) => Ok(psi),
        _ => Err(Error::Internal(format!("no psi found for d = {d}"))),
    }
}

pub fn decompose12(q: &QuadraticForm) -> Result<Pfister12Result> {
    require_i3_12(q)?;
    let d = find_d(q)?;
    let psi = find_psi(q, &d)?;
    let certificate = k_hyperbolic_test(q, &d)?;
    let result = Pfister12Result { d, psi, certificate };
    if !result.certificate.holds()
        || !result.psi.signed_discriminant().is_one()
        || !isometric(q, &result.product())
    {
        return Err(Error::Internal("decomposition failed verification".into()));
    }
    Ok(result)
}
