//! Idempotents e with σ(e) = 1 - e, which exhibit (A, σ) as hyperbolic.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use super::algebra::{ExtensionAlgebra, ExtensionElement};
use super::kmatrix::KMatrix;
use crate::arith::{Rational, SquareClass};
use crate::brauer::BrauerClass2;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::qform::QuadraticForm;

/// Search bound for x² - d y² = c z².
const NORM_SEARCH: i64 = 400;

/// An element of K written as p + qδ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KElement {
    pub p: Rational,
    pub q: Rational,
}

/// Some w in K = Q(√d) with N(w) = w·w̄ = c, by bounded search; `None` if c is
/// not a norm or no small solution exists.
pub fn find_norm(d: &SquareClass, c: &Rational) -> Option<KElement> {
    if c.is_zero() {
        return None;
    }
    let c_class = SquareClass::of(c).ok()?;
    if !BrauerClass2::symbol(d.clone(), c_class).is_trivial() {
        return None;
    }
    // N((x + yδ) / (z·den)) = (c·den²) / den² with c·den² = num·den
    let den = c.denom().clone();
    let target = c.numer() * &den;
    let dv = d.rep().clone();
    for z in 1..=NORM_SEARCH {
        let cz2 = &target * BigInt::from(z * z);
        for y in 0..=NORM_SEARCH {
            let t = &cz2 + &dv * BigInt::from(y * y);
            if t.is_negative() {
                continue;
            }
            let x = t.sqrt();
            if &x * &x == t {
                let scale = Rational::from_integer(&den * BigInt::from(z));
                return Some(KElement {
                    p: Rational::from_integer(x) / &scale,
                    q: Rational::from_integer(BigInt::from(y)) / &scale,
                });
            }
        }
    }
    None
}

/// Pairs (i, j) of diagonal entries with -αⱼ/αᵢ a norm from K.
fn hyperbolic_pairing(d: &SquareClass, alphas: &[Rational]) -> Option<Vec<(usize, usize, KElement)>> {
    fn go(
        d: &SquareClass,
        alphas: &[Rational],
        free: &mut Vec<usize>,
        out: &mut Vec<(usize, usize, KElement)>,
    ) -> bool {
        let Some(&i) = free.first() else {
            return true;
        };
        for k in 1..free.len() {
            let j = free[k];
            let c = -(&alphas[j] / &alphas[i]);
            let Some(w) = find_norm(d, &c) else {
                continue;
            };
            free.remove(k);
            free.remove(0);
            out.push((i, j, w));
            if go(d, alphas, free, out) {
                return true;
            }
            out.pop();
            free.insert(0, i);
            free.insert(k, j);
        }
        false
    }
    if alphas.len() % 2 == 1 {
        return None;
    }
    let mut free: Vec<usize> = (0..alphas.len()).collect();
    let mut out = Vec::new();
    go(d, alphas, &mut free, &mut out).then_some(out)
}

/// e with e² = e and σ(e) = 1 - e, or `None` when (B, τ) is not hyperbolic.
///
/// K split: e = (1 + δ)/2. Otherwise the hermitian form ⟨α₁, …, α_m⟩ is
/// hyperbolic iff its trace form ⟨1, -d⟩ ⊗ ψ₀ is; e is then assembled from
/// 2×2 projections onto isotropic lines of paired entries. Fails with
/// `SearchExhausted` if the form is hyperbolic but no diagonal pairing with
/// small norm witnesses is found.
pub fn hyperbolicity_witness(alg: &ExtensionAlgebra) -> Result<Option<ExtensionElement>> {
    let (m, d) = (alg.m(), alg.d().clone());
    let descent = alg.descent();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let e = if descent.d.is_one() {
        KMatrix::scalar(m, &d, half.clone(), half)
    } else {
        let trace_form = QuadraticForm::norm_form(&descent.d).tensor(&descent.psi0);
        if !trace_form.is_hyperbolic() {
            return Ok(None);
        }
        let pairs = hyperbolic_pairing(&descent.d, descent.psi0.entries()).ok_or_else(|| {
            Error::SearchExhausted("hermitian form is hyperbolic but no diagonal pairing found".into())
        })?;
        let mut x = RatMatrix::zeros(m, m);
        let mut y = RatMatrix::zeros(m, m);
        for (i, j, w) in pairs {
            // projection onto span(w, 1) along span(-w, 1) in coordinates (i, j)
            let n = &w.p * &w.p - &d * &w.q * &w.q;
            x[(i, i)] = half.clone();
            x[(j, j)] = half.clone();
            x[(i, j)] = &w.p * &half;
            y[(i, j)] = &w.q * &half;
            // 1/(2w) = w̄ / (2N(w))
            x[(j, i)] = &w.p / (&n * Rational::from_integer(BigInt::from(2)));
            y[(j, i)] = -(&w.q / (&n * Rational::from_integer(BigInt::from(2))));
        }
        KMatrix::new(d.clone(), x, y)?
    };
    let e = alg.embed(e);
    let one = alg.one();
    if alg.multiply(&e, &e)? != e || alg.sigma(&e)? != one.sub(&e) {
        return Err(Error::Internal(
            "hyperbolic idempotent failed verification".into(),
        ));
    }
    Ok(Some(e))
}
