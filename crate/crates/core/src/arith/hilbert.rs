//! Legendre and Hilbert symbols over Q, by the closed-form local formulas.

use num::bigint::{BigInt, BigUint};
use num::integer::Integer;
use num::traits::{One, Signed, ToPrimitive, Zero};

use super::square_class::residue_mod;
use super::{factor::is_prime, Place, Rational, SquareClass};
use crate::error::{Error, Result};

/// Jacobi symbol (a | n) for odd positive n.
fn jacobi(a: &BigUint, n: &BigUint) -> i8 {
    if let (Some(a), Some(n)) = (a.to_u64(), n.to_u64()) {
        return jacobi_u64(a % n, n);
    }
    let mut a = a % n;
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let eight = BigUint::from(8u32);
    let four = BigUint::from(4u32);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let r = &n % &eight;
        if tz % 2 == 1 && (r == three || r == five) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn jacobi_u64(mut a: u64, mut n: u64) -> i8 {
    let mut result = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Legendre symbol without validating `p`; `p` must be an odd prime.
pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigUint) -> i8 {
    let p_int = BigInt::from(p.clone());
    let r = a.mod_floor(&p_int);
    jacobi(r.magnitude(), p)
}

/// Legendre symbol (a | p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<i8> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(legendre_unchecked(a, p))
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: &BigUint) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Domain("valuation of zero".into()));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let p = BigInt::from(p.clone());
    Ok(int_valuation(x.numer(), &p).0 as i64 - int_valuation(x.denom(), &p).0 as i64)
}

/// Returns (v_p(n), n / p^v_p(n)).
fn int_valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    (v, rest)
}

/// Hilbert symbol of two nonzero integers at a place.
fn hilbert_int(a: &BigInt, b: &BigInt, v: &Place) -> i8 {
    let p = match v {
        Place::Real => {
            return if a.is_negative() && b.is_negative() { -1 } else { 1 };
        }
        Place::Finite(p) => p,
    };
    let p_int = BigInt::from(p.clone());
    let (va, u) = int_valuation(a, &p_int);
    let (vb, w) = int_valuation(b, &p_int);
    let (alpha, beta) = (va % 2 == 1, vb % 2 == 1);
    if *p == BigUint::from(2u32) {
        let eight = BigUint::from(8u32);
        let u8_ = residue_mod(&u, &eight);
        let w8 = residue_mod(&w, &eight);
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let mut e = eps(u8_) * eps(w8);
        if alpha {
            e += omega(w8);
        }
        if beta {
            e += omega(u8_);
        }
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = 1i8;
        if alpha && beta && residue_mod(&p_int, &BigUint::from(4u32)) == 3 {
            s = -s;
        }
        if beta {
            s *= legendre_unchecked(&u, p);
        }
        if alpha {
            s *= legendre_unchecked(&w, p);
        }
        s
    }
}

/// Hilbert symbol (a, b)_v of nonzero rationals: +1 iff z² = a x² + b y² has a
/// nontrivial solution over the completion at v.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("Hilbert symbol of zero".into()));
    }
    // n/d and n*d share a square class
    let a_int = a.numer() * a.denom();
    let b_int = b.numer() * b.denom();
    Ok(hilbert_int(&a_int, &b_int, v))
}

/// Hilbert symbol of two square classes.
pub fn hilbert_sc(a: &SquareClass, b: &SquareClass, v: &Place) -> i8 {
    if let Place::Finite(p) = v {
        // both units at p: only 2 can be nontrivial
        if *p != BigUint::from(2u32) && !a.contains_prime(p) && !b.contains_prime(p) {
            return 1;
        }
    }
    hilbert_int(a.rep(), b.rep(), v)
}

/// The places at which (a, b)_v can be -1.
pub fn symbol_places(a: &SquareClass, b: &SquareClass) -> Vec<Place> {
    let mut places = a.bad_places();
    places.extend(b.bad_places());
    places.sort();
    places.dedup();
    places
}

/// Places where (a, b)_v = -1.
pub fn symbol_support(a: &SquareClass, b: &SquareClass) -> Vec<Place> {
    symbol_places(a, b)
        .into_iter()
        .filter(|v| hilbert_sc(a, b, v) == -1)
        .collect()
}

/// Product of (a, b)_v over every place where it can be nontrivial. Hilbert
/// reciprocity says this is always true.
pub fn hilbert_reciprocity_check(a: &Rational, b: &Rational) -> Result<bool> {
    let a = SquareClass::of(a)?;
    let b = SquareClass::of(b)?;
    let product: i8 = symbol_places(&a, &b)
        .iter()
        .map(|v| hilbert_sc(&a, &b, v))
        .product();
    Ok(product == 1)
}
