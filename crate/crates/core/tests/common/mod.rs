//! Independent oracles for integration tests. Nothing here calls the
//! library's symbol or invariant code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};
use quadext::arith::Rational;
use quadext::qform::QuadraticForm;

/// Largest prime handled by exhaustive search; beyond it Euler's criterion.
const BRUTE_LIMIT: u64 = 13;

/// Squarefree kernel: s with a = s·t² and s squarefree.
fn squarefree_i128(mut a: i128) -> i128 {
    let sign = a.signum();
    a = a.abs();
    let mut out = 1i128;
    let mut p = 2i128;
    while p * p <= a {
        let mut e = 0;
        while a % p == 0 {
            a /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * out * a
}

fn primes_of(mut a: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= a {
        if a.is_multiple_of(p) {
            out.push(p as u64);
            while a.is_multiple_of(p) {
                a /= p;
            }
        }
        p += 1;
    }
    if a > 1 {
        out.push(a as u64);
    }
    out
}

/// (a, b)_p by searching for a primitive zero of a x² + b y² - z² modulo
/// p^k, after reducing a and b to squarefree representatives. With
/// coefficients of valuation at most 1, a primitive zero mod p² (odd p) or
/// mod 2⁶ lifts by Hensel's lemma, and every p-adic zero reduces to one.
pub fn brute_hilbert(a: i64, b: i64, p: u64) -> i8 {
    let (a, b) = (squarefree_i128(a as i128), squarefree_i128(b as i128));
    let k = if p == 2 { 6 } else { 2 };
    let m = (p as i128).pow(k);
    let md = |x: i128| x.rem_euclid(m);
    let mut square = vec![false; m as usize];
    let mut unit_square = vec![false; m as usize];
    for z in 0..m {
        let s = md(z * z) as usize;
        square[s] = true;
        if z % p as i128 != 0 {
            unit_square[s] = true;
        }
    }
    for x in 0..m {
        let ax = md(a * x * x);
        for y in 0..m {
            let v = md(ax + b * y * y) as usize;
            let xy_unit = x % p as i128 != 0 || y % p as i128 != 0;
            if (xy_unit && square[v]) || unit_square[v] {
                return 1;
            }
        }
    }
    -1
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol by Euler's criterion.
fn euler(u: i128, p: u64) -> i8 {
    let p = p as u128;
    let r = pow_mod(u.rem_euclid(p as i128) as u128, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Textbook formula for odd p: with a = p^α u, b = p^β v,
/// (a, b)_p = (-1)^{αβ(p-1)/2} (u/p)^β (v/p)^α.
fn euler_hilbert(a: i128, b: i128, p: u64) -> i8 {
    let split = |mut x: i128| {
        let mut e = 0;
        while x % p as i128 == 0 {
            x /= p as i128;
            e += 1;
        }
        (e % 2, x)
    };
    let ((al, u), (be, v)) = (split(a), split(b));
    let mut s = 1i8;
    if al * be == 1 && p % 4 == 3 {
        s = -s;
    }
    if be == 1 {
        s *= euler(u, p);
    }
    if al == 1 {
        s *= euler(v, p);
    }
    s
}

/// (a, b)_v for v = None (the real place) or Some(p).
pub fn oracle_hilbert(a: i128, b: i128, v: Option<u64>) -> i8 {
    match v {
        None => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Some(p) if p <= BRUTE_LIMIT => {
            let (a, b) = (squarefree_i128(a), squarefree_i128(b));
            brute_hilbert(a as i64, b as i64, p)
        }
        Some(p) => euler_hilbert(squarefree_i128(a), squarefree_i128(b), p),
    }
}

/// Entries as integers in their square classes (n/d ~ n·d).
pub fn integer_entries(q: &QuadraticForm) -> Vec<i128> {
    q.entries()
        .iter()
        .map(|x| squarefree_i128((x.numer() * x.denom()).to_i128().expect("small entries")))
        .collect()
}

fn hasse(entries: &[i128], v: Option<u64>) -> i8 {
    let mut s = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= oracle_hilbert(entries[i], entries[j], v);
        }
    }
    s
}

fn det_class(entries: &[i128]) -> i128 {
    entries.iter().fold(1i128, |acc, &e| squarefree_i128(acc * e))
}

/// Hasse–Minkowski with independently computed invariants.
pub fn oracle_isometric(q1: &QuadraticForm, q2: &QuadraticForm) -> bool {
    let (e1, e2) = (integer_entries(q1), integer_entries(q2));
    if e1.len() != e2.len() {
        return false;
    }
    let neg = |e: &[i128]| e.iter().filter(|x| **x < 0).count();
    if neg(&e1) != neg(&e2) || det_class(&e1) != det_class(&e2) {
        return false;
    }
    let mut primes: BTreeSet<u64> = [2].into();
    for e in e1.iter().chain(&e2) {
        primes.extend(primes_of(e.unsigned_abs()));
    }
    primes
        .into_iter()
        .all(|p| hasse(&e1, Some(p)) == hasse(&e2, Some(p)))
}

/// Signed discriminant class (-1)^{n(n-1)/2} det, as a squarefree integer.
pub fn oracle_signed_disc(q: &QuadraticForm) -> i128 {
    let n = q.dim();
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    det_class(&integer_entries(q)) * sign
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn form(entries: &[i64]) -> QuadraticForm {
    QuadraticForm::from_ints(entries).unwrap()
}

/// Signature from entry signs.
pub fn oracle_signature(q: &QuadraticForm) -> i64 {
    q.entries()
        .iter()
        .map(|x| {
            if x.is_negative() {
                -1
            } else if x.is_zero() {
                0
            } else {
                1
            }
        })
        .sum()
}
