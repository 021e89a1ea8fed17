//! Solving for a square class with prescribed Hilbert symbols.
//!
//! Given a class `c` and a finite set `T` of places, find `x` with
//! `(x, c)_v = -1` exactly for `v` in `T`. A solution exists iff `|T|` is even
//! and `c` is a local nonsquare at every place of `T`.

use std::collections::BTreeSet;

use num::bigint::BigUint;

use super::factor::primes_below;
use super::hilbert::{hilbert_sc, symbol_support};
use super::{Place, SquareClass};

/// Size of the canonical-order scan tried before the linear-algebra solver.
const SCAN_LIMIT: u64 = 200;
/// Number of auxiliary primes the linear-algebra solver may draw on.
const EXTRA_PRIMES: usize = 400;

/// Whether some `x` realizes the target support against `c`.
pub fn partner_exists(c: &SquareClass, targets: &BTreeSet<Place>) -> bool {
    targets.len().is_multiple_of(2) && targets.iter().all(|v| !c.is_local_square(v))
}

/// Canonically smallest small solution if one exists in the scan range, and
/// otherwise a solution from the F2 linear system.
pub fn find_symbol_partner(c: &SquareClass, targets: &BTreeSet<Place>) -> Option<SquareClass> {
    if !partner_exists(c, targets) {
        return None;
    }
    scan_partner(c, targets).or_else(|| solve_partner(c, targets))
}

fn is_squarefree(n: u64) -> bool {
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn scan_partner(c: &SquareClass, targets: &BTreeSet<Place>) -> Option<SquareClass> {
    for n in 1..=SCAN_LIMIT {
        if !is_squarefree(n) {
            continue;
        }
        for sign in [1i64, -1] {
            let x = SquareClass::of_int(sign * n as i64).expect("nonzero");
            let support: BTreeSet<Place> = symbol_support(&x, c).into_iter().collect();
            if &support == targets {
                return Some(x);
            }
        }
    }
    None
}

/// Bitset row over the tracked places, plus the set of generators combined.
#[derive(Clone)]
struct Row {
    bits: Vec<bool>,
    combo: Vec<bool>,
}

fn solve_partner(c: &SquareClass, targets: &BTreeSet<Place>) -> Option<SquareClass> {
    let mut places: BTreeSet<Place> = c.bad_places().into_iter().collect();
    places.extend(targets.iter().cloned());
    let places: Vec<Place> = places.into_iter().collect();

    let mut gens: Vec<SquareClass> = vec![SquareClass::minus_one()];
    for v in &places {
        if let Place::Finite(p) = v {
            gens.push(SquareClass::from_parts(false, vec![p.clone()]));
        }
    }
    let tracked: BTreeSet<BigUint> = places.iter().filter_map(|v| v.as_prime().cloned()).collect();
    // auxiliary primes l with (c/l) = 1 contribute nothing at l itself
    let extras = primes_below(20_000)
        .into_iter()
        .map(BigUint::from)
        .filter(|l| !tracked.contains(l))
        .filter(|l| c.is_local_square(&Place::finite_unchecked(l.clone())))
        .take(EXTRA_PRIMES);
    let extras: Vec<SquareClass> = extras.map(|l| SquareClass::from_parts(false, vec![l])).collect();

    let target: Vec<bool> = places.iter().map(|v| targets.contains(v)).collect();
    let total = gens.len() + extras.len();
    let mut basis: Vec<(usize, Row)> = Vec::new();

    let try_solve = |basis: &[(usize, Row)]| -> Option<Vec<bool>> {
        let mut t = Row {
            bits: target.clone(),
            combo: vec![false; total],
        };
        for (pivot, row) in basis {
            if t.bits[*pivot] {
                xor_into(&mut t, row);
            }
        }
        if t.bits.iter().any(|&b| b) {
            None
        } else {
            Some(t.combo)
        }
    };

    let all: Vec<&SquareClass> = gens.iter().chain(extras.iter()).collect();
    for (idx, g) in all.iter().enumerate() {
        let mut row = Row {
            bits: places.iter().map(|v| hilbert_sc(g, c, v) == -1).collect(),
            combo: vec![false; total],
        };
        row.combo[idx] = true;
        for (pivot, b) in &basis {
            if row.bits[*pivot] {
                xor_into(&mut row, b);
            }
        }
        if let Some(pivot) = row.bits.iter().position(|&b| b) {
            for (_, b) in basis.iter_mut() {
                if b.bits[pivot] {
                    xor_into(b, &row);
                }
            }
            basis.push((pivot, row));
        }
        if idx + 1 >= gens.len() {
            if let Some(combo) = try_solve(&basis) {
                let x = combo
                    .iter()
                    .zip(all.iter())
                    .filter(|(used, _)| **used)
                    .fold(SquareClass::one(), |acc, (_, g)| acc.mul(g));
                let support: BTreeSet<Place> = symbol_support(&x, c).into_iter().collect();
                debug_assert_eq!(&support, targets);
                return (&support == targets).then_some(x);
            }
        }
    }
    None
}

fn xor_into(dst: &mut Row, src: &Row) {
    for (a, b) in dst.bits.iter_mut().zip(&src.bits) {
        *a ^= *b;
    }
    for (a, b) in dst.combo.iter_mut().zip(&src.combo) {
        *a ^= *b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::of_int(n).unwrap()
    }

    fn places(ps: &[u32], real: bool) -> BTreeSet<Place> {
        let mut s: BTreeSet<Place> = ps.iter().map(|&p| Place::prime(p).unwrap()).collect();
        if real {
            s.insert(Place::Real);
        }
        s
    }

    #[test]
    fn quaternion_minus_one_minus_one() {
        let x = find_symbol_partner(&sc(-1), &places(&[2], true)).unwrap();
        assert_eq!(x, sc(-1));
    }

    #[test]
    fn obstruction_at_local_square() {
        // 17 is a square in Q_2, so no x has (x,17)_2 = -1
        assert!(find_symbol_partner(&sc(17), &places(&[2, 17], false)).is_none());
        // odd support violates reciprocity
        assert!(find_symbol_partner(&sc(-1), &places(&[2], false)).is_none());
    }

    #[test]
    fn linear_solver_finds_large_partners() {
        // targets whose smallest solution lies outside the scan range
        let c = sc(-1);
        let t = places(&[2, 10007], false);
        assert!(scan_partner(&c, &t).is_none());
        let x = solve_partner(&c, &t).unwrap();
        let support: BTreeSet<Place> = symbol_support(&x, &c).into_iter().collect();
        assert_eq!(support, t);
    }

    #[test]
    fn trivial_target() {
        assert_eq!(find_symbol_partner(&sc(7), &BTreeSet::new()), Some(sc(1)));
    }
}
