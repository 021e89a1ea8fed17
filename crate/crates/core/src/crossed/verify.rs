//! Direct verification of a constructed extension by exact linear algebra
//! over Q on the 4m²-dimensional algebra.

use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{ExtensionAlgebra, ExtensionElement, InvolutionType};
use super::kmatrix::KMatrix;
use crate::arith::{rat, Rational};
use crate::linalg::{rank_of, SparseVec};

const SAMPLES: usize = 8;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Outcome of every structural check, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub m: usize,
    #[serde(rename = "type")]
    pub kind: InvolutionType,
    pub dim: usize,
    pub center_dim: usize,
    pub trace_form_rank: usize,
    pub sym_dim: usize,
    pub expected_sym_dim: usize,
    pub centralizer_delta_dim: usize,
    pub centralizer_b_dim: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// m² + m(m + ε).
pub fn expected_sym_dim(m: usize, kind: InvolutionType) -> usize {
    let m = m as i64;
    (m * m + m * (m + kind.epsilon())) as usize
}

fn offset(v: SparseVec, by: usize) -> impl Iterator<Item = (usize, Rational)> {
    v.into_iter().map(move |(i, x)| (i + by, x))
}

/// dim of {a : a·g = g·a for all g in gens}.
fn centralizer_dim(alg: &ExtensionAlgebra, gens: &[ExtensionElement]) -> usize {
    let n = alg.dim();
    let rank = rank_of((0..n).map(|t| {
        let e = alg.basis(t);
        let mut v = SparseVec::new();
        for (k, g) in gens.iter().enumerate() {
            let c = alg.mul(&e, g).sub(&alg.mul(g, &e));
            v.extend(offset(c.coords(), k * n));
        }
        v
    }));
    n - rank
}

/// dim of the fixed space of a Q-linear map f.
fn fixed_dim(alg: &ExtensionAlgebra, f: impl Fn(&ExtensionElement) -> ExtensionElement) -> usize {
    let n = alg.dim();
    n - rank_of((0..n).map(|t| {
        let e = alg.basis(t);
        f(&e).sub(&e).coords()
    }))
}

/// Generators of B as a Q-algebra: δ and the matrix units next to the diagonal.
fn b_generators(alg: &ExtensionAlgebra) -> Vec<ExtensionElement> {
    let (m, d) = (alg.m(), alg.d());
    let mut gens = vec![alg.delta()];
    for i in 0..m.saturating_sub(1) {
        gens.push(alg.embed(KMatrix::unit(m, d, i, i + 1, false)));
        gens.push(alg.embed(KMatrix::unit(m, d, i + 1, i, false)));
    }
    gens
}

/// Rank of (x, y) ↦ tr(L_{xy}).
fn trace_form_rank(alg: &ExtensionAlgebra) -> usize {
    let n = alg.dim();
    let basis: Vec<ExtensionElement> = (0..n).map(|t| alg.basis(t)).collect();
    // ℓ(e_t) = tr(L_{e_t}) = Σ_s [e_t e_s]_s
    let ell: Vec<Rational> = basis
        .par_iter()
        .map(|e| {
            let mut tr = Rational::zero();
            for (s, es) in basis.iter().enumerate() {
                if let Some(x) = alg.mul(e, es).coords().get(&s) {
                    tr += x;
                }
            }
            tr
        })
        .collect();
    let rows: Vec<SparseVec> = basis
        .par_iter()
        .map(|x| {
            basis
                .iter()
                .enumerate()
                .filter_map(|(t, y)| {
                    let p = alg.mul(x, y).coords();
                    let v: Rational = p.iter().map(|(k, c)| c * &ell[*k]).sum();
                    (!v.is_zero()).then_some((t, v))
                })
                .collect()
        })
        .collect();
    rank_of(rows)
}

fn random_element(alg: &ExtensionAlgebra, rng: &mut ChaCha8Rng) -> ExtensionElement {
    let n = alg.dim();
    let mut a = alg.zero();
    for t in 0..n {
        if rng.gen_bool(0.4) {
            let c = rat(rng.gen_range(-3..=3));
            a = a.add(&alg.basis(t).scale(&c));
        }
    }
    a
}

pub fn verify_extension(alg: &ExtensionAlgebra) -> VerificationReport {
    let m = alg.m();
    let n = alg.dim();
    let expected_sym = expected_sym_dim(m, alg.kind());
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let samples: Vec<[ExtensionElement; 3]> = (0..SAMPLES)
        .map(|_| [0, 1, 2].map(|_| random_element(alg, &mut rng)))
        .collect();

    let (one, delta, z) = (alg.one(), alg.delta(), alg.z());
    let mut all_gens = b_generators(alg);
    all_gens.push(z.clone());
    let b_gens = b_generators(alg);
    let d_inv = alg.d().recip();
    let int_delta_sigma = |a: &ExtensionElement| alg.mul(&alg.mul(&delta, &alg.sig(a)), &delta).scale(&d_inv);

    // the expensive rank computations run concurrently
    let dims: Vec<usize> = (0..6usize)
        .into_par_iter()
        .map(|k| match k {
            0 => centralizer_dim(alg, &all_gens),
            1 => trace_form_rank(alg),
            2 => fixed_dim(alg, |a| alg.sig(a)),
            3 => centralizer_dim(alg, std::slice::from_ref(&delta)),
            4 => centralizer_dim(alg, &b_gens),
            _ => fixed_dim(alg, int_delta_sigma),
        })
        .collect();
    let [center_dim, trace_form_rank, sym_dim, cent_delta, cent_b, opposite_sym] = dims[..] else {
        unreachable!()
    };

    let mut checks = Vec::new();

    let qt1 = alg.qt1_failures();
    checks.push(Check::new("qt1", qt1.is_empty(), qt1.join("; ")));

    let bad_commutation = (0..2 * m * m).find(|&t| {
        let b = alg.basis(t);
        alg.mul(&z, &b) != alg.mul(&alg.embed(alg.theta(&b.b1)), &z)
    });
    checks.push(Check::new(
        "z_commutation",
        bad_commutation.is_none(),
        bad_commutation
            .map(|t| format!("z b != theta(b) z for basis element {t}"))
            .unwrap_or_default(),
    ));

    let dd = alg.mul(&delta, &delta);
    let delta_ok = dd == one.scale(alg.d()) && alg.sig(&delta) == delta.scale(&rat(-1));
    checks.push(Check::new(
        "delta",
        delta_ok,
        if delta_ok {
            ""
        } else {
            "delta^2 != d or sigma(delta) != -delta"
        },
    ));

    checks.push(Check::new(
        "center",
        center_dim == 1,
        format!("center has dimension {center_dim}"),
    ));
    checks.push(Check::new(
        "trace_form",
        trace_form_rank == n,
        format!("trace form has rank {trace_form_rank} of {n}"),
    ));
    checks.push(Check::new(
        "sym_dim",
        sym_dim == expected_sym,
        format!("dim Sym = {sym_dim}, expected {expected_sym}"),
    ));

    // B commutes with δ, and the centralizer has exactly B's dimension
    let b_in_centralizer = (0..2 * m * m).all(|t| {
        let b = alg.basis(t);
        alg.mul(&b, &delta) == alg.mul(&delta, &b)
    });
    checks.push(Check::new(
        "centralizer_delta",
        b_in_centralizer && cent_delta == 2 * m * m,
        format!(
            "centralizer of delta has dimension {cent_delta}, B has {}",
            2 * m * m
        ),
    ));

    let bad_square = (0..n).find(|&t| {
        let e = alg.basis(t);
        alg.sig(&alg.sig(&e)) != e
    });
    checks.push(Check::new(
        "involution",
        bad_square.is_none(),
        bad_square
            .map(|t| format!("sigma^2 != id on basis element {t}"))
            .unwrap_or_default(),
    ));

    let mut anti_ok = true;
    let mut assoc_ok = true;
    let mut unit_ok = true;
    for [a, b, c] in &samples {
        let ab = alg.mul(a, b);
        anti_ok &= alg.sig(&ab) == alg.mul(&alg.sig(b), &alg.sig(a));
        assoc_ok &= alg.mul(&ab, c) == alg.mul(a, &alg.mul(b, c));
        unit_ok &= alg.mul(&one, a) == *a && alg.mul(a, &one) == *a;
    }
    for g in &all_gens {
        for h in &all_gens {
            anti_ok &= alg.sig(&alg.mul(g, h)) == alg.mul(&alg.sig(h), &alg.sig(g));
        }
    }
    checks.push(Check::new(
        "anti_automorphism",
        anti_ok,
        if anti_ok {
            ""
        } else {
            "sigma(ab) != sigma(b) sigma(a)"
        },
    ));
    checks.push(Check::new(
        "associativity",
        assoc_ok && unit_ok,
        if assoc_ok && unit_ok {
            ""
        } else {
            "associativity or unit law failed"
        },
    ));

    // Any involution agreeing with τ on B is Int(c)∘σ with c in the
    // centralizer of B; that centralizer must be K, and among Int(c)∘σ only
    // c ∈ Q^× ∪ Q^×δ give involutions.
    let opposite_expected = expected_sym_dim(m, alg.kind().opposite());
    let agrees_on_b = (0..2 * m * m).all(|t| {
        let b = alg.basis(t);
        int_delta_sigma(&b) == alg.sig(&b)
    });
    let opposite_involution = (0..n).all(|t| {
        let e = alg.basis(t);
        int_delta_sigma(&int_delta_sigma(&e)) == e
    });
    // c = 1 + 2δ is invertible in K for every squarefree d
    let c = one.add(&delta.scale(&rat(2)));
    let c_inv = one
        .add(&delta.scale(&rat(-2)))
        .scale(&(Rational::one() / (rat(1) - rat(4) * alg.d())));
    let sampled_is_involution = (0..n).all(|t| {
        let e = alg.basis(t);
        let once = alg.twisted_sigma(&c, &c_inv, &e);
        alg.twisted_sigma(&c, &c_inv, &once) == e
    });
    let unique = cent_b == 2
        && agrees_on_b
        && opposite_involution
        && opposite_sym == opposite_expected
        && !sampled_is_involution;
    checks.push(Check::new(
        "uniqueness",
        unique,
        format!(
            "centralizer of B has dimension {cent_b}; Int(delta)sigma has dim Sym {opposite_sym} (expected {opposite_expected}); Int(1+2delta)sigma is {}an involution",
            if sampled_is_involution { "" } else { "not " }
        ),
    ));

    VerificationReport {
        m,
        kind: alg.kind(),
        dim: n,
        center_dim,
        trace_form_rank,
        sym_dim,
        expected_sym_dim: expected_sym,
        centralizer_delta_dim: cent_delta,
        centralizer_b_dim: cent_b,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::SquareClass;
    use crate::crossed::build_extension;
    use crate::involution::UnitaryDescent;
    use crate::qform::QuadraticForm;

    fn build(d: i64, psi: &str, kind: InvolutionType, lambda: i64) -> ExtensionAlgebra {
        let u = UnitaryDescent::new(
            SquareClass::of_int(d).unwrap(),
            psi.parse::<QuadraticForm>().unwrap(),
        );
        build_extension(&u, kind, &SquareClass::of_int(lambda).unwrap()).unwrap()
    }

    #[test]
    fn quaternion_case() {
        let r = verify_extension(&build(-1, "1", InvolutionType::Orthogonal, 1));
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(r.sym_dim, 3);
        assert_eq!(r.dim, 4);
    }

    #[test]
    fn symplectic_degree_two() {
        let r = verify_extension(&build(3, "1,-2", InvolutionType::Symplectic, 5));
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(r.sym_dim, 6);
    }

    #[test]
    fn split_etale_case() {
        let r = verify_extension(&build(1, "2,3,-1", InvolutionType::Orthogonal, -1));
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(r.sym_dim, 9 + 3 * 4);
    }

    #[test]
    fn tampered_u_is_flagged() {
        let a = build(-1, "1,2", InvolutionType::Orthogonal, 1);
        let bad = KMatrix::unit(2, a.d(), 0, 1, false).add(&KMatrix::identity(2, a.d()));
        let r = verify_extension(&a.with_u_unchecked(bad));
        assert!(!r.check("qt1").unwrap().passed);
    }
}
