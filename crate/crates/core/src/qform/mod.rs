//! Diagonal quadratic forms over Q and their classical invariants.
//!
//! Isometry over Q is decided by Hasse–Minkowski: two forms are isometric iff
//! they share dimension, signed discriminant, signature, and the Hasse
//! invariant at every place. [`FormProfile`] packages exactly that data.

mod profile;
mod realize;

pub use profile::FormProfile;
pub use realize::realize_form;

use std::fmt;
use std::str::FromStr;

use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, hilbert_sc, parse_rational, Place, Rational, SquareClass};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

/// A diagonalized quadratic form ⟨a₁, …, aₙ⟩ with all aᵢ nonzero, n ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    entries: Vec<Rational>,
}

impl QuadraticForm {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("a quadratic form needs at least one entry".into()));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::Domain("diagonal entries must be nonzero".into()));
        }
        Ok(QuadraticForm { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| crate::arith::rat(x)).collect())
    }

    /// Hyperbolic form ⟨1,-1⟩ ⊥ … ⊥ ⟨1,-1⟩ with `planes` planes.
    pub fn hyperbolic(planes: usize) -> Result<Self> {
        let entries: Vec<i64> = (0..planes).flat_map(|_| [1, -1]).collect();
        Self::from_ints(&entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Square classes of the diagonal entries.
    pub fn classes(&self) -> Vec<SquareClass> {
        self.entries
            .iter()
            .map(|a| SquareClass::of(a).expect("entries are nonzero"))
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        self.entries.iter().fold(Rational::one(), |acc, a| acc * a)
    }

    pub fn signature(&self) -> i64 {
        self.entries
            .iter()
            .map(|a| if a.is_positive() { 1 } else { -1 })
            .sum()
    }

    /// (-1)^{n(n-1)/2} · det, as a square class.
    pub fn signed_discriminant(&self) -> SquareClass {
        let classes = self.classes();
        let det = classes.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
        sign_twist(self.dim(), &det)
    }

    /// ∏_{i<j} (aᵢ, aⱼ)_v.
    pub fn hasse_invariant(&self, v: &Place) -> i8 {
        hasse_from_classes(&self.classes(), v)
    }

    /// Clifford (Witt) invariant at `v`, from the Hasse invariant by the
    /// correction on n mod 8.
    pub fn clifford_invariant(&self, v: &Place) -> i8 {
        let classes = self.classes();
        let det = classes.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
        let disc = sign_twist(self.dim(), &det);
        clifford_correction(self.dim(), &disc, v) * hasse_from_classes(&classes, v)
    }

    pub fn profile(&self) -> FormProfile {
        FormProfile::of(self)
    }

    pub fn tensor(&self, other: &QuadraticForm) -> QuadraticForm {
        let entries = self
            .entries
            .iter()
            .flat_map(|a| other.entries.iter().map(move |b| a * b))
            .collect();
        QuadraticForm { entries }
    }

    pub fn orth_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        QuadraticForm { entries }
    }

    pub fn scale(&self, c: &Rational) -> Result<QuadraticForm> {
        if c.is_zero() {
            return Err(Error::Domain("scaling by zero".into()));
        }
        Ok(QuadraticForm {
            entries: self.entries.iter().map(|a| a * c).collect(),
        })
    }

    /// The binary norm form ⟨1, -d⟩ of Q(√d).
    pub fn norm_form(d: &SquareClass) -> QuadraticForm {
        QuadraticForm {
            entries: vec![Rational::one(), -d.to_rational()],
        }
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix(RatMatrix::diagonal(&self.entries))
    }

    pub fn witt_index(&self) -> usize {
        self.profile().witt_index()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.dim().is_multiple_of(2) && self.witt_index() == self.dim() / 2
    }

    /// Even dimension, trivial signed discriminant, trivial Clifford invariant.
    pub fn in_i3(&self) -> bool {
        self.profile().i3_obstruction().is_none()
    }

    /// Real-place component of the Arason invariant: (signature / 8) mod 2.
    pub fn e3_real(&self) -> Result<u8> {
        self.profile().e3_real()
    }
}

/// Multiplies a determinant class by (-1)^{n(n-1)/2}.
pub(crate) fn sign_twist(n: usize, det: &SquareClass) -> SquareClass {
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        det.neg()
    } else {
        det.clone()
    }
}

pub(crate) fn hasse_from_classes(classes: &[SquareClass], v: &Place) -> i8 {
    let mut prefix = SquareClass::one();
    let mut s = 1i8;
    for c in classes {
        s *= hilbert_sc(&prefix, c, v);
        prefix = prefix.mul(c);
    }
    s
}

/// Factor c_v / s_v by n mod 8.
pub(crate) fn clifford_correction(n: usize, disc: &SquareClass, v: &Place) -> i8 {
    let m1 = SquareClass::minus_one();
    match n % 8 {
        1 | 2 => 1,
        3 | 4 => hilbert_sc(&m1, &disc.neg(), v),
        5 | 6 => hilbert_sc(&m1, &m1, v),
        _ => hilbert_sc(&m1, disc, v),
    }
}

pub fn isometric(q1: &QuadraticForm, q2: &QuadraticForm) -> bool {
    q1.dim() == q2.dim() && q1.profile() == q2.profile()
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Parses a comma-separated list of rationals, e.g. `"1,-1,2/3"`.
impl FromStr for QuadraticForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('<').trim_end_matches('>');
        let entries = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        QuadraticForm::new(entries)
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.entries.iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let entries = strs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        QuadraticForm::new(entries).map_err(serde::de::Error::custom)
    }
}

/// A symmetric nonsingular rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix(RatMatrix);

impl GramMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::Domain("Gram matrix must be square and nonempty".into()));
        }
        if !m.is_symmetric() {
            return Err(Error::Domain("Gram matrix is not symmetric".into()));
        }
        if m.determinant().is_zero() {
            return Err(Error::Domain("Gram matrix is singular".into()));
        }
        Ok(GramMatrix(m))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `Pᵀ G P` for an invertible `P`.
    pub fn congruent(&self, p: &RatMatrix) -> Result<GramMatrix> {
        GramMatrix::new(self.0.congruence(p))
    }

    pub fn diagonalize(&self) -> QuadraticForm {
        diagonalize_matrix(&self.0).expect("validated Gram matrix is nonsingular")
    }
}

/// Diagonalizes a symmetric nonsingular matrix by congruence.
pub fn diagonalize(g: &RatMatrix) -> Result<QuadraticForm> {
    if !g.is_square() || !g.is_symmetric() {
        return Err(Error::Domain("matrix is not symmetric".into()));
    }
    diagonalize_matrix(g)
}

fn height(x: &Rational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

fn diagonalize_matrix(g: &RatMatrix) -> Result<QuadraticForm> {
    let n = g.rows();
    let mut a = g.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !active.is_empty() {
        // smallest nonzero diagonal pivot keeps entry growth down
        let pivot = active
            .iter()
            .copied()
            .filter(|&i| !a[(i, i)].is_zero())
            .min_by_key(|&i| height(&a[(i, i)]));
        let k = match pivot {
            Some(k) => k,
            None => {
                let pair = active.iter().enumerate().find_map(|(x, &i)| {
                    active[x + 1..]
                        .iter()
                        .find(|&&j| !a[(i, j)].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else {
                    return Err(Error::Domain("matrix is singular".into()));
                };
                // e_i <- e_i + e_j makes the (i,i) entry 2·a_ij
                for &t in &active {
                    let v = a[(j, t)].clone();
                    a[(i, t)] += v;
                }
                for &t in &active {
                    let v = a[(t, j)].clone();
                    a[(t, i)] += v;
                }
                i
            }
        };
        let pivot_val = a[(k, k)].clone();
        active.retain(|&i| i != k);
        for &i in &active {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &pivot_val;
            for &j in &active {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
        out.push(pivot_val);
    }
    QuadraticForm::new(out)
}
