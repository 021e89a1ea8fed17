//! A = B ⊕ Bz over B = M_m(K) with z² = u and z·b = θ(b)·z, where θ = ντ.

use std::fmt;

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::kmatrix::KMatrix;
use crate::arith::{Rational, SquareClass};
use crate::error::{Error, Result};
use crate::involution::UnitaryDescent;
use crate::linalg::{rank_of, RatMatrix, SparseVec};

/// Type of the first-kind involution ν on M_m(Q), hence of σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
}

impl InvolutionType {
    pub fn epsilon(self) -> i64 {
        match self {
            InvolutionType::Orthogonal => 1,
            InvolutionType::Symplectic => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            InvolutionType::Orthogonal => InvolutionType::Symplectic,
            InvolutionType::Symplectic => InvolutionType::Orthogonal,
        }
    }
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionType::Orthogonal => f.write_str("orthogonal"),
            InvolutionType::Symplectic => f.write_str("symplectic"),
        }
    }
}

impl std::str::FromStr for InvolutionType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orthogonal" => Ok(InvolutionType::Orthogonal),
            "symplectic" => Ok(InvolutionType::Symplectic),
            _ => Err(Error::Parse(format!("unknown involution type {s:?}"))),
        }
    }
}

/// b₁ + b₂z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionElement {
    pub b1: KMatrix,
    pub b2: KMatrix,
}

impl ExtensionElement {
    pub fn add(&self, o: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            b1: self.b1.add(&o.b1),
            b2: self.b2.add(&o.b2),
        }
    }

    pub fn sub(&self, o: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            b1: self.b1.sub(&o.b1),
            b2: self.b2.sub(&o.b2),
        }
    }

    pub fn scale(&self, c: &Rational) -> ExtensionElement {
        ExtensionElement {
            b1: self.b1.scale(c),
            b2: self.b2.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.b1.is_zero() && self.b2.is_zero()
    }

    /// Coordinates over Q in the basis E_ij, δE_ij, E_ij z, δE_ij z.
    pub fn coords(&self) -> SparseVec {
        self.b1
            .coords()
            .chain(self.b2.coords())
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionAlgebra {
    descent: UnitaryDescent,
    kind: InvolutionType,
    lambda: SquareClass,
    d: Rational,
    gram: RatMatrix,
    gram_inv: RatMatrix,
    s: RatMatrix,
    s_inv: RatMatrix,
    u: KMatrix,
}

/// The standard alternating matrix with blocks [[0, 1], [-1, 0]].
pub fn standard_alternating(m: usize) -> RatMatrix {
    let mut j = RatMatrix::zeros(m, m);
    for k in (0..m).step_by(2) {
        j[(k, k + 1)] = Rational::one();
        j[(k + 1, k)] = -Rational::one();
    }
    j
}

/// Builds A for the descent (M_m(K), ad_ψ₀ ⊗ bar), the requested type of σ,
/// and the scaling λ of u. ν is transposition (orthogonal) or the standard
/// symplectic involution.
pub fn build_extension(
    descent: &UnitaryDescent,
    kind: InvolutionType,
    lambda: &SquareClass,
) -> Result<ExtensionAlgebra> {
    let m = descent.degree();
    let s = match kind {
        InvolutionType::Orthogonal => RatMatrix::identity(m),
        InvolutionType::Symplectic => {
            if m % 2 == 1 {
                return Err(Error::Precondition(format!(
                    "a symplectic involution needs even degree, got {m}"
                )));
            }
            standard_alternating(m)
        }
    };
    build_extension_with(descent, &s, lambda)
}

/// As [`build_extension`] with ν = Int(s⁻¹) ∘ transpose for a symmetric
/// (orthogonal) or skew-symmetric (symplectic) invertible `s`.
pub fn build_extension_with(
    descent: &UnitaryDescent,
    s: &RatMatrix,
    lambda: &SquareClass,
) -> Result<ExtensionAlgebra> {
    let m = descent.degree();
    if s.rows() != m || !s.is_square() {
        return Err(Error::Domain(format!("nu matrix must be {m}x{m}")));
    }
    let kind = if s.is_symmetric() {
        InvolutionType::Orthogonal
    } else if s.is_skew() {
        InvolutionType::Symplectic
    } else {
        return Err(Error::Domain(
            "nu matrix must be symmetric or skew-symmetric".into(),
        ));
    };
    let s_inv = s
        .inverse()
        .ok_or_else(|| Error::Domain("nu matrix must be invertible".into()))?;
    let d = descent.d.to_rational();
    let gram = RatMatrix::diagonal(descent.psi0.entries());
    let gram_inv = gram.inverse().expect("nonzero diagonal");
    // θ = ντ = Int(g) ∘ bar with g = s⁻¹G; u = λg² gives θ² = Int(u)
    let g = &s_inv * &gram;
    let u = KMatrix::rational(&d, (&g * &g).scale(&lambda.to_rational()));
    let alg = ExtensionAlgebra {
        descent: descent.clone(),
        kind,
        lambda: lambda.clone(),
        d,
        gram,
        gram_inv,
        s: s.clone(),
        s_inv,
        u,
    };
    let failures = alg.qt1_failures();
    if !failures.is_empty() {
        return Err(Error::Construction(failures.join("; ")));
    }
    Ok(alg)
}

impl ExtensionAlgebra {
    pub fn m(&self) -> usize {
        self.gram.rows()
    }

    pub fn kind(&self) -> InvolutionType {
        self.kind
    }

    pub fn descent(&self) -> &UnitaryDescent {
        &self.descent
    }

    pub fn lambda(&self) -> &SquareClass {
        &self.lambda
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn u(&self) -> &KMatrix {
        &self.u
    }

    pub fn nu_matrix(&self) -> &RatMatrix {
        &self.s
    }

    /// Dimension of A over Q.
    pub fn dim(&self) -> usize {
        4 * self.m() * self.m()
    }

    /// A copy with a different u and no consistency check, for negative
    /// controls.
    pub fn with_u_unchecked(&self, u: KMatrix) -> ExtensionAlgebra {
        ExtensionAlgebra { u, ..self.clone() }
    }

    /// τ(b) = G⁻¹ b̄ᵀ G.
    pub fn tau(&self, b: &KMatrix) -> KMatrix {
        b.conj().transpose().lmul(&self.gram_inv).rmul(&self.gram)
    }

    /// ν(b) = s⁻¹ bᵀ s.
    pub fn nu(&self, b: &KMatrix) -> KMatrix {
        b.transpose().lmul(&self.s_inv).rmul(&self.s)
    }

    /// θ(b) = ν(τ(b)).
    pub fn theta(&self, b: &KMatrix) -> KMatrix {
        self.nu(&self.tau(b))
    }

    pub fn zero(&self) -> ExtensionElement {
        let k = KMatrix::zero(self.m(), &self.d);
        ExtensionElement { b1: k.clone(), b2: k }
    }

    pub fn embed(&self, b: KMatrix) -> ExtensionElement {
        ExtensionElement {
            b1: b,
            b2: KMatrix::zero(self.m(), &self.d),
        }
    }

    pub fn one(&self) -> ExtensionElement {
        self.embed(KMatrix::identity(self.m(), &self.d))
    }

    pub fn delta(&self) -> ExtensionElement {
        self.embed(KMatrix::scalar(
            self.m(),
            &self.d,
            Rational::zero(),
            Rational::one(),
        ))
    }

    pub fn z(&self) -> ExtensionElement {
        ExtensionElement {
            b1: KMatrix::zero(self.m(), &self.d),
            b2: KMatrix::identity(self.m(), &self.d),
        }
    }

    /// The t-th basis element over Q, in the order of [`ExtensionElement::coords`].
    pub fn basis(&self, t: usize) -> ExtensionElement {
        let m = self.m();
        let (part, rest) = (t / (m * m), t % (m * m));
        let (i, j) = (rest / m, rest % m);
        let e = KMatrix::unit(m, &self.d, i, j, part % 2 == 1);
        if part < 2 {
            self.embed(e)
        } else {
            ExtensionElement {
                b1: KMatrix::zero(m, &self.d),
                b2: e,
            }
        }
    }

    fn check(&self, a: &ExtensionElement) -> Result<()> {
        let m = self.m();
        if a.b1.m() != m || a.b2.m() != m {
            return Err(Error::Domain(format!(
                "element is not in an algebra of degree {m}"
            )));
        }
        Ok(())
    }

    /// (b₁ + b₂z)(c₁ + c₂z) = (b₁c₁ + b₂θ(c₂)u) + (b₁c₂ + b₂θ(c₁))z.
    pub fn multiply(&self, a: &ExtensionElement, c: &ExtensionElement) -> Result<ExtensionElement> {
        self.check(a)?;
        self.check(c)?;
        Ok(self.mul(a, c))
    }

    pub(crate) fn mul(&self, a: &ExtensionElement, c: &ExtensionElement) -> ExtensionElement {
        let mut b1 = a.b1.mul(&c.b1);
        let mut b2 = a.b1.mul(&c.b2);
        if !a.b2.is_zero() {
            if !c.b2.is_zero() {
                b1 = b1.add(&a.b2.mul(&self.theta(&c.b2)).mul(&self.u));
            }
            if !c.b1.is_zero() {
                b2 = b2.add(&a.b2.mul(&self.theta(&c.b1)));
            }
        }
        ExtensionElement { b1, b2 }
    }

    /// σ(b₁ + b₂z) = τ(b₁) + zτ(b₂) = τ(b₁) + ν(b₂)z.
    pub fn sigma(&self, a: &ExtensionElement) -> Result<ExtensionElement> {
        self.check(a)?;
        Ok(self.sig(a))
    }

    pub(crate) fn sig(&self, a: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            b1: self.tau(&a.b1),
            b2: self.nu(&a.b2),
        }
    }

    /// Failures of ν(u) = τ(u) = u, θ² = Int(u) on a basis of B, and
    /// invertibility of u.
    pub fn qt1_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.nu(&self.u) != self.u {
            out.push("nu(u) != u".to_string());
        }
        if self.tau(&self.u) != self.u {
            out.push("tau(u) != u".to_string());
        }
        let m = self.m();
        // u is invertible iff left multiplication by u on B has full rank
        let rank = rank_of((0..2 * m * m).map(|t| self.embed(self.u.mul(&self.basis(t).b1)).coords()));
        if rank != 2 * m * m {
            out.push("u is not invertible".to_string());
        }
        for t in 0..2 * m * m {
            let b = self.basis(t).b1;
            let lhs = self.theta(&self.theta(&b)).mul(&self.u);
            let rhs = self.u.mul(&b);
            if lhs != rhs {
                let (i, j) = ((t % (m * m)) / m, t % m);
                let delta = if t >= m * m { "delta*" } else { "" };
                out.push(format!("theta^2 != Int(u) on {delta}E_{i}{j}"));
                break;
            }
        }
        out
    }

    /// Int(c) ∘ σ for c in K, as a map on A.
    pub(crate) fn twisted_sigma(
        &self,
        c: &ExtensionElement,
        c_inv: &ExtensionElement,
        a: &ExtensionElement,
    ) -> ExtensionElement {
        self.mul(&self.mul(c, &self.sig(a)), c_inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::qform::QuadraticForm;

    fn alg(d: i64, psi: &str, kind: InvolutionType, lambda: i64) -> ExtensionAlgebra {
        let u = UnitaryDescent::new(
            SquareClass::of_int(d).unwrap(),
            psi.parse::<QuadraticForm>().unwrap(),
        );
        build_extension(&u, kind, &SquareClass::of_int(lambda).unwrap()).unwrap()
    }

    #[test]
    fn z_squared_is_u() {
        let a = alg(-1, "1,2", InvolutionType::Orthogonal, 3);
        let z = a.z();
        let zz = a.multiply(&z, &z).unwrap();
        assert_eq!(zz, a.embed(a.u().clone()));
    }

    #[test]
    fn delta_anticommutes_with_z() {
        let a = alg(-5, "1,-3", InvolutionType::Symplectic, 2);
        let (z, dl) = (a.z(), a.delta());
        let zd = a.multiply(&z, &dl).unwrap();
        let dz = a.multiply(&dl, &z).unwrap();
        assert_eq!(zd, dz.scale(&rat(-1)));
        assert_eq!(a.sigma(&dl).unwrap(), dl.scale(&rat(-1)));
    }

    #[test]
    fn symplectic_needs_even_degree() {
        let u = UnitaryDescent::new(SquareClass::of_int(-1).unwrap(), "1,1,1".parse().unwrap());
        let r = build_extension(&u, InvolutionType::Symplectic, &SquareClass::one());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn tampered_u_breaks_qt1() {
        let a = alg(-1, "1,2", InvolutionType::Orthogonal, 1);
        let bad = KMatrix::unit(2, a.d(), 0, 1, false).add(&KMatrix::identity(2, a.d()));
        assert!(!a.with_u_unchecked(bad).qt1_failures().is_empty());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = alg(-1, "1,2", InvolutionType::Orthogonal, 1);
        let b = alg(-1, "1,2,3", InvolutionType::Orthogonal, 1);
        assert!(a.multiply(&a.one(), &b.one()).is_err());
    }
}
