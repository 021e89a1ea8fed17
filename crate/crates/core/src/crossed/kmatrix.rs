//! Matrices over K = Q(√d), stored as X + Yδ with X, Y rational and δ² = d.

use num::traits::{One, Zero};
use serde::Serialize;

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatrix {
    d: Rational,
    x: RatMatrix,
    y: RatMatrix,
}

impl KMatrix {
    pub fn new(d: Rational, x: RatMatrix, y: RatMatrix) -> Result<Self> {
        if !x.is_square() || (x.rows(), x.cols()) != (y.rows(), y.cols()) {
            return Err(Error::Domain(
                "K-matrix parts must be square of equal size".into(),
            ));
        }
        Ok(KMatrix { d, x, y })
    }

    pub fn zero(m: usize, d: &Rational) -> Self {
        KMatrix {
            d: d.clone(),
            x: RatMatrix::zeros(m, m),
            y: RatMatrix::zeros(m, m),
        }
    }

    pub fn identity(m: usize, d: &Rational) -> Self {
        Self::scalar(m, d, Rational::one(), Rational::zero())
    }

    /// (a + bδ)·I.
    pub fn scalar(m: usize, d: &Rational, a: Rational, b: Rational) -> Self {
        KMatrix {
            d: d.clone(),
            x: RatMatrix::identity(m).scale(&a),
            y: RatMatrix::identity(m).scale(&b),
        }
    }

    pub fn rational(d: &Rational, x: RatMatrix) -> Self {
        let m = x.rows();
        KMatrix {
            d: d.clone(),
            x,
            y: RatMatrix::zeros(m, m),
        }
    }

    /// The matrix unit E_ij, times δ if `delta`.
    pub fn unit(m: usize, d: &Rational, i: usize, j: usize, delta: bool) -> Self {
        let mut k = Self::zero(m, d);
        if delta {
            k.y[(i, j)] = Rational::one();
        } else {
            k.x[(i, j)] = Rational::one();
        }
        k
    }

    pub fn m(&self) -> usize {
        self.x.rows()
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn x(&self) -> &RatMatrix {
        &self.x
    }

    pub fn y(&self) -> &RatMatrix {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &KMatrix) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn sub(&self, o: &KMatrix) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn neg(&self) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn mul(&self, o: &KMatrix) -> KMatrix {
        let xx = &self.x * &o.x;
        let yy = &self.y * &o.y;
        let xy = &self.x * &o.y;
        let yx = &self.y * &o.x;
        KMatrix {
            d: self.d.clone(),
            x: &xx + &yy.scale(&self.d),
            y: &xy + &yx,
        }
    }

    pub fn scale(&self, c: &Rational) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: self.x.scale(c),
            y: self.y.scale(c),
        }
    }

    /// Left multiplication by a rational matrix.
    pub fn lmul(&self, r: &RatMatrix) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: r * &self.x,
            y: r * &self.y,
        }
    }

    /// Right multiplication by a rational matrix.
    pub fn rmul(&self, r: &RatMatrix) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: &self.x * r,
            y: &self.y * r,
        }
    }

    /// Entrywise conjugation δ ↦ -δ.
    pub fn conj(&self) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    pub fn transpose(&self) -> KMatrix {
        KMatrix {
            d: self.d.clone(),
            x: self.x.transpose(),
            y: self.y.transpose(),
        }
    }

    /// Rational coordinates: X entries then Y entries, row-major.
    pub fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.x.entries().iter().chain(self.y.entries())
    }
}

/// One entry x + yδ as text.
pub type Pair = (String, String);

impl Serialize for KMatrix {
    /// An m×m matrix of `[x, y]` pairs.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m = self.m();
        let rows: Vec<Vec<Pair>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (format_rational(&self.x[(i, j)]), format_rational(&self.y[(i, j)])))
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

/// Deserializes the pair matrix; δ² = d must be supplied by the caller.
pub fn kmatrix_from_pairs(d: &Rational, rows: &[Vec<Pair>]) -> Result<KMatrix> {
    let m = rows.len();
    let mut x = RatMatrix::zeros(m, m);
    let mut y = RatMatrix::zeros(m, m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::Parse("K-matrix rows must have length m".into()));
        }
        for (j, (a, b)) in row.iter().enumerate() {
            x[(i, j)] = parse_rational(a)?;
            y[(i, j)] = parse_rational(b)?;
        }
    }
    KMatrix::new(d.clone(), x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn delta_squares_to_d() {
        let d = rat(-3);
        let delta = KMatrix::scalar(2, &d, rat(0), rat(1));
        assert_eq!(delta.mul(&delta), KMatrix::scalar(2, &d, rat(-3), rat(0)));
        assert_eq!(delta.conj(), delta.neg());
    }

    #[test]
    fn conj_is_multiplicative() {
        let d = rat(5);
        let a = KMatrix::unit(2, &d, 0, 1, true).add(&KMatrix::unit(2, &d, 1, 1, false));
        let b = KMatrix::unit(2, &d, 1, 0, true).add(&KMatrix::identity(2, &d));
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn pair_serialization() {
        let d = rat(2);
        let a = KMatrix::unit(2, &d, 0, 1, true).scale(&Rational::new(1.into(), 3.into()));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"[[["0","0"],["0","1/3"]],[["0","0"],["0","0"]]]"#);
        let rows: Vec<Vec<Pair>> = serde_json::from_str(&json).unwrap();
        assert_eq!(kmatrix_from_pairs(&d, &rows).unwrap(), a);
    }
}
