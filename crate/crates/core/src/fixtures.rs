//! Seeded generators for test corpora and the JSON-lines corpus format.

use std::io::{BufRead, Write};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SquareClass};
use crate::brauer::BrauerClass2;
use crate::error::{Error, Invariant, Result};
use crate::involution::UnitaryDescent;
use crate::linalg::RatMatrix;
use crate::qform::QuadraticForm;

/// Bound on elementary factors of an obfuscating congruence.
const MAX_ELEMENTARY: usize = 12;
/// Off-diagonal entries of elementary factors lie in [-3, 3].
const ELEMENTARY_BOUND: i64 = 3;
const DESCENT_D_BOUND: i64 = 30;
const DESCENT_ENTRY_BOUND: i64 = 10;
const NEGATIVE_ENTRY_BOUND: i64 = 30;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn class(n: i64) -> SquareClass {
    SquareClass::of_int(n).expect("nonzero")
}

/// A random squarefree integer class with representative at most `bound`.
fn squarefree(rng: &mut impl Rng, bound: i64) -> SquareClass {
    class(nonzero(rng, bound))
}

/// A product of at most 12 elementary matrices I + cE_ij.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut u = RatMatrix::identity(n);
    if n < 2 {
        return u;
    }
    let factors = rng.gen_range(1..=MAX_ELEMENTARY);
    for _ in 0..factors {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = nonzero(rng, ELEMENTARY_BOUND);
        let mut e = RatMatrix::identity(n);
        e[(i, j)] = Rational::from_integer(c.into());
        u = &u * &e;
    }
    u
}

/// Rediagonalizes q after a random unimodular congruence of its Gram matrix.
pub fn obfuscate(rng: &mut impl Rng, q: &QuadraticForm) -> QuadraticForm {
    let u = random_unimodular(rng, q.dim());
    q.gram()
        .congruent(&u)
        .map(|g| g.diagonalize())
        .expect("unimodular congruence")
}

/// A 12-dimensional form in I³ presented as an obfuscated ⟨1, -d⟩ ⊗ ψ.
pub fn gen_i3_12(seed: u64, coeff_bound: i64) -> Result<QuadraticForm> {
    if coeff_bound < 2 {
        return Err(Error::Precondition(format!("coeff_bound {coeff_bound} < 2")));
    }
    let mut rng = rng(seed);
    let d = squarefree(&mut rng, coeff_bound);
    let mut entries: Vec<SquareClass> = (0..5).map(|_| squarefree(&mut rng, coeff_bound)).collect();
    // d±(ψ) = -det ψ in dimension 6
    let det = entries.iter().fold(SquareClass::one(), |a, c| a.mul(c));
    entries.push(det.neg());
    let psi = QuadraticForm::new(entries.iter().map(SquareClass::to_rational).collect())?;
    let q = QuadraticForm::norm_form(&d).tensor(&psi);
    let out = obfuscate(&mut rng, &q);
    debug_assert!(out.in_i3());
    Ok(out)
}

/// A 12-dimensional form violating exactly the labelled invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub form: QuadraticForm,
    pub label: Invariant,
}

pub fn gen_negative(seed: u64) -> NegativeControl {
    let mut rng = rng(seed);
    loop {
        let (base, label) = if rng.gen_bool(0.5) {
            // H⁵ ⊥ ⟨1, -a⟩ has d± = a
            let a = squarefree(&mut rng, NEGATIVE_ENTRY_BOUND);
            if a.is_one() {
                continue;
            }
            let tail = QuadraticForm::new(vec![Rational::from_integer(1.into()), a.neg().to_rational()]);
            (tail.map(|t| hyp(5).orth_sum(&t)), Invariant::E1)
        } else {
            // H⁴ ⊥ ⟨⟨a, b⟩⟩ has trivial d± and Clifford invariant (a, b)
            let a = squarefree(&mut rng, NEGATIVE_ENTRY_BOUND);
            let b = squarefree(&mut rng, NEGATIVE_ENTRY_BOUND);
            if BrauerClass2::symbol(a.clone(), b.clone()).is_trivial() {
                continue;
            }
            let ab = a.mul(&b);
            let norm = QuadraticForm::new(vec![
                Rational::from_integer(1.into()),
                a.neg().to_rational(),
                b.neg().to_rational(),
                ab.to_rational(),
            ]);
            (norm.map(|n| hyp(4).orth_sum(&n)), Invariant::E2)
        };
        let form = obfuscate(&mut rng, &base.expect("nonzero entries"));
        if form.profile().i3_obstruction().map(|(inv, _)| inv) == Some(label) {
            return NegativeControl { form, label };
        }
    }
}

fn hyp(planes: usize) -> QuadraticForm {
    QuadraticForm::hyperbolic(planes).expect("planes > 0")
}

/// A descent of degree m with |d| ≤ 30 and entries of ψ₀ in [-10, 10].
pub fn gen_descent(seed: u64, m: usize) -> Result<UnitaryDescent> {
    if !(1..=6).contains(&m) {
        return Err(Error::Precondition(format!("degree {m} outside 1..=6")));
    }
    let mut rng = rng(seed);
    let d = squarefree(&mut rng, DESCENT_D_BOUND);
    let entries = (0..m)
        .map(|_| Rational::from_integer(nonzero(&mut rng, DESCENT_ENTRY_BOUND).into()))
        .collect();
    Ok(UnitaryDescent::new(d, QuadraticForm::new(entries)?))
}

/// What the corpus runner must observe for an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// decompose12 succeeds and its result verifies.
    Decomposes,
    /// decompose12 fails with this error code.
    Rejects(String),
}

/// One line of a JSON-lines corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusInstance {
    pub id: String,
    pub form: QuadraticForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Invariant>,
    pub expect: Expectation,
}

/// `count` positive instances; instance seeds are drawn from `seed`.
pub fn i3_corpus(seed: u64, count: usize, coeff_bound: i64) -> Result<Vec<CorpusInstance>> {
    let mut master = rng(seed);
    (0..count)
        .map(|i| {
            Ok(CorpusInstance {
                id: format!("i3-{i}"),
                form: gen_i3_12(master.next_u64(), coeff_bound)?,
                label: None,
                expect: Expectation::Decomposes,
            })
        })
        .collect()
}

pub fn negative_corpus(seed: u64, count: usize) -> Vec<CorpusInstance> {
    let mut master = rng(seed);
    (0..count)
        .map(|i| {
            let neg = gen_negative(master.next_u64());
            CorpusInstance {
                id: format!("neg-{i}"),
                form: neg.form,
                label: Some(neg.label),
                expect: Expectation::Rejects("NotInI3Error".into()),
            }
        })
        .collect()
}

pub fn write_corpus(mut w: impl Write, instances: &[CorpusInstance]) -> std::io::Result<()> {
    for inst in instances {
        serde_json::to_writer(&mut w, inst)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Parses a corpus; blank lines are skipped.
pub fn read_corpus(r: impl BufRead) -> Result<Vec<CorpusInstance>> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let inst = serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        out.push(inst);
    }
    Ok(out)
}
