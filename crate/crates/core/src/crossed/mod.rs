//! The crossed-product extension A = B ⊕ Bz of a split unitary descent, its
//! involution σ, and verification of its structure by exact linear algebra.

mod algebra;
mod hyperbolic;
mod kmatrix;
mod verify;

pub use algebra::{
    build_extension, build_extension_with, standard_alternating, ExtensionAlgebra, ExtensionElement,
    InvolutionType,
};
pub use hyperbolic::{find_norm, hyperbolicity_witness, KElement};
pub use kmatrix::{kmatrix_from_pairs, KMatrix, Pair};
pub use verify::{expected_sym_dim, verify_extension, Check, VerificationReport};
