//! Exact conformal-block dimensions for affine odd orthogonal algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootsys`]: type B root data, Weyl folding and weight multiplicities.
//! - [`weights`]: level-ℓ weights, the diagram automorphism σ and Young diagrams.
//! - [`fusion`]: tensor and fusion multiplicities, genus-g dimensions.
//! - [`verlinde`]: the high-precision trigonometric Verlinde oracle.
//! - [`branching`]: the conformal embedding so(2r+1) ⊕ so(2s+1) → so(2d+1).
//! - [`fock`]: the free-fermion engine over ℚ[√2] and three-point block evaluation.

pub mod branching;
pub mod error;
pub mod fock;
pub mod fusion;
pub mod rootsys;
pub mod verlinde;
pub mod weights;

pub use error::{Error, Result};
pub use rootsys::{RootSystemB, Weight};
pub use weights::YoungDiagram;
