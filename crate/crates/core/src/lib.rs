//! Exact characters of Demazure and generalized Demazure modules for current
//! algebras, computed with Demazure operators on the affine weight lattice.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootsys`]: finite root systems, weights, the finite Weyl group.
//! * [`affring`]: affine weights and the integral group ring they span.
//! * [`affweyl`]: the affine Weyl group `W ⋉ T_M`, lengths and reduced words.
//! * [`demazure`]: Demazure operators and the characters built from them.
//! * [`theorems`]: executable character identities for fusion products.

pub mod affring;
pub mod affweyl;
pub mod cache;
pub mod demazure;
pub mod error;
pub mod parse;
pub mod rootsys;
pub mod theorems;

pub use error::{Error, Result};

/// Exact rational scalar used for all weight coordinates.
pub type Rational = num_rational::Rational64;

pub use affring::{AffWeight, CharElement, GradedCharacter};
pub use affweyl::{AffWeylElement, ReducedWord};
pub use demazure::{DemazureCharacter, DemazureFactor};
pub use rootsys::{CartanType, FinWeight, RootSystem};
