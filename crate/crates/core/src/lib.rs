//! Exact polynomial algebra over the rationals for checking coordinate
//! identities of Vénéreau-type polynomials and kernels of locally nilpotent
//! derivations with a slice.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`], [`map`], [`jacobian`], [`parse`]: sparse polynomials, ring maps
//!   and the text syntax;
//! * [`groebner`]: Buchberger's algorithm, ideal and subalgebra membership;
//! * [`derivation`]: derivations, nilpotency certificates, exponentials,
//!   Taylor shifts and the Dixmier projection;
//! * [`venereau`] and [`slice_kernel`]: the end-to-end checks.

pub mod context;
pub mod derivation;
pub mod error;
pub mod groebner;
pub mod jacobian;
pub mod map;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod report;
pub mod slice_kernel;
pub mod venereau;

pub use context::VarContext;
pub use error::{Error, Result};
pub use map::{substitute, PolyMap};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{Degree, Polynomial};
pub use rational::Rational;
