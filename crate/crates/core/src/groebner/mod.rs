//! Buchberger's algorithm and the membership tests built on it.

mod basis;
mod membership;
mod sorted;

pub use basis::{buchberger, normal_form, BasisDescriptor, Budget, GroebnerBasis, GroebnerStats};
pub use membership::{ideal_member, subalgebra_member, Membership, SubalgebraDecider};
