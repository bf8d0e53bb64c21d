//! Finite set-theoretic solutions of the Yang-Baxter equation and the
//! semigroups, groups and quadratic algebras attached to them.

pub mod actions;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod istructure;
pub mod known;
pub mod linear;
pub mod perm;
pub mod retract;
pub mod rewrite;
pub mod scalar;
pub mod solution;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use scalar::{Rational, Scalar, UnitScalar};
pub use solution::{classify, PropertyReport, Relabeling, SolutionMap};
