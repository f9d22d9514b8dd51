//! Exact computations for Lie bialgebras, contravariant Levi-Civita
//! connections on their duals, the associated Hawkins bracket calculus on
//! invariant forms, and tangent (semidirect) doubles.
//!
//! All arithmetic is over arbitrary-precision rationals; every check is an
//! exact zero test.

pub mod error;
pub mod exact;
pub mod exec;
pub mod lie;
pub mod metric;
pub mod hawkins;
pub mod search;
pub mod tangent;

pub use error::{CoreError, Result};
pub use exec::Exec;
pub use lie::{BracketEntry, LieAlgebra, LieBialgebra};
