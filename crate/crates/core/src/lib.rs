//! Exact algebra for antisymmetrizer identities on matrix Lie superalgebras
//! and Lie algebras of polynomial vector fields.

pub mod error;
pub mod rational;
pub mod superscalar;

pub use error::{Error, Result};
pub use rational::Rational;
pub mod linalg;
pub mod supermat;
pub mod antisym;
pub mod vectorfields;
pub mod report;
pub mod suites;
