//! Free supercommutative algebras over the rationals and permutation signs.

mod monomial;
mod parity;
mod perm;
mod scalar;
mod table;

pub use monomial::Monomial;
pub use parity::Parity;
pub use perm::{antisym_sign, super_sign, ParityVector, Permutation};
pub(crate) use scalar::{accumulate_product, add_term};
pub use scalar::{parity_of, scalar_mul, SuperScalar, TermMap};
pub use table::{join_tables, GenId, Generator, GeneratorTable, TableBuilder, MAX_GENERATORS};
