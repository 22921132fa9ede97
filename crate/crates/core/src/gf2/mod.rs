//! Dense linear algebra over F2.

mod bitvec;
mod echelon;
pub mod io;
mod matrix;

pub use bitvec::BitVec;
pub use echelon::{RowSpace, Rref};
pub use matrix::{invert_permutation, is_permutation, BinaryMatrix};
