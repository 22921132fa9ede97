//! Construction, weight reduction and analysis of CSS quantum LDPC codes.
//!
//! Everything works over F2 with dense bit-packed matrices. The main entry
//! points are [`css::hgp`], [`css::lifted_product`], [`classical_wtred`] and
//! the quantum stages in [`quantum_wtred`].

pub mod chain;
pub mod classical;
pub mod classical_wtred;
pub mod css;
pub mod distance;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod quantum_wtred;
pub mod ring;
pub mod tanner;

pub use error::{Error, ParseError, Result};
