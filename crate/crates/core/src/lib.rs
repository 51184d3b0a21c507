//! Composition operators on the Hardy space of the bidisk whose symbol is built from
//! a cusp map: map evaluation, operator matrices, approximation numbers and
//! numerical checks of the supporting inequalities.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod hardy;
pub mod maps;
pub mod mp;
pub mod spectrum;
pub mod verifier;

pub use error::{Error, Result};
