#![no_std]
// negated comparisons such as `!(x > 0.0)` also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;

pub mod bounds;
pub mod channels;
mod error;
mod math;
pub mod optimize;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
