#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod hecke;
pub mod parabolic;
pub mod quantum;
pub mod rootsys;
pub mod stable;
pub mod symfield;

pub use error::Error;
