#![no_std]

extern crate alloc;

pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod asymptotics;
pub mod exact;
pub mod lattice;
pub mod model;
