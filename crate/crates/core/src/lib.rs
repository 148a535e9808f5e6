#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod dimform;
pub mod eigen;
pub mod error;
pub mod exactalg;
pub mod periods;
pub mod quatarith;
pub mod trivzero;

pub use error::{Error, Result};
