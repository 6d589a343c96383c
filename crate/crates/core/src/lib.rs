pub mod abgrp;
pub mod actcat;
pub mod cli;
mod error;
pub mod fingrp;
pub mod kcalc;
pub mod monoid;
pub mod smgpd;

pub use error::{Error, Result};
