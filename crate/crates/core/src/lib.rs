//! Decision procedures for Good-for-Games QPTL.

pub mod decision;
pub mod error;
pub mod formula;
pub mod game;
pub mod hyperoracle;
pub mod models;
pub mod omega;
pub mod parity;
pub mod prefix_canon;

pub use error::{Error, Result};
