//! Exact computations in rational group algebras of finite groups.

pub mod algebra;
pub mod characters;
pub mod config;
pub mod constructions;
pub mod cyclotomic;
pub mod dsl;
pub mod error;
pub mod group;
pub mod shoda;

pub use error::{Error, Result};
