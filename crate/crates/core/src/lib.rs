//! Permutation groups, character tables, blocks and weights.

pub mod arith;
pub mod blocks;
pub mod chain;
pub mod chartab;
pub mod clifford;
pub mod cyclotomic;
pub mod error;
pub mod ffield;
pub mod group;
pub mod hom;
pub mod modp;
pub mod perm;
pub mod section;
pub mod weights;

pub use error::{Error, Result};
