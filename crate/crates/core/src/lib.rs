pub mod acceptance;
pub mod algebra;
pub mod arith;
pub mod chartab;
pub mod clifford;
pub mod corpus;
pub mod coxeter;
pub mod error;
pub mod hc;
pub mod hecke;
pub mod par;
pub mod perm;

pub use error::{Error, Result};
