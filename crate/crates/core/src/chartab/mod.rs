//! Character tables and class-function calculus.

pub mod classfn;
pub mod dixon;
pub mod table;

pub use classfn::{ClassFunction, Kind};
pub use table::CharTable;
