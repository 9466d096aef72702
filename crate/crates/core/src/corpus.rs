//! The bundled example groups and parabolic data.

use crate::error::{Error, Result};
use crate::perm::{Limits, NamedGroup};

pub const FILES: &[(&str, &str)] = &[
    ("s3", include_str!("../corpus/s3.json")),
    ("s4", include_str!("../corpus/s4.json")),
    ("s5", include_str!("../corpus/s5.json")),
    ("a4", include_str!("../corpus/a4.json")),
    ("d8", include_str!("../corpus/d8.json")),
    ("q8", include_str!("../corpus/q8.json")),
    ("c6", include_str!("../corpus/c6.json")),
    ("gl2_3", include_str!("../corpus/gl2_3.json")),
    ("gl2_5", include_str!("../corpus/gl2_5.json")),
    ("gl3_2", include_str!("../corpus/gl3_2.json")),
    ("s3_wr_c2", include_str!("../corpus/s3_wr_c2.json")),
    ("gl2_3_bn", include_str!("../corpus/gl2_3_bn.json")),
    ("gl2_5_bn", include_str!("../corpus/gl2_5_bn.json")),
    ("gl3_2_bn", include_str!("../corpus/gl3_2_bn.json")),
    ("gl2_3_disconnected", include_str!("../corpus/gl2_3_disconnected.json")),
    ("sl2_3_semidirect_c2", include_str!("../corpus/sl2_3_semidirect_c2.json")),
    ("s3xs3_swap", include_str!("../corpus/s3xs3_swap.json")),
];

/// Names of the plain group files.
pub const GROUPS: &[&str] = &["s3", "s4", "s5", "a4", "d8", "q8", "c6", "gl2_3", "gl2_5", "gl3_2", "s3_wr_c2"];

pub fn text(name: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::NotFound(format!("no corpus entry {name:?}")))
}

pub fn group(name: &str) -> Result<NamedGroup> {
    NamedGroup::from_json(text(name)?, Limits::default())
}
