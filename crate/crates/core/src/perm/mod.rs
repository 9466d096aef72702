//! Permutation groups: elements, stabilizer chains, classes, homomorphisms,
//! quotients, semidirect and wreath products.

pub mod chain;
pub mod element;
pub mod group;
pub mod hom;
pub mod io;
pub mod semidirect;
pub mod wreath;

pub use element::Perm;
pub use group::{ConjugacyClasses, GroupRef, Limits, PermGroup};
pub use hom::{coset_quotient, GroupHom, Quotient};
pub use io::{parse_perms, GroupSpec, NamedGroup, SemidirectSpec};
pub use semidirect::SemidirectGroup;
pub use wreath::{Wreath, WreathElement};
