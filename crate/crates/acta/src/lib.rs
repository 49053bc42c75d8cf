//! Finite monoids and finite right acts over them.
//!
//! The crate decides structural notions for acts given by explicit tables:
//! congruence lattices, cogeneration and cotrace, socle and radical,
//! subdirect irreducibility, and the faithful / cofaithful / subgenerator /
//! generator classification. A bounded-universe harness enumerates all small
//! monoids and acts up to isomorphism and checks every registered structural
//! claim across them, reporting violations as data.

pub mod act;
pub mod claims;
pub mod classify;
pub mod congruence;
pub mod hom;
pub mod io;
pub mod monoid;
pub(crate) mod par;
pub mod structure;
pub mod universe;

pub use act::{Act, ActError, Subact};
pub use congruence::Congruence;
pub use hom::Hom;
pub use monoid::{ChainOp, Monoid, MonoidError};
