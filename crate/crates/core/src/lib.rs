//! Cayley-isomorphism toolkit for m-Cayley and bi-Cayley digraphs over small
//! finite groups.

pub mod bits;
pub mod budget;
pub mod census;
pub mod ci;
pub mod error;
pub mod group;
pub mod iso;
pub mod mcayley;
pub mod perm;

pub use error::{Error, Result};
