//! Word metrics on finitely generated groups.
//!
//! The crate provides exact arithmetic for a closed family of concrete groups
//! ([`group`]), symmetric generating sets and generation checks ([`genset`]),
//! word lengths and balls in Cayley graphs ([`metric`]), girth ([`girth`]) and a
//! layer of reproducible experiments about elements of uniformly bounded
//! word length ([`lab`]).

pub mod error;
pub mod genset;
pub mod girth;
pub mod group;
pub mod lab;
pub mod metric;
pub mod snf;

pub use error::{Error, Result};
pub use genset::GenSet;
pub use group::{Element, Group, Order};
