//! Exact construction and verification of Sasaki-Einstein joins
//! `Y^{p,q} ⋆_{l1,l2} S^3_w`, their quotient Bott orbifolds, torsion
//! invariants and Kähler-Einstein profiles.
//!
//! The guide in `book/` walks through the modules in order; its code blocks
//! run as doctests of this crate.

pub mod bott;
pub mod catalog;
pub mod error;
pub mod join;
pub mod kernel;
pub mod metric;
pub mod topology;
pub mod ypq;

pub use error::{Error, Result};

// mdbook cannot run snippets that depend on this crate, so rustdoc does it.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/ypq.md")]
    mod ypq {}
    #[doc = include_str!("../../../book/src/joins.md")]
    mod joins {}
    #[doc = include_str!("../../../book/src/bott.md")]
    mod bott {}
    #[doc = include_str!("../../../book/src/topology.md")]
    mod topology {}
    #[doc = include_str!("../../../book/src/metric.md")]
    mod metric {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
}
