//! Exact-arithmetic engine for crossings in rectilinear drawings of complete
//! d-partite d-uniform hypergraphs.
//!
//! Everything here works over arbitrary-precision rationals. The crate is
//! `no_std` and only needs `alloc`; file formats and the command line live in
//! the `hypercross` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod crossing;
pub mod error;
pub mod exact_geom;
pub mod gale;
pub mod hypergraph;
pub mod lp;
pub mod witness;

pub use error::{Error, Result};
pub use exact_geom::{Point, PointSequence, Rational};

pub(crate) fn all_distinct(items: &[usize]) -> bool {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}
