//! Exact Kauffman-bracket skein computations and the q-series tails they
//! produce.
//!
//! The crate is organised bottom-up:
//!
//! * [`qcore`]: Laurent polynomials in `v = A = q^(1/4)`, cyclotomic
//!   rational functions, truncated q-series and quantum integers.
//! * [`tl`]: a brute-force Temperley–Lieb oracle with Jones–Wenzl
//!   projectors and a bracket evaluator for closed planar networks.
//! * [`skein`]: closed-form evaluations (bubble coefficients, theta and
//!   tetrahedron networks, torus-knot colored Jones polynomials).
//! * [`qidentities`]: theta and false theta functions and the
//!   Andrews–Gordon multi-sums.
//! * [`tails`]: the `≐ₙ` predicate, stabilization reports and tail
//!   products.
//! * [`registry`]: string-addressable series and generators.

pub mod error;
pub mod qcore;
pub mod qidentities;
pub mod registry;
pub mod skein;
pub mod tails;
pub mod tl;

pub use error::{Error, Result};
pub use qcore::{QSeries, Rational, VLaurent, VRational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/temperley-lieb.md")]
    mod temperley_lieb {}
    #[doc = include_str!("../../../book/src/skein.md")]
    mod skein {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/tails.md")]
    mod tails {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
