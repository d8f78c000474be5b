//! Construction, transformation and certification of expander graphs,
//! concentrator/superconcentrator networks and Cayley-graph families,
//! together with exact Hurwitz-quaternion arithmetic and an exact
//! free-rotation-group certifier.
//!
//! Everything here is desk-scale by design: expansion and Cheeger
//! constants are exact rationals obtained by exhaustive subset scans
//! (n <= 24), spectral quantities come from a dense symmetric
//! eigensolver, and number-theoretic counts are verified by bounded
//! enumeration.  All types are immutable after construction and all
//! operations are pure, so values can be shared freely across threads.

// Parity tests are written `x % 2 == 0` throughout.
#![allow(clippy::manual_is_multiple_of)]

pub mod cayley;
pub mod error;
pub mod graph;
pub mod matching;
pub mod metrics;
pub mod networks;
pub mod num;
pub mod quaternions;
pub mod random;
pub mod regularize;
pub mod so3;
pub mod spectral;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Graph, Multigraph, Partition};
pub use num::{BigRat, Rat, Real};
