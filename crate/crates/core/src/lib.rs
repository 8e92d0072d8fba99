//! Priority range trees: orthogonal range reporting over weighted points,
//! where a query reports the points in a range whose weight clears a
//! threshold, or the `k` heaviest ones, in time that shrinks as the weights
//! asked for grow.
//!
//! Weights enter only through their rank `⌊log₂ w⌋`. The main structures:
//!
//! * [`PriorityRangeTree`] answers three-sided queries `[x1, x2] × [y, ∞)`
//!   in linear space.
//! * [`FourSidedIndex`] answers `[a, b] × [c, d]` with one priority range
//!   tree per node of a weight-balanced tree on x.
//! * [`WbPst`] is the weight-balanced priority search tree underneath both.
//!
//! [`oracle`] holds brute-force referees and the per-rank baseline used in
//! tests and benchmarks, and [`cli`] backs the `prtree` binary.

pub mod cli;
pub mod error;
pub mod gen;
pub mod maxima;
pub mod oracle;
pub mod pheap;
pub mod pointfile;
pub mod prt;
pub mod prt4;
pub mod types;
pub mod wbpst;

pub use error::{Error, Result};
pub use prt::{PriorityRangeTree, SpaceCensus};
pub use prt4::FourSidedIndex;
pub use types::{FourSidedRange, QueryCounters, Rank, ThreeSidedRange, TotalWeight, WeightedPoint};
pub use wbpst::WbPst;
