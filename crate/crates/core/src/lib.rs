//! Exact Kromatic symmetric functions.
//!
//! The crate computes `X̄_G`, the generating function of proper set
//! colorings of a (vertex-weighted) graph, with three independent engines,
//! expands it in classical and K-theoretic bases, and checks Grothendieck
//! positivity for incomparability graphs of (3+1)-free posets through
//! P-tableaux, P-arrays and a sign-reversing involution.
//!
//! Everything is exact: coefficients are big rationals and every series
//! carries an explicit degree cap.

pub mod basis;
pub mod combinat;
pub mod error;
pub mod gasharov;
pub mod graph;
pub mod kromatic;
pub mod ktheory;
pub mod linalg;
pub mod partition;
pub mod poset;
pub mod series;

pub use basis::BasisId;
pub use error::{Error, Result};
pub use partition::Partition;
pub use series::{Coeff, TruncatedSeries};
