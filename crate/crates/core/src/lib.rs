//! Labeled configuration spaces in exact rational arithmetic.
//!
//! The crate models
//!
//! * `C(Y, X)`: finite configurations of distinct points of a weak-metric
//!   space `Y` labeled by a based space `X`, with basepoint labels dropping out;
//! * `C_1(Y, X)`: labeled segments in `R x Y` with disjoint interiors over
//!   equal base points, and its box analogue `C_n(Y, X)`;
//!
//! together with the maps comparing them:
//! `C(R x Y, X) <-φ- C_1(Y, X) -α-> ΩC(Y, ΣX)`, the path-space model `E_1`
//! with its projection `q`, and the deformations used to show `q` is a
//! quasifibration. The [`harness`] module samples all exactly checkable
//! identities among these maps.
//!
//! All real parameters are [`Scalar`]s (exact rationals), so every identity is
//! checked with `==`.

pub mod configs;
pub mod error;
pub mod harness;
pub mod pipeline;
pub mod render;
pub mod scanning;
pub mod spaces;

pub use error::{Error, Result};
pub use spaces::Scalar;
