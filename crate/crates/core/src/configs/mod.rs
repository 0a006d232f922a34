//! Configuration types and the coefficient-system structure.
//!
//! Points of the quotient spaces `C(Y, X)`, `C_1(Y, X)` and `C_n(Y, X)` are
//! represented by normal forms: basepoint-labeled entries are deleted and the
//! remaining entries sorted. Two raw configurations are identified by the
//! relation generated by `(ν^* y, x) ~ (y, ν_* x)` exactly when their normal
//! forms are equal.

mod boxes;
mod injection;
mod point;
mod segment;
mod suspension;

pub use boxes::{normalize_box_config, BoxConfig, BoxEntry};
pub use injection::{pullback, pushforward, Injection};
pub use point::{
    filtration_level, map_configuration, normalize_point_config, PointConfig, PointEntry,
};
pub use segment::{
    below, mu, normalize_segment_config, shrink, union, Segment, SegmentConfig,
};
pub use suspension::SuspensionLabel;
