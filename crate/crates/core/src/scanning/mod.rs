//! The comparison maps `C(R x Y, X) <-φ- C_1(Y, X) -α-> ΩC(Y, ΣX)` and the
//! structures around them.
//!
//! * [`phi`], [`phi_bar`], [`separation`] and [`retraction_homotopy`] relate
//!   segment configurations to point configurations in `R x Y`.
//! * [`rescale_to_unit`] moves `C_1(Y, X)` onto `C̄_1(Y, X)`, where all
//!   segments lie in `(0, 1) x Y`; [`alpha_eval`] scans such a configuration
//!   into a loop.
//! * [`PathPoint`] models `E_1(Y, X)`, with [`q_eval`] the endpoint
//!   projection and [`psi`]/[`psi_bar`] the trivializations over a stratum.
//! * [`SuspensionDeformation`], [`h_map`], [`total_h_map`] and [`xi_element`]
//!   are the deformations near `F_{j-1}`.
//! * [`phi_n`] and [`alpha_n_eval`] are the box versions.
//!
//! Loops are never materialized; they are observed by evaluation at rational
//! times.

mod cofibration;
mod comparison;
mod loops;
mod path;

pub use cofibration::{
    h_map, in_u, j_map, l_map, total_h_map, xi, xi_element, SuspensionDeformation,
};
pub use comparison::{
    from_unit, phi, phi_bar, phi_bar_n, phi_n, rescale_from_unit, rescale_to_unit,
    retraction_homotopy, separation, to_unit,
};
pub use loops::{alpha_eval, alpha_n_eval, lambda_section, Loop, ScanConfig};
pub use path::{alpha_bar_eval, fiber_retraction_homotopy, psi, psi_bar, q_eval, PathPoint};
