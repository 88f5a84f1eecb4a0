//! Numerical engine for the Barnes double gamma family: G(x), the two-period
//! G(x;α), multiple gammas G_n, Kinkelin functions K and K_n, the
//! Glaisher–Kinkelin constant and the double sine S₂.
//!
//! Every function is available through more than one independent route so
//! that the [`identities`] harness can certify printed identities against
//! cross-validated values.

pub mod barnes_g;
pub mod double_sine;
pub mod error;
pub mod identities;
pub mod kinkelin;
pub mod multi_gamma;
pub mod oracle;
pub mod quadrature;
pub mod special_base;
pub mod two_period;
mod sum;
mod taylor;
mod value;

pub use error::{Error, Result};
pub use value::{check_finite, ComplexValue, RouteTag, ValueWithError};
