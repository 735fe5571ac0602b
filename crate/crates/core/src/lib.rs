//! Endomorphism-ring statistics for ordinary isogeny classes over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`quadforms`]: discriminants, binary quadratic forms, class numbers and
//!   the weighted class numbers `h*(D) = h(D)/w(D)`.
//! - [`finitefield`]: arithmetic in `F_p` and dense polynomials over it.
//! - [`curves`]: short Weierstrass curves, point counting and twists.
//! - [`census`]: exhaustive enumeration of every ordinary isogeny class `I(t,p)`.
//! - [`volcano`]: `ℓ`-isogeny graphs from classical modular polynomials and
//!   the conductor classification derived from them.
//! - [`distributions`]: weighted exact/containment densities and level masses.
//! - [`classfield`]: CM existence per prime, Hilbert class polynomial
//!   splitting and Chebotarev density scans.
//! - [`verify`]: the range-wide verification suites.

pub mod census;
pub mod classfield;
pub mod curves;
pub mod distributions;
mod error;
pub mod finitefield;
pub mod quadforms;
pub mod rational;
pub mod verify;
pub mod volcano;

pub use error::{Error, Result};
pub use rational::Exact;
