//! Exact intersection numbers on moduli spaces of stable curves.
//!
//! Layers, bottom up:
//!
//! * [`algebra`]: rationals, polynomials, truncated series.
//! * [`psi`]: pure ψ integrals (genus-0 closed form, DVV above).
//! * [`hodge`]: ψ·λ integrals via Chern characters and GRR.
//! * [`series`]: the double Hodge generating polynomials `P_a(α, t)` and
//!   the identities they satisfy.
//! * [`cache`]: the shared, persistable memo table.

pub mod algebra;
pub mod cache;
pub mod error;
pub mod format;
pub mod hodge;
mod multiset;
pub mod psi;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
