//! Hodge integrals: ψ classes times a monomial in λ classes, reduced through
//! Chern characters and Mumford's GRR formula down to pure ψ integrals.

mod engine;
mod lambda;
mod reduction;

pub use engine::{ExpansionOrder, HodgeEngine, HodgeKey};
pub use lambda::{lambda_to_ch, ChCombination, ChMonomial, LambdaMonomial};
pub use reduction::{grr_expand, kappa_reduce, BoundaryTerm, GrrExpansion, TautMonomial};
