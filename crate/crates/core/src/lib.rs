//! Exact computation in weighted group algebras `ℓ¹(G, ω)` restricted to
//! finitely supported elements, for free groups and their finite quotients.

pub mod algebra;
pub mod cancellation;
pub mod cli;
pub mod error;
pub mod freegroup;
pub mod groups;
pub mod ideals;
pub mod json;
pub mod suites;
pub mod weights;

pub use error::{Error, Result};
