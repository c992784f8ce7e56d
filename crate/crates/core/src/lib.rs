//! Exact computations on finite quotients of quasi-random profinite groups.
//!
//! The crate builds `SL_k(Z/p^n)`, `Sp_2k(Z/p^n)`, alternating groups and
//! quotients of positive tree automorphism groups; computes their character
//! tables exactly; and checks degree bounds, mixing inequalities and
//! product-free densities against the closed-form values they should obey.

pub mod error;
pub mod exact;
pub mod exec;
pub mod groups;
pub mod mixing;
pub mod modring;
pub mod productfree;
pub mod quasirandom;
pub mod reptheory;

pub use error::{Error, Result};
pub use exec::Exec;
