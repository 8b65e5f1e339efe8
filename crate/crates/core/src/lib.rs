//! Braid group computations in the Artin and band-generator presentations.
//!
//! * [`braid`]: words over `σ_i`, Garside normal form, the free-group action.
//! * [`band`]: band generators `a_{t,s}`, their relations and the full-twist
//!   factorizations.
//! * [`hurwitz`]: Hurwitz moves on factorizations, orbits and path search.
//! * [`rewrite`]: positive band-word rewriting and its compilation into
//!   Hurwitz move sequences.
//! * [`semiframe`]: the combinatorial-map check for systems of arcs that can
//!   be reached from one point by disjoint access arcs.
//! * [`cli`]: the `braidkit` command line.

pub mod band;
pub mod braid;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod hurwitz;
pub mod rewrite;
pub mod semiframe;
pub mod verify;

pub use error::{Error, Result};
