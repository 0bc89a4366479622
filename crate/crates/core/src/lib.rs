//! Carathéodory and Kobayashi extremal problems on the unit disc, the bidisc
//! and the symmetrized bidisc.
//!
//! Points and datums live in [`datum`]; disc geometry and Möbius maps in
//! [`disc`]; the closed-form bidisc theory in [`bidisc`]; the `Φ_ω` family and
//! royal datums in [`symmetrized`]; the sampled certification harness in
//! [`verifier`].

pub mod bidisc;
pub mod cli;
pub mod datum;
pub mod disc;
pub mod error;
pub mod json;
pub mod optimize;
pub mod symmetrized;
pub mod verifier;

pub use datum::{Datum, Domain, HolomorphicMap, Map, Point};
pub use disc::Moebius;
pub use error::{Error, Result};
