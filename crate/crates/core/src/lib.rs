//! Numerical model of a double-slit experiment whose light reflects off a
//! freely spreading mesoscopic mirror, with the feasibility and trap design
//! calculations that go with it.
//!
//! Units are CGS-Gaussian throughout: cm, g, s, K, statC, G.

pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod geometry;
pub mod interference;
pub mod model;
pub mod quadrature;
pub mod sweep;
pub mod trap;
pub mod wavepacket;

pub use error::{Error, Result, Violation};
