//! Sharp-interface simulation of compressible fluids and neohookean solids
//! on Cartesian grids.
//!
//! Each cell holds one material. Fluxes across material faces come from a
//! two-sided HLLC solver, and a level set decides which material occupies
//! each cell.

pub mod config;
pub mod eos;
pub mod error;
pub mod exact;
pub mod hllc;
pub mod levelset;
pub mod mesh;
pub mod output;
pub mod runner;
pub mod scheme;
pub mod state;

pub use error::{Error, Result};
