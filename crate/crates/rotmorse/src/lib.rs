//! Quantum dynamics of a rotating-Morse oscillator, the 1-D radial model of a
//! ro-vibrating diatomic molecule.
//!
//! The crate builds the `j`-dependent effective potential channel, evaluates
//! the analytic bound-state eigensystem of its quadratic-in-`y` expansion,
//! evolves an SU(2) coherent state through fractional revivals, computes
//! phase-space Wigner distributions, and estimates the phase-space rotation
//! angle imprinted by rotational coupling.
//!
//! All quantities are in atomic units (ħ = 1). Default molecular parameters
//! correspond to I₂.

pub mod eigensystem;
pub mod error;
pub mod grid;
pub mod molecule;
pub mod rotation;
pub mod special;
pub mod units;
pub mod wavepacket;
pub mod wigner;

pub use error::Error;
pub use grid::RadialGrid;
pub use molecule::{MoleculeParams, RotationalChannel};
pub use wavepacket::CoherentState;
pub use wigner::PhaseSpaceGrid;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
