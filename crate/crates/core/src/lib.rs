//! Planar anisotropic perimeter energies on polygonal sets.
//!
//! The crate measures boundaries of polygonal sets with a direction-dependent
//! weight (an anisotropic integrand on the unit circle), and drives those
//! boundaries downhill in energy by repeatedly replacing a non-flat boundary
//! arc with the straight chord between its endpoints. Under a strictly convex
//! integrand every such replacement strictly decreases the energy, so the
//! descent terminates on boundaries that are unions of line segments; for
//! faceted (crystalline) integrands the gain degenerates and the descent
//! stalls, which the diagnostics in [`verify`] make observable.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches float math from `libm` to the standard library.
//! All IO, file formats and the command line live in the companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod math;

pub mod energy;
pub mod error;
pub mod geometry;
pub mod minimize;
pub mod norms;
pub mod tol;
pub mod vec2;
pub mod verify;

pub use error::{DescentError, GeometryError, NormError};
pub use tol::Tolerances;
pub use vec2::Vec2;
