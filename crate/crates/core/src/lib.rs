//! Quantum and classical motion of a particle on a truncated cone.
//!
//! A cone with sector angle `2πα` is cut at distance `ρ₀` from its apex and
//! closed there by a hard wall. Lengths are measured in units of `ρ₀`
//! (`r = ρ/ρ₀`) and energies in units of `E₀` (`ε = E/E₀`), with `E₀` chosen
//! so that `√(2ME₀)ρ₀/ħ = 1`.
//!
//! * [`specfun`] Bessel functions of real and imaginary order.
//! * [`cone`] geometry, curvatures, effective potentials, graphene mapping.
//! * [`states`] bound, collapse and scattering eigenstates.
//! * [`ldos`] local density of states and its near-zero oscillations.
//! * [`classical`] classical orbits with a reflecting wall.

pub mod classical;
pub mod cone;
mod error;
pub mod ldos;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
