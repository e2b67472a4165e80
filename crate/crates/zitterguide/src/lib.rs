//! Guided-mode dispersion and first-order corrections for electrons and
//! photons in cylindrically symmetric waveguides.
//!
//! A weakly guided particle in a cylindrical step waveguide — an electron in
//! an electrostatic potential well or a photon in a graded-permittivity
//! fiber — satisfies the same transverse Helmholtz problem. This crate
//! solves that problem and layers on the first-order physics the two
//! particles share:
//!
//! * [`specfun`] — Bessel J, J' and modified Bessel K for integer orders.
//! * [`medium`] — radial profiles, particle configurations, the waveguide
//!   parameter R, and cross-particle matching.
//! * [`modesolver`] — characteristic-equation roots, propagation constants,
//!   normalization, and radial wavefunctions for the step profile.
//! * [`perturb`] — radial inner products, Darwin / spin-orbit / relativistic
//!   shifts, the full perturbation matrices with their selection rules,
//!   first-order validity checks, and the second-order correction.
//! * [`dynamics`] — phase accumulation and Bloch-vector precession of
//!   two-state superpositions in z and t.
//! * [`scenario`] / [`commands`] — named parameter sets and the table /
//!   CSV / JSON emitters behind the `zitterguide` binary.
//!
//! The `examples/` directory carries one runnable program per capability;
//! start with `cargo run --example solve_modes`.

pub mod commands;
pub mod dynamics;
pub mod error;
pub mod medium;
pub mod modesolver;
pub mod perturb;
pub mod quad;
pub mod report;
pub mod scenario;
pub mod specfun;

pub use error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 299_792_458.0;

/// Reduced Compton wavelength of the electron, hbar / (m_e c), in meters.
pub const LAMBDA_BAR_COMPTON: f64 = 3.861_592_679_6e-13;
