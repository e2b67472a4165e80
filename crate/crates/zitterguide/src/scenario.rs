//! Named parameter sets: a photon waveguide, its matched electron, and a
//! sweep specification.
//!
//! A scenario fixes the material side (axis index, step strength, vacuum
//! wavelength) and the electron matching ratio; the core radius follows from
//! the requested waveguide parameter R, so a dispersion sweep varies the
//! radius at fixed material.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{match_electron_to_photon, ParticleConfig};

/// Photon-side material parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhotonParams {
    /// Refractive index on the axis.
    pub n0: f64,
    /// Step strength Delta.
    pub delta: f64,
    /// Vacuum wavelength (m).
    pub lambda0_vacuum: f64,
}

/// Dispersion sweep range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub samples: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub photon: PhotonParams,
    /// lambda_dB / lambda_C for the matched electron.
    pub electron_ratio: f64,
    pub sweep: SweepSpec,
    /// Spin-orbit exaggeration factor for the plotted column (raw shifts are
    /// always emitted unscaled alongside).
    pub exaggeration: f64,
    /// Default waveguide parameter for single-R commands.
    #[serde(default)]
    pub default_r: Option<f64>,
}

impl Scenario {
    /// The built-in helium-neon single-mode-fiber scenario: n(0) = 1.46,
    /// Delta = 0.014, lambda0 = 632.8 nm, electron ratio 10, spin-orbit
    /// exaggeration 50ox over R in (0, 10].
    pub fn hene_smf() -> Self {
        Scenario {
            name: "hene-smf".to_string(),
            photon: PhotonParams {
                n0: 1.46,
                delta: 0.014,
                lambda0_vacuum: 632.8e-9,
            },
            electron_ratio: 10.0,
            sweep: SweepSpec {
                r_min: 0.025,
                r_max: 10.0,
                samples: 400,
            },
            exaggeration: 50.0,
            default_r: Some(5.0),
        }
    }

    /// Resolve a builtin name or load a JSON scenario file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        if name_or_path == "hene-smf" {
            return Ok(Self::hene_smf());
        }
        let text = std::fs::read_to_string(name_or_path).map_err(|e| {
            Error::Validation(format!(
                "unknown scenario '{name_or_path}' (not a builtin, and reading it as a file failed: {e})"
            ))
        })?;
        let scenario: Scenario = serde_json::from_str(&text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sweep.r_min > 0.0) {
            return Err(Error::Validation(format!(
                "sweep r_min must be > 0, got {}",
                self.sweep.r_min
            )));
        }
        if self.sweep.r_max <= self.sweep.r_min {
            return Err(Error::Validation(
                "sweep r_max must exceed r_min".to_string(),
            ));
        }
        if self.sweep.samples < 2 {
            return Err(Error::Validation(format!(
                "sweep needs at least 2 samples, got {}",
                self.sweep.samples
            )));
        }
        if !(self.exaggeration >= 1.0) {
            return Err(Error::Validation(format!(
                "exaggeration must be >= 1, got {}",
                self.exaggeration
            )));
        }
        if self.electron_ratio < 1.0 {
            return Err(Error::RelativisticRegime {
                ratio: self.electron_ratio,
            });
        }
        Ok(())
    }

    /// Reduced in-medium photon wavelength lambda0 / (2 pi n0).
    pub fn lambda_gamma(&self) -> f64 {
        self.photon.lambda0_vacuum / (2.0 * std::f64::consts::PI * self.photon.n0)
    }

    /// Photon configuration whose waveguide parameter equals `r`: the core
    /// radius is a = R lambda_gamma / sqrt(Delta).
    pub fn photon_config_at(&self, r: f64) -> Result<ParticleConfig> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Validation(format!(
                "waveguide parameter R must be positive, got {r}"
            )));
        }
        let a = r * self.lambda_gamma() / self.photon.delta.sqrt();
        ParticleConfig::photon(self.photon.delta, a, self.photon.n0, self.photon.lambda0_vacuum)
    }

    /// Matched electron configuration at the same waveguide parameter.
    pub fn electron_config_at(&self, r: f64) -> Result<ParticleConfig> {
        let photon = self.photon_config_at(r)?;
        match_electron_to_photon(&photon, self.electron_ratio)
    }

    /// Sample k of the sweep, evenly spaced over [r_min, r_max].
    pub fn sweep_r(&self, k: u32) -> f64 {
        let n = self.sweep.samples;
        if n == 1 {
            return self.sweep.r_max;
        }
        self.sweep.r_min + (self.sweep.r_max - self.sweep.r_min) * k as f64 / (n - 1) as f64
    }
}
