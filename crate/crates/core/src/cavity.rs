//! Cavity geometry.
//!
//! The end mirrors sit at `∓L/2`; the membranes at `q₁ = Q − q/2` and
//! `q₂ = Q + q/2`, so the three sub-cavities have lengths
//! `L₁ = L/2 + Q − q/2`, `L₂ = q` and `L₃ = L/2 − Q − q/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CavityError, Result};
use crate::membrane::{membrane_coefficients, MembraneCoefficients, MembraneSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    /// Total mirror separation `L`, m.
    pub length: f64,
    /// Intensity reflectivity `R` of each end mirror.
    pub mirror_reflectivity: f64,
    pub membrane: MembraneSpec,
    /// Centre-of-mass coordinate `Q = (q₁ + q₂)/2`, m.
    pub com: f64,
    /// Membrane separation `q = q₂ − q₁`, m.
    pub separation: f64,
    /// Driving wavelength, m.
    pub wavelength: f64,
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        self.membrane.validate()?;
        let bad = |msg: String| Err(CavityError::InvalidConfig(msg));
        if !(self.length > 0.0) || !self.length.is_finite() {
            return bad(format!("cavity length must be > 0, got {}", self.length));
        }
        if !(self.wavelength > 0.0) || !self.wavelength.is_finite() {
            return bad(format!("wavelength must be > 0, got {}", self.wavelength));
        }
        let r = self.mirror_reflectivity;
        if !(r > 0.0 && r < 1.0) {
            return bad(format!("mirror reflectivity must lie in (0, 1), got {r}"));
        }
        if !(self.separation > 0.0) || !self.separation.is_finite() {
            return bad(format!("membrane separation must be > 0, got {}", self.separation));
        }
        if !self.com.is_finite() || self.com.abs() + self.separation / 2.0 >= self.length / 2.0 {
            return bad(format!(
                "membranes must lie strictly inside the cavity (|Q| + q/2 = {} >= L/2 = {})",
                self.com.abs() + self.separation / 2.0,
                self.length / 2.0
            ));
        }
        if self.sub_lengths().iter().any(|&l| !(l > 0.0)) {
            return bad("every sub-cavity length must be > 0".into());
        }
        Ok(())
    }

    /// `[L₁, L₂, L₃]`
    pub fn sub_lengths(&self) -> [f64; 3] {
        let half = self.length / 2.0;
        [
            half + self.com - self.separation / 2.0,
            self.separation,
            half - self.com - self.separation / 2.0,
        ]
    }

    /// Wavenumber of the driving field, `2π/λ`.
    pub fn drive_wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Index of the empty-cavity mode closest to the drive, `round(2L/λ)`.
    pub fn nearest_mode(&self) -> u64 {
        (2.0 * self.length / self.wavelength).round().max(1.0) as u64
    }

    pub fn membrane_at(&self, k: f64) -> Result<MembraneCoefficients> {
        membrane_coefficients(&self.membrane, k)
    }

    pub fn with_separation(mut self, q: f64) -> Self {
        self.separation = q;
        self
    }

    pub fn with_com(mut self, com: f64) -> Self {
        self.com = com;
        self
    }

    pub fn with_membrane(mut self, membrane: MembraneSpec) -> Self {
        self.membrane = membrane;
        self
    }

    pub fn with_mirror_reflectivity(mut self, r: f64) -> Self {
        self.mirror_reflectivity = r;
        self
    }

    /// Replaces a synthetic membrane's reflectivity, keeping its phase.
    pub fn with_membrane_reflectivity(mut self, reflectivity: f64) -> Result<Self> {
        match self.membrane {
            MembraneSpec::Synthetic { phase, .. } => {
                self.membrane = MembraneSpec::Synthetic { reflectivity, phase };
                Ok(self)
            }
            MembraneSpec::Physical { .. } => Err(CavityError::InvalidConfig(
                "membrane reflectivity can only be set on a synthetic membrane".into(),
            )),
        }
    }
}

/// Everything the field and resonance formulas need at one wavenumber.
///
/// The three one-way propagation phasors `e^{ikLᵢ}` are computed once
/// (each as a single product `k·Lᵢ`) and every derived phase is built from
/// them, so the different transmission routes see identical rounding.
#[derive(Debug, Clone, Copy)]
pub struct Phasors {
    pub k: f64,
    pub e: [Complex64; 3],
    pub membrane: MembraneCoefficients,
    /// Mirror amplitude reflection `r = √R`.
    pub r: f64,
    /// Mirror amplitude transmission `t = √(1 − R)`.
    pub t: f64,
}

impl Phasors {
    pub fn new(config: &CavityConfig, k: f64) -> Result<Self> {
        let membrane = config.membrane_at(k)?;
        let lens = config.sub_lengths();
        let e = lens.map(|l| Complex64::from_polar(1.0, k * l));
        let rr = config.mirror_reflectivity;
        Ok(Phasors { k, e, membrane, r: rr.sqrt(), t: (1.0 - rr).sqrt() })
    }

    /// `e^{i k L'}` with `kL' = kL + 2φ`.
    pub fn effective_length_phasor(&self) -> Complex64 {
        self.e[0] * self.e[1] * self.e[2] * Complex64::from_polar(1.0, 2.0 * self.membrane.phase)
    }

    /// `e^{i k q'}` with `kq' = kq + φ`.
    pub fn effective_separation_phasor(&self) -> Complex64 {
        self.e[1] * Complex64::from_polar(1.0, self.membrane.phase)
    }

    /// `e^{2ikQ} = e^{ikL₁}·e^{-ikL₃}`.
    pub fn com_phasor(&self) -> Complex64 {
        self.e[0] * self.e[2].conj()
    }
}
