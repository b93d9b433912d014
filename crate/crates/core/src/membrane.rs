//! Scattering coefficients of a single lossless dielectric membrane.
//!
//! For a real refractive index the reflection and transmission amplitudes
//! share their argument up to a sign. The common phase is always taken as
//! `arg(t_m)`, which never degenerates, and the sign is carried by
//! [`MembraneCoefficients::amplitude`], a signed `±√R_m`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CavityError, Result};

/// How the membrane optics are specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MembraneSpec {
    /// Homogeneous slab of refractive index `index` and thickness `thickness` (m).
    Physical { index: f64, thickness: f64 },
    /// Directly prescribed intensity reflectivity and phase (rad).
    Synthetic { reflectivity: f64, phase: f64 },
}

impl MembraneSpec {
    pub fn synthetic(reflectivity: f64, phase: f64) -> Self {
        MembraneSpec::Synthetic { reflectivity, phase }
    }

    pub fn physical(index: f64, thickness: f64) -> Self {
        MembraneSpec::Physical { index, thickness }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MembraneSpec::Physical { index, thickness } => {
                if !(index >= 1.0) || !index.is_finite() {
                    return Err(CavityError::InvalidSpec(format!(
                        "refractive index must be >= 1, got {index}"
                    )));
                }
                if !(thickness > 0.0) || !thickness.is_finite() {
                    return Err(CavityError::InvalidSpec(format!(
                        "thickness must be > 0, got {thickness}"
                    )));
                }
            }
            MembraneSpec::Synthetic { reflectivity, phase } => {
                if !(0.0..1.0).contains(&reflectivity) {
                    return Err(CavityError::InvalidSpec(format!(
                        "reflectivity must lie in [0, 1), got {reflectivity}"
                    )));
                }
                if !(phase > -PI && phase <= PI) {
                    return Err(CavityError::InvalidSpec(format!(
                        "phase must lie in (-pi, pi], got {phase}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Complex scattering amplitudes of one membrane at a given wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneCoefficients {
    pub r: Complex64,
    pub t: Complex64,
    /// `|r_m|²`
    pub reflectivity: f64,
    /// `1 - R_m`, evaluated as `|t_m|²` so it stays accurate as `R_m -> 1`.
    pub transmissivity: f64,
    /// Common phase `φ = arg(t_m)`, in (-π, π].
    pub phase: f64,
    /// Signed reflection amplitude: `r_m = amplitude · e^{iφ}`.
    pub amplitude: f64,
}

impl MembraneCoefficients {
    pub fn reflection_vanishes(&self) -> bool {
        self.r == Complex64::new(0.0, 0.0)
    }
}

/// Scattering coefficients of `spec` at wavenumber `k` (m⁻¹).
pub fn membrane_coefficients(spec: &MembraneSpec, k: f64) -> Result<MembraneCoefficients> {
    spec.validate()?;
    if !(k > 0.0) || !k.is_finite() {
        return Err(CavityError::InvalidSpec(format!("wavenumber must be > 0, got {k}")));
    }
    match *spec {
        MembraneSpec::Physical { index: n, thickness } => {
            let beta = n * k * thickness;
            let (s, c) = beta.sin_cos();
            let den = Complex64::new((n * n + 1.0) * s, 2.0 * n * c);
            let r = Complex64::new((n * n - 1.0) * s, 0.0) / den;
            let t = Complex64::new(2.0 * n, 0.0) / den;
            let phase = wrap_phase(t.arg());
            let amplitude = (r * Complex64::from_polar(1.0, -phase)).re;
            Ok(MembraneCoefficients {
                r,
                t,
                reflectivity: r.norm_sqr(),
                transmissivity: t.norm_sqr(),
                phase,
                amplitude,
            })
        }
        MembraneSpec::Synthetic { reflectivity, phase } => {
            let e = Complex64::from_polar(1.0, phase);
            let transmissivity = 1.0 - reflectivity;
            Ok(MembraneCoefficients {
                r: e * reflectivity.sqrt(),
                t: e * transmissivity.sqrt(),
                reflectivity,
                transmissivity,
                phase,
                amplitude: reflectivity.sqrt(),
            })
        }
    }
}

/// The common argument φ used to build the effective lengths `L'` and `q'`.
pub fn membrane_phase(coeffs: &MembraneCoefficients) -> f64 {
    coeffs.phase
}

/// Like [`membrane_phase`], but reports a vanishing reflection as an error
/// for callers that need `arg(r_m)` itself.
pub fn membrane_phase_checked(coeffs: &MembraneCoefficients) -> Result<f64> {
    if coeffs.reflection_vanishes() {
        return Err(CavityError::DegenerateInput);
    }
    Ok(coeffs.phase)
}

fn wrap_phase(p: f64) -> f64 {
    if p <= -PI {
        p + 2.0 * PI
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    // k chosen so that n·k·L_m hits the requested optical thickness.
    fn physical_at(n: f64, beta: f64) -> MembraneCoefficients {
        let thickness = 100e-9;
        let k = beta / (n * thickness);
        membrane_coefficients(&MembraneSpec::physical(n, thickness), k).unwrap()
    }

    #[test]
    fn half_wave_slab_is_transparent() {
        let c = physical_at(2.0, PI);
        assert!(c.r.norm() < 1e-15);
        assert!((c.t.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn index_one_is_transparent() {
        for beta in [0.3, 1.0, 2.5, 4.0] {
            let c = physical_at(1.0, beta);
            assert_eq!(c.reflectivity, 0.0);
            assert!((c.t.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn quarter_wave_slab() {
        let c = physical_at(2.0, FRAC_PI_2);
        assert!((c.r - Complex64::new(0.6, 0.0)).norm() < 1e-15);
        assert!((c.t - Complex64::new(0.8, 0.0)).norm() < 1e-15);
        assert!((c.reflectivity - 0.36).abs() < 1e-15);
        assert!(membrane_phase(&c).abs() < 1e-15);
    }

    #[test]
    fn phase_matches_direct_complex_evaluation() {
        // independent evaluation of the slab formula at β = π/4
        let (n, beta) = (2.0_f64, PI / 4.0);
        let den_re = (n * n + 1.0) * beta.sin();
        let den_im = 2.0 * n * beta.cos();
        let expected = -den_im.atan2(den_re);
        let c = physical_at(n, beta);
        assert!((membrane_phase(&c) - expected).abs() < 1e-14);
        assert!((c.r.arg() - expected).abs() < 1e-14);
    }

    #[test]
    fn synthetic_round_trip() {
        let c = membrane_coefficients(&MembraneSpec::synthetic(0.5, PI / 6.0), 1.0).unwrap();
        assert_eq!(membrane_phase(&c), PI / 6.0);
        assert!((c.r.norm_sqr() - 0.5).abs() < 1e-15);
        assert!((c.t.norm_sqr() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn negative_sine_flips_amplitude_sign() {
        let c = physical_at(2.5, 4.0);
        assert!(c.amplitude < 0.0);
        assert!((c.amplitude * c.amplitude - c.reflectivity).abs() < 1e-15);
        let rebuilt = Complex64::from_polar(c.amplitude, c.phase);
        assert!((rebuilt - c.r).norm() < 1e-15);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(membrane_coefficients(&MembraneSpec::physical(0.9, 1e-7), 1e6).is_err());
        assert!(membrane_coefficients(&MembraneSpec::physical(2.0, 0.0), 1e6).is_err());
        assert!(membrane_coefficients(&MembraneSpec::synthetic(1.0, 0.0), 1e6).is_err());
        assert!(membrane_coefficients(&MembraneSpec::synthetic(-0.1, 0.0), 1e6).is_err());
        assert!(membrane_coefficients(&MembraneSpec::synthetic(0.5, -PI), 1e6).is_err());
        assert!(membrane_coefficients(&MembraneSpec::synthetic(0.5, 0.0), -1.0).is_err());
    }

    #[test]
    fn transparent_membrane_phase_is_flagged() {
        let c = physical_at(1.0, 1.0);
        assert_eq!(membrane_phase_checked(&c), Err(CavityError::DegenerateInput));
    }
}
