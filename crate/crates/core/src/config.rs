//! Run configuration files and the built-in presets.
//!
//! A configuration is a flat TOML table whose keys carry their units:
//!
//! ```toml
//! kind = "shift-1d"
//! cavity_length_m = 0.01
//! wavelength_m = 1.064e-6
//! mirror_reflectivity = 0.9999
//! membrane_mode = "synthetic"
//! membrane_reflectivity = 0.8
//! membrane_phase_rad = 0.0
//! com_m = 0.0
//! separation_m = 1.1172e-5
//! sweep_a_start_wavelengths = -0.5
//! sweep_a_stop_wavelengths = 0.5
//! sweep_a_points = 201
//! methods = ["exact", "zeroth", "first"]
//! ```
//!
//! Floats are written in shortest round-trip form, so every preset
//! survives a write/read cycle bit for bit.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cavity::CavityConfig;
use crate::coupling::MechanicalSpec;
use crate::error::{CavityError, Result};
use crate::membrane::MembraneSpec;
use crate::modes::{empty_mode, Method};
use crate::scan::{Axis, ScanKind, ScanRequest};

pub const PRESETS: [&str; 8] =
    ["fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4", "strong-coupling-report"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub kind: ScanKind,
    pub cavity_length_m: f64,
    pub wavelength_m: f64,
    pub mirror_reflectivity: f64,
    pub membrane_mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membrane_reflectivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membrane_phase_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membrane_index: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membrane_thickness_m: Option<f64>,
    #[serde(default)]
    pub com_m: f64,
    pub separation_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_a_start_wavelengths: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_a_stop_wavelengths: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_a_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_b_start_wavelengths: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_b_stop_wavelengths: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_b_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep_membrane_reflectivities: Vec<f64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_index: Option<u64>,
    #[serde(default = "default_mass")]
    pub mass_kg: f64,
    #[serde(default = "default_omega")]
    pub omega_m_rad_per_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_m_rad_per_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mechanical_quality_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finesse_override: Option<f64>,
    #[serde(default)]
    pub optimize_separation: bool,
}

fn default_methods() -> Vec<String> {
    ["exact", "zeroth", "first"].iter().map(|s| s.to_string()).collect()
}

fn default_mass() -> f64 {
    MechanicalSpec::default().mass
}

fn default_omega() -> f64 {
    MechanicalSpec::default().omega_m
}

fn axis(start: Option<f64>, stop: Option<f64>, points: Option<usize>, name: &str) -> Result<Option<Axis>> {
    match (start, stop, points) {
        (None, None, None) => Ok(None),
        (Some(a), Some(b), Some(n)) => Ok(Some(Axis::new(a, b, n))),
        _ => Err(CavityError::InvalidConfig(format!(
            "sweep_{name}_start_wavelengths, sweep_{name}_stop_wavelengths and sweep_{name}_points go together"
        ))),
    }
}

impl ConfigFile {
    pub fn to_request(&self) -> Result<ScanRequest> {
        let membrane = match self.membrane_mode.as_str() {
            "synthetic" => {
                if self.membrane_index.is_some() || self.membrane_thickness_m.is_some() {
                    return Err(CavityError::InvalidConfig(
                        "synthetic membranes take membrane_reflectivity and membrane_phase_rad".into(),
                    ));
                }
                MembraneSpec::synthetic(
                    self.membrane_reflectivity.ok_or_else(|| {
                        CavityError::InvalidConfig("membrane_reflectivity is required".into())
                    })?,
                    self.membrane_phase_rad.unwrap_or(0.0),
                )
            }
            "physical" => {
                if self.membrane_reflectivity.is_some() || self.membrane_phase_rad.is_some() {
                    return Err(CavityError::InvalidConfig(
                        "physical membranes take membrane_index and membrane_thickness_m".into(),
                    ));
                }
                let need = |v: Option<f64>, k: &str| {
                    v.ok_or_else(|| CavityError::InvalidConfig(format!("{k} is required")))
                };
                MembraneSpec::physical(
                    need(self.membrane_index, "membrane_index")?,
                    need(self.membrane_thickness_m, "membrane_thickness_m")?,
                )
            }
            other => {
                return Err(CavityError::InvalidConfig(format!(
                    "membrane_mode must be `synthetic` or `physical`, got `{other}`"
                )))
            }
        };
        let cavity = CavityConfig {
            length: self.cavity_length_m,
            mirror_reflectivity: self.mirror_reflectivity,
            membrane,
            com: self.com_m,
            separation: self.separation_m,
            wavelength: self.wavelength_m,
        };
        let methods = self.methods.iter().map(|m| Method::parse(m)).collect::<Result<Vec<_>>>()?;
        let request = ScanRequest {
            kind: self.kind,
            cavity,
            a_axis: axis(
                self.sweep_a_start_wavelengths,
                self.sweep_a_stop_wavelengths,
                self.sweep_a_points,
                "a",
            )?,
            b_axis: axis(
                self.sweep_b_start_wavelengths,
                self.sweep_b_stop_wavelengths,
                self.sweep_b_points,
                "b",
            )?,
            membrane_reflectivities: self.sweep_membrane_reflectivities.clone(),
            methods,
            mode_index: self.mode_index,
            mechanics: MechanicalSpec {
                mass: self.mass_kg,
                omega_m: self.omega_m_rad_per_s,
                gamma_m: self.gamma_m_rad_per_s,
                q_factor: self.mechanical_quality_factor,
            },
            finesse_override: self.finesse_override,
            optimize_separation: self.optimize_separation,
        };
        request.validate().map_err(as_config_error)?;
        Ok(request)
    }

    pub fn from_request(r: &ScanRequest) -> Self {
        let (mode, refl, phase, index, thick) = match r.cavity.membrane {
            MembraneSpec::Synthetic { reflectivity, phase } => {
                ("synthetic", Some(reflectivity), Some(phase), None, None)
            }
            MembraneSpec::Physical { index, thickness } => ("physical", None, None, Some(index), Some(thickness)),
        };
        ConfigFile {
            kind: r.kind,
            cavity_length_m: r.cavity.length,
            wavelength_m: r.cavity.wavelength,
            mirror_reflectivity: r.cavity.mirror_reflectivity,
            membrane_mode: mode.into(),
            membrane_reflectivity: refl,
            membrane_phase_rad: phase,
            membrane_index: index,
            membrane_thickness_m: thick,
            com_m: r.cavity.com,
            separation_m: r.cavity.separation,
            sweep_a_start_wavelengths: r.a_axis.map(|a| a.start),
            sweep_a_stop_wavelengths: r.a_axis.map(|a| a.stop),
            sweep_a_points: r.a_axis.map(|a| a.points),
            sweep_b_start_wavelengths: r.b_axis.map(|a| a.start),
            sweep_b_stop_wavelengths: r.b_axis.map(|a| a.stop),
            sweep_b_points: r.b_axis.map(|a| a.points),
            sweep_membrane_reflectivities: r.membrane_reflectivities.clone(),
            methods: r.methods.iter().map(|m| m.name().to_string()).collect(),
            mode_index: r.mode_index,
            mass_kg: r.mechanics.mass,
            omega_m_rad_per_s: r.mechanics.omega_m,
            gamma_m_rad_per_s: r.mechanics.gamma_m,
            mechanical_quality_factor: r.mechanics.q_factor,
            finesse_override: r.finesse_override,
            optimize_separation: r.optimize_separation,
        }
    }
}

/// Validation failures of a request are configuration errors.
fn as_config_error(e: CavityError) -> CavityError {
    match e {
        CavityError::InvalidConfig(_) => e,
        other => CavityError::InvalidConfig(other.to_string()),
    }
}

/// Parses a configuration, applying `key=value` overrides first. Values
/// are read as TOML literals, falling back to plain strings.
pub fn parse_config(text: &str, overrides: &[String]) -> Result<ScanRequest> {
    let mut table: toml::Table = toml::from_str(text).map_err(|e| CavityError::Parse(e.to_string()))?;
    for o in overrides {
        let (key, value) = o
            .split_once('=')
            .ok_or_else(|| CavityError::Parse(format!("override `{o}` is not key=value")))?;
        let value = value.trim();
        let parsed = toml::from_str::<toml::Table>(&format!("v = {value}"))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(value.to_string()));
        table.insert(key.trim().to_string(), parsed);
    }
    let file: ConfigFile = table.try_into().map_err(|e: toml::de::Error| CavityError::Parse(e.to_string()))?;
    file.to_request()
}

pub fn load_config(path: &Path, overrides: &[String]) -> Result<ScanRequest> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CavityError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text, overrides)
}

pub fn serialize_config(request: &ScanRequest) -> Result<String> {
    toml::to_string(&ConfigFile::from_request(request)).map_err(|e| CavityError::Parse(e.to_string()))
}

fn base_cavity(rm: f64, phase: f64) -> CavityConfig {
    let lambda = 1064e-9;
    CavityConfig {
        length: 0.01,
        mirror_reflectivity: 0.9999,
        membrane: MembraneSpec::synthetic(rm, phase),
        com: 0.0,
        separation: 10.5 * lambda,
        wavelength: lambda,
    }
}

fn fig3(rm: f64) -> ScanRequest {
    let phi = PI / 6.0;
    let mut c = base_cavity(rm, phi);
    let k0 = empty_mode(c.nearest_mode(), c.length);
    c.com = 100.0 * c.wavelength;
    c.separation = 200.0 * c.wavelength - phi / k0;
    let mut r = ScanRequest::new(ScanKind::Shift1d, c);
    r.a_axis = Some(Axis::new(-0.5, 0.5, 201));
    r
}

/// The named reproduction recipes.
pub fn preset(name: &str) -> Result<ScanRequest> {
    let r = match name {
        "fig2a" => {
            let mut r = ScanRequest::new(ScanKind::Shift2d, base_cavity(0.8, 0.0));
            r.a_axis = Some(Axis::new(-0.5, 0.5, 101));
            r.b_axis = Some(Axis::new(0.0, 1.0, 101));
            r.methods = vec![Method::Zeroth];
            r
        }
        "fig2b" => {
            let mut r = ScanRequest::new(ScanKind::Shift1d, base_cavity(0.5, 0.0));
            r.a_axis = Some(Axis::new(-0.5, 0.5, 201));
            r.membrane_reflectivities = vec![0.5, 0.8, 0.95];
            r
        }
        "fig2c" => {
            let mut r = ScanRequest::new(ScanKind::ReflectivitySweep, base_cavity(0.998, 0.0));
            r.a_axis = Some(Axis::new(-0.5, 0.5, 201));
            r.membrane_reflectivities = [2e-3, 1e-3, 1e-4, 1e-5, 1e-6].iter().map(|t| 1.0 - t).collect();
            r.methods = vec![Method::Exact];
            r
        }
        "fig3a" => fig3(0.2),
        "fig3b" => fig3(0.8),
        "fig3c" => fig3(0.99),
        "fig4" => {
            let mut r = ScanRequest::new(ScanKind::FinesseScan, base_cavity(0.999, 0.0));
            r.a_axis = Some(Axis::new(-0.5, 0.5, 201));
            r.methods = vec![Method::Exact];
            r
        }
        "strong-coupling-report" => {
            let mut c = base_cavity(0.998, 0.0);
            c.separation = 10e-6;
            let mut r = ScanRequest::new(ScanKind::CouplingReport, c);
            r.methods = vec![Method::Exact];
            r.mechanics = MechanicalSpec::default().with_quality_factor(1e6);
            r.finesse_override = Some(6e4);
            r.optimize_separation = true;
            r
        }
        other => return Err(CavityError::UnknownPreset(other.to_string())),
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_round_trips() {
        for name in PRESETS {
            let r = preset(name).unwrap();
            r.validate().unwrap();
            let text = serialize_config(&r).unwrap();
            let back = parse_config(&text, &[]).unwrap();
            assert_eq!(back, r, "{name}");
        }
    }

    #[test]
    fn preset_parameters() {
        let b = preset("fig2b").unwrap();
        assert_eq!(b.cavity.mirror_reflectivity, 0.9999);
        assert_eq!(b.cavity.length, 0.01);
        assert_eq!(b.cavity.wavelength, 1064e-9);
        assert_eq!(b.cavity.com, 0.0);
        assert_eq!(b.cavity.membrane, MembraneSpec::synthetic(0.5, 0.0));
        let a = preset("fig3a").unwrap();
        assert_eq!(a.cavity.membrane, MembraneSpec::synthetic(0.2, PI / 6.0));
        assert_eq!(a.cavity.com, 100.0 * 1064e-9);
        let f = preset("fig4").unwrap();
        assert_eq!(f.cavity.membrane, MembraneSpec::synthetic(0.999, 0.0));
        assert_eq!(f.cavity.separation, 10.5 * 1064e-9);
    }

    #[test]
    fn unknown_preset() {
        assert_eq!(preset("fig9"), Err(CavityError::UnknownPreset("fig9".into())));
    }

    #[test]
    fn overrides_apply() {
        let text = serialize_config(&preset("fig2b").unwrap()).unwrap();
        let r = parse_config(&text, &["mirror_reflectivity=0.99".into(), "methods=[\"exact\"]".into()]).unwrap();
        assert_eq!(r.cavity.mirror_reflectivity, 0.99);
        assert_eq!(r.methods, vec![Method::Exact]);
    }

    #[test]
    fn bad_files_are_config_errors() {
        assert!(matches!(parse_config("kind = 3", &[]), Err(CavityError::Parse(_))));
        let text = serialize_config(&preset("fig2b").unwrap()).unwrap();
        let bad = parse_config(&text, &["cavity_length_m=-1".into()]);
        assert!(matches!(bad, Err(CavityError::InvalidConfig(_))));
        let unknown = parse_config(&text, &["colour=\"red\"".into()]);
        assert!(matches!(unknown, Err(CavityError::Parse(_))));
    }
}
