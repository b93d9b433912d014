//! Linewidth and finesse of a resonance.
//!
//! Near a resonance the transmission is close to a Lorentzian in the round
//! trip phase `δ' = kL'`. Its half-width `β` gives `F = π/(2β)` and the
//! energy decay rate `κ = πc/(2L·F)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cavity::CavityConfig;
use crate::constants::SPEED_OF_LIGHT;
use crate::coupling::{mode_frequency, zero_point_motion, MechanicalSpec};
use crate::error::{CavityError, Result};
use crate::modes::{exact_shift, ModeSolution};
use crate::numeric::bisect;
use crate::transfer::transmission;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FinesseReport {
    pub finesse_numeric: f64,
    /// Closed form, available at `Q = 0` only.
    pub finesse_closed: Option<f64>,
    pub finesse_empty: f64,
    /// Lorentzian half-width in round-trip phase units (rad).
    pub beta_halfwidth: f64,
    /// rad/s
    pub kappa: f64,
    pub tc_max: f64,
    /// `|Δk₊ − Δk₋| / mean(Δk₊, Δk₋)`
    pub asymmetry: f64,
    pub asymmetric: bool,
    pub k_peak: f64,
}

/// Half-widths differing by more than this are flagged.
pub const ASYMMETRY_LIMIT: f64 = 0.05;

/// `π√R/(1 − R)`
pub fn finesse_empty(mirror_reflectivity: f64) -> f64 {
    PI * mirror_reflectivity.sqrt() / (1.0 - mirror_reflectivity)
}

/// `κ = πc/(2L·F)` in rad/s.
pub fn kappa(length: f64, finesse: f64) -> f64 {
    PI * SPEED_OF_LIGHT / (2.0 * length * finesse)
}

/// Distance in `k` from `k_peak` to the half-maximum on one side.
fn half_width(config: &CavityConfig, k_peak: f64, level: f64, side: f64) -> Result<f64> {
    let limit = PI / (2.0 * config.length);
    let failure = std::cell::RefCell::new(None);
    let mut excess = |dk: f64| match transmission(config, k_peak + side * dk) {
        Ok(t) => t - level,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let mut inner = 0.0;
    let mut outer = 1e-9 * limit;
    while excess(outer) > 0.0 {
        if outer >= limit {
            return Err(CavityError::PeakOverlap);
        }
        inner = outer;
        outer = (2.0 * outer).min(limit);
    }
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    let root = bisect(&mut excess, inner, outer, 0.0, 200)
        .ok_or_else(|| CavityError::NonConvergence("half-maximum bracket lost".into()))?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(root.x)
}

/// Finesse of mode `m` from the half-maximum points of the computed
/// transmission around the exact resonance.
pub fn finesse_numeric(config: &CavityConfig, m: u64) -> Result<FinesseReport> {
    let solution = exact_shift(config, m)?;
    finesse_at(config, &solution)
}

/// Same as [`finesse_numeric`] for an already solved resonance.
pub fn finesse_at(config: &CavityConfig, solution: &ModeSolution) -> Result<FinesseReport> {
    let k_peak = solution.k;
    let tc_max = transmission(config, k_peak)?;
    let level = 0.5 * tc_max;
    let left = half_width(config, k_peak, level, -1.0)?;
    let right = half_width(config, k_peak, level, 1.0)?;
    let mean = 0.5 * (left + right);
    let beta = config.length * mean;
    let finesse = PI / (2.0 * beta);
    let asymmetry = (right - left).abs() / mean;
    let closed = match finesse_closed_at(config, solution) {
        Ok(f) => Some(f),
        Err(CavityError::NonZeroCom { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(FinesseReport {
        finesse_numeric: finesse,
        finesse_closed: closed,
        finesse_empty: finesse_empty(config.mirror_reflectivity),
        beta_halfwidth: beta,
        kappa: kappa(config.length, finesse),
        tc_max,
        asymmetry,
        asymmetric: asymmetry > ASYMMETRY_LIMIT,
        k_peak,
    })
}

/// Closed-form finesse at `Q = 0`, evaluated at the exact resonance.
pub fn finesse_closed_form(config: &CavityConfig, m: u64) -> Result<f64> {
    if config.com != 0.0 {
        return Err(CavityError::NonZeroCom { q_com: config.com });
    }
    finesse_closed_at(config, &exact_shift(config, m)?)
}

fn finesse_closed_at(config: &CavityConfig, solution: &ModeSolution) -> Result<f64> {
    if config.com != 0.0 {
        return Err(CavityError::NonZeroCom { q_com: config.com });
    }
    let r = config.mirror_reflectivity;
    let mem = config.membrane_at(solution.k)?;
    let rm = mem.reflectivity;
    // 2δ_m = 2mπ + 2(δk·L + 2φ); the 2mπ drops out of every cosine
    let two_delta = 2.0 * (solution.delta_k * config.length + 2.0 * mem.phase);
    let kq = solution.k0 * config.separation + solution.delta_k * config.separation + mem.phase;
    let s = kq.sin();
    let v = r * rm * rm * (two_delta - 4.0 * kq).cos() - 2.0 * r * rm * (two_delta - 2.0 * kq).cos()
        + r * two_delta.cos()
        + (1.0 + r).powi(2) * rm * s * s;
    if !(v > 0.0) {
        return Err(CavityError::NonConvergence(format!("closed-form finesse radicand {v} <= 0")));
    }
    Ok(PI * v.sqrt() / ((1.0 - r) * mem.transmissivity))
}

/// `g/κ`.
pub fn g_over_kappa(g: f64, kappa: f64) -> f64 {
    g / kappa
}

/// `g_q^max/κ = 2L·F·ω₀·x_zpm/(π c q)` for a given finesse.
pub fn cap_over_kappa(config: &CavityConfig, m: u64, mech: &MechanicalSpec, finesse: f64) -> f64 {
    2.0 * config.length * finesse * mode_frequency(config, m) * zero_point_motion(mech)
        / (PI * SPEED_OF_LIGHT * config.separation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{inner_resonance, peak_coupling};
    use crate::membrane::MembraneSpec;
    use crate::modes::transmission_peak;

    const LAMBDA: f64 = 1064e-9;

    fn config(r: f64, rm: f64) -> CavityConfig {
        CavityConfig {
            length: 0.01,
            mirror_reflectivity: r,
            membrane: MembraneSpec::synthetic(rm, 0.0),
            com: 0.0,
            separation: 10.3 * LAMBDA,
            wavelength: LAMBDA,
        }
    }

    #[test]
    fn empty_cavity_finesse() {
        let c = config(0.9999, 0.0);
        let f = finesse_numeric(&c, c.nearest_mode()).unwrap();
        assert!((f.finesse_empty - 31414.0).abs() < 1.0);
        assert!((f.finesse_numeric / f.finesse_empty - 1.0).abs() < 1e-3);
        assert!((f.finesse_closed.unwrap() / f.finesse_empty - 1.0).abs() < 1e-9);
        assert!((f.tc_max - 1.0).abs() < 1e-9);
        assert!(!f.asymmetric);
    }

    #[test]
    fn kappa_round_trip() {
        let k = kappa(0.01, 4e4);
        assert!((k * 2.0 * 0.01 * 4e4 / (PI * SPEED_OF_LIGHT) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_numeric_off_resonance() {
        for rm in [0.3, 0.8, 0.95] {
            let c = config(0.999, rm);
            let f = finesse_numeric(&c, c.nearest_mode()).unwrap();
            let closed = f.finesse_closed.unwrap();
            assert!((closed / f.finesse_numeric - 1.0).abs() < 0.01, "{rm}: {closed} vs {}", f.finesse_numeric);
        }
    }

    #[test]
    fn peak_height_matches_formula() {
        let c = config(0.999, 0.7).with_com(0.13 * LAMBDA);
        let f = finesse_numeric(&c, c.nearest_mode()).unwrap();
        let expected = transmission_peak(&c, f.k_peak).unwrap();
        assert!((f.tc_max / expected - 1.0).abs() < 1e-6);
        assert!(f.finesse_closed.is_none());
        assert!(matches!(finesse_closed_form(&c, c.nearest_mode()), Err(CavityError::NonZeroCom { .. })));
    }

    #[test]
    fn lorentzian_shape() {
        let c = config(0.9995, 0.6);
        let f = finesse_numeric(&c, c.nearest_mode()).unwrap();
        let hw = f.beta_halfwidth / c.length;
        for i in -10..=10 {
            let x = i as f64 / 10.0;
            let t = transmission(&c, f.k_peak + x * hw).unwrap();
            let lorentz = f.tc_max / (1.0 + x * x);
            assert!((t / lorentz - 1.0).abs() < 0.02);
        }
    }

    #[test]
    fn strong_coupling_narrows_the_line() {
        // at the saturated inner resonance the line narrows by 1/(1 − g/g_max)
        let base = config(0.9999, 0.999);
        let m = base.nearest_mode();
        let c = base.with_separation(inner_resonance(&base, m).unwrap());
        let f = finesse_numeric(&c, m).unwrap();
        let peak = peak_coupling(&c, m, &MechanicalSpec::default()).unwrap();
        let predicted = 1.0 / (1.0 - peak.saturation());
        let ratio = f.finesse_numeric / f.finesse_empty;
        assert!(ratio > 2.0);
        assert!((ratio / predicted - 1.0).abs() < 0.05, "{ratio} vs {predicted}");
    }

    #[test]
    fn unsaturated_finesse_is_unchanged() {
        let base = config(0.9999, 0.5);
        let m = base.nearest_mode();
        let c = base.with_separation(inner_resonance(&base, m).unwrap());
        let f = finesse_numeric(&c, m).unwrap();
        assert!((f.finesse_numeric / f.finesse_empty - 1.0).abs() < 0.05);
    }

    #[test]
    fn cap_over_kappa_is_linear_in_finesse() {
        let c = config(0.9999, 0.5).with_separation(10e-6);
        let m = c.nearest_mode();
        let mech = MechanicalSpec::default();
        let a = cap_over_kappa(&c, m, &mech, 4e4);
        assert!((cap_over_kappa(&c, m, &mech, 8e4) / a - 2.0).abs() < 1e-12);
        assert!(a > 0.8 && a < 1.3, "{a}");
    }
}
