//! Single-photon optomechanical couplings of the two membranes.
//!
//! `g_x = c·∂δk/∂x·x_zpm` for the relative separation `x = q` and the
//! centre of mass `x = Q`. Individual membrane couplings follow from
//! `q₁ = Q − q/2`, `q₂ = Q + q/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cavity::CavityConfig;
use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{CavityError, Result};
use crate::modes::{empty_mode, exact_shift_near, shift_function_slope};
use crate::numeric::{golden_max, linspace};

/// `|h'(k₀)|` above which the near-resonance formula is not trusted.
const ANALYTIC_VALIDITY: f64 = 0.1;
const MAX_STEP_HALVINGS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanicalSpec {
    /// Effective mass, kg.
    pub mass: f64,
    /// Mechanical angular frequency, rad/s.
    pub omega_m: f64,
    /// Damping rate, rad/s.
    pub gamma_m: Option<f64>,
    pub q_factor: Option<f64>,
}

impl Default for MechanicalSpec {
    fn default() -> Self {
        MechanicalSpec { mass: 2e-12, omega_m: 9.4e5, gamma_m: None, q_factor: None }
    }
}

impl MechanicalSpec {
    pub fn with_quality_factor(mut self, q: f64) -> Self {
        self.q_factor = Some(q);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CavityError::InvalidMechanics(m));
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return bad(format!("mass must be > 0, got {}", self.mass));
        }
        if !(self.omega_m > 0.0) || !self.omega_m.is_finite() {
            return bad(format!("omega_m must be > 0, got {}", self.omega_m));
        }
        if let Some(g) = self.gamma_m {
            if !(g > 0.0) || !g.is_finite() {
                return bad(format!("gamma_m must be > 0, got {g}"));
            }
        }
        if let Some(q) = self.q_factor {
            if !(q > 0.0) || !q.is_finite() {
                return bad(format!("quality factor must be > 0, got {q}"));
            }
        }
        if let (Some(g), Some(q)) = (self.gamma_m, self.q_factor) {
            if ((self.omega_m / q - g) / g).abs() > 1e-9 {
                return bad("gamma_m and quality factor disagree".into());
            }
        }
        Ok(())
    }

    /// `γ_m`, given directly or as `ω_m/Q_m`.
    pub fn damping_rate(&self) -> Option<f64> {
        self.gamma_m.or_else(|| self.q_factor.map(|q| self.omega_m / q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    /// Membrane separation `q`.
    Relative,
    /// Centre of mass `Q`.
    Com,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingReport {
    pub g_q: f64,
    pub g_com: f64,
    /// Coupling of the membrane at `Q − q/2`.
    pub g1: f64,
    /// Coupling of the membrane at `Q + q/2`.
    pub g2: f64,
    pub g_sing: f64,
    pub g_q_max: f64,
    /// Near-resonance formula; `None` outside its validity domain.
    pub g_q_analytic: Option<f64>,
    /// `L/(2q)`
    pub enhancement: f64,
    pub x_zpm: f64,
    pub omega0: f64,
}

/// `√(ħ/(M ω_m))`.
pub fn zero_point_motion(mech: &MechanicalSpec) -> f64 {
    (HBAR / (mech.mass * mech.omega_m)).sqrt()
}

/// `ω₀ = c·mπ/L`.
pub fn mode_frequency(config: &CavityConfig, m: u64) -> f64 {
    SPEED_OF_LIGHT * empty_mode(m, config.length)
}

fn displaced(config: &CavityConfig, coordinate: Coordinate, dx: f64) -> CavityConfig {
    match coordinate {
        Coordinate::Relative => config.with_separation(config.separation + dx),
        Coordinate::Com => config.with_com(config.com + dx),
    }
}

/// `∂δk/∂x` from exact shifts, central differences with one Richardson
/// step. The step starts at `10⁻⁴·λ·T_m` and is halved while neighbouring
/// stencil shifts differ by more than `π/L`.
pub fn shift_derivative(config: &CavityConfig, m: u64, coordinate: Coordinate) -> Result<f64> {
    config.validate()?;
    let k0 = empty_mode(m, config.length);
    let tm = config.membrane_at(k0)?.transmissivity;
    let centre = exact_shift_near(config, m, None)?;
    let branch_limit = PI / config.length;

    let mut step = 1e-4 * config.wavelength * tm;
    let mut last_jump = 0.0;
    for _ in 0..MAX_STEP_HALVINGS {
        let offsets = [-step, -0.5 * step, 0.5 * step, step];
        let mut shifts = [0.0; 4];
        for (s, dx) in shifts.iter_mut().zip(offsets) {
            *s = exact_shift_near(&displaced(config, coordinate, dx), m, Some(centre.k))?.delta_k;
        }
        let chain = [shifts[0], shifts[1], centre.delta_k, shifts[2], shifts[3]];
        last_jump = chain.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
        if last_jump <= branch_limit {
            let wide = (shifts[3] - shifts[0]) / (2.0 * step);
            let narrow = (shifts[2] - shifts[1]) / step;
            return Ok((4.0 * narrow - wide) / 3.0);
        }
        step *= 0.5;
    }
    Err(CavityError::StencilCrossesBranch { jump: last_jump })
}

/// `g = c·∂δk/∂x·x_zpm` in rad/s.
pub fn coupling_numeric(
    config: &CavityConfig,
    m: u64,
    mech: &MechanicalSpec,
    coordinate: Coordinate,
) -> Result<f64> {
    mech.validate()?;
    Ok(SPEED_OF_LIGHT * shift_derivative(config, m, coordinate)? * zero_point_motion(mech))
}

/// Coupling of a single membrane at the cavity slope, `2√R_m(ω₀/L)x_zpm`.
pub fn single_membrane_coupling(config: &CavityConfig, m: u64, mech: &MechanicalSpec) -> Result<f64> {
    let k0 = empty_mode(m, config.length);
    let amp = config.membrane_at(k0)?.amplitude.abs();
    Ok(2.0 * amp * mode_frequency(config, m) / config.length * zero_point_motion(mech))
}

/// `g_q = −[cos(2k₀Q) + √R_m]/T_m · g_sing`, valid near an inner-cavity
/// resonance while `|h'(k₀)|` stays small.
pub fn coupling_analytic(config: &CavityConfig, m: u64, mech: &MechanicalSpec) -> Result<f64> {
    config.validate()?;
    mech.validate()?;
    let k0 = empty_mode(m, config.length);
    let mem = config.membrane_at(k0)?;
    if mem.reflectivity == 0.0 {
        return Ok(0.0);
    }
    let hp = shift_function_slope(config, m)?;
    if hp.abs() > ANALYTIC_VALIDITY {
        return Err(CavityError::OutOfValidity { h_prime: hp.abs() });
    }
    let g_sing = single_membrane_coupling(config, m, mech)?;
    Ok(-((2.0 * k0 * config.com).cos() + mem.amplitude.abs()) / mem.transmissivity * g_sing)
}

/// Saturation value `(ω₀/q)x_zpm`.
pub fn coupling_cap(config: &CavityConfig, m: u64, mech: &MechanicalSpec) -> f64 {
    mode_frequency(config, m) / config.separation * zero_point_motion(mech)
}

/// `L/(2q)`: the saturation value over the bare coupling `2(ω₀/L)x_zpm`.
pub fn enhancement(config: &CavityConfig) -> f64 {
    config.length / (2.0 * config.separation)
}

/// `C₀ = g²/(κ γ_m)`.
pub fn cooperativity(g: f64, kappa: f64, mech: &MechanicalSpec) -> Result<f64> {
    let gamma = mech.damping_rate().ok_or(CavityError::MissingDamping)?;
    if !(kappa > 0.0) {
        return Err(CavityError::InvalidConfig(format!("kappa must be > 0, got {kappa}")));
    }
    Ok(g * g / (kappa * gamma))
}

/// Separation of the inner-cavity resonance nearest `config.separation`
/// at which `|∂δk/∂q|` peaks: `k₀q + φ = pπ` with `p` of the same parity
/// as `m`.
pub fn inner_resonance(config: &CavityConfig, m: u64) -> Result<f64> {
    let k0 = empty_mode(m, config.length);
    let phi = config.membrane_at(k0)?.phase;
    let x = (k0 * config.separation + phi) / PI;
    let parity = (m % 2) as f64;
    let p = 2.0 * ((x - parity) / 2.0).round() + parity;
    Ok((p * PI - phi) / k0)
}

/// Where and how strongly the relative coupling peaks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakCoupling {
    pub separation: f64,
    pub g_q: f64,
    pub g_q_max: f64,
}

impl PeakCoupling {
    pub fn saturation(&self) -> f64 {
        self.g_q.abs() / self.g_q_max
    }
}

/// Maximises `|g_q|` over the separation around the inner-cavity
/// resonance closest to `config.separation`, other parameters fixed.
pub fn peak_coupling(config: &CavityConfig, m: u64, mech: &MechanicalSpec) -> Result<PeakCoupling> {
    config.validate()?;
    mech.validate()?;
    let k0 = empty_mode(m, config.length);
    let tm = config.membrane_at(k0)?.transmissivity;
    let centre = inner_resonance(config, m)?;
    let lambda = config.wavelength;
    let limit = 0.25 * lambda;

    let slope = |q: f64| -> Result<f64> {
        shift_derivative(&config.with_separation(q), m, Coordinate::Relative).map(f64::abs)
    };

    // widen until the profile has dropped below half its maximum at the edges
    let mut half = (lambda * tm).min(limit);
    let (grid, values) = loop {
        let grid = linspace(centre - half, centre + half, 41);
        let values = grid.iter().map(|&q| slope(q)).collect::<Result<Vec<_>>>()?;
        let peak = values.iter().cloned().fold(0.0, f64::max);
        let edge = values[0].max(values[values.len() - 1]);
        if edge < 0.5 * peak || half >= limit {
            break (grid, values);
        }
        half = (4.0 * half).min(limit);
    };

    let best = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let mut failure = None;
    let ext = golden_max(
        |q| match slope(q) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        1e-6 * (hi - lo),
        200,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (q_best, s_best) = if ext.value >= values[best] { (ext.x, ext.value) } else { (grid[best], values[best]) };
    let x = zero_point_motion(mech);
    let cfg = config.with_separation(q_best);
    Ok(PeakCoupling {
        separation: q_best,
        g_q: SPEED_OF_LIGHT * s_best * x,
        g_q_max: coupling_cap(&cfg, m, mech),
    })
}

/// Width in `q` of the region where `|∂δk/∂q|` exceeds half its peak,
/// sampled on `points` separations within `±half_window` of the inner
/// resonance and interpolated linearly at the crossings.
pub fn high_slope_width(config: &CavityConfig, m: u64, half_window: f64, points: usize) -> Result<f64> {
    let centre = inner_resonance(config, m)?;
    let grid = linspace(centre - half_window, centre + half_window, points.max(3));
    let values = grid
        .iter()
        .map(|&q| shift_derivative(&config.with_separation(q), m, Coordinate::Relative).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;
    let peak = values.iter().cloned().fold(0.0, f64::max);
    let level = 0.5 * peak;
    let first = values.iter().position(|&v| v >= level).unwrap_or(0);
    let last = values.iter().rposition(|&v| v >= level).unwrap_or(values.len() - 1);
    if first == 0 || last == values.len() - 1 {
        return Err(CavityError::NonConvergence("half-slope region exceeds the window".into()));
    }
    let cross = |i: usize, j: usize| {
        let t = (level - values[i]) / (values[j] - values[i]);
        grid[i] + t * (grid[j] - grid[i])
    };
    Ok(cross(last + 1, last) - cross(first - 1, first))
}

/// Every coupling quantity at the given configuration.
pub fn coupling_report(config: &CavityConfig, m: u64, mech: &MechanicalSpec) -> Result<CouplingReport> {
    let g_q = coupling_numeric(config, m, mech, Coordinate::Relative)?;
    let g_com = coupling_numeric(config, m, mech, Coordinate::Com)?;
    let g_q_analytic = match coupling_analytic(config, m, mech) {
        Ok(g) => Some(g),
        Err(CavityError::OutOfValidity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CouplingReport {
        g_q,
        g_com,
        g1: g_com / 2.0 - g_q,
        g2: g_com / 2.0 + g_q,
        g_sing: single_membrane_coupling(config, m, mech)?,
        g_q_max: coupling_cap(config, m, mech),
        g_q_analytic,
        enhancement: enhancement(config),
        x_zpm: zero_point_motion(mech),
        omega0: mode_frequency(config, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membrane::MembraneSpec;

    const LAMBDA: f64 = 1064e-9;

    fn fig2(rm: f64) -> CavityConfig {
        CavityConfig {
            length: 0.01,
            mirror_reflectivity: 0.9999,
            membrane: MembraneSpec::synthetic(rm, 0.0),
            com: 0.0,
            separation: 10.5 * LAMBDA,
            wavelength: LAMBDA,
        }
    }

    #[test]
    fn zero_point_motion_values() {
        let unit = MechanicalSpec { mass: HBAR, omega_m: 1.0, ..Default::default() };
        assert!((zero_point_motion(&unit) - 1.0).abs() < 1e-15);
        let x = zero_point_motion(&MechanicalSpec::default());
        assert!((x - 7.49e-15).abs() < 0.01e-15, "{x}");
        let heavy = MechanicalSpec { mass: 8e-12, ..Default::default() };
        assert!((zero_point_motion(&heavy) * 2.0 - x).abs() < 1e-28);
    }

    #[test]
    fn cap_and_enhancement() {
        let c = fig2(0.5).with_separation(10e-6);
        let m = c.nearest_mode();
        assert!((enhancement(&c) - 500.0).abs() < 1e-12 * 500.0);
        let g = coupling_cap(&c, m, &MechanicalSpec::default());
        assert!((g - 1.3e6).abs() < 0.05e6, "{g}");
        let doubled = coupling_cap(&c.with_separation(20e-6), m, &MechanicalSpec::default());
        assert!((2.0 * doubled - g).abs() < 1e-9 * g);
    }

    #[test]
    fn cooperativity_scaling() {
        let mech = MechanicalSpec { gamma_m: Some(2.0), ..Default::default() };
        assert_eq!(cooperativity(2.0, 2.0, &mech).unwrap(), 1.0);
        assert_eq!(cooperativity(4.0, 2.0, &mech).unwrap(), 4.0);
        assert_eq!(
            cooperativity(1.0, 1.0, &MechanicalSpec::default()),
            Err(CavityError::MissingDamping)
        );
        let qm = MechanicalSpec::default().with_quality_factor(1e6);
        assert!((qm.damping_rate().unwrap() - 0.94).abs() < 1e-12);
    }

    #[test]
    fn no_membrane_no_coupling() {
        let c = fig2(0.0);
        let m = c.nearest_mode();
        let mech = MechanicalSpec::default();
        assert_eq!(coupling_numeric(&c, m, &mech, Coordinate::Relative).unwrap(), 0.0);
        assert_eq!(coupling_numeric(&c, m, &mech, Coordinate::Com).unwrap(), 0.0);
        assert_eq!(coupling_analytic(&c, m, &mech).unwrap(), 0.0);
    }

    #[test]
    fn inner_resonance_parity() {
        let c = fig2(0.8);
        let m = c.nearest_mode();
        let k0 = empty_mode(m, c.length);
        let q = inner_resonance(&c, m).unwrap();
        assert!(((k0 * q / PI).round() - 21.0).abs() < 1e-9);
        assert!((k0 * q / PI - 21.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_matches_numeric_at_moderate_reflectivity() {
        let base = fig2(0.8);
        let m = base.nearest_mode();
        let c = base.with_separation(inner_resonance(&base, m).unwrap());
        let mech = MechanicalSpec::default();
        let numeric = coupling_numeric(&c, m, &mech, Coordinate::Relative).unwrap();
        let analytic = coupling_analytic(&c, m, &mech).unwrap();
        let g_sing = single_membrane_coupling(&c, m, &mech).unwrap();
        assert!((analytic / g_sing + (1.0 + 0.8f64.sqrt()) / 0.2).abs() < 1e-9);
        assert!((numeric.abs() - analytic.abs()).abs() < 0.1 * numeric.abs());
    }

    #[test]
    fn analytic_refused_when_saturated() {
        let base = fig2(1.0 - 1e-4);
        let m = base.nearest_mode();
        let c = base.with_separation(inner_resonance(&base, m).unwrap());
        assert!(matches!(
            coupling_analytic(&c, m, &MechanicalSpec::default()),
            Err(CavityError::OutOfValidity { .. })
        ));
    }

    #[test]
    fn report_identities() {
        let c = fig2(0.8).with_separation(10.53 * LAMBDA).with_com(0.1 * LAMBDA);
        let r = coupling_report(&c, c.nearest_mode(), &MechanicalSpec::default()).unwrap();
        assert_eq!(r.g1, r.g_com / 2.0 - r.g_q);
        assert_eq!(r.g2, r.g_com / 2.0 + r.g_q);
        assert!(r.g_q.abs() <= 1.05 * r.g_q_max);
        assert!(r.g_com.abs() <= 2.2 * r.g_sing);
    }

    #[test]
    fn rejects_bad_mechanics() {
        let bad = MechanicalSpec { mass: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let clash = MechanicalSpec { gamma_m: Some(1.0), q_factor: Some(1.0), ..Default::default() };
        assert!(clash.validate().is_err());
    }
}
