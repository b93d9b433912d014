//! Cavity resonances in the presence of the two membranes.
//!
//! Writing `k = k₀ + δk` with `k₀ = mπ/L`, the resonance condition
//! `𝒜 sin(kL') + ℬ cos(kL') = ℱ` becomes, after dividing by
//! `√(𝒜² + ℬ²)`,
//!
//! ```text
//! ψ_m(δk) = δk·L + 2φ + θ(kq') − (−1)^m arcsin F̃(kQ, kq') = 0
//! ```
//!
//! `ψ_m` is continuous and rises by `2π` across the window
//! `δk·L + 2φ ∈ [−π, π]`, so every mode index owns a bracketed root. For
//! mirrors with `R < 1` the coupling term carries the factor `(1 + R)/√R`
//! instead of `2`; where that pushes `|F̃|` past one the condition has no
//! exact root and the clamped root marks the transmission maximum instead.

use std::f64::consts::PI;

use crate::cavity::CavityConfig;
use crate::error::{CavityError, Result};
use crate::membrane::MembraneCoefficients;
use crate::numeric::{bisect, sign_changes};

/// Sub-intervals probed for extra roots before bisection.
const ROOT_PROBES: usize = 64;
/// `|1 − h'(k₀)|` below which the first-order correction is refused.
const DIVERGENCE_GUARD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Zeroth,
    First,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Zeroth => "zeroth",
            Method::First => "first",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(Method::Exact),
            "zeroth" => Ok(Method::Zeroth),
            "first" => Ok(Method::First),
            other => Err(CavityError::Parse(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    pub m: u64,
    /// Empty-cavity wavenumber `mπ/L`, m⁻¹.
    pub k0: f64,
    pub delta_k: f64,
    pub k: f64,
    pub method: Method,
    pub converged: bool,
    /// Exact: residual of the `R < 1` mode equation. Approximations: the
    /// fixed-point residual `h(k₀ + δk) − δk` in m⁻¹.
    pub residual: f64,
    /// `h'(k₀)` for the first-order solution.
    pub h_prime: Option<f64>,
}

/// The trigonometric pieces of the resonance condition at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftFunctionParts {
    /// `𝒜(kq') = 1 − R_m cos(2kq')`
    pub a_trig: f64,
    /// `ℬ(kq') = R_m sin(2kq')`
    pub b_trig: f64,
    /// `ℱ(kQ, kq')`
    pub f_val: f64,
    /// `ℱ / √(𝒜² + ℬ²)`
    pub f_tilde: f64,
    /// Phase with `cos θ = 𝒜̃`, `sin θ = ℬ̃`; lies in (−π/2, π/2).
    pub theta: f64,
}

/// `k₀ = mπ/L`.
pub fn empty_mode(m: u64, length: f64) -> f64 {
    m as f64 * PI / length
}

/// Core evaluation from the reduced phases `kQ` and `kq'`.
///
/// `coupling_factor` is `2` for ideal mirrors and `(1 + R)/√R` otherwise.
/// `𝒜` and `√(𝒜² + ℬ²)` are formed as `T_m + 2R_m sin²(kq')` and
/// `√(T_m² + 4R_m sin²(kq'))`, which stay accurate as `R_m → 1`.
pub fn shift_parts_from_phases(
    kq_com: f64,
    kq_eff: f64,
    membrane: &MembraneCoefficients,
    coupling_factor: f64,
) -> Result<ShiftFunctionParts> {
    let amp = membrane.amplitude;
    let rm = amp * amp;
    let tm = membrane.transmissivity;
    let (s, c) = kq_eff.sin_cos();
    let a_trig = tm + 2.0 * rm * s * s;
    let b_trig = 2.0 * rm * s * c;
    let norm = (tm * tm + 4.0 * rm * s * s).sqrt();
    if !(norm > 0.0) {
        return Err(CavityError::SingularConfiguration { kq: kq_eff });
    }
    let f_val = -coupling_factor * amp * (2.0 * kq_com).cos() * s;
    Ok(ShiftFunctionParts {
        a_trig,
        b_trig,
        f_val,
        f_tilde: f_val / norm,
        theta: b_trig.atan2(a_trig),
    })
}

/// `𝒜, ℬ, ℱ, F̃, θ` at wavenumber `k` in the ideal-mirror form.
pub fn shift_parts(config: &CavityConfig, k: f64) -> Result<ShiftFunctionParts> {
    config.validate()?;
    let mem = config.membrane_at(k)?;
    shift_parts_from_phases(k * config.com, k * config.separation + mem.phase, &mem, 2.0)
}

/// Coupling factor of the `R < 1` mode equation.
pub fn mirror_coupling_factor(mirror_reflectivity: f64) -> f64 {
    (1.0 + mirror_reflectivity) / mirror_reflectivity.sqrt()
}

/// Residual of `sin(kL') − R_m sin(kL' − 2kq') + (1+R)/√R·√R_m cos(2kQ) sin(kq')`
/// at `k = mπ/L + δk`, with the `mπ` part of the phase removed exactly.
pub fn mode_residual(config: &CavityConfig, m: u64, delta_k: f64) -> Result<f64> {
    residual_with_factor(config, m, delta_k, mirror_coupling_factor(config.mirror_reflectivity))
}

/// Same as [`mode_residual`] with ideal mirrors (factor 2).
pub fn mode_residual_ideal(config: &CavityConfig, m: u64, delta_k: f64) -> Result<f64> {
    residual_with_factor(config, m, delta_k, 2.0)
}

fn residual_with_factor(config: &CavityConfig, m: u64, delta_k: f64, factor: f64) -> Result<f64> {
    config.validate()?;
    let k0 = empty_mode(m, config.length);
    let k = k0 + delta_k;
    let mem = config.membrane_at(k)?;
    let amp = mem.amplitude;
    let sign = parity_sign(m);
    let u = delta_k * config.length + 2.0 * mem.phase;
    let kq_eff = k0 * config.separation + delta_k * config.separation + mem.phase;
    let kq_com = k0 * config.com + delta_k * config.com;
    let x = sign * (u.sin() - amp * amp * (u - 2.0 * kq_eff).sin());
    Ok(x + factor * amp * (2.0 * kq_com).cos() * kq_eff.sin())
}

/// Peak transmission `T_m² / (T_m² + 4R_m sin²(2kQ) sin²(kq'))` reached
/// where the mode equation holds.
pub fn transmission_peak(config: &CavityConfig, k: f64) -> Result<f64> {
    let mem = config.membrane_at(k)?;
    let tm = mem.transmissivity;
    let rm = mem.reflectivity;
    let s_com = (2.0 * k * config.com).sin();
    let s_sep = (k * config.separation + mem.phase).sin();
    Ok(tm * tm / (tm * tm + 4.0 * rm * s_com * s_com * s_sep * s_sep))
}

fn parity_sign(m: u64) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `ψ_m(δk)`; `factor` selects the mirror form of the coupling term.
fn phase_function(config: &CavityConfig, m: u64, k0: f64, delta_k: f64, factor: f64) -> Result<f64> {
    let mem = config.membrane_at(k0 + delta_k)?;
    let kq_eff = k0 * config.separation + delta_k * config.separation + mem.phase;
    let kq_com = k0 * config.com + delta_k * config.com;
    let parts = shift_parts_from_phases(kq_com, kq_eff, &mem, factor)?;
    let arcsin = parts.f_tilde.clamp(-1.0, 1.0).asin();
    Ok(delta_k * config.length + 2.0 * mem.phase + parts.theta - parity_sign(m) * arcsin)
}

/// Exact resonance of mode `m`; see [`exact_shift_near`].
pub fn exact_shift(config: &CavityConfig, m: u64) -> Result<ModeSolution> {
    exact_shift_near(config, m, None)
}

/// Exact resonance of mode `m`.
///
/// If more than one root is found in the window, the one closest to
/// `hint` (a wavenumber, typically the previous point of a sweep) wins,
/// falling back to the one closest to `k₀`.
pub fn exact_shift_near(config: &CavityConfig, m: u64, hint: Option<f64>) -> Result<ModeSolution> {
    config.validate()?;
    if m == 0 {
        return Err(CavityError::InvalidConfig("mode index must be >= 1".into()));
    }
    let length = config.length;
    let k0 = empty_mode(m, length);
    let factor = mirror_coupling_factor(config.mirror_reflectivity);
    let phi0 = config.membrane_at(k0)?.phase;

    // ψ < 0 at δk·L + 2φ = −π and > 0 at +π; widen slightly so a
    // k-dependent φ cannot move the root outside.
    let margin = 1e-3 * PI / length;
    let lo = (-PI - 2.0 * phi0) / length - margin;
    let hi = (PI - 2.0 * phi0) / length + margin;

    let failure = std::cell::RefCell::new(None);
    let mut psi = |dk: f64| match phase_function(config, m, k0, dk, factor) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let brackets = sign_changes(&mut psi, lo, hi, ROOT_PROBES);
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    let target = hint.map(|k| k - k0).unwrap_or(0.0);
    let (blo, bhi) = brackets
        .into_iter()
        .min_by(|a, b| {
            let da = (0.5 * (a.0 + a.1) - target).abs();
            let db = (0.5 * (b.0 + b.1) - target).abs();
            da.total_cmp(&db)
        })
        .ok_or(CavityError::NoRootInWindow { m, lo: k0 + lo, hi: k0 + hi })?;

    let root = bisect(&mut psi, blo, bhi, 0.0, 200)
        .ok_or(CavityError::NoRootInWindow { m, lo: k0 + blo, hi: k0 + bhi })?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    // Large phases such as k₀q carry absolute rounding of ~1e-11 rad, so
    // neighbouring floats can differ visibly in residual: keep the best.
    let mut delta_k = root.x;
    let mut residual = mode_residual(config, m, delta_k)?;
    let mut probe = root.x;
    for _ in 0..4 {
        probe = probe.next_down();
        let r = mode_residual(config, m, probe)?;
        if r.abs() < residual.abs() {
            (delta_k, residual) = (probe, r);
        }
    }
    probe = root.x;
    for _ in 0..4 {
        probe = probe.next_up();
        let r = mode_residual(config, m, probe)?;
        if r.abs() < residual.abs() {
            (delta_k, residual) = (probe, r);
        }
    }
    Ok(ModeSolution {
        m,
        k0,
        delta_k,
        k: k0 + delta_k,
        method: Method::Exact,
        converged: root.width <= 1e-12 * k0,
        residual,
        h_prime: None,
    })
}

/// Follows mode `m` through a sequence of configurations, seeding each
/// solve with the previous resonance.
pub fn track_exact<'a, I>(configs: I, m: u64) -> Vec<Result<ModeSolution>>
where
    I: IntoIterator<Item = &'a CavityConfig>,
{
    let mut prev: Option<f64> = None;
    configs
        .into_iter()
        .map(|c| {
            let sol = exact_shift_near(c, m, prev);
            if let Ok(s) = &sol {
                prev = Some(s.k);
            }
            sol
        })
        .collect()
}

/// `h(k₀ + δ)`: the right-hand side of the implicit shift equation, with
/// the membrane phase and `q' = q + φ/k₀` frozen at `k₀`.
pub fn shift_function(config: &CavityConfig, m: u64, delta: f64) -> Result<f64> {
    config.validate()?;
    let k0 = empty_mode(m, config.length);
    let mem = config.membrane_at(k0)?;
    let phi = mem.phase;
    let q_eff = config.separation + phi / k0;
    let kq_eff = k0 * q_eff + delta * q_eff;
    let kq_com = k0 * config.com + delta * config.com;
    let parts = shift_parts_from_phases(kq_com, kq_eff, &mem, 2.0)?;
    Ok((parity_sign(m) * parts.f_tilde.clamp(-1.0, 1.0).asin() - parts.theta - 2.0 * phi)
        / config.length)
}

/// `h'(k₀)` by central difference with step `10⁻⁶·π/L`.
pub fn shift_function_slope(config: &CavityConfig, m: u64) -> Result<f64> {
    let step = 1e-6 * PI / config.length;
    let plus = shift_function(config, m, step)?;
    let minus = shift_function(config, m, -step)?;
    Ok((plus - minus) / (2.0 * step))
}

/// `δk⁽⁰⁾ = h(k₀)`.
pub fn zeroth_order_shift(config: &CavityConfig, m: u64) -> Result<ModeSolution> {
    let k0 = empty_mode(m, config.length);
    let dk = shift_function(config, m, 0.0)?;
    Ok(ModeSolution {
        m,
        k0,
        delta_k: dk,
        k: k0 + dk,
        method: Method::Zeroth,
        converged: true,
        residual: shift_function(config, m, dk)? - dk,
        h_prime: None,
    })
}

/// `δk⁽¹⁾ = h(k₀) / (1 − h'(k₀))`.
///
/// Refused when `1 − h'` is within `10⁻³` of zero or when the corrected
/// shift leaves the physical range `|δk| ≤ 2π/L`.
pub fn first_order_shift(config: &CavityConfig, m: u64) -> Result<ModeSolution> {
    let k0 = empty_mode(m, config.length);
    let h0 = shift_function(config, m, 0.0)?;
    let hp = shift_function_slope(config, m)?;
    let denom = 1.0 - hp;
    if denom.abs() < DIVERGENCE_GUARD {
        return Err(CavityError::DivergentCorrection { h_prime: hp });
    }
    let dk = h0 / denom;
    if dk.abs() > 2.0 * PI / config.length {
        return Err(CavityError::DivergentCorrection { h_prime: hp });
    }
    Ok(ModeSolution {
        m,
        k0,
        delta_k: dk,
        k: k0 + dk,
        method: Method::First,
        converged: true,
        residual: shift_function(config, m, dk)? - dk,
        h_prime: Some(hp),
    })
}

/// Dispatches on `method`.
pub fn solve(config: &CavityConfig, m: u64, method: Method) -> Result<ModeSolution> {
    match method {
        Method::Exact => exact_shift(config, m),
        Method::Zeroth => zeroth_order_shift(config, m),
        Method::First => first_order_shift(config, m),
    }
}
