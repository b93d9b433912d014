//! Intracavity fields and the transmission of the whole cavity.
//!
//! Three routes give the same transmission and check each other:
//! the eight field equations solved by substitution ([`solve_fields`]),
//! the closed-form denominator `𝒟` ([`transmission_closed_form`]), and the
//! quadratic form `|𝒟|² = A𝒳² + B𝒳 + C` ([`denominator_parts`]).

use num_complex::Complex64;

use crate::cavity::{CavityConfig, Phasors};
use crate::error::{CavityError, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Field amplitudes normalised to a unit input field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSolution {
    pub input: Complex64,
    /// `A₁ … A₆`: right/left travelling fields in the three sub-cavities.
    pub internal: [Complex64; 6],
    pub reflected: Complex64,
    pub transmitted: Complex64,
}

impl FieldSolution {
    pub fn reflectance(&self) -> f64 {
        self.reflected.norm_sqr()
    }

    pub fn transmittance(&self) -> f64 {
        self.transmitted.norm_sqr()
    }
}

/// Solves the field equations at wavenumber `k`.
///
/// The system closes into a chain of effective reflections seen from each
/// sub-cavity, so it is solved exactly by substitution from the far mirror
/// back to the input and then forward again.
pub fn solve_fields(config: &CavityConfig, k: f64) -> Result<FieldSolution> {
    config.validate()?;
    check_k(k)?;
    let p = Phasors::new(config, k)?;
    Ok(fields_from_phasors(&p))
}

pub(crate) fn fields_from_phasors(p: &Phasors) -> FieldSolution {
    let [e1, e2, e3] = p.e;
    let (r, t) = (p.r, p.t);
    let (rm, tm) = (p.membrane.r, p.membrane.t);

    // right-hand sub-cavity: A5 = i tm e2 A3 / d3
    let d3 = 1.0 + rm * r * e3 * e3;
    // A4 = rho3 · A3
    let rho3 = e2 * (-rm - tm * tm * r * e3 * e3 / d3);
    // A3 = i tm e1 A1 / d2
    let d2 = 1.0 + rm * e2 * rho3;
    // A2 = rho2 · A1
    let rho2 = e1 * (-tm * tm * e2 * rho3 / d2 - rm);
    let d1 = 1.0 - r * e1 * rho2;

    let input = Complex64::new(1.0, 0.0);
    let a1 = I * t * input / d1;
    let a2 = rho2 * a1;
    let a3 = I * tm * e1 * a1 / d2;
    let a4 = rho3 * a3;
    let a5 = I * tm * e2 * a3 / d3;
    let a6 = r * a5 * e3;
    FieldSolution {
        input,
        internal: [a1, a2, a3, a4, a5, a6],
        reflected: I * t * a2 * e1 + r * input,
        transmitted: I * t * a5 * e3,
    }
}

/// `|A_tran|²` from the field equations. This is the best-conditioned of
/// the three routes close to a narrow resonance.
pub fn transmission(config: &CavityConfig, k: f64) -> Result<f64> {
    let f = solve_fields(config, k)?;
    let tc = f.transmittance();
    if !tc.is_finite() {
        return Err(CavityError::SingularSystem { k });
    }
    Ok(tc)
}

/// The closed-form denominator `𝒟(k)`.
pub fn denominator(config: &CavityConfig, k: f64) -> Result<Complex64> {
    config.validate()?;
    check_k(k)?;
    Ok(denominator_from_phasors(&Phasors::new(config, k)?))
}

fn denominator_from_phasors(p: &Phasors) -> Complex64 {
    let [e1, e2, e3] = p.e;
    let big_r = p.r * p.r;
    let a = p.membrane.amplitude;
    let rm = a * a;
    let w = Complex64::from_polar(1.0, p.membrane.phase);
    let w2 = w * w;
    let (e1s, e2s, e3s) = (e1 * e1, e2 * e2, e3 * e3);
    let cross = e1s * w + e3s * w - e1s * e2s * w2 * w - e2s * e3s * w2 * w;
    1.0 - rm * e2s * w2 + big_r * rm * e1s * e3s * w2 - big_r * e1s * e2s * e3s * w2 * w2
        + p.r * a * cross
}

/// `T_c = (1 − R)²(1 − R_m)² / |𝒟|²`.
pub fn transmission_closed_form(config: &CavityConfig, k: f64) -> Result<f64> {
    config.validate()?;
    check_k(k)?;
    let p = Phasors::new(config, k)?;
    let d = denominator_from_phasors(&p);
    let num = (1.0 - config.mirror_reflectivity) * p.membrane.transmissivity;
    Ok(num * num / d.norm_sqr())
}

/// `|𝒟|²` split as `A𝒳² + B𝒳 + C` around the fast variable `𝒳(kL')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenominatorParts {
    pub d: Complex64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `𝒳(kL') = sin(kL') − R_m sin(kL' − 2kq')`
    pub x: f64,
    /// `L' = L + 2φ/k`, m.
    pub effective_length: f64,
    /// `q' = q + φ/k`, m.
    pub effective_separation: f64,
}

impl DenominatorParts {
    pub fn quadratic(&self) -> f64 {
        self.a * self.x * self.x + self.b * self.x + self.c
    }
}

pub fn denominator_parts(config: &CavityConfig, k: f64) -> Result<DenominatorParts> {
    config.validate()?;
    check_k(k)?;
    let p = Phasors::new(config, k)?;
    let big_r = config.mirror_reflectivity;
    let amp = p.membrane.amplitude;
    let rm = amp * amp;
    let tm = p.membrane.transmissivity;

    let pl = p.effective_length_phasor();
    let pq = p.effective_separation_phasor();
    let pc = p.com_phasor();
    let sin_kq = pq.im;
    let cos_2kq_com = pc.re;
    let cos_4kq_com = (pc * pc).re;

    let x = pl.im - rm * (pl * pq.conj() * pq.conj()).im;
    let a = 4.0 * big_r;
    let b = 8.0 * big_r.sqrt() * amp * (1.0 + big_r) * cos_2kq_com * sin_kq;
    // 1 − 2R_m cos(2kq') + R_m² written as T_m² + 4R_m sin²(kq')
    let c = 8.0 * big_r * rm * cos_4kq_com * sin_kq * sin_kq - 2.0 * big_r * tm * tm
        + (1.0 + big_r * big_r) * (tm * tm + 4.0 * rm * sin_kq * sin_kq);
    let phi = p.membrane.phase;
    Ok(DenominatorParts {
        d: denominator_from_phasors(&p),
        a,
        b,
        c,
        x,
        effective_length: config.length + 2.0 * phi / k,
        effective_separation: config.separation + phi / k,
    })
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(CavityError::InvalidConfig(format!("wavenumber must be > 0, got {k}")));
    }
    Ok(())
}
