//! Finesse of the driven mode across a separation sweep, plus the line
//! narrowing exactly at the inner-cavity resonance.
//!
//! `cargo run --example finesse_sweep`

use cavimode::coupling::{inner_resonance, peak_coupling, MechanicalSpec};
use cavimode::finesse::{finesse_empty, finesse_numeric};
use cavimode::{CavityConfig, MembraneSpec};

fn main() -> cavimode::Result<()> {
    let lambda = 1064e-9;
    let base = CavityConfig {
        length: 0.01,
        mirror_reflectivity: 0.9999,
        membrane: MembraneSpec::synthetic(0.999, 0.0),
        com: 0.0,
        separation: 10.5 * lambda,
        wavelength: lambda,
    };
    let m = base.nearest_mode();
    println!("empty-cavity finesse {:.1}", finesse_empty(base.mirror_reflectivity));
    println!("{:>7} {:>12} {:>12} {:>10}", "a", "numeric", "closed", "asym");
    for i in -5..=5 {
        let a = 0.1 * i as f64;
        let c = base.with_separation(base.separation + a * lambda);
        let f = finesse_numeric(&c, m)?;
        println!(
            "{a:>7.2} {:>12.1} {:>12.1} {:>10.2e}",
            f.finesse_numeric,
            f.finesse_closed.unwrap_or(f64::NAN),
            f.asymmetry
        );
    }
    let at = base.with_separation(inner_resonance(&base, m)?);
    let f = finesse_numeric(&at, m)?;
    let g = peak_coupling(&at, m, &MechanicalSpec::default())?;
    println!(
        "at the inner resonance: F = {:.1} = {:.3} x empty; 1/(1 - g/g_max) = {:.3}",
        f.finesse_numeric,
        f.finesse_numeric / f.finesse_empty,
        1.0 / (1.0 - g.saturation())
    );
    Ok(())
}
