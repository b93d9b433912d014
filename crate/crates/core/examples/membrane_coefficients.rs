//! Reflectivity and phase of a dielectric slab versus thickness.
//!
//! `cargo run --example membrane_coefficients`

use cavimode::membrane::{membrane_coefficients, MembraneSpec};

fn main() -> cavimode::Result<()> {
    let lambda = 1064e-9;
    let k = 2.0 * std::f64::consts::PI / lambda;
    let index = 2.0;
    println!("{:>12} {:>10} {:>10} {:>10}", "thickness_nm", "Rm", "Tm", "phase_rad");
    for i in 0..=20 {
        let thickness = 10e-9 + i as f64 * 15e-9;
        let c = membrane_coefficients(&MembraneSpec::physical(index, thickness), k)?;
        println!(
            "{:>12.1} {:>10.6} {:>10.6} {:>10.6}",
            thickness * 1e9,
            c.reflectivity,
            c.transmissivity,
            c.phase
        );
    }
    Ok(())
}
