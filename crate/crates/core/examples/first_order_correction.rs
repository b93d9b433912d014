//! How much the first-order correction helps when the membranes sit off
//! centre (Q = 100 wavelengths, membrane phase pi/6).
//!
//! `cargo run --example first_order_correction`

use cavimode::config::preset;
use cavimode::scan::run_scan;

fn main() -> cavimode::Result<()> {
    println!("{:>6} {:>16} {:>16} {:>16} {:>16}", "Rm", "mean|zeroth|", "mean|first|", "max|zeroth|", "max|first|");
    for name in ["fig3a", "fig3b", "fig3c"] {
        let request = preset(name)?;
        let out = run_scan(&request)?;
        let e = out.column("dk_exact").unwrap();
        let z = out.column("dk_zeroth").unwrap();
        let f = out.column("dk_first").unwrap();
        let err = |v: &[f64]| -> (f64, f64) {
            let d: Vec<f64> = v.iter().zip(&e).map(|(a, b)| (a - b).abs()).collect();
            (d.iter().sum::<f64>() / d.len() as f64, d.iter().cloned().fold(0.0, f64::max))
        };
        let (z_mean, z_max) = err(&z);
        let (f_mean, f_max) = err(&f);
        let rm = out.column("Rm").unwrap()[0];
        println!("{rm:>6.2} {z_mean:>16.4} {f_mean:>16.4} {z_max:>16.4} {f_max:>16.4}");
    }
    Ok(())
}
