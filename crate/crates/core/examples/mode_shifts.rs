//! Mode shift versus membrane separation, exact and approximate, for three
//! membrane reflectivities at the centre of a 1 cm cavity.
//!
//! `cargo run --example mode_shifts`

use cavimode::config::preset;
use cavimode::scan::run_scan;

fn main() -> cavimode::Result<()> {
    let mut request = preset("fig2b")?;
    request.a_axis = Some(cavimode::scan::Axis::new(-0.5, 0.5, 21));
    let out = run_scan(&request)?;
    let cols = ["a", "Rm", "dk_exact", "dk_zeroth", "dk_first"];
    let data: Vec<Vec<f64>> = cols.iter().map(|c| out.column(c).unwrap()).collect();
    println!("{:>7} {:>6} {:>12} {:>12} {:>12}", cols[0], cols[1], cols[2], cols[3], cols[4]);
    for i in 0..out.records.len() {
        println!(
            "{:>7.3} {:>6.2} {:>12.4} {:>12.4} {:>12.4}",
            data[0][i], data[1][i], data[2][i], data[3][i], data[4][i]
        );
    }
    println!("shift bound 2pi/L = {:.2} 1/m", 2.0 * std::f64::consts::PI / request.cavity.length);
    Ok(())
}
