//! Couplings, decay rate and single-photon cooperativity for a 1 cm cavity
//! with membranes 10 um apart.
//!
//! `cargo run --example strong_coupling_report`

use cavimode::config::preset;
use cavimode::finesse::cap_over_kappa;
use cavimode::scan::strong_coupling_report;

fn main() -> cavimode::Result<()> {
    let request = preset("strong-coupling-report")?;
    let r = strong_coupling_report(&request)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    let c = request.cavity;
    let m = request.mode();
    println!(
        "g_q_max/kappa at q = 10 um and F = 4e4: {:.3}",
        cap_over_kappa(&c, m, &request.mechanics, 4e4)
    );
    Ok(())
}
