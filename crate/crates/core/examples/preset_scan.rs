//! Runs a named preset through the scan engine, writes the CSV and the
//! summary next to each other, and shows the preset as a config file.
//!
//! `cargo run --example preset_scan -- fig2b /tmp/fig2b.csv`

use std::path::PathBuf;

use cavimode::config::{preset, serialize_config};
use cavimode::scan::run_scan;

fn main() -> cavimode::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "fig2b".into());
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join(format!("{name}.csv")));
    let request = preset(&name)?;
    println!("# {name} as a configuration file\n{}", serialize_config(&request)?);
    let output = run_scan(&request)?;
    output.write_csv(&out)?;
    output.write_summary(&out.with_extension("summary.json"))?;
    println!("{} rows, {} warnings -> {}", output.records.len(), output.warning_count(), out.display());
    Ok(())
}
