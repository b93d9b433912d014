use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cavimode::config::{load_config, preset, serialize_config, PRESETS};
use cavimode::modes::Method;
use cavimode::scan::{run_scan, strong_coupling_report, ScanRequest};
use cavimode::CavityError;

#[derive(Parser)]
#[command(name = "cavimode", version, about = "Resonances, couplings and finesse of a two-membrane cavity")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write the table.
    Scan {
        #[command(flatten)]
        source: Source,
        /// Comma-separated subset of exact,zeroth,first.
        #[arg(long, value_delimiter = ',')]
        method: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Print a report.
    Report {
        #[command(subcommand)]
        which: Report,
    },
    /// Write a preset as a configuration file.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Report {
    /// Couplings, finesse, decay rate and cooperativity.
    StrongCoupling {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set mirror_reflectivity=0.999`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

fn exit_code(e: &CavityError) -> u8 {
    match e {
        CavityError::Io(_) => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn load(source: &Source) -> Result<ScanRequest, CavityError> {
    match (&source.preset, &source.config) {
        (Some(name), None) => {
            let base = preset(name)?;
            if source.overrides.is_empty() {
                Ok(base)
            } else {
                cavimode::config::parse_config(&serialize_config(&base)?, &source.overrides)
            }
        }
        (None, Some(path)) => load_config(path, &source.overrides),
        _ => Err(CavityError::InvalidConfig("give exactly one of --preset or --config".into())),
    }
}

fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn scan(source: &Source, methods: &[String], out: &Path, format: Format) -> Result<usize, CavityError> {
    let mut request = load(source)?;
    if !methods.is_empty() {
        request.methods = methods.iter().map(|m| Method::parse(m)).collect::<Result<_, _>>()?;
        request.validate()?;
    }
    let output = run_scan(&request)?;
    match format {
        Format::Csv => {
            output.write_csv(out)?;
            output.write_summary(&summary_path(out))?;
        }
        Format::Json => output.write_json(out)?,
    }
    Ok(output.warning_count())
}

fn report(source: &Source, format: Format) -> Result<(), CavityError> {
    let request = load(source)?;
    let r = strong_coupling_report(&request)?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&r).unwrap_or_default());
        }
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "n/a".into());
            println!("mode index m      {}", r.mode_index);
            println!("separation q      {:.6e} m", r.separation);
            println!("g_q               {:.6e} rad/s", r.g_q);
            println!("g_q_max           {:.6e} rad/s", r.g_q_max);
            println!("g_q / g_q_max     {:.4}", r.g_q.abs() / r.g_q_max);
            println!("g_Q               {:.6e} rad/s", r.g_com);
            println!("g_sing            {:.6e} rad/s", r.g_sing);
            println!("enhancement L/2q  {:.6}", r.enhancement);
            println!("F_cav             {:.6e}", r.finesse);
            println!("F_cav (computed)  {}", opt(r.finesse_computed));
            println!("kappa             {:.6e} rad/s", r.kappa);
            println!("g/kappa           {:.6}", r.g_over_kappa);
            println!("g_q_max/kappa     {:.6}", r.g_max_over_kappa);
            println!("C0                {}", opt(r.cooperativity));
        }
    }
    Ok(())
}

fn write_preset(name: &str, out: Option<&Path>) -> Result<(), CavityError> {
    let text = serialize_config(&preset(name)?)?;
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CavityError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be >= 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let result = match &cli.command {
        Command::Scan { source, method, out, format } => scan(source, method, out, *format).map(|warnings| {
            if warnings > 0 {
                eprintln!("warning: {warnings} point(s) failed; see the summary for codes");
            }
        }),
        Command::Report { which: Report::StrongCoupling { source, format } } => report(source, *format),
        Command::Preset { name, out } => write_preset(name, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}
