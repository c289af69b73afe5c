use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use spinsq::oracles;
use spinsq::sweep::{format_complex, format_sci, parse_complex, parse_config_file, run_sweep, SweepConfig};
use spinsq::verify::run_verify;
use spinsq::{Complex64, NonlinearFunction};

const EXIT_CONFIG: u8 = 1;
const EXIT_CHECK: u8 = 2;

#[derive(Parser)]
#[command(name = "spinsq", version, about = "Spin squeezing in spin coherent and nonlinear spin coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time sweep of xi^2 along x, y, z for exp(-i t F(N)) |eta>, written as CSV
    Sweep(SweepArgs),
    /// Run the built-in verification suite
    Verify,
    /// Print the closed-form moments for one (2j, eta, F, t, k)
    Moments(MomentArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// `key = value` file with defaults for any of the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    /// Twice the spin quantum number
    #[arg(long)]
    two_j: Option<String>,
    /// Coherent-state parameter: RE, RE+IMi or RE-IMi
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Hamiltonian F(N), e.g. "N^2" or "sin(2*N)"
    #[arg(long = "f", allow_hyphen_values = true)]
    f_expr: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<String>,
    /// Number of evenly spaced times, end points included
    #[arg(long)]
    steps: Option<String>,
    /// Comma-separated subset of x,y,z
    #[arg(long)]
    axes: Option<String>,
    /// Output path, or `-` for stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long, default_value_t = 10)]
    two_j: u32,
    #[arg(long, default_value = "0.1", allow_hyphen_values = true)]
    eta: String,
    #[arg(long = "f", default_value = "N^2", allow_hyphen_values = true)]
    f_expr: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value_t = 1)]
    k: i64,
    /// Argument of the generating function
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    lambda: f64,
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut settings = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let flags = [
        ("two-j", args.two_j),
        ("eta", args.eta),
        ("f", args.f_expr),
        ("t-min", args.t_min),
        ("t-max", args.t_max),
        ("steps", args.steps),
        ("axes", args.axes),
        ("out", args.out),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            settings.insert(key.to_string(), value);
        }
    }
    let config = SweepConfig::from_settings(&settings)?;
    let csv = run_sweep(&config)?.to_csv();
    match settings.get("out").map(String::as_str) {
        None | Some("-") => io::stdout().lock().write_all(csv.as_bytes())?,
        Some(path) => fs::write(path, csv).with_context(|| format!("writing {path}"))?,
    }
    Ok(())
}

fn format_value(v: spinsq::Result<f64>) -> String {
    match v {
        Ok(v) => format_sci(v),
        Err(spinsq::Error::UndefinedDirection { .. }) => "undef".to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn format_cplx(z: Complex64) -> String {
    format!("{}{}{}i", format_sci(z.re), if z.im < 0.0 { "" } else { "+" }, format_sci(z.im))
}

fn moments(args: MomentArgs) -> Result<String> {
    let eta = parse_complex(&args.eta)?;
    let hamiltonian = NonlinearFunction::parse(&args.f_expr)?;
    hamiltonian.table(args.two_j)?;
    let (two_j, k, t) = (args.two_j, args.k, args.t);
    let moments = oracles::scs_number_moments(two_j, eta);
    let [mx, my, mz] = oracles::scs_spin_means(two_j, eta);
    let (vx, vy) = oracles::scs_variances_xy(two_j, eta);
    let lines = [
        format!("two_j = {two_j}"),
        format!("eta = {}", format_complex(eta)),
        format!("F = {hamiltonian}"),
        format!("t = {}", format_sci(t)),
        format!("k = {k}"),
        format!("lambda = {}", format_sci(args.lambda)),
        format!("generating_function = {}", format_value(oracles::generating_function(two_j, eta, args.lambda))),
        format!("factorial_moment = {}", format_sci(oracles::factorial_moment(two_j, eta, k)?)),
        format!("mean_n = {}", format_sci(moments.mean_n)),
        format!("mean_n2 = {}", format_sci(moments.mean_n2)),
        format!("var_n = {}", format_sci(moments.var_n)),
        format!("scs_jminus_k = {}", format_cplx(oracles::scs_jminus_k(two_j, eta, k)?)),
        format!("nlscs_jminus_k = {}", format_cplx(oracles::nlscs_jminus_k(two_j, eta, &hamiltonian, t, k)?)),
        format!("scs_spin_means = {},{},{}", format_sci(mx), format_sci(my), format_sci(mz)),
        format!("scs_variances_xy = {},{}", format_sci(vx), format_sci(vy)),
        format!("nlscs_xi_z = {}", format_value(oracles::nlscs_xi_z(two_j, eta, &hamiltonian, t))),
    ];
    Ok(lines.join("\n") + "\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Moments(args) => moments(args).map(|text| print!("{text}")),
        Command::Verify => {
            let report = run_verify();
            println!("{report}");
            if !report.passed() {
                return ExitCode::from(EXIT_CHECK);
            }
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
