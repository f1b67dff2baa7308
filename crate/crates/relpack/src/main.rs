use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relpack::{embed, figure, report, runner};
use relpack_core::verify::{SuitePlan, Tolerances};
use relpack_core::{make_params, PackingParams, Sigma};

#[derive(Parser)]
#[command(
    name = "relpack",
    version,
    about = "Relative ball packings into the Clifford torus chart"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Export images of concentric circles and the diameter as CSV.
    Figure(FigureArgs),
    /// Evaluate the embedding at one point.
    Embed(EmbedArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Number of disc factors (ball dimension 2n).
    #[arg(long)]
    n: Option<usize>,
    /// Ball radius.
    #[arg(long, default_value_t = 0.8)]
    r: f64,
    /// Band slack; defaults to the largest admissible value.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Uniform ball samples; a tenth as many boundary-biased samples are added.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    area_tol: Option<f64>,
    #[arg(long)]
    band_tol: Option<f64>,
    #[arg(long)]
    midline_tol: Option<f64>,
    #[arg(long)]
    round_trip_tol: Option<f64>,
    #[arg(long)]
    curve_area_tol: Option<f64>,
    #[arg(long)]
    chart_tol: Option<f64>,
    #[arg(long)]
    lagrangian_tol: Option<f64>,
}

#[derive(Args)]
struct FigureArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Number of concentric source circles.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    circles: u32,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(4..))]
    points_per_curve: u32,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated coordinates `q1,p1,...,qn,pn`.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Exit status: 1 for failed checks, 2 for usage and parameter errors.
enum Failure {
    Checks,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn params(args: &ParamArgs, default_n: usize) -> Result<PackingParams, Failure> {
    Ok(make_params(
        args.n.unwrap_or(default_n),
        args.r,
        args.epsilon,
    )?)
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("cannot create {}: {e}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn require(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        Err(Failure::Usage(format!(
            "{command} does not support --format {name}"
        )))
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    require(args.format, &[Format::Json], "verify")?;
    let params = params(&args.params, 2)?;
    if args.samples == 0 {
        return Err(Failure::Usage(relpack_core::Error::EmptySample.to_string()));
    }
    let threads = runner::thread_cap()?;
    let map = Sigma::new(params)?;
    let plan = SuitePlan::new(args.samples, args.seed);
    let mut tol = Tolerances::default();
    let overrides = [
        (args.area_tol, &mut tol.area),
        (args.band_tol, &mut tol.band),
        (args.midline_tol, &mut tol.midline),
        (args.round_trip_tol, &mut tol.round_trip),
        (args.curve_area_tol, &mut tol.curve_area),
        (args.chart_tol, &mut tol.chart_symplectic),
        (args.lagrangian_tol, &mut tol.lagrangian),
    ];
    for (value, slot) in overrides {
        if let Some(v) = value {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Failure::Usage(format!(
                    "tolerance must be finite and non-negative, got {v}"
                )));
            }
            *slot = v;
        }
    }
    let report = runner::run(&map, &plan, &tol, threads);
    let mut out = output(args.out.as_ref())?;
    writeln!(out, "{}", report::to_string_pretty(&report))?;
    out.flush()?;
    eprint!("{}", report::summary(&report));
    if report.overall {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn figure(args: FigureArgs) -> Result<(), Failure> {
    require(args.format, &[Format::Csv], "figure")?;
    let params = params(&args.params, 2)?;
    let map = Sigma::new(params)?;
    let rows = figure::figure_rows(&map, args.circles as usize, args.points_per_curve as usize)?;
    let mut out = output(args.out.as_ref())?;
    figure::write_csv(&rows, &mut out)?;
    out.flush()?;
    let check = figure::check_figure(&rows, &params);
    eprintln!(
        "circles {} closure_gap {:e} band_margin {:e} midline_deviation {:e} crossings {} nested {}",
        check.circles, check.closure_gap, check.band_margin, check.midline_deviation, check.crossings, check.nested
    );
    if check.passes(args.circles as usize) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn embed_cmd(args: EmbedArgs) -> Result<(), Failure> {
    require(args.format, &[Format::Text, Format::Json], "embed")?;
    let point = embed::parse_point(&args.point)?;
    let params = params(&args.params, point.n())?;
    let map = Sigma::new(params)?;
    let rec = embed::embed(&map, &point)?;
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&embed::to_json(&rec))?
        )?,
        _ => write!(out, "{}", embed::to_text(&rec))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Figure(a) => figure(a),
        Command::Embed(a) => embed_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
