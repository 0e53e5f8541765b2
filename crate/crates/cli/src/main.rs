use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zariski_core::finiteness::{self, DEFAULT_A_MAX};
use zariski_core::toric::{count_h0, fan_to_surface_model};
use zariski_core::{
    decompose, h0_limit_scan, kappa_sigma, verify_suite, volume, BoundaryDivisor, Error,
    FinitenessVerdict, NSClass, Rational, ScanParams, Status, Suite, SurfaceModel, ToricDivisor,
    ToricFan,
};

/// Zariski decompositions, volumes and section finiteness on surfaces.
#[derive(Parser)]
#[command(name = "zariski", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Surface model checks.
    Model {
        #[command(subcommand)]
        command: ModelCommand,
    },
    /// Zariski decomposition D = P + N.
    Zariski(DivisorArgs),
    /// Volume P².
    Volume(DivisorArgs),
    /// Numerical dimension 0, 1 or 2 (null when not pseudo-effective).
    KappaSigma(DivisorArgs),
    /// Is H⁰(X ∖ E, mD) finite-dimensional?
    Classify(ClassifyArgs),
    /// Leading coefficient of h⁰(X ∖ E, mD) for big D with finite sections.
    Growth(BoundaryArgs),
    /// Toric surfaces from fan files.
    Toric {
        #[command(subcommand)]
        command: ToricCommand,
    },
    /// Cross-check the engine against lattice-point counts on a fan.
    Verify {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Hodge index, generator and ample-class checks.
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum ToricCommand {
    /// Export the surface model of a fan.
    Model {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Lattice-point count of a torus-invariant divisor.
    H0 {
        #[arg(long)]
        fan: PathBuf,
        /// One integer per ray.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Tabulate h⁰(mD + kE) and find where it stabilizes in k.
    Scan {
        #[arg(long)]
        fan: PathBuf,
        /// One integer per ray.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// Ray indices of the boundary components.
        #[arg(long)]
        boundary: String,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
        #[arg(long)]
        k_cap: Option<u32>,
        #[arg(long)]
        window: Option<u32>,
    },
}

#[derive(Args)]
struct DivisorArgs {
    #[arg(long)]
    model: PathBuf,
    /// Coordinates in the model's basis, e.g. `1,-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Args)]
struct BoundaryArgs {
    #[command(flatten)]
    divisor: DivisorArgs,
    /// Curve names, e.g. `e,f`.
    #[arg(long)]
    boundary: String,
    #[arg(long, default_value_t = DEFAULT_A_MAX)]
    a_max: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Big,
    Pseff,
    /// `big` when D is big, `pseff` otherwise.
    Auto,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    boundary: BoundaryArgs,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Include per-slope diagnostics.
    #[arg(long)]
    trace: bool,
}

enum Failure {
    Input(String),
    Math(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotBig
            | Error::NotPseudoEffective
            | Error::NotFinite
            | Error::CurveInAugmentedLocus(_) => Failure::Math(e.to_string()),
            Error::CapExceededInconclusive { .. } => Failure::Inconclusive(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// A JSON report plus whether it records a failed check or an undecided
/// verdict.
struct Report {
    json: String,
    undecided: bool,
}

impl Report {
    fn of<T: Serialize>(value: &T) -> Self {
        Report {
            json: serde_json::to_string_pretty(value).expect("report serializes"),
            undecided: false,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<SurfaceModel, Failure> {
    SurfaceModel::from_json(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<ToricFan, Failure> {
    ToricFan::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn split(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_class(model: &SurfaceModel, list: &str) -> Result<NSClass, Failure> {
    let coords = split(list)
        .map(|s| {
            s.parse::<Rational>()
                .map_err(|e| Failure::Input(format!("divisor coordinate {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(model.class(coords)?)
}

fn parse_ints(list: &str, what: &str) -> Result<Vec<i64>, Failure> {
    split(list)
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Failure::Input(format!("{what}: {s:?} is not an integer")))
        })
        .collect()
}

fn parse_boundary(model: &SurfaceModel, list: &str) -> Result<BoundaryDivisor, Failure> {
    let names: Vec<&str> = split(list).collect();
    if names.iter().any(|n| n.parse::<usize>().is_ok() && model.curve(n).is_err()) {
        return Err(Failure::Input(
            "surface-model boundaries are curve names, not ray indices".into(),
        ));
    }
    Ok(BoundaryDivisor::new(model, &names)?)
}

fn parse_ray_boundary(fan: &ToricFan, list: &str) -> Result<ToricDivisor, Failure> {
    let mut idx = Vec::new();
    for s in split(list) {
        let i: usize = s.parse().map_err(|_| {
            Failure::Input(format!("fan boundaries are ray indices; got {s:?}"))
        })?;
        if i >= fan.len() {
            return Err(Failure::Input(format!("ray index {i} out of range")));
        }
        if idx.contains(&i) {
            return Err(Failure::Input(format!("ray {i} listed twice")));
        }
        idx.push(i);
    }
    Ok(ToricDivisor::reduced(fan.len(), &idx))
}

#[derive(Serialize)]
struct VolumeOut {
    volume: Rational,
}

#[derive(Serialize)]
struct KappaOut {
    kappa_sigma: Option<u8>,
    pseudo_effective: bool,
}

#[derive(Serialize)]
struct H0Out {
    h0: u64,
}

fn classify(args: &ClassifyArgs) -> Result<Report, Failure> {
    let b = &args.boundary;
    let model = load_model(&b.divisor.model)?;
    let d = parse_class(&model, &b.divisor.divisor)?;
    let e = parse_boundary(&model, &b.boundary)?;
    let mode = match args.mode {
        Mode::Auto if volume(&model, &d)?.is_positive() => Mode::Big,
        Mode::Auto => Mode::Pseff,
        m => m,
    };
    let mut v: FinitenessVerdict = match mode {
        Mode::Big => finiteness::classify_big(&model, &d, &e, b.a_max)?,
        _ => finiteness::classify_pseff(&model, &d, &e, b.a_max)?,
    };
    if !args.trace {
        v.trace.clear();
    }
    let mut r = Report::of(&v);
    r.undecided = v.status == Status::Inconclusive;
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Model {
            command: ModelCommand::Validate { model },
        } => {
            let report = load_model(model)?.validate();
            let mut r = Report::of(&report);
            r.undecided = !report.passed;
            Ok(r)
        }
        Command::Zariski(a) => {
            let model = load_model(&a.model)?;
            let d = parse_class(&model, &a.divisor)?;
            Ok(Report::of(&decompose(&model, &d)?))
        }
        Command::Volume(a) => {
            let model = load_model(&a.model)?;
            let d = parse_class(&model, &a.divisor)?;
            Ok(Report::of(&VolumeOut {
                volume: volume(&model, &d)?,
            }))
        }
        Command::KappaSigma(a) => {
            let model = load_model(&a.model)?;
            let d = parse_class(&model, &a.divisor)?;
            let k = kappa_sigma(&model, &d)?;
            Ok(Report::of(&KappaOut {
                kappa_sigma: k.value(),
                pseudo_effective: k.value().is_some(),
            }))
        }
        Command::Classify(a) => classify(a),
        Command::Growth(b) => {
            let model = load_model(&b.divisor.model)?;
            let d = parse_class(&model, &b.divisor.divisor)?;
            let e = parse_boundary(&model, &b.boundary)?;
            Ok(Report::of(&finiteness::growth_estimate(&model, &d, &e, b.a_max)?))
        }
        Command::Toric { command } => match command {
            ToricCommand::Model { fan } => {
                let s = fan_to_surface_model(&load_fan(fan)?)?;
                Ok(Report::of(&s.model.to_file()))
            }
            ToricCommand::H0 { fan, coeffs } => {
                let fan = load_fan(fan)?;
                let t = ToricDivisor(parse_ints(coeffs, "coefficient")?);
                fan.check_divisor(&t)?;
                Ok(Report::of(&H0Out {
                    h0: count_h0(&fan, &t),
                }))
            }
            ToricCommand::Scan {
                fan,
                divisor,
                boundary,
                m_max,
                k_cap,
                window,
            } => {
                let fan = load_fan(fan)?;
                let d = ToricDivisor(parse_ints(divisor, "coefficient")?);
                let e = parse_ray_boundary(&fan, boundary)?;
                let params = ScanParams {
                    m_max: *m_max,
                    k_cap: *k_cap,
                    window: *window,
                    predicted_slope: None,
                };
                Ok(Report::of(&h0_limit_scan(&fan, &d, &e, &params)?))
            }
        },
        Command::Verify { fan, suite } => {
            let suite: Suite = suite.parse()?;
            let report = verify_suite(&load_fan(fan)?, suite)?;
            let mut r = Report::of(&report);
            r.undecided = !report.passed;
            Ok(r)
        }
    }
}

fn emit(out: Option<&Path>, json: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{json}\n"))
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| {
        emit(cli.out.as_deref(), &r.json)?;
        Ok(r.undecided)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(3)
        }
    }
}
