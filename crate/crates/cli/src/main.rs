use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gws_core::{
    genus0_description, hermitian_description, semigroup_polynomial, series_on_box, verify,
    Description, IntBox, IntTuple, Semigroup, SeriesKind,
};

mod plot;

const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "gws",
    version,
    about = "Generalized Weierstrass semigroups at several points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a description file for a built-in family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Answer a single question about one tuple.
    Query {
        op: QueryOp,
        #[arg(long)]
        desc: PathBuf,
        /// Tuple such as "3,-1".
        #[arg(long, allow_hyphen_values = true)]
        alpha: IntTuple,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a series on a box, or print the semigroup polynomial.
    Series {
        #[arg(long)]
        desc: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Box such as "-8..9,-8..10"; not needed for the polynomial.
        #[arg(long = "box", allow_hyphen_values = true)]
        window: Option<IntBox>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest number of box points to evaluate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Run every consistency check on a box; exits 1 if any fails.
    Verify {
        #[arg(long)]
        desc: PathBuf,
        #[arg(long = "box", allow_hyphen_values = true)]
        window: IntBox,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Draw members and maximal elements of a two-point semigroup as SVG.
    Plot {
        #[arg(long)]
        desc: PathBuf,
        #[arg(long = "box", allow_hyphen_values = true)]
        window: IntBox,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The projective line at m points.
    Genus0 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Hermitian curve at (Q∞, P00).
    Hermitian {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryOp {
    Member,
    Dim,
    Basis,
    Maximal,
    Absmaximal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "L")]
    L,
    #[value(name = "Q")]
    Q,
    #[value(name = "P")]
    P,
    Polynomial,
}

enum Failure {
    Verification(String),
    Usage(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<gws_core::Error> for Failure {
    fn from(e: gws_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification(msg) | Failure::Usage(msg) | Failure::Cap(msg) => {
                    if !msg.is_empty() {
                        eprintln!("gws: {msg}");
                    }
                }
            }
            ExitCode::from(f.code())
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Description, Failure> {
    Description::load(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check_box(desc: &Description, window: &IntBox, cap: u128) -> Result<(), Failure> {
    if window.dim() != desc.m() {
        return Err(Failure::Usage(format!(
            "box has {} coordinates but the description has m = {}",
            window.dim(),
            desc.m()
        )));
    }
    if window.point_count() > cap {
        return Err(Failure::Cap(format!(
            "box has {} points, above the cap of {cap}; raise --cap to proceed",
            window.point_count()
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { family } => {
            let (desc, out) = match family {
                Family::Genus0 { m, out } => (genus0_description(m)?, out),
                Family::Hermitian { q, out } => (hermitian_description(q)?, out),
            };
            emit(out.as_deref(), &format!("{}\n", desc.to_json()))
        }
        Command::Query {
            op,
            desc,
            alpha,
            format,
        } => {
            let desc = load(&desc)?;
            alpha.check_len(desc.m())?;
            alpha.check_magnitude()?;
            let sg = Semigroup::new(desc);
            let (name, value) = match op {
                QueryOp::Member => ("member", serde_json::json!(sg.member(&alpha))),
                QueryOp::Dim => ("dim", serde_json::json!(sg.ell(&alpha))),
                QueryOp::Basis => ("basis", serde_json::json!(sg.rr_basis_exponents(&alpha))),
                QueryOp::Maximal => ("maximal", serde_json::json!(sg.is_maximal(&alpha))),
                QueryOp::Absmaximal => (
                    "absmaximal",
                    serde_json::json!(sg.is_absolute_maximal(&alpha)),
                ),
            };
            let text = match format {
                Format::Json => {
                    serde_json::json!({ "op": name, "alpha": alpha, "value": value }).to_string()
                }
                Format::Text => match op {
                    QueryOp::Basis => {
                        let list: Vec<String> = sg
                            .rr_basis_exponents(&alpha)
                            .iter()
                            .map(ToString::to_string)
                            .collect();
                        format!("[{}]", list.join(","))
                    }
                    _ => value.to_string(),
                },
            };
            emit(None, &format!("{text}\n"))
        }
        Command::Series {
            desc,
            kind,
            window,
            out,
            format,
            cap,
        } => {
            let desc = load(&desc)?;
            let sg = Semigroup::new(desc);
            if let Kind::Polynomial = kind {
                let poly = semigroup_polynomial(&sg);
                let text = match format {
                    Format::Json => poly.to_json(),
                    Format::Text => poly.to_string(),
                };
                return emit(out.as_deref(), &format!("{text}\n"));
            }
            let window =
                window.ok_or_else(|| Failure::Usage("--box is required for this kind".into()))?;
            check_box(sg.description(), &window, cap)?;
            let kind = match kind {
                Kind::L => SeriesKind::L,
                Kind::Q => SeriesKind::Q,
                Kind::P => SeriesKind::P,
                Kind::Polynomial => unreachable!(),
            };
            let series = series_on_box(&sg, kind, &window)?;
            let text = match format {
                Format::Json => format!("{}\n", series.to_json()),
                Format::Text => {
                    let mut s = String::new();
                    for (a, c) in series.iter().filter(|(_, c)| *c != 0) {
                        let _ = writeln!(s, "{a} {c}");
                    }
                    s
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Verify {
            desc,
            window,
            out,
            format,
            cap,
        } => {
            let desc = load(&desc)?;
            check_box(&desc, &window, cap)?;
            let report = verify(&desc, &window)?;
            let text = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Text => {
                    let mut s = format!("{} on {}\n", report.label, report.window);
                    for c in &report.checks {
                        let _ = writeln!(s, "{c}");
                    }
                    s
                }
            };
            emit(out.as_deref(), &text)?;
            if report.all_passed() {
                Ok(())
            } else {
                let names: Vec<&str> = report.failures().map(|c| c.name).collect();
                Err(Failure::Verification(format!(
                    "failed checks: {}",
                    names.join(", ")
                )))
            }
        }
        Command::Plot {
            desc,
            window,
            out,
            cap,
        } => {
            let desc = load(&desc)?;
            if desc.m() != 2 {
                return Err(Failure::Usage(format!(
                    "plot needs a two-point description, this one has m = {}",
                    desc.m()
                )));
            }
            check_box(&desc, &window, cap)?;
            let sg = Semigroup::new(desc);
            emit(out.as_deref(), &plot::render(&sg, &window))
        }
    }
}
