use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;

use polarcalc::classes::DegreeSequence;
use polarcalc::cli::{self, ConvertFrom, Document, OutputFormat};
use polarcalc::curves::CurveData;
use polarcalc::error::{Error, Result};
use polarcalc::scrolls::{EllipticScrollSpec, RationalScrollSpec};
use polarcalc::selftest;

#[derive(Parser)]
#[command(
    name = "polarcalc",
    about = "Exact degrees of polar, reciprocal polar, and higher-order polar classes \
             from lattice polytopes, curve invariants, and scroll types"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Table,
    Json,
}

impl From<OutputArg> for OutputFormat {
    fn from(o: OutputArg) -> Self {
        match o {
            OutputArg::Table => OutputFormat::Table,
            OutputArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Polar invariants of the toric variety of a lattice polytope
    Toric(ToricArgs),
    /// Osculating ranks and polar degrees of a projective curve
    Curve(CurveArgs),
    /// Dual-variety degrees of rational normal and elliptic scrolls
    Scroll(ScrollArgs),
    /// Convert between polar and Mather-Chern degree sequences
    Convert(ConvertArgs),
    /// Run the built-in acceptance checks
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ToricArgs {
    /// JSON input file with `vertices`, optional `weights`, optional `order`; `-` for stdin
    #[arg(long, short)]
    input: String,
    /// Order k for the higher polar formulas (overrides `order` in the file)
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputArg,
}

#[derive(Args)]
struct CurveArgs {
    /// Ambient projective dimension
    #[arg(short)]
    n: usize,
    /// Degree of the curve
    #[arg(short)]
    d: i64,
    /// Geometric genus of the normalization
    #[arg(short)]
    g: i64,
    /// Stationary indices kappa_0,...,kappa_{n-2} (comma separated)
    #[arg(long, value_delimiter = ',')]
    kappa: Vec<i64>,
    /// Osculating order
    #[arg(short)]
    k: usize,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputArg,
}

#[derive(Args)]
struct ScrollArgs {
    /// Rational normal scroll type d_1,...,d_m (comma separated)
    #[arg(long = "type", value_delimiter = ',', conflicts_with = "elliptic")]
    scroll_type: Option<Vec<i64>>,
    /// Order k (rational scrolls; requires k <= d_1)
    #[arg(long, requires = "scroll_type")]
    order: Option<i64>,
    /// Elliptic surface scroll mode
    #[arg(long)]
    elliptic: bool,
    /// Atiyah invariant e (elliptic mode)
    #[arg(short, allow_hyphen_values = true, requires = "elliptic")]
    e: Option<i64>,
    /// Degree d of the twisting sheaf (elliptic mode)
    #[arg(short, requires = "elliptic")]
    d: Option<i64>,
    /// The rank-2 bundle is decomposable (elliptic mode)
    #[arg(long, requires = "elliptic")]
    decomposable: bool,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputArg,
}

#[derive(Args)]
struct ConvertArgs {
    /// Which family the input degrees belong to
    #[arg(long, value_parser = ["mather", "polar"])]
    from: String,
    /// Degrees by codimension 0..m (comma separated)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    degrees: Vec<i64>,
    /// Dual defect for the degree-reversal output
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputArg,
}

#[derive(Args)]
struct SelftestArgs {
    /// Corrupt the CP matrix sign inside the involution check
    /// (fault-injection hook for the test harness)
    #[arg(long, hide = true)]
    inject_cp_sign_flip: bool,
}

fn emit<R: serde::Serialize>(
    doc: &Document<R>,
    format: OutputFormat,
    table: impl Fn(&Document<R>) -> String,
) {
    match format {
        OutputFormat::Json => println!("{}", cli::to_json(doc)),
        OutputFormat::Table => print!("{}", table(doc)),
    }
}

fn run(args: CliArgs) -> Result<()> {
    let budget = cli::scan_budget_from_env();
    match args.command {
        Command::Toric(a) => {
            let text = cli::read_input(&a.input)?;
            let mut input = cli::parse_toric_input(&text)?;
            if a.order.is_some() {
                input.order = a.order;
            }
            let doc = cli::run_toric(&input, budget)?;
            emit(&doc, a.output.into(), cli::toric_table);
        }
        Command::Curve(a) => {
            let curve = CurveData::new(
                a.n,
                BigInt::from(a.d),
                BigInt::from(a.g),
                a.kappa.iter().map(|&x| BigInt::from(x)).collect(),
            )?;
            let doc = cli::run_curve(&curve, a.k)?;
            emit(&doc, a.output.into(), cli::curve_table);
        }
        Command::Scroll(a) => {
            let doc = if a.elliptic {
                let (e, d) = match (a.e, a.d) {
                    (Some(e), Some(d)) => (e, d),
                    _ => {
                        return Err(Error::MalformedInput(
                            "elliptic mode needs -e and -d".into(),
                        ))
                    }
                };
                cli::run_elliptic_scroll(&EllipticScrollSpec::new(e, d, a.decomposable)?)?
            } else {
                let t = a.scroll_type.ok_or_else(|| {
                    Error::MalformedInput("need either --type or --elliptic".into())
                })?;
                let k = a.order.ok_or_else(|| {
                    Error::MalformedInput("rational scrolls need --order".into())
                })?;
                cli::run_rational_scroll(&RationalScrollSpec::new(t)?, k)?
            };
            emit(&doc, a.output.into(), cli::scroll_table);
        }
        Command::Convert(a) => {
            let from = match a.from.as_str() {
                "mather" => ConvertFrom::Mather,
                _ => ConvertFrom::Polar,
            };
            if a.degrees.is_empty() {
                return Err(Error::MalformedInput("--degrees must be nonempty".into()));
            }
            let seq = DegreeSequence::from_i64(&a.degrees);
            let doc = cli::run_convert(from, &seq, a.delta)?;
            emit(&doc, a.output.into(), cli::convert_table);
        }
        Command::Selftest(a) => {
            let cfg = selftest::Config { scan_budget: budget, flip_cp_sign: a.inject_cp_sign_flip };
            let results = selftest::run_all(&cfg)?;
            let mut failed = Vec::new();
            for r in &results {
                if r.passed {
                    println!("PASS {}", r.name);
                } else {
                    println!("FAIL {} ({})", r.name, r.detail);
                    failed.push(r.name);
                }
            }
            if !failed.is_empty() {
                eprintln!("failed checks: {}", failed.join(", "));
                std::process::exit(1);
            }
        }
    }
    Ok(())
}

fn main() {
    let args = CliArgs::parse();
    if let Err(e) = run(args) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
