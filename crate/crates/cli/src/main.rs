use afg_core::cyclo::set_initial_precision_bits;
use afg_core::expr::{parse_field_spec, FieldSpec};
use afg_core::families::{elkies, gamma_p_variant, verify_elkies, verify_gamma_p, GammaVariant, DEFAULT_Q_LIST};
use afg_core::places::FinitePlace;
use afg_core::report::{self, Report, Status};
use afg_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

/// Exact invariants of arithmetic Fuchsian groups from quaternion algebras
/// over abelian fields.
///
/// Elements are written with +, -, *, /, ^, integers, cos(a/n) and sin(a/n)
/// (fractions of a full turn, so cos(1/7) is cos 2π/7) and the names bound
/// by the field spec: c = 2cos 2π/n for Qcos:n and Qzeta+:n, s and c for Qsin:n.
///
/// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage or
/// input error, 3 undetermined result under --strict.
#[derive(Parser)]
#[command(name = "afg", version)]
struct Cli {
    /// Emit the versioned JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; only the exit code reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    /// Exit 3 when a result is undetermined.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Qcos:n, Qsin:n, Qzeta+:n or custom:N;h1,h2,...
    #[arg(long)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Known Ram_f for places local arithmetic cannot decide: `empty`, or
    /// comma-separated `p` (every place above p) and `p:t` tokens.
    #[arg(long)]
    trust_ramf: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field.
    Field { spec: String },
    /// Splitting of the primes in a range, e.g. --primes 2..200.
    Split {
        #[arg(long)]
        field: String,
        #[arg(long)]
        primes: String,
    },
    /// Ramification of (a, b / k).
    Ram(AlgebraArgs),
    /// Period set of the commensurator.
    Periods {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Largest m to examine.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Conjugated invariants under ζ ↦ ζ^sigma, with the invariance check.
    Galois {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// An exponent prime to the conductor.
        #[arg(long)]
        sigma: u64,
    },
    /// Verify the worked examples.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Stated,
    Repaired,
}

#[derive(Subcommand)]
enum Verify {
    /// The algebra (−1, cos 2π/p − 1 + 32/p² / Q(sin 2π/p)).
    GammaP {
        /// An odd prime.
        #[arg(long)]
        p: u64,
        /// Odd primes q whose period test is run, comma separated.
        #[arg(long, value_delimiter = ',')]
        q_list: Option<Vec<u64>>,
        /// `repaired` uses (−1, 4p²·b_p) over Q(cos 2π/p).
        #[arg(long, value_enum, default_value = "stated")]
        variant: Variant,
    },
    /// The (2,3,7) algebra (c, c / Q(ζ_7)^+).
    Elkies {
        /// Splitting table covers the primes up to this bound.
        #[arg(long, default_value_t = 200)]
        prime_bound: u64,
    },
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Invalid(_)
            | Error::NotInField
            | Error::NotPrime(_)
            | Error::TooSmall(_)
            | Error::NotAUnit(..)
            | Error::ZeroElement
            | Error::DivisionByZero
            | Error::FieldMismatch
            | Error::NotTotallyReal
            | Error::NotRealAtEmbedding { .. }
    )
}

fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::Invalid(format!("--primes {s:?}: expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?);
    if a > b || b > 1_000_000 {
        return Err(bad());
    }
    Ok((a, b))
}

fn algebra_setup(args: &AlgebraArgs) -> Result<(FieldSpec, afg_core::invariants::RamificationData, Option<Vec<FinitePlace>>), Error> {
    let spec = parse_field_spec(&args.field)?;
    if !spec.field.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    let alg = report::algebra_from_exprs(&spec, &args.a, &args.b)?;
    let trusted = args.trust_ramf.as_deref().map(|t| report::parse_trust(&spec, t)).transpose()?;
    let ram = report::ramification(&alg, trusted.as_deref())?;
    Ok((spec, ram, trusted))
}

fn run(cli: &Cli, echo: &str) -> Result<Report, Error> {
    match &cli.command {
        Command::Field { spec } => Ok(report::field_report(echo, &parse_field_spec(spec)?)),
        Command::Split { field, primes } => {
            let spec = parse_field_spec(field)?;
            let (lo, hi) = parse_range(primes)?;
            report::split_report(echo, &spec, lo, hi)
        }
        Command::Ram(args) => {
            let (_, ram, trusted) = algebra_setup(args)?;
            report::ram_report(echo, &ram, trusted.as_deref())
        }
        Command::Periods { alg, max } => {
            let (_, ram, trusted) = algebra_setup(alg)?;
            report::periods_report(echo, &ram, trusted.as_deref(), *max)
        }
        Command::Galois { alg, sigma } => {
            let (_, ram, trusted) = algebra_setup(alg)?;
            report::galois_report(echo, &ram, trusted.as_deref(), *sigma)
        }
        Command::Verify(Verify::GammaP { p, q_list, variant }) => {
            let variant = match variant {
                Variant::Stated => GammaVariant::Stated,
                Variant::Repaired => GammaVariant::Repaired,
            };
            let q_list = q_list.clone().unwrap_or(DEFAULT_Q_LIST.to_vec());
            if let Some(q) = q_list.iter().find(|&&q| !afg_core::cyclo::units::is_prime(q) || q < 3) {
                return Err(Error::Invalid(format!("--q-list: {q} is not an odd prime")));
            }
            let field = gamma_p_variant(*p, variant)?.field.describe();
            let v = verify_gamma_p(*p, &q_list, variant)?;
            Ok(report::verification_report(echo, &v, field))
        }
        Command::Verify(Verify::Elkies { prime_bound }) => {
            let v = verify_elkies(*prime_bound)?;
            Ok(report::verification_report(echo, &v, elkies()?.field.describe()))
        }
    }
}

fn emit(cli: &Cli, r: &Report) {
    if cli.quiet {
        return;
    }
    if cli.json {
        println!("{}", r.to_json());
    } else {
        print!("{}", report::render_text(r));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    if let Ok(bits) = std::env::var("AFG_PRECISION_BITS") {
        match bits.parse::<u32>() {
            Ok(b) if (16..=1 << 20).contains(&b) => set_initial_precision_bits(b),
            _ => {
                let e = Error::Invalid(format!("AFG_PRECISION_BITS={bits:?}: expected an integer in 16..=1048576"));
                emit(&cli, &report::error_report(&echo, &e));
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli, &echo) {
        Ok(r) => {
            emit(&cli, &r);
            ExitCode::from(match r.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Undetermined if cli.strict => 3,
                Status::Undetermined => 0,
            })
        }
        Err(e) => {
            if !cli.json && !cli.quiet {
                eprintln!("afg: {e}");
            } else {
                emit(&cli, &report::error_report(&echo, &e));
            }
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
