use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charfib_core::field::is_prime;
use charfib_core::format::render;
use charfib_core::structure::perron_constant;
use charfib_core::sweep::{check_partition, run_sweep, SweepConfig};
use charfib_core::{
    build_field_with_limit, char_polys, constants_bruteforce, constants_cyclotomic,
    constants_direct, find_primitive_poly, partition, perron_check, perron_quadratic_general,
    Error, FieldParams, FieldTable, Format, Method, DEFAULT_MAX_FIELD,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "charfib",
    version,
    about = "Fibers of multiplicative characters over finite fields and their structure constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Powers of the primitive element and their coordinates.
    Field(FieldArgs),
    /// The fibers A_1..A_n and their characteristic polynomials.
    Fibers(PartitionArgs),
    /// Structure constants c_ijk.
    Constants(ConstantsArgs),
    /// All methods, cross-checked, plus the algebra checks.
    Verify(PartitionArgs),
    /// Representation counts of squares and non-squares.
    Perron(PerronArgs),
    /// Verify every field and character order up to a size bound.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(short)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    m: u32,
    /// Coefficients a0,..,a_{m-1} of the monic modulus; searched for if absent.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(short)]
    n: usize,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    partition: PartitionArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct PerronArgs {
    /// Check every odd prime below this bound.
    #[arg(long, conflicts_with = "p")]
    max_p: Option<u64>,
    /// A single odd characteristic.
    #[arg(short)]
    p: Option<u64>,
    /// With -p, also check the quadratic character on F_{p^m}.
    #[arg(short, requires = "p")]
    m: Option<u32>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 64)]
    max_q: u64,
    /// Methods to cross-check; all three by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    method: Vec<MethodArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Cyclotomic,
    Bruteforce,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Cyclotomic => Method::Cyclotomic,
            MethodArg::Bruteforce => Method::Bruteforce,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

/// Exit status for a library error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonUniformFiberCoefficients { .. }
        | Error::NonzeroResidual { .. }
        | Error::RankDeficient { .. }
        | Error::Inconsistent { .. }
        | Error::NonIntegralSolution { .. }
        | Error::MixedRings
        | Error::MixedFields => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

fn max_field() -> Result<u64, Failure> {
    match std::env::var("CHARFIB_MAX_FIELD") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure(
                EXIT_USAGE,
                format!("CHARFIB_MAX_FIELD: not a number: {v:?}"),
            )
        }),
        Err(_) => Ok(DEFAULT_MAX_FIELD),
    }
}

fn load_field(args: &FieldArgs) -> Result<Arc<FieldTable>, Failure> {
    let limit = max_field()?;
    // Reject oversized fields before searching for a modulus.
    if is_prime(args.p) && args.m > 0 {
        match args.p.checked_pow(args.m) {
            Some(q) if q <= limit => {}
            _ => {
                return Err(Error::FieldTooLarge {
                    p: args.p,
                    m: args.m,
                    limit,
                }
                .into())
            }
        }
    }
    let params = match &args.modulus {
        Some(modulus) => FieldParams::new(args.p, args.m, modulus.clone())?,
        None => find_primitive_poly(args.p, args.m)?,
    };
    Ok(Arc::new(build_field_with_limit(params, limit)?))
}

fn cmd_field(args: &FieldArgs) -> Result<String, Failure> {
    let field = load_field(args)?;
    let mut out = format!(
        "F_{} = F_{}[z]/({}), α a root\n0 = 0\n",
        field.size(),
        field.p(),
        field.params()
    );
    for h in 0..field.order() {
        let label = match h {
            0 => "1".to_string(),
            1 => "α".to_string(),
            h => format!("α^{h}"),
        };
        out.push_str(&format!(
            "{label} = {}\n",
            field.power(h as i64).basis_string()
        ));
    }
    Ok(out)
}

fn cmd_fibers(args: &PartitionArgs) -> Result<String, Failure> {
    let field = load_field(&args.field)?;
    let part = partition(field.clone(), args.n)?;
    let polys = char_polys(&part)?;
    let mut out = format!(
        "p={} m={} n={} s={}\n",
        part.p(),
        part.m(),
        part.n(),
        part.s()
    );
    for fiber in part.fibers() {
        let k = fiber.index();
        let elems: Vec<String> = fiber.elements(&field).map(|e| e.basis_string()).collect();
        out.push_str(&format!("A_{k} = {{{}}}\n", elems.join(", ")));
        out.push_str(&format!("q_{k} = {}\n", polys[k]));
    }
    Ok(out)
}

fn cmd_constants(args: &ConstantsArgs) -> Result<String, Failure> {
    let field = load_field(&args.partition.field)?;
    let part = partition(field, args.partition.n)?;
    let table = match Method::from(args.method) {
        Method::Direct => constants_direct(&part)?,
        Method::Cyclotomic => constants_cyclotomic(&part)?,
        Method::Bruteforce => constants_bruteforce(&part)?,
    };
    Ok(render(&table, args.format.into()))
}

fn cmd_verify(args: &PartitionArgs) -> Result<String, Failure> {
    let field = load_field(&args.field)?;
    let part = partition(field, args.n)?;
    let (tables, failures) = check_partition(&part, &Method::ALL);
    let mut out = String::new();
    if let Some(t) = tables.first() {
        out.push_str(&render(t, Format::Text));
    }
    if failures.is_empty() {
        out.push_str(&format!(
            "PASS p={} m={} n={}: {} methods agree, all checks pass\n",
            part.p(),
            part.m(),
            part.n(),
            tables.len()
        ));
        return Ok(out);
    }
    for f in &failures {
        out.push_str(&format!("FAIL {f}\n"));
    }
    print!("{out}");
    let method_error = failures
        .iter()
        .any(|f| Method::ALL.iter().any(|m| m.name() == f.check));
    let code = if method_error {
        EXIT_INTERNAL
    } else {
        EXIT_VERIFY
    };
    Err(Failure(code, failures[0].to_string()))
}

fn cmd_perron(args: &PerronArgs) -> Result<String, Failure> {
    let mut out = String::new();
    let mut failed = Vec::new();
    let primes: Vec<u64> = match (args.p, args.max_p) {
        (Some(p), _) => vec![p],
        (None, Some(max)) => (3..max).filter(|&p| is_prime(p)).collect(),
        (None, None) => (3..200).filter(|&p| is_prime(p)).collect(),
    };
    for p in primes {
        perron_constant(p)?;
        let r = perron_check(p)?;
        let counts: Vec<String> = r
            .counts
            .iter()
            .map(|c| format!("{}={}:{}", c.source, c.pair, c.count))
            .collect();
        let status = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} p={} d={} {}\n",
            r.p,
            r.d,
            counts.join(" ")
        ));
        if !r.pass {
            failed.push(p);
        }
    }
    if let (Some(p), Some(m)) = (args.p, args.m) {
        let field = load_field(&FieldArgs {
            p,
            m,
            modulus: None,
        })?;
        let q = perron_quadratic_general(field)?;
        out.push_str(&render(&q.table, Format::Text));
        for c in &q.report.checks {
            out.push_str(&format!("{c}\n"));
        }
        for note in &q.report.notes {
            out.push_str(&format!("{note}\n"));
        }
        if !q.report.passed() {
            failed.push(p);
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure(EXIT_VERIFY, format!("failed for p in {failed:?}")))
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<String, Failure> {
    let limit = max_field()?;
    if args.max_q > limit {
        return Err(Failure(
            EXIT_USAGE,
            format!("--max-q {} exceeds the field size cap {limit}", args.max_q),
        ));
    }
    let methods: Vec<Method> = if args.method.is_empty() {
        Method::ALL.to_vec()
    } else {
        args.method.iter().map(|&m| m.into()).collect()
    };
    let config = SweepConfig::new(args.max_q, methods, args.format.into())?;
    let report = run_sweep(&config)?;
    let out = report.render(config.emit());
    match report.first_failure() {
        None => Ok(out),
        Some(t) => {
            print!("{out}");
            let internal = t
                .failures
                .iter()
                .any(|f| Method::ALL.iter().any(|m| m.name() == f.check));
            let code = if internal { EXIT_INTERNAL } else { EXIT_VERIFY };
            Err(Failure(
                code,
                format!("p={} m={} n={}: {}", t.p, t.m, t.n, t.failures[0]),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Fibers(a) => cmd_fibers(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Perron(a) => cmd_perron(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
