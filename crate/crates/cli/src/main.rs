mod encoding;

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use tracebound_core::ascurve::{conductor_exponent, satisfies_hasse_weil};
use tracebound_core::bounds::{hasse_weil, new_bound, serre, BoundRow};
use tracebound_core::quadform::closed_form_d2;
use tracebound_core::selftest::{run_all, Tier};
use tracebound_core::table::{compute_row, csv_fields, markdown_header, markdown_row, TableOptions, CSV_HEADER};
use tracebound_core::{
    max_points, CurveSpec, Error, FieldCtx, PowerTraceCode, SearchOptions, Strategy,
};

use encoding::{format_coeffs, format_poly, parse_poly};

const POLY_HELP: &str = "\
Polynomials are written as comma-separated coefficients a_1,...,a_r of
f = a_1 x + ... + a_r x^r. Each a_i is a decimal element index or its base-p
coordinates in the basis 1, t, t^2, ... separated by colons. Over
F_49 = F_7[t]/(t^2+1) the coefficient t + 3 is either '10' or '3:1'.

Examples:
  tracebound mindist -p 7 -m 2 -r 3
  tracebound maxpoints 3 1 2
  tracebound curve -p 3 -m 1 --poly 2,1
  tracebound table --r 3 --fields 5^2,7^2 --format md
  tracebound verify-r2 7 2
  tracebound selftest quick

Exit codes: 0 ok, 1 invalid input, 2 search infeasible, 3 invariant violated.";

#[derive(Parser)]
#[command(name = "tracebound", version, about = "Minimum distances of power-trace codes and point bounds for Artin-Schreier curves", after_help = POLY_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact [n, k, d] with the lexicographically smallest minimum-weight f.
    Mindist(ParamArgs),
    /// Comparison table of bounds for one r over several fields.
    Table(TableArgs),
    /// Point count and bounds for y^p - y = f(x).
    Curve(CurveArgs),
    /// Largest N_f over deg f <= r, compared with 1 + p(q - d).
    Maxpoints(ParamArgs),
    /// Compare the closed form for d(p, m, 2) with enumeration.
    #[command(name = "verify-r2")]
    VerifyR2(FieldArgs),
    /// Run the randomized invariant suites.
    Selftest {
        #[arg(value_enum, default_value = "quick")]
        tier: TierArg,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "orbit")]
    strategy: StrategyArg,
    /// Worker threads [default: available parallelism]
    #[arg(long, env = "TRACEBOUND_THREADS")]
    threads: Option<usize>,
    /// Ceiling on estimated field operations.
    #[arg(long, default_value_t = tracebound_core::powcode::DEFAULT_WORK_LIMIT)]
    work_limit: f64,
    /// Ignore the work ceiling.
    #[arg(long)]
    allow_infeasible: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        let threads = self
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        let mut opts = SearchOptions::new(self.strategy.into(), threads);
        opts.work_limit = if self.allow_infeasible {
            f64::INFINITY
        } else {
            self.work_limit
        };
        opts
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Gray,
    Orbit,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Gray => Strategy::Gray,
            StrategyArg::Orbit => Strategy::Orbit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Md,
}

/// p, m, r as flags or positionally.
#[derive(Args)]
struct ParamArgs {
    #[arg(short = 'p', long = "prime")]
    p: Option<u32>,
    #[arg(short = 'm', long = "degree")]
    m: Option<u32>,
    #[arg(short = 'r', long = "max-degree")]
    r: Option<u32>,
    #[arg(value_name = "P M R", num_args = 0..=3)]
    positional: Vec<u32>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(short = 'p', long = "prime")]
    p: Option<u32>,
    #[arg(short = 'm', long = "degree")]
    m: Option<u32>,
    #[arg(value_name = "P M", num_args = 0..=2)]
    positional: Vec<u32>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    r: u32,
    /// Fields as p^m, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    fields: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Skip the maximal-point search.
    #[arg(long)]
    no_max_points: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(short = 'p', long = "prime")]
    p: u32,
    #[arg(short = 'm', long = "degree")]
    m: u32,
    /// Coefficients a_1,...,a_r (see the encoding notes below).
    #[arg(long)]
    poly: String,
    #[command(flatten)]
    search: SearchArgs,
}

fn resolve(flags: &[Option<u32>], positional: &[u32], names: &[&str]) -> Result<Vec<u32>, Error> {
    let mut pos = positional.iter();
    let out = flags
        .iter()
        .zip(names)
        .map(|(f, name)| {
            f.or_else(|| pos.next().copied())
                .ok_or_else(|| Error::InvalidArgument(format!("missing {name}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if pos.next().is_some() {
        return Err(Error::InvalidArgument("too many positional arguments".into()));
    }
    Ok(out)
}

fn parse_field(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::InvalidArgument(format!("field {s:?} is not of the form p^m"));
    let (p, m) = match s.trim().split_once('^') {
        Some((p, m)) => (p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    Ok((p, m))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn other(strategy: Strategy) -> Strategy {
    match strategy {
        Strategy::Gray => Strategy::Orbit,
        Strategy::Orbit => Strategy::Gray,
    }
}

fn mindist(args: &ParamArgs) -> anyhow::Result<()> {
    let v = resolve(&[args.p, args.m, args.r], &args.positional, &["p", "m", "r"])?;
    let (p, m, r) = (v[0], v[1], v[2]);
    let start = Instant::now();
    let ctx = Arc::new(FieldCtx::new(p, m)?);
    let code = PowerTraceCode::new(ctx.clone(), r)?;
    let md = code.min_distance(&args.search.options())?;
    println!(
        "n={} k={} d={} witness={} f={} count={}",
        code.len(),
        code.dimension(),
        md.d,
        format_coeffs(&ctx, &md.witness),
        format_poly(&ctx, &md.witness),
        md.min_weight_count
    );
    eprintln!("strategy={} elapsed={:.3}s", md.strategy, start.elapsed().as_secs_f64());
    Ok(())
}

fn maxpoints(args: &ParamArgs) -> anyhow::Result<()> {
    let v = resolve(&[args.p, args.m, args.r], &args.positional, &["p", "m", "r"])?;
    let (p, m, r) = (v[0], v[1], v[2]);
    let start = Instant::now();
    let ctx = Arc::new(FieldCtx::new(p, m)?);
    let opts = args.search.options();
    let mp = max_points(&ctx, r, &opts)?;
    // d from the other enumeration when affordable
    let code = PowerTraceCode::new(ctx.clone(), r)?;
    let mut d_opts = opts;
    if code.work_estimate(other(opts.strategy)) <= opts.work_limit {
        d_opts.strategy = other(opts.strategy);
    }
    let md = code.min_distance(&d_opts)?;
    let bound = new_bound(p as u64, m, md.d)?;
    if mp.n_max > bound {
        return Err(Error::Invariant(format!("N_max={} exceeds 1 + p(q - d) = {bound}", mp.n_max)).into());
    }
    println!(
        "N_max={} witness={} f={} count={} bound={} tight={}",
        mp.n_max,
        format_coeffs(&ctx, &mp.witness),
        format_poly(&ctx, &mp.witness),
        mp.count,
        bound,
        yes_no(mp.n_max == bound)
    );
    eprintln!("elapsed={:.3}s", start.elapsed().as_secs_f64());
    Ok(())
}

fn verify_r2(args: &FieldArgs) -> anyhow::Result<()> {
    let v = resolve(&[args.p, args.m], &args.positional, &["p", "m"])?;
    let (p, m) = (v[0], v[1]);
    let closed = closed_form_d2(p, m)?;
    let ctx = Arc::new(FieldCtx::new(p, m)?);
    let code = PowerTraceCode::new(ctx, 2)?;
    let enumerated = code.min_distance(&args.search.options())?.d;
    if closed == enumerated {
        println!("closed={closed} enumerated={enumerated} OK");
        Ok(())
    } else {
        println!("closed={closed} enumerated={enumerated} MISMATCH");
        Err(Error::Invariant(format!("d({p},{m},2): closed form {closed} != enumeration {enumerated}")).into())
    }
}

fn curve(args: &CurveArgs) -> anyhow::Result<()> {
    let ctx = Arc::new(FieldCtx::new(args.p, args.m)?);
    let f = parse_poly(&ctx, &args.poly)?;
    let spec = CurveSpec::new(&ctx, f.clone())?;
    let (p, q) = (ctx.p() as u64, ctx.q() as u64);
    let r = spec.degree();
    let n = spec.count_points();
    let g = spec.genus();
    let hw = hasse_weil(q, g);
    let se = serre(q, g);
    println!("f={} coeffs={}", format_poly(&ctx, &f), format_coeffs(&ctx, &f));
    println!("N={n} Z_f={} genus={g} conductor_exponent={}", spec.zero_set_size(), conductor_exponent(r));
    println!("hasse_weil={hw} within_hasse_weil={}", yes_no(satisfies_hasse_weil(ctx.p(), q, r, n)));
    println!("serre={se} within_serre={}", yes_no(n <= se && n + se >= 2 * (q + 1)));
    let ours = PowerTraceCode::new(ctx.clone(), r)
        .and_then(|code| code.min_distance(&args.search.options()))
        .and_then(|md| new_bound(p, ctx.m(), md.d));
    match ours {
        Ok(b) => println!("our_bound={b} within_our_bound={}", yes_no(n <= b)),
        Err(e @ Error::Infeasible { .. }) => println!("our_bound=skipped({e})"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn table(args: &TableArgs) -> anyhow::Result<()> {
    let fields = args
        .fields
        .iter()
        .map(|s| parse_field(s))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = TableOptions {
        search: args.search.options(),
        max_points: !args.no_max_points,
    };
    let stdout = std::io::stdout();
    let mut csv = (args.format == Format::Csv).then(|| csv::Writer::from_writer(stdout.lock()));
    if let Some(w) = csv.as_mut() {
        w.write_record(CSV_HEADER)?;
        w.flush()?;
    } else {
        let parity: Vec<bool> = fields.iter().map(|&(_, m)| m % 2 == 0).collect();
        let uniform = parity.windows(2).all(|w| w[0] == w[1]).then(|| parity.first().copied()).flatten();
        println!("{}", markdown_header(uniform));
    }
    for &(p, m) in &fields {
        let row: BoundRow = compute_row(p, m, args.r, &opts).with_context(|| format!("row {p}^{m}"))?;
        row.validate()?;
        if let Some(reason) = &row.skipped {
            eprintln!("warning: {p}^{m} r={}: skipped ({reason})", args.r);
        }
        match csv.as_mut() {
            Some(w) => {
                w.write_record(csv_fields(&row))?;
                w.flush()?;
            }
            None => {
                println!("{}", markdown_row(&row));
                std::io::stdout().flush()?;
            }
        }
    }
    Ok(())
}

fn selftest(tier: TierArg) -> anyhow::Result<()> {
    let tier = match tier {
        TierArg::Quick => Tier::Quick,
        TierArg::Full => Tier::Full,
    };
    let reports = run_all(tier);
    let mut failed = 0;
    for r in &reports {
        println!("{r}");
        failed += !r.passed() as usize;
    }
    if failed > 0 {
        return Err(Error::Invariant(format!("{failed} suites failed")).into());
    }
    println!("all {} suites passed", reports.len());
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    err.chain()
        .find_map(|e| e.downcast_ref::<Error>())
        .map_or(1, |e| e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Mindist(a) => mindist(a),
        Command::Table(a) => table(a),
        Command::Curve(a) => curve(a),
        Command::Maxpoints(a) => maxpoints(a),
        Command::VerifyR2(a) => verify_r2(a),
        Command::Selftest { tier } => selftest(*tier),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
