use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wreath_core::algebra::{AlgebraElement, Ambient, Fp, Rational, Scalar};
use wreath_core::centralizers::{self as cz, CentralizerKind, Ctx};
use wreath_core::classdata::{enumerate_types, BoundMode};
use wreath_core::expr::evaluate;
use wreath_core::groups::load_group;
use wreath_core::gz::verify_gz;
use wreath_core::hecke::{HeckeFlavor, HeckeWord};
use wreath_core::report::{reports_to_json, reports_to_tsv, Report};
use wreath_core::rook::{enumerate_group, enumerate_semigroup};
use wreath_core::suite::{self, Field, RunConfig, CHECKS};

#[derive(Parser)]
#[command(name = "wreath", version, about = "Exact computations in wreath products and their centralizer algebras")]
struct Cli {
    /// Worker threads for the parallel parts of a computation.
    #[arg(long, global = true, env = "WREATH_THREADS")]
    threads: Option<usize>,
    /// Refuse to enumerate ambients with more basis elements than this.
    #[arg(long, global = true, env = "WREATH_ELEMENT_CAP")]
    element_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Centralizer dimension by both the combinatorial and the nullspace route.
    Dim(DimArgs),
    /// Run named verification checks and write a JSON (or TSV) report.
    Verify(VerifyArgs),
    /// Evaluate an element expression and print its sorted support.
    Elem(ElemArgs),
    /// Gelfand-Zetlin algebra summary for each n.
    Gz(GzArgs),
    /// List the elements of G-bar_n or G_n, or the types of a given norm.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct DimArgs {
    #[arg(long, default_value = "c2")]
    group: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// group, semigroup or star; all three when omitted.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<CentralizerKind>,
    #[arg(long, default_value = "rational", value_parser = parse_field)]
    field: Field,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Run every check (the default when no --check is given).
    #[arg(long)]
    all: bool,
    /// A check to run; repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
    #[arg(long)]
    group: Option<String>,
    /// Run only this n.
    #[arg(long, conflicts_with_all = ["min_n", "max_n"])]
    n: Option<usize>,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Run only this m.
    #[arg(long, conflicts_with_all = ["min_m", "max_m"])]
    m: Option<usize>,
    #[arg(long)]
    min_m: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    /// Centralizer kind; repeatable.
    #[arg(long = "kind", value_parser = parse_kind)]
    kinds: Vec<CentralizerKind>,
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock times (makes reports irreproducible).
    #[arg(long)]
    timed: bool,
    /// Print the available checks and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct ElemArgs {
    expr: String,
    #[arg(long, default_value = "c2")]
    group: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Evaluate in the group algebra of G_n instead of the semigroup algebra.
    #[arg(long)]
    group_algebra: bool,
    /// Read the expression as a word in the wreath Hecke algebra of this flavor
    /// and print its normal form.
    #[arg(long, value_enum, requires = "m")]
    hecke: Option<Flavor>,
    /// Rank of the Hecke algebra.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "rational", value_parser = parse_field)]
    field: Field,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GzArgs {
    #[arg(long, default_value = "c2")]
    group: String,
    #[arg(long)]
    n: Option<usize>,
    /// Summaries for n = 1 through this value.
    #[arg(long, conflicts_with = "n")]
    max_n: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value = "c2")]
    group: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = What::Semigroup)]
    what: What,
    /// Print only the count.
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    Group,
    Semigroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Semigroup,
    Group,
    Types,
}

fn parse_kind(s: &str) -> Result<CentralizerKind, String> {
    CentralizerKind::parse(s).ok_or_else(|| format!("unknown kind `{s}` (group, semigroup, star)"))
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "rational" || s == "q" {
        return Ok(Field::Rational);
    }
    let p: u32 = s.strip_prefix("p").unwrap_or(s).parse().map_err(|_| format!("bad field `{s}` (rational or a prime)"))?;
    if !suite::PRIMES.contains(&p) {
        return Err(format!("unsupported prime {p}; choose one of {:?}", suite::PRIMES));
    }
    Ok(Field::Prime(p))
}

/// A failed verification, as opposed to a usage error.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

macro_rules! with_field {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        match $field {
            Field::Rational => $f::<Rational>($($arg),*),
            Field::Prime(2) => $f::<Fp<2>>($($arg),*),
            Field::Prime(3) => $f::<Fp<3>>($($arg),*),
            Field::Prime(5) => $f::<Fp<5>>($($arg),*),
            Field::Prime(7) => $f::<Fp<7>>($($arg),*),
            Field::Prime(11) => $f::<Fp<11>>($($arg),*),
            Field::Prime(13) => $f::<Fp<13>>($($arg),*),
            Field::Prime(101) => $f::<Fp<101>>($($arg),*),
            Field::Prime(1009) => $f::<Fp<1009>>($($arg),*),
            Field::Prime(32003) => $f::<Fp<32003>>($($arg),*),
            Field::Prime(p) => bail!("unsupported prime {p}"),
        }
    };
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cap = cli.element_cap.map(u128::from).unwrap_or(cz::DEFAULT_CAP);
    let threads = cli.threads;
    if threads == Some(0) {
        bail!("--threads must be positive");
    }
    match cli.command {
        Command::Verify(args) => cmd_verify(args, threads, cli.element_cap),
        Command::Dim(args) => {
            let ctx = Ctx::new(load_group(&args.group)?).with_cap(cap);
            suite::in_pool(threads, || with_field!(args.field, cmd_dim(&ctx, &args)))?
        }
        Command::Elem(args) => {
            let ctx = Ctx::new(load_group(&args.group)?).with_cap(cap);
            with_field!(args.field, cmd_elem(&ctx, &args))
        }
        Command::Gz(args) => {
            let ctx = Ctx::new(load_group(&args.group)?).with_cap(cap);
            suite::in_pool(threads, || cmd_gz(&ctx, &args))?
        }
        Command::Enumerate(args) => cmd_enumerate(&args, cap),
    }
}

fn cmd_dim<S: Scalar>(ctx: &Ctx, args: &DimArgs) -> Result<()> {
    if args.m > args.n {
        bail!("need m <= n");
    }
    let kinds = args.kind.map(|k| vec![k]).unwrap_or_else(|| CentralizerKind::ALL.to_vec());
    let mut reports = Vec::new();
    for kind in kinds {
        reports.push(cz::verify_basis_agreement::<S>(ctx, args.n, args.m, kind)?.finish(false));
    }
    match args.format {
        Format::Json => print!("{}", reports_to_json(&reports)),
        Format::Tsv => print!("{}", reports_to_tsv(&reports)),
        Format::Text => {
            for r in &reports {
                let (comb, null) = (&r.dims["combinatorial"], &r.dims["nullspace"]);
                let verdict = if r.passed() { "agree" } else { "DISAGREE" };
                println!("{} m={} n={}: {comb}/{null} {verdict} (expected {})", r.parameters["kind"].as_str().unwrap_or("?"), args.m, args.n, r.dims["expected"]);
                if let Some(w) = r.witness.as_deref().filter(|_| !r.passed()) {
                    println!("  {w}");
                }
            }
        }
    }
    if reports.iter().all(Report::passed) {
        Ok(())
    } else {
        Err(VerificationFailed.into())
    }
}

fn cmd_verify(args: VerifyArgs, threads: Option<usize>, cap: Option<u64>) -> Result<()> {
    if args.list {
        for c in CHECKS {
            println!("{c}");
        }
        return Ok(());
    }
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<RunConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if args.all && !args.checks.is_empty() {
        bail!("--all and --check are exclusive");
    }
    if args.all {
        cfg.checks.clear();
    } else if !args.checks.is_empty() {
        cfg.checks = args.checks.clone();
    }
    if let Some(g) = &args.group {
        cfg.group = g.clone();
    }
    if let Some(n) = args.n {
        cfg.n_min = n;
        cfg.n_max = n;
    }
    if let Some(n) = args.min_n {
        cfg.n_min = n;
    }
    if let Some(n) = args.max_n {
        cfg.n_max = n;
    }
    if let Some(m) = args.m {
        cfg.m_min = m;
        cfg.m_max = Some(m);
    }
    if let Some(m) = args.min_m {
        cfg.m_min = m;
    }
    if let Some(m) = args.max_m {
        cfg.m_max = Some(m);
    }
    if !args.kinds.is_empty() {
        cfg.kinds = args.kinds.clone();
    }
    if let Some(f) = args.field {
        cfg.field = f;
    }
    if let Some(o) = &args.output {
        cfg.output = Some(o.clone());
    }
    if let Some(t) = threads {
        cfg.threads = Some(t);
    }
    if let Some(c) = cap {
        cfg.element_cap = c;
    }
    cfg.timed |= args.timed;
    cfg.validate()?;

    let reports = suite::run(&cfg)?;
    let body = match args.format {
        Format::Tsv => reports_to_tsv(&reports),
        _ => reports_to_json(&reports),
    };
    match &cfg.output {
        Some(path) => fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{}", r.summary());
    }
    eprintln!("{} reports, {failed} failed", reports.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(VerificationFailed.into())
    }
}

fn cmd_elem<S: Scalar>(ctx: &Ctx, args: &ElemArgs) -> Result<()> {
    if let Some(flavor) = args.hecke {
        let flavor = match flavor {
            Flavor::Group => HeckeFlavor::Group,
            Flavor::Semigroup => HeckeFlavor::Semigroup,
        };
        let m = args.m.expect("required by clap");
        let x = HeckeWord::new(&args.expr, flavor, m).normal_form::<S>(&ctx.group)?;
        println!("{x}");
        return Ok(());
    }
    let g: &Arc<_> = &ctx.group;
    let amb = if args.group_algebra { Ambient::group_algebra(args.n, g) } else { Ambient::semigroup(args.n, g) };
    let x: AlgebraElement<S> = evaluate(&args.expr, &amb)?;
    match args.format {
        Format::Json => println!("{}", x.to_json()),
        Format::Tsv => {
            for (label, c) in x.terms() {
                println!("{}\t{c}", label.display(g));
            }
        }
        Format::Text => println!("{x}"),
    }
    Ok(())
}

fn cmd_gz(ctx: &Ctx, args: &GzArgs) -> Result<()> {
    let ns: Vec<usize> = match (args.n, args.max_n) {
        (Some(n), _) => vec![n],
        (None, Some(k)) => (1..=k).collect(),
        (None, None) => bail!("give --n or --max-n"),
    };
    let mut ok = true;
    for n in ns {
        let (reports, summary) = verify_gz::<Rational>(ctx, n)?;
        ok &= reports.iter().all(Report::passed);
        println!("{}", serde_json::to_string(&summary)?);
    }
    if ok {
        Ok(())
    } else {
        Err(VerificationFailed.into())
    }
}

fn cmd_enumerate(args: &EnumerateArgs, cap: u128) -> Result<()> {
    let group = load_group(&args.group)?;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    let mut count = 0u128;
    match args.what {
        What::Types => {
            for t in enumerate_types(&group, args.n, BoundMode::Exact) {
                count += 1;
                if !args.count {
                    writeln!(out, "{t}")?;
                }
            }
        }
        What::Semigroup | What::Group => {
            let it = match args.what {
                What::Group => enumerate_group(args.n, &group, cap)?,
                _ => enumerate_semigroup(args.n, &group, cap)?,
            };
            for x in it {
                count += 1;
                if !args.count {
                    writeln!(out, "{}", x.display(&group))?;
                }
            }
        }
    }
    if args.count {
        writeln!(out, "{count}")?;
    }
    Ok(())
}
