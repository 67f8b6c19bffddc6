mod cache;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use swd_core::algebra::IdempotentKind;
use swd_core::combinatorics::Permutation;
use swd_core::field::{FieldCtx, FieldError};
use swd_core::hom::{
    field_independence_matrix, matrix_csv, verify_swd_instance, CheckSet, HomCache, HomError, MatrixRow, NoCache,
    OpsChoice, VerifyOptions,
};

use cache::DirCache;

const EXIT_FAIL: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Largest r run without `--allow-large-r`.
const R_CAP: usize = 7;
/// Default grid keeps `n^r` at most this.
const GRID_LIMIT: usize = 4096;

#[derive(Parser)]
#[command(name = "swd", version, about = "Exact checks of Schur-Weyl duality for the free Lie algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one or more (n, r, field, idempotent) instances.
    Verify(VerifyArgs),
    /// Tabulate corner Hom dimensions across fields.
    Homdims(HomdimsArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    r: usize,
    /// Output directory for reports.
    #[arg(long, default_value = "swd-out")]
    out: PathBuf,
    /// Cache directory; defaults to $SWD_CACHE_DIR, then `.swd-cache`.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long, short = 'j')]
    jobs: Option<usize>,
    /// Permit r above the default cap.
    #[arg(long)]
    allow_large_r: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Number of letters; omitted means the default grid.
    #[arg(long)]
    n: Option<usize>,
    /// Field specs `cyclo:R`, `gf:P` or `gf:P^M`; repeat or comma-separate.
    #[arg(long = "field", value_delimiter = ',', required = true)]
    fields: Vec<String>,
    #[arg(long = "idempotent", value_delimiter = ',', default_value = "dsw")]
    idempotents: Vec<IdemArg>,
    /// Comma list of relations, lie, lemma1, theta, semisimple, fieldindep, all.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Replace the root of unity by its j-th power.
    #[arg(long)]
    zeta_power: Option<u64>,
    /// The r-cycle in one-line notation, e.g. `3,1,2`.
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<u8>>,
    #[arg(long, value_enum, default_value = "auto")]
    ops: OpsArg,
    /// Skip infeasible fields instead of failing.
    #[arg(long)]
    skip_infeasible: bool,
}

#[derive(Args)]
struct HomdimsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    n: usize,
    #[arg(long = "fields", value_delimiter = ',', required = true)]
    fields: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdemArg {
    Dsw,
    Klyachko,
}

impl From<IdemArg> for IdempotentKind {
    fn from(a: IdemArg) -> Self {
        match a {
            IdemArg::Dsw => IdempotentKind::Dsw,
            IdemArg::Klyachko => IdempotentKind::Klyachko,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OpsArg {
    Auto,
    Orbits,
    Generators,
}

impl From<OpsArg> for OpsChoice {
    fn from(a: OpsArg) -> Self {
        match a {
            OpsArg::Auto => OpsChoice::Auto,
            OpsArg::Orbits => OpsChoice::Orbits,
            OpsArg::Generators => OpsChoice::Generators,
        }
    }
}

/// An error with the exit code it maps to.
struct Failure(u8, String);

impl From<HomError> for Failure {
    fn from(e: HomError) -> Self {
        let code = match e {
            HomError::InfeasibleField(_) => EXIT_INFEASIBLE,
            _ => EXIT_INTERNAL,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_INTERNAL, e.to_string())
    }
}

fn infeasible(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INFEASIBLE, msg.into())
}

fn parse_field(spec: &str, r: usize) -> Result<FieldCtx, Failure> {
    FieldCtx::parse(spec, r).map_err(|e: FieldError| infeasible(format!("{spec}: {e}")))
}

fn setup(common: &Common) -> Result<Box<dyn HomCache>, Failure> {
    if common.r < 2 {
        return Err(infeasible("r must be at least 2"));
    }
    if common.r > R_CAP {
        if !common.allow_large_r {
            return Err(infeasible(format!("r = {} exceeds the cap of {R_CAP}; pass --allow-large-r", common.r)));
        }
        log::warn!("r = {} works over a {}!-dimensional group algebra; expect long runs", common.r, common.r);
    }
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?;
    }
    fs::create_dir_all(&common.out)?;
    if common.no_cache {
        return Ok(Box::new(NoCache));
    }
    let dir = common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("SWD_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".swd-cache"));
    Ok(Box::new(DirCache::new(&dir)?))
}

/// `n ∈ {2, min(3, r), r}` with `n^r` bounded.
fn default_grid(r: usize) -> Vec<usize> {
    let mut ns = vec![2, 3.min(r), r];
    ns.dedup();
    ns.retain(|&n| (n as u128).pow(r as u32) <= GRID_LIMIT as u128);
    ns
}

fn file_stem(field: &str) -> String {
    field.replace([':', '^'], "_")
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_INTERNAL, format!("{}: {e}", path.display())))
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let r = args.common.r;
    let cache = setup(&args.common)?;
    let checks = CheckSet::parse(&args.checks).map_err(infeasible)?;
    let gamma = match &args.gamma {
        Some(line) => Some(Permutation::new(line.clone()).map_err(|e| infeasible(format!("--gamma: {e}")))?),
        None => None,
    };
    let ns = match args.n {
        Some(n) if n < 2 => return Err(infeasible("n must be at least 2")),
        Some(n) => vec![n],
        None => default_grid(r),
    };

    let mut ctxs = Vec::new();
    for spec in &args.fields {
        let built = parse_field(spec, r).and_then(|ctx| match args.zeta_power {
            Some(j) => ctx.with_zeta_power(j).map_err(|e| infeasible(format!("{spec}: {e}"))),
            None => Ok(ctx),
        });
        match built {
            Ok(ctx) => ctxs.push(ctx),
            Err(Failure(EXIT_INFEASIBLE, msg)) if args.skip_infeasible => eprintln!("skipping {msg}"),
            Err(f) => return Err(f),
        }
    }

    let opts = VerifyOptions {
        checks,
        gamma: gamma.as_ref(),
        ops: args.ops.into(),
        cache: cache.as_ref(),
    };
    let mut code = 0;
    let mut rows: Vec<MatrixRow> = Vec::new();
    for ctx in &ctxs {
        for &n in &ns {
            for &idem in &args.idempotents {
                let kind: IdempotentKind = idem.into();
                let report = match verify_swd_instance(n, ctx, kind, &opts) {
                    Ok(rep) => rep,
                    Err(HomError::InfeasibleField(msg)) if args.skip_infeasible => {
                        eprintln!("skipping {} n={n}: {msg}", ctx.label());
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let name = format!("{}_n{n}_r{r}_{}.json", file_stem(&ctx.label()), kind.name());
                write(&args.common.out.join(&name), &report.to_json())?;
                let failures = report.asserted_failures();
                let verdict = match report.duality {
                    Some(true) => "duality holds",
                    Some(false) => "duality fails",
                    None => "duality not checked",
                };
                eprintln!(
                    "{} n={n} r={r} {}: {} checks, {} asserted failures, {verdict}",
                    ctx.label(),
                    kind.name(),
                    report.checks.len(),
                    failures.len()
                );
                for f in &failures {
                    eprintln!("  FAIL {}", f.name);
                }
                if !failures.is_empty() {
                    code = EXIT_FAIL;
                }
                for row in report.matrix.rows {
                    if !rows.contains(&row) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    write(&args.common.out.join("summary.csv"), &matrix_csv(&rows))?;
    Ok(code)
}

fn homdims(args: HomdimsArgs) -> Result<u8, Failure> {
    let r = args.common.r;
    let cache = setup(&args.common)?;
    if args.n < 2 {
        return Err(infeasible("n must be at least 2"));
    }
    let ctxs: Vec<FieldCtx> = args.fields.iter().map(|s| parse_field(s, r)).collect::<Result<_, _>>()?;
    let table = field_independence_matrix(args.n, &ctxs, cache.as_ref())?;
    let stem = format!("homdims_n{}_r{r}", args.n);
    let out = &args.common.out;
    write(&out.join(format!("{stem}.json")), &table.to_json())?;
    write(&out.join(format!("{stem}.csv")), &table.table_csv())?;
    write(&out.join(format!("{stem}_cells.csv")), &table.cells_csv())?;
    print!("{}", table.table_csv());
    if table.varies() {
        eprintln!("dimensions vary across fields");
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Homdims(args) => homdims(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
