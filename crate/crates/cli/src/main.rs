use std::fs::OpenOptions;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hullsep_cli::bench::{run_suite, summarize, write_rows, BenchConfig, ExperimentRow, Suite};
use hullsep_cli::default_seed;
use hullsep_cli::run::{exit_code, run, Algorithm, SolverSettings};
use hullsep_core::csv_io::{load_csv, save_csv};
use hullsep_core::triangle::{ta1_solve, TaOptions};
use hullsep_core::{generate_two_balls, InstanceSpec, PointSet, Result};

/// Convex hull intersection, distance and separation via the Triangle
/// Algorithm, with an SMO baseline.
#[derive(Parser)]
#[command(name = "hullsep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a two-ball instance as `<prefix>_a.csv` and `<prefix>_b.csv`.
    Gen(GenArgs),
    /// Decide whether two hulls intersect (exit 0 separated, 1 intersecting, 3 cap).
    Intersect(IntersectArgs),
    /// Approximate the distance between two hulls.
    Distance(DistanceArgs),
    /// Run an experiment suite and write one CSV row per solver run.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    na: usize,
    #[arg(long, default_value_t = 100)]
    nb: usize,
    /// Translation as a multiple of the larger diameter.
    #[arg(long, default_value_t = 1.1)]
    factor: f64,
    /// Defaults to HULLSEP_SEED, else 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "instance")]
    out_prefix: String,
}

#[derive(Args, Clone)]
struct TaFlags {
    /// Disable incremental dot products.
    #[arg(long)]
    no_cache: bool,
    /// Disable joint steps on both iterates.
    #[arg(long)]
    no_joint: bool,
    /// Disable the non-bounding vertex filter.
    #[arg(long)]
    no_filter: bool,
    /// Disable the zig-zag guard.
    #[arg(long)]
    no_zigzag: bool,
}

impl TaFlags {
    fn options(&self) -> TaOptions {
        let d = TaOptions::default();
        TaOptions {
            cache: !self.no_cache,
            joint_steps: !self.no_joint,
            filter: !self.no_filter,
            zigzag: if self.no_zigzag { None } else { d.zigzag },
            ..d
        }
    }
}

#[derive(Args)]
struct IntersectArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Also write the result as a one-row CSV.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    ta: TaFlags,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value = "ta")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    /// SMO KKT tolerance.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// SMO box constraint, a number or `inf`.
    #[arg(long, default_value_t = f64::INFINITY)]
    c: f64,
    /// Triangle steps, or SMO sweeps.
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Seeds SMO's partner search. Defaults to HULLSEP_SEED, else 0.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    ta: TaFlags,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Append rows (no header) if the output already has content.
    #[arg(long)]
    append: bool,
    #[arg(long, default_value_t = 3)]
    seeds: usize,
    /// First seed. Defaults to HULLSEP_SEED, else 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated dimensions (suite default if omitted).
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Points per set; `--na`/`--nb` override either side.
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long)]
    na: Option<usize>,
    #[arg(long)]
    nb: Option<usize>,
    /// Translation factor (dimension and intersection suites).
    #[arg(long)]
    factor: Option<f64>,
    /// Comma-separated `k` values of the distance suite.
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.7,0.5")]
    k: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "ta,smo")]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, default_value_t = f64::INFINITY)]
    c: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[command(flatten)]
    ta: TaFlags,
}

fn load_pair(a: &PathBuf, b: &PathBuf) -> Result<(PointSet, PointSet)> {
    let a = load_csv(a)?;
    let b = load_csv(b)?;
    a.check_same_dim(&b)?;
    Ok((a, b))
}

fn gen(args: GenArgs) -> Result<u8> {
    let spec = InstanceSpec::new(
        args.dim,
        args.na,
        args.nb,
        args.factor,
        args.seed.unwrap_or_else(|| default_seed(0)),
    );
    let inst = generate_two_balls(&spec)?;
    let pa = format!("{}_a.csv", args.out_prefix);
    let pb = format!("{}_b.csv", args.out_prefix);
    save_csv(&inst.a, &pa)?;
    save_csv(&inst.b, &pb)?;
    println!("file_a={pa}");
    println!("file_b={pb}");
    println!(
        "dim={} na={} nb={} seed={}",
        spec.dim, spec.na, spec.nb, spec.seed
    );
    println!("diam_a={:.6}", inst.diam_a);
    println!("diam_b={:.6}", inst.diam_b);
    println!("factor={}", spec.translation_factor);
    println!("shift={:.6}", inst.shift);
    Ok(0)
}

fn intersect(args: IntersectArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.a, &args.b)?;
    let opts = TaOptions {
        epsilon: args.epsilon,
        max_iters: args.max_iters,
        ..args.ta.options()
    };
    let out = ta1_solve(&a, &b, None, None, &opts)?;
    let r = &out.report;
    println!("status={}", r.status);
    println!("iterations={}", r.iterations);
    println!("time_s={:.6}", r.wall_seconds());
    println!("gap={:.9}", r.distance_upper);
    println!("sparsity={}", r.sparsity);
    if let Some(path) = args.report {
        let row = ExperimentRow {
            suite: "intersect".into(),
            dim: a.dim(),
            na: a.len(),
            nb: b.len(),
            factor: f64::NAN,
            seed: 0,
            algo: "ta".into(),
            iters: r.iterations,
            time_s: r.wall_seconds(),
            distance: 0.0,
            sparsity: r.sparsity,
            status: r.status.to_string(),
        };
        write_rows(&[row], std::fs::File::create(path)?, true)?;
    }
    Ok(exit_code(r.status))
}

fn distance(args: DistanceArgs) -> Result<u8> {
    let (a, b) = load_pair(&args.a, &args.b)?;
    let settings = SolverSettings {
        epsilon: args.epsilon,
        tol: args.tol,
        c: args.c,
        max_iters: args.max_iters,
        seed: args.seed.unwrap_or_else(|| default_seed(0)),
        ta: args.ta.options(),
    };
    let r = run(args.algorithm, &a, &b, &settings)?;
    println!("algorithm={}", r.algorithm);
    println!("status={}", r.status);
    println!("iterations={}", r.iterations);
    println!("time_s={:.6}", r.time_s);
    println!("distance={:.9}", r.distance);
    println!("sparsity={}", r.sparsity);
    if let (Some(upper), Some(lower)) = (r.delta, r.delta_lower) {
        println!("delta={upper:.9}");
        println!("delta_lower={lower:.9}");
    }
    Ok(exit_code(r.status))
}

fn bench(args: BenchArgs) -> Result<u8> {
    let mut cfg = BenchConfig::new(args.suite);
    if let Some(d) = args.dims {
        cfg.dims = d;
    }
    cfg.na = args.na.unwrap_or(args.n);
    cfg.nb = args.nb.unwrap_or(args.n);
    cfg.factor = args.factor;
    cfg.ks = args.k;
    cfg.seeds = args.seeds;
    cfg.base_seed = args.seed.unwrap_or_else(|| default_seed(0));
    cfg.jobs = args.jobs;
    cfg.algorithms = args.algorithms;
    cfg.settings = SolverSettings {
        epsilon: args.epsilon,
        tol: args.tol,
        c: args.c,
        max_iters: args.max_iters,
        seed: 0,
        ta: args.ta.options(),
    };
    let existing = args.append && std::fs::metadata(&args.out).is_ok_and(|m| m.len() > 0);
    let file = OpenOptions::new()
        .create(true)
        .write(true)
        .append(existing)
        .truncate(!existing)
        .open(&args.out)?;
    let rows = run_suite(&cfg)?;
    write_rows(&rows, file, !existing)?;
    print!("{}", summarize(&rows));
    println!("rows={}", rows.len());
    println!("out={}", args.out.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Intersect(a) => intersect(a),
        Command::Distance(a) => distance(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
