//! Command-line front end: `gen`, `measure`, `table1` and `compare`.
//!
//! Every command renders a [`Table`] into a string first and writes it in one
//! go, so identical arguments give identical bytes.

pub mod table;

use crate::discrepancy::{DEFAULT_EXTREME_LIMIT, DEFAULT_STAR_LIMIT};
use crate::error::{Error, Result};
use crate::measure::{ExactLimits, Measure, MeasureInput, MeasureRegistry, Measurement};
use crate::netgen::{
    digital_net, scramble, PrimeBase, RecipeRegistry, ScrambleState, UnitSquarePointSet,
    SCRAMBLE_RNG,
};
use crate::quadrature::{random_sphere_points, worst_case_error_sq, MONTE_CARLO_RNG};
use crate::sphere::{lift, SpherePointSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
pub use table::{read_points, Cell, Format, Ingested, Table};

/// Largest `m` for `table1` and `compare` without `--allow-slow`.
pub const TABLE_MAX_M: u32 = 13;
/// Largest point count for `gen` without `--allow-slow`.
pub const GEN_MAX_POINTS: u64 = 1 << 24;
/// Largest point count for `measure` without `--allow-slow`.
pub const MEASURE_MAX_POINTS: u64 = 1 << 16;

/// Published `(e², N^{3/2}·e²)` for base 2, identity and Pascal matrices,
/// `m = 1..=20`.
pub const TABLE1_REFERENCE: [(f64, f64); 20] = [
    (6.2622e-01, 1.7712),
    (2.1149e-01, 1.6920),
    (8.1448e-02, 1.8430),
    (3.5091e-02, 2.2459),
    (8.0526e-03, 1.4577),
    (2.6309e-03, 1.3470),
    (9.4336e-04, 1.3661),
    (3.4501e-04, 1.4132),
    (1.3374e-04, 1.5495),
    (4.6029e-05, 1.5083),
    (1.8846e-05, 1.7468),
    (6.4670e-06, 1.6953),
    (1.7873e-06, 1.3252),
    (5.6815e-07, 1.1915),
    (1.9912e-07, 1.1811),
    (6.3194e-08, 1.0602),
    (2.4122e-08, 1.1447),
    (9.1906e-09, 1.2335),
    (3.7001e-09, 1.4047),
    (1.3068e-09, 1.4032),
];

#[derive(Debug, Parser)]
#[command(
    name = "spherenet",
    version,
    about = "Digital nets lifted to the sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the points of a net or sequence prefix.
    Gen(GenArgs),
    /// Evaluate quality measures on generated or re-ingested points.
    Measure(MeasureArgs),
    /// Worst-case errors of lifted nets for m = 1..=max-m.
    Table1(Table1Args),
    /// Net against Monte Carlo worst-case errors with reference rates.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Square,
    Sphere,
}

#[derive(Debug, Clone, Args)]
pub struct NetArgs {
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    /// Net of base^m points.
    #[arg(long, conflicts_with = "count")]
    pub m: Option<u32>,
    /// First `count` points of the sequence.
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, default_value = "identity_pascal")]
    pub matrices: String,
    #[arg(long)]
    pub scramble_seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub net: NetArgs,
    #[arg(long, value_enum, default_value_t = Target::Square)]
    pub target: Target,
    #[arg(long)]
    pub allow_slow: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub net: NetArgs,
    /// Read points from a CSV listing written by `gen` instead.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "wce")]
    pub measures: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_STAR_LIMIT)]
    pub star_limit: usize,
    #[arg(long, default_value_t = DEFAULT_EXTREME_LIMIT)]
    pub extreme_limit: usize,
    #[arg(long)]
    pub allow_slow: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = TABLE_MAX_M)]
    pub max_m: u32,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    #[arg(long, default_value = "identity_pascal")]
    pub matrices: String,
    /// Append the published values and relative deviations.
    #[arg(long)]
    pub reference: bool,
    #[arg(long)]
    pub allow_slow: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 10)]
    pub max_m: u32,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    #[arg(long, default_value = "identity_pascal")]
    pub matrices: String,
    /// Number of Monte Carlo point sets averaged per row.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    /// First Monte Carlo seed; row seeds are `seed..seed + seeds`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub allow_slow: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 3 for numerator overflow, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Overflow { .. }) => 3,
            _ => 2,
        }
    }
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Gen(a) => &a.out,
            Command::Measure(a) => &a.out,
            Command::Table1(a) => &a.out,
            Command::Compare(a) => &a.out,
        }
    }

    pub fn table(&self) -> Result<Table> {
        match self {
            Command::Gen(a) => cmd_gen(a),
            Command::Measure(a) => cmd_measure(a),
            Command::Table1(a) => cmd_table1(a),
            Command::Compare(a) => cmd_compare(a),
        }
    }

    pub fn render(&self) -> Result<String> {
        self.table()?.render(self.output().format)
    }
}

/// Runs a parsed command line, writing to the requested destination.
pub fn run(cli: &Cli) -> std::result::Result<(), CliError> {
    let text = cli.command.render()?;
    match &cli.command.output().output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Generated points and the metadata describing how they were made.
struct Generated {
    points: UnitSquarePointSet,
    meta: Vec<(String, String)>,
}

fn generate(net: &NetArgs, max_points: Option<u64>) -> Result<Generated> {
    let base = PrimeBase::new(net.base)?;
    let recipes = RecipeRegistry::default();
    let recipe = recipes.get(&net.matrices)?;
    let mut meta = vec![("base".to_string(), base.get().to_string())];
    let (depth, count) = match (net.m, net.count) {
        (Some(m), None) => {
            meta.push(("m".into(), m.to_string()));
            (m, base.power(m)?)
        }
        (None, Some(count)) => {
            if count == 0 {
                return Err(Error::InvalidConfig("--count must be positive".into()));
            }
            let depth = (0..64)
                .find(|&k| base.power(k).map_or(true, |p| p >= count))
                .unwrap_or(64);
            base.power(depth)?;
            meta.push(("count".into(), count.to_string()));
            (depth, count)
        }
        _ => {
            return Err(Error::InvalidConfig(
                "exactly one of --m and --count is required".into(),
            ))
        }
    };
    if let Some(limit) = max_points {
        if count > limit {
            return Err(Error::InvalidConfig(format!(
                "{count} points exceed {limit}; pass --allow-slow to proceed"
            )));
        }
    }
    meta.push(("depth".into(), depth.to_string()));
    meta.push(("matrices".into(), recipe.name().to_string()));

    let mut points = digital_net(&recipe.spec(base, depth)?)?;
    if let Some(seed) = net.scramble_seed {
        points = scramble(
            &points,
            &ScrambleState::from_seed(base, depth as usize, seed)?,
        )?;
        meta.push(("scramble_seed".into(), seed.to_string()));
        meta.push(("rng".into(), SCRAMBLE_RNG.to_string()));
    } else {
        meta.push(("scramble_seed".into(), "none".into()));
    }
    if (count as usize) < points.len() {
        points = points.block(0, count as usize)?;
    }
    Ok(Generated { points, meta })
}

fn header_meta(table: &mut Table, command: &str) {
    table.meta("tool", "spherenet");
    table.meta("command", command);
}

fn cmd_gen(args: &GenArgs) -> Result<Table> {
    let limit = (!args.allow_slow).then_some(GEN_MAX_POINTS);
    let g = generate(&args.net, limit)?;
    let mut table = match args.target {
        Target::Square => Table::new(vec!["n", "x1", "x2", "u1", "u2", "denominator"]),
        Target::Sphere => Table::new(vec!["n", "x", "y", "z"]),
    };
    header_meta(&mut table, "gen");
    for (k, v) in &g.meta {
        table.meta(k, v);
    }
    table.meta(
        "target",
        args.target
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default(),
    );
    match args.target {
        Target::Square => {
            let d = g.points.denominator();
            for (n, (&(u1, u2), &(x1, x2))) in g
                .points
                .numerators()
                .iter()
                .zip(g.points.coords())
                .enumerate()
            {
                table.push(vec![
                    Cell::Int(n as u64),
                    Cell::Float(x1),
                    Cell::Float(x2),
                    Cell::Int(u1),
                    Cell::Int(u2),
                    Cell::Int(d),
                ]);
            }
        }
        Target::Sphere => {
            for (n, p) in lift(&g.points).points().iter().enumerate() {
                table.push(vec![
                    Cell::Int(n as u64),
                    Cell::Float(p.x()),
                    Cell::Float(p.y()),
                    Cell::Float(p.z()),
                ]);
            }
        }
    }
    Ok(table)
}

fn measurement_row(name: &str, m: Measurement) -> Vec<Cell> {
    match m {
        Measurement::Value { value, exact } => vec![
            Cell::Text(name.to_string()),
            Cell::Float(value),
            Cell::Bool(exact),
            Cell::Float(value),
            Cell::Float(value),
        ],
        Measurement::Bracket { lower, upper } => vec![
            Cell::Text(name.to_string()),
            Cell::Empty,
            Cell::Bool(false),
            Cell::Float(lower),
            Cell::Float(upper),
        ],
    }
}

/// Evaluates the named measures in order.
pub fn evaluate_measures(
    points: &SpherePointSet,
    names: &[String],
    limits: ExactLimits,
) -> Result<Vec<(String, Measurement)>> {
    if names.is_empty() {
        return Err(Error::InvalidConfig("no measures requested".into()));
    }
    let registry = MeasureRegistry::default();
    let selected: Vec<&dyn Measure> = registry.select(names)?;
    let input = MeasureInput::new(points, limits);
    selected
        .iter()
        .map(|m| Ok((m.name().to_string(), m.evaluate(&input)?)))
        .collect()
}

fn cmd_measure(args: &MeasureArgs) -> Result<Table> {
    let mut table = Table::new(vec!["measure", "value", "exact", "lower", "upper"]);
    header_meta(&mut table, "measure");
    let points = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidConfig(format!("cannot read {}: {e}", path.display()))
            })?;
            table.meta("input", path.display());
            read_points(&text)?.into_sphere()
        }
        None => {
            let g = generate(&args.net, None)?;
            for (k, v) in &g.meta {
                table.meta(k, v);
            }
            lift(&g.points)
        }
    };
    if !args.allow_slow && points.len() as u64 > MEASURE_MAX_POINTS {
        return Err(Error::InvalidConfig(format!(
            "{} points exceed {MEASURE_MAX_POINTS}; pass --allow-slow to proceed",
            points.len()
        )));
    }
    let limits = ExactLimits {
        star: args.star_limit,
        extreme: args.extreme_limit,
    };
    table.meta("star_limit", limits.star);
    table.meta("extreme_limit", limits.extreme);
    for (name, m) in evaluate_measures(&points, &args.measures, limits)? {
        table.push(measurement_row(&name, m));
    }
    Ok(table)
}

fn check_max_m(max_m: u32, allow_slow: bool) -> Result<()> {
    if max_m == 0 {
        return Err(Error::InvalidConfig("--max-m must be at least 1".into()));
    }
    if max_m > TABLE_MAX_M && !allow_slow {
        return Err(Error::InvalidConfig(format!(
            "--max-m above {TABLE_MAX_M} needs --allow-slow"
        )));
    }
    Ok(())
}

fn lifted_net(base: PrimeBase, matrices: &str, m: u32) -> Result<SpherePointSet> {
    let recipes = RecipeRegistry::default();
    let recipe = recipes.get(matrices)?;
    Ok(lift(&digital_net(&recipe.spec(base, m)?)?))
}

fn cmd_table1(args: &Table1Args) -> Result<Table> {
    check_max_m(args.max_m, args.allow_slow)?;
    let base = PrimeBase::new(args.base)?;
    base.power(args.max_m)?;
    if args.reference && (base.get() != 2 || args.matrices != "identity_pascal") {
        return Err(Error::InvalidConfig(
            "--reference values exist only for base 2 with identity_pascal".into(),
        ));
    }
    let mut header = vec!["m", "N", "e2", "inv_n_3_2", "scaled"];
    if args.reference {
        header.extend(["ref_e2", "ref_scaled", "rel_dev_e2", "rel_dev_scaled"]);
    }
    let mut table = Table::new(header);
    header_meta(&mut table, "table1");
    table.meta("base", base.get());
    table.meta("matrices", &args.matrices);
    for m in 1..=args.max_m {
        let z = lifted_net(base, &args.matrices, m)?;
        let n = z.len() as f64;
        let e2 = worst_case_error_sq(&z)?;
        let scaled = n.powf(1.5) * e2;
        let mut row = vec![
            Cell::Int(m as u64),
            Cell::Int(z.len() as u64),
            Cell::Float(e2),
            Cell::Float(n.powf(-1.5)),
            Cell::Float(scaled),
        ];
        if args.reference {
            match TABLE1_REFERENCE.get(m as usize - 1) {
                Some(&(re2, rscaled)) => row.extend([
                    Cell::Float(re2),
                    Cell::Float(rscaled),
                    Cell::Float((e2 - re2) / re2),
                    Cell::Float((scaled - rscaled) / rscaled),
                ]),
                None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Mean worst-case error of `seeds` independent uniform point sets.
pub fn monte_carlo_e2(n: usize, seeds: std::ops::Range<u64>) -> Result<f64> {
    let count = seeds.end.saturating_sub(seeds.start);
    if count == 0 {
        return Err(Error::InvalidConfig(
            "at least one Monte Carlo seed is required".into(),
        ));
    }
    let mut total = 0.0;
    for seed in seeds {
        total += worst_case_error_sq(&random_sphere_points(n, seed)?)?;
    }
    Ok(total / count as f64)
}

fn cmd_compare(args: &CompareArgs) -> Result<Table> {
    check_max_m(args.max_m, args.allow_slow)?;
    let base = PrimeBase::new(args.base)?;
    base.power(args.max_m)?;
    let seeds = args.seed
        ..args
            .seed
            .checked_add(args.seeds)
            .ok_or_else(|| Error::InvalidConfig("seed range overflows".into()))?;
    let mut table = Table::new(vec![
        "m",
        "N",
        "net_e2",
        "mc_e2",
        "inv_n_3_2",
        "nine_quarters_inv_n_3_2",
    ]);
    header_meta(&mut table, "compare");
    table.meta("base", base.get());
    table.meta("matrices", &args.matrices);
    table.meta("mc_seeds", format!("{}..{}", seeds.start, seeds.end));
    table.meta("rng", MONTE_CARLO_RNG);
    for m in 1..=args.max_m {
        let z = lifted_net(base, &args.matrices, m)?;
        let n = z.len();
        let rate = (n as f64).powf(-1.5);
        table.push(vec![
            Cell::Int(m as u64),
            Cell::Int(n as u64),
            Cell::Float(worst_case_error_sq(&z)?),
            Cell::Float(monte_carlo_e2(n, seeds.clone())?),
            Cell::Float(rate),
            Cell::Float(2.25 * rate),
        ]);
    }
    Ok(table)
}
